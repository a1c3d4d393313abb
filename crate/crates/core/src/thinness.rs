//! Empirical estimation of the hyperbolicity (thinness) constant δ.
//!
//! A geodesic triangle is δ-thin when, under the comparison-tripod
//! identification, any two identified points on different sides are at
//! distance ≤ δ. This module examines triangles with vertices in an
//! enumerated ball — exhaustively or by seeded sampling — and reports the
//! least integer bound that holds for all of them.
//!
//! Only shortlex-least geodesics (one per ordered vertex pair) are
//! examined, so the estimate is a *lower* bound for the true δ over all
//! geodesics. Verification code treats δ as presentation-supplied input and
//! uses this estimate as a sanity floor.

use crate::enumerate::{enumerate_with_index, ElementIndex, EnumerationOptions};
use crate::error::{Error, Result};
use crate::presentation::{GroupPresentation, Oracle};
use crate::word::Word;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Triangle selection strategy.
#[derive(Clone, Copy, Debug)]
pub enum TriangleSample {
    /// Every unordered vertex triple in B(R), repeats included.
    Exhaustive,
    /// `count` pseudo-random triples drawn with the given seed.
    Sample { count: u64, seed: u64 },
}

pub const DEFAULT_SAMPLE_SEED: u64 = 0;

/// A witness triangle: three canonical vertices, the shortlex-least
/// geodesic for each ordered pair (x→y, x→z, y→z with x ≤ y ≤ z), and the
/// tripod split parameters at each vertex (possibly half-integral).
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicTriangle {
    pub vertices: [Word; 3],
    pub sides: [Word; 3],
    pub internal_points: [f64; 3],
}

/// Result of a thinness scan.
#[derive(Clone, Debug)]
pub struct ThinnessReport {
    pub radius_examined: usize,
    pub triangles_examined: u64,
    /// Least integer δ̂ such that every examined triangle was δ̂-thin.
    pub delta_hat: u32,
    pub worst_triangle: GeodesicTriangle,
}

impl ThinnessReport {
    pub fn to_json(&self, alphabet: &crate::alphabet::Alphabet) -> serde_json::Value {
        let words = |ws: &[Word; 3]| -> Vec<String> {
            ws.iter().map(|w| w.display(alphabet).to_string()).collect()
        };
        serde_json::json!({
            "schema": "thinness-report/1",
            "radius_examined": self.radius_examined,
            "triangles_examined": self.triangles_examined,
            "delta_hat": self.delta_hat,
            "estimate_kind": "empirical lower estimate",
            "worst_triangle": {
                "vertices": words(&self.worst_triangle.vertices),
                "sides": words(&self.worst_triangle.sides),
                "internal_points": self.worst_triangle.internal_points,
            },
        })
    }

    pub fn render_text(&self, alphabet: &crate::alphabet::Alphabet) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "thinness over B({}): {} triangles, delta_hat = {} (empirical lower estimate)",
            self.radius_examined, self.triangles_examined, self.delta_hat
        );
        let t = &self.worst_triangle;
        let _ = writeln!(
            out,
            "worst triangle: [{}], [{}], [{}]",
            t.vertices[0].display(alphabet),
            t.vertices[1].display(alphabet),
            t.vertices[2].display(alphabet)
        );
        out
    }
}

/// Distance and geodesic provider over an enumerated ball.
struct Geometry<'a> {
    p: &'a GroupPresentation,
    /// Needed for Dehn oracles, whose reduced words are neither canonical
    /// nor geodesic; `None` when the oracle itself yields geodesic forms.
    index: Option<&'a ElementIndex>,
}

impl Geometry<'_> {
    /// Shortlex-least geodesic word w with u·w = v.
    fn geodesic(&self, u: &Word, v: &Word) -> Result<Word> {
        let diff = u.inverse().concat(v);
        match self.index {
            None => Ok(self.p.reduce(&diff)),
            Some(idx) => idx.canonical_word(self.p, &diff),
        }
    }

    fn distance(&self, u: &Word, v: &Word) -> Result<usize> {
        let diff = u.inverse().concat(v);
        match self.index {
            None => Ok(self.p.reduce(&diff).len()),
            Some(idx) => idx.radius_of(self.p, &diff),
        }
    }

    /// Maximum distance between tripod-identified points of the triangle
    /// with the given canonical vertices.
    fn tripod_defect(&self, x: &Word, y: &Word, z: &Word) -> Result<u32> {
        let mut worst = 0usize;
        let verts = [x, y, z];
        for v in 0..3 {
            let a = verts[v];
            let b = verts[(v + 1) % 3];
            let c = verts[(v + 2) % 3];
            let side_ab = self.geodesic(a, b)?;
            let side_ac = self.geodesic(a, c)?;
            let d_bc = self.distance(b, c)?;
            // Twice the Gromov product (b·c)_a; nonnegative by the triangle
            // inequality.
            let doubled = side_ab.len() + side_ac.len() - d_bc;
            for t in 1..=(doubled / 2) {
                let pa = side_ab.prefix(t);
                let pb = side_ac.prefix(t);
                let d = self.distance(&pa, &pb)?;
                worst = worst.max(d);
            }
        }
        Ok(worst as u32)
    }

    fn triangle(&self, x: &Word, y: &Word, z: &Word) -> Result<GeodesicTriangle> {
        let mut vs = [x.clone(), y.clone(), z.clone()];
        vs.sort_by(|a, b| a.shortlex_cmp(b));
        let sides = [
            self.geodesic(&vs[0], &vs[1])?,
            self.geodesic(&vs[0], &vs[2])?,
            self.geodesic(&vs[1], &vs[2])?,
        ];
        let (dxy, dxz, dyz) = (sides[0].len(), sides[1].len(), sides[2].len());
        let internal_points = [
            (dxy + dxz) as f64 / 2.0 - dyz as f64 / 2.0,
            (dxy + dyz) as f64 / 2.0 - dxz as f64 / 2.0,
            (dxz + dyz) as f64 / 2.0 - dxy as f64 / 2.0,
        ];
        Ok(GeodesicTriangle {
            vertices: vs,
            sides,
            internal_points,
        })
    }
}

/// Recompute a triangle's defect; used to validate reports.
pub fn triangle_defect(p: &GroupPresentation, t: &GeodesicTriangle) -> Result<u32> {
    match p.oracle() {
        Oracle::DehnSmallCancellation(_) => {
            let radius = t.vertices.iter().map(Word::len).max().unwrap_or(0);
            let (_, idx) = enumerate_with_index(p, 2 * radius, &EnumerationOptions::default())?;
            Geometry { p, index: Some(&idx) }.tripod_defect(
                &t.vertices[0],
                &t.vertices[1],
                &t.vertices[2],
            )
        }
        _ => Geometry { p, index: None }.tripod_defect(
            &t.vertices[0],
            &t.vertices[1],
            &t.vertices[2],
        ),
    }
}

/// Scan triangles with vertices in B(R) and report the empirical thinness
/// bound. If the memory budget truncates enumeration, the scan proceeds on
/// the completed ball and `radius_examined` reports the smaller radius.
pub fn estimate_delta(
    p: &GroupPresentation,
    radius: usize,
    sample: TriangleSample,
    opts: &EnumerationOptions,
) -> Result<ThinnessReport> {
    // Dehn oracles answer distance queries through the index, and the
    // difference of two ball elements can be twice as deep as the ball.
    let needs_index = matches!(p.oracle(), Oracle::DehnSmallCancellation(_));
    let want = if needs_index { 2 * radius } else { radius };
    let (index, achieved) = match enumerate_with_index(p, want, opts) {
        Ok((_, idx)) => (idx, want),
        Err(Error::MemoryBudget { completed, .. }) => {
            let (_, idx) = enumerate_with_index(p, completed, opts)?;
            (idx, completed)
        }
        Err(other) => return Err(other),
    };
    let vertex_radius = if needs_index { achieved / 2 } else { achieved };

    let geom = Geometry {
        p,
        index: needs_index.then_some(&index),
    };

    let mut ball: Vec<&Word> = Vec::new();
    for n in 0..=vertex_radius {
        ball.extend(index.sphere_elements(n)?.iter());
    }

    let mut examined = 0u64;
    let mut delta_hat = 0u32;
    let mut worst: Option<[&Word; 3]> = None;
    let consider = |geom: &Geometry,
                        x: &'_ Word,
                        y: &'_ Word,
                        z: &'_ Word|
     -> Result<(u32, u64)> {
        let d = geom.tripod_defect(x, y, z)?;
        Ok((d, 1))
    };

    match sample {
        TriangleSample::Exhaustive => {
            for i in 0..ball.len() {
                for j in i..ball.len() {
                    for k in j..ball.len() {
                        let (d, c) = consider(&geom, ball[i], ball[j], ball[k])?;
                        examined += c;
                        if d > delta_hat || worst.is_none() {
                            delta_hat = delta_hat.max(d);
                            if d >= delta_hat {
                                worst = Some([ball[i], ball[j], ball[k]]);
                            }
                        }
                    }
                }
            }
        }
        TriangleSample::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let i = rng.gen_range(0..ball.len());
                let j = rng.gen_range(0..ball.len());
                let k = rng.gen_range(0..ball.len());
                let (d, c) = consider(&geom, ball[i], ball[j], ball[k])?;
                examined += c;
                if d > delta_hat || worst.is_none() {
                    delta_hat = delta_hat.max(d);
                    if d >= delta_hat {
                        worst = Some([ball[i], ball[j], ball[k]]);
                    }
                }
            }
        }
    }

    let [x, y, z] = worst.expect("at least the identity triple is examined");
    let worst_triangle = geom.triangle(x, y, z)?;
    Ok(ThinnessReport {
        radius_examined: vertex_radius,
        triangles_examined: examined,
        delta_hat,
        worst_triangle,
    })
}
