//! Breadth-first enumeration of Cayley-graph spheres and balls.
//!
//! The enumerator produces exact sphere sizes |S(n)| and ball sizes |B(n)|
//! for n up to a requested radius, optionally retaining one canonical
//! geodesic representative per element. Deduplication strategy depends on
//! the oracle:
//!
//! * free reduction — freely reduced words are already canonical, and every
//!   non-backtracking extension is new, so no lookup structure is needed;
//! * confluent rewriting — normal forms are canonical and shortlex-least
//!   (hence geodesic), so a hash set of normal forms deduplicates;
//! * Dehn reduction — reduced words are not canonical, so candidates are
//!   bucketed by a fingerprint (abelianization vector plus images under
//!   seeded finite-permutation homomorphisms) and collisions are resolved
//!   by the exact identity test on u·v⁻¹. Buckets stay near-singleton in
//!   practice, which keeps the quadratic resolution local.
//!
//! All strategies emit spheres in shortlex order, so repeated runs produce
//! byte-identical tables and element stores.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::presentation::{GroupPresentation, Oracle};
use crate::word::Word;

/// Default memory budget for enumeration, in mebibytes.
pub const DEFAULT_BUDGET_MB: u64 = 8192;

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    pub store_elements: bool,
    pub budget_mb: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            store_elements: false,
            budget_mb: DEFAULT_BUDGET_MB,
        }
    }
}

/// Estimated retained bytes per element: two bytes per letter plus fixed
/// container overhead. This is the quantity compared against the budget.
fn word_cost(len: usize) -> u64 {
    2 * len as u64 + 64
}

/// Exact growth data of a group ball.
#[derive(Clone, Debug)]
pub struct GrowthTable {
    group: String,
    radius: usize,
    spheres: Vec<BigInt>,
    balls: Vec<BigInt>,
    elements: Option<Vec<Vec<Word>>>,
}

impl GrowthTable {
    fn new(
        group: String,
        letter_count: usize,
        counts: &[usize],
        elements: Option<Vec<Vec<Word>>>,
    ) -> GrowthTable {
        assert!(!counts.is_empty() && counts[0] == 1);
        let spheres: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        let mut balls = Vec::with_capacity(spheres.len());
        let mut acc = BigInt::from(0);
        for s in &spheres {
            acc += s;
            balls.push(acc.clone());
        }
        // Free-group ceiling: a sphere can never exceed the count of freely
        // reduced words of that length.
        let mut ceiling = BigInt::from(1);
        for (n, s) in spheres.iter().enumerate() {
            if n == 1 {
                ceiling = BigInt::from(letter_count);
            } else if n > 1 {
                ceiling *= letter_count as i64 - 1;
            }
            assert!(s <= &ceiling, "sphere {n} exceeds free-group ceiling");
        }
        if let Some(levels) = &elements {
            assert_eq!(levels.len(), counts.len());
            for (n, level) in levels.iter().enumerate() {
                assert_eq!(level.len(), counts[n]);
                assert!(level.iter().all(|w| w.len() == n));
            }
        }
        GrowthTable {
            group,
            radius: counts.len() - 1,
            spheres,
            balls,
            elements,
        }
    }

    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn spheres(&self) -> &[BigInt] {
        &self.spheres
    }

    pub fn balls(&self) -> &[BigInt] {
        &self.balls
    }

    pub fn sphere(&self, n: usize) -> Result<&BigInt> {
        self.spheres.get(n).ok_or(Error::RadiusExceeded {
            required: n,
            have: self.radius,
        })
    }

    pub fn ball(&self, n: usize) -> Result<&BigInt> {
        self.balls.get(n).ok_or(Error::RadiusExceeded {
            required: n,
            have: self.radius,
        })
    }

    pub fn elements(&self) -> Option<&[Vec<Word>]> {
        self.elements.as_deref()
    }

    /// CSV with header `n,sphere,ball`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,sphere,ball\n");
        for n in 0..=self.radius {
            out.push_str(&format!("{n},{},{}\n", self.spheres[n], self.balls[n]));
        }
        out
    }

    /// JSON document with counts rendered as decimal strings.
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        let strings = |v: &[BigInt]| -> Vec<String> { v.iter().map(|x| x.to_string()).collect() };
        let mut doc = serde_json::json!({
            "schema": "growth-table/1",
            "group": self.group,
            "radius": self.radius,
            "spheres": strings(&self.spheres),
            "balls": strings(&self.balls),
        });
        if let Some(levels) = &self.elements {
            let rendered: Vec<Vec<String>> = levels
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|w| w.display(alphabet).to_string())
                        .collect()
                })
                .collect();
            doc["elements"] = serde_json::json!(rendered);
        }
        doc
    }

    /// Element store: one `radius<TAB>word` line per element.
    pub fn element_lines(&self, alphabet: &Alphabet) -> Result<String> {
        let levels = self.elements.as_ref().ok_or(Error::MissingElementStore)?;
        let mut out = String::new();
        for (n, level) in levels.iter().enumerate() {
            for w in level {
                out.push_str(&format!("{n}\t{}\n", w.display(alphabet)));
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Fingerprints for Dehn-oracle deduplication.

const FP_DEGREE: usize = 7;
const FP_HOMS: usize = 2;
const FP_GENS: usize = 8;

type Perm = [u8; FP_DEGREE];

fn identity_perm() -> Perm {
    [0, 1, 2, 3, 4, 5, 6]
}

fn compose(p: &Perm, q: &Perm) -> Perm {
    let mut r = [0u8; FP_DEGREE];
    for i in 0..FP_DEGREE {
        r[i] = p[q[i] as usize];
    }
    r
}

fn invert_perm(p: &Perm) -> Perm {
    let mut r = [0u8; FP_DEGREE];
    for i in 0..FP_DEGREE {
        r[p[i] as usize] = i as u8;
    }
    r
}

/// Element-invariant bucket key: equal group elements always share a
/// fingerprint, so fingerprint mismatch proves inequality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Fingerprint {
    abelian: [i16; FP_GENS],
    perm: [Perm; FP_HOMS],
}

struct FingerprintScheme {
    /// Exponent sums are only a quotient invariant when every relator
    /// abelianizes to zero (commutator-type relators).
    use_abelian: bool,
    generator_count: usize,
    /// Per homomorphism, the image of every letter.
    homs: Vec<Vec<Perm>>,
}

impl FingerprintScheme {
    fn build(alphabet: &Alphabet, relators: &[Word]) -> FingerprintScheme {
        let k = alphabet.generator_count();
        let use_abelian = k <= FP_GENS
            && relators.iter().all(|r| {
                let mut sums = vec![0i64; k];
                for &l in r.letters() {
                    sums[l.generator_index()] += if l.is_formal_inverse() { -1 } else { 1 };
                }
                sums.iter().all(|&s| s == 0)
            });

        // Seeded search for homomorphisms into S_7: random generator images,
        // kept when every relator maps to the identity permutation.
        let mut rng = ChaCha8Rng::seed_from_u64(0x6772_6F77_7468_6C61);
        let mut homs: Vec<Vec<Perm>> = Vec::new();
        let mut attempts = 0usize;
        while homs.len() < FP_HOMS && attempts < 60_000 {
            attempts += 1;
            let mut images = vec![identity_perm(); 2 * k];
            let mut nontrivial = false;
            for g in 0..k {
                let mut p = identity_perm();
                p.shuffle(&mut rng);
                if p != identity_perm() {
                    nontrivial = true;
                }
                images[2 * g] = p;
                images[2 * g + 1] = invert_perm(&p);
            }
            if !nontrivial {
                continue;
            }
            let respects = relators.iter().all(|r| {
                let mut acc = identity_perm();
                for &l in r.letters() {
                    acc = compose(&acc, &images[l.index()]);
                }
                acc == identity_perm()
            });
            if respects && !homs.contains(&images) {
                homs.push(images);
            }
        }
        FingerprintScheme {
            use_abelian,
            generator_count: k,
            homs,
        }
    }

    fn fingerprint(&self, w: &Word) -> Fingerprint {
        let mut abelian = [0i16; FP_GENS];
        if self.use_abelian {
            for &l in w.letters() {
                let g = l.generator_index();
                if g < FP_GENS {
                    abelian[g] += if l.is_formal_inverse() { -1 } else { 1 };
                }
            }
        }
        let mut perm = [identity_perm(); FP_HOMS];
        for (j, images) in self.homs.iter().enumerate() {
            let mut acc = identity_perm();
            for &l in w.letters() {
                acc = compose(&acc, &images[l.index()]);
            }
            perm[j] = acc;
        }
        let _ = self.generator_count;
        Fingerprint { abelian, perm }
    }
}

// ---------------------------------------------------------------------------
// BFS strategies.

struct BfsOut {
    /// Sphere sizes for radii `0..=completed`.
    counts: Vec<usize>,
    /// Canonical representatives, flat, ordered by (radius, shortlex).
    /// Empty when representatives were not retained.
    elems: Vec<Word>,
    /// `bounds[n]..bounds[n+1]` indexes the sphere of radius n in `elems`.
    bounds: Vec<usize>,
    /// Bucket structure when the Dehn strategy ran.
    buckets: Option<(FingerprintScheme, HashMap<Fingerprint, Vec<u32>>)>,
    breached: bool,
}

impl BfsOut {
    fn completed(&self) -> usize {
        self.counts.len() - 1
    }

    fn levels(&self) -> Vec<Vec<Word>> {
        (0..self.counts.len())
            .map(|n| self.elems[self.bounds[n]..self.bounds[n + 1]].to_vec())
            .collect()
    }
}

fn letters_of(alphabet: &Alphabet) -> Vec<Letter> {
    alphabet.letters().collect()
}

/// Free groups: every non-backtracking extension of a reduced word is a new
/// element, so the only state is the current frontier.
fn bfs_free(p: &GroupPresentation, radius: usize, opts: &EnumerationOptions, keep: bool) -> BfsOut {
    let letters = letters_of(p.alphabet());
    let budget = opts.budget_mb.saturating_mul(1024 * 1024);
    let mut out = BfsOut {
        counts: vec![1],
        elems: vec![Word::empty()],
        bounds: vec![0, 1],
        buckets: None,
        breached: false,
    };
    let mut frontier = vec![Word::empty()];
    let mut retained = word_cost(0);
    for n in 0..radius {
        let mut next: Vec<Word> = Vec::new();
        let mut level_bytes = 0u64;
        'level: for w in &frontier {
            let banned = w.letters().last().map(|l| l.inverse());
            for &l in &letters {
                if Some(l) == banned {
                    continue;
                }
                level_bytes += word_cost(n + 1);
                if retained + level_bytes > budget {
                    out.breached = true;
                    break 'level;
                }
                let mut child = w.clone();
                child.push(l);
                next.push(child);
            }
        }
        if out.breached {
            break;
        }
        if keep {
            retained += level_bytes;
            out.elems.extend(next.iter().cloned());
            out.bounds.push(out.elems.len());
        } else {
            // Only the frontier is retained between levels.
            retained = level_bytes;
        }
        out.counts.push(next.len());
        frontier = next;
    }
    if !keep {
        out.elems = vec![Word::empty()];
        out.bounds = vec![0, 1];
    }
    out
}

/// Confluent rewriting: normal forms are shortlex-least, hence geodesic and
/// canonical; a normal form of length n+1 reached from the n-sphere is a new
/// element of the (n+1)-sphere.
fn bfs_kb(p: &GroupPresentation, radius: usize, opts: &EnumerationOptions) -> BfsOut {
    let letters = letters_of(p.alphabet());
    let budget = opts.budget_mb.saturating_mul(1024 * 1024);
    let mut out = BfsOut {
        counts: vec![1],
        elems: vec![Word::empty()],
        bounds: vec![0, 1],
        buckets: None,
        breached: false,
    };
    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(Word::empty());
    let mut frontier = vec![Word::empty()];
    let mut retained = word_cost(0);
    for n in 0..radius {
        let mut next: Vec<Word> = Vec::new();
        'level: for w in &frontier {
            for &l in &letters {
                let mut cand = w.clone();
                cand.push(l);
                let nf = p.reduce(&cand);
                if nf.len() == n + 1 && !seen.contains(&nf) {
                    retained += word_cost(nf.len());
                    if retained > budget {
                        out.breached = true;
                        break 'level;
                    }
                    seen.insert(nf.clone());
                    next.push(nf);
                }
            }
        }
        if out.breached {
            break;
        }
        next.sort_by(|a, b| a.shortlex_cmp(b));
        out.counts.push(next.len());
        out.elems.extend(next.iter().cloned());
        out.bounds.push(out.elems.len());
        frontier = next;
    }
    out
}

/// Dehn oracle: representatives are not canonical strings, so new candidates
/// are compared against previously stored elements, restricted to their
/// fingerprint bucket. A candidate extending the n-sphere lies at distance
/// n−1, n, or n+1; the first two cases are caught by a bucket hit (those
/// spheres are fully stored), so survivors are genuinely new and their
/// length-(n+1) word is geodesic.
fn bfs_dehn(p: &GroupPresentation, radius: usize, opts: &EnumerationOptions) -> BfsOut {
    let letters = letters_of(p.alphabet());
    let budget = opts.budget_mb.saturating_mul(1024 * 1024);
    let scheme = FingerprintScheme::build(p.alphabet(), p.relators());
    let mut buckets: HashMap<Fingerprint, Vec<u32>> = HashMap::new();
    let mut out = BfsOut {
        counts: vec![1],
        elems: vec![Word::empty()],
        bounds: vec![0, 1],
        buckets: None,
        breached: false,
    };
    buckets.insert(scheme.fingerprint(&Word::empty()), vec![0]);
    // Bucket bookkeeping is charged alongside the representative itself.
    let mut retained = word_cost(0) + 16;
    for n in 0..radius {
        let (lo, hi) = (out.bounds[n], out.bounds[n + 1]);
        let mut added: Vec<Fingerprint> = Vec::new();
        'level: for idx in lo..hi {
            let parent = out.elems[idx].clone();
            let banned = parent.letters().last().map(|l| l.inverse());
            for &l in &letters {
                if Some(l) == banned {
                    continue;
                }
                let mut cand = parent.clone();
                cand.push(l);
                let fp = scheme.fingerprint(&cand);
                let bucket = buckets.entry(fp).or_default();
                let duplicate = bucket.iter().any(|&i| {
                    let probe = cand.concat(&out.elems[i as usize].inverse());
                    p.is_identity(&probe)
                });
                if duplicate {
                    continue;
                }
                retained += word_cost(cand.len()) + 16;
                if retained > budget {
                    out.breached = true;
                    break 'level;
                }
                bucket.push(out.elems.len() as u32);
                out.elems.push(cand);
                added.push(fp);
            }
        }
        if out.breached {
            // Roll the partial level back out of the bucket index.
            for fp in added {
                if let Some(bucket) = buckets.get_mut(&fp) {
                    bucket.retain(|&i| (i as usize) < hi);
                    if bucket.is_empty() {
                        buckets.remove(&fp);
                    }
                }
            }
            out.elems.truncate(hi);
            break;
        }
        out.counts.push(out.elems.len() - hi);
        out.bounds.push(out.elems.len());
    }
    out.buckets = Some((scheme, buckets));
    out
}

fn run_bfs(p: &GroupPresentation, radius: usize, opts: &EnumerationOptions, keep: bool) -> BfsOut {
    match p.oracle() {
        Oracle::FreeReduction => bfs_free(p, radius, opts, keep),
        Oracle::ConfluentRewriting(_) => bfs_kb(p, radius, opts),
        Oracle::DehnSmallCancellation(_) => bfs_dehn(p, radius, opts),
    }
}

/// Enumerate spheres and balls out to `radius`. Exceeding the memory budget
/// is an error carrying the last fully enumerated radius.
pub fn enumerate_growth(
    p: &GroupPresentation,
    radius: usize,
    opts: &EnumerationOptions,
) -> Result<GrowthTable> {
    let out = run_bfs(p, radius, opts, opts.store_elements);
    if out.breached {
        return Err(Error::MemoryBudget {
            budget_mb: opts.budget_mb,
            attempted: radius,
            completed: out.completed(),
        });
    }
    let elements = opts.store_elements.then(|| out.levels());
    Ok(GrowthTable::new(
        p.name().to_string(),
        p.alphabet().letter_count(),
        &out.counts,
        elements,
    ))
}

/// Like `enumerate_growth`, but a budget breach yields the table for the
/// last completed radius together with `false`.
pub fn enumerate_growth_best_effort(
    p: &GroupPresentation,
    radius: usize,
    opts: &EnumerationOptions,
) -> (GrowthTable, bool) {
    let out = run_bfs(p, radius, opts, opts.store_elements);
    let elements = opts.store_elements.then(|| out.levels());
    let table = GrowthTable::new(
        p.name().to_string(),
        p.alphabet().letter_count(),
        &out.counts,
        elements,
    );
    (table, !out.breached)
}

/// Enumerate and retain an element index for membership, canonicalization,
/// and distance queries inside the ball.
pub fn enumerate_with_index(
    p: &GroupPresentation,
    radius: usize,
    opts: &EnumerationOptions,
) -> Result<(GrowthTable, ElementIndex)> {
    let out = run_bfs(p, radius, opts, true);
    if out.breached {
        return Err(Error::MemoryBudget {
            budget_mb: opts.budget_mb,
            attempted: radius,
            completed: out.completed(),
        });
    }
    let elements = opts.store_elements.then(|| out.levels());
    let table = GrowthTable::new(
        p.name().to_string(),
        p.alphabet().letter_count(),
        &out.counts,
        elements,
    );
    let lookup = match out.buckets {
        Some((scheme, buckets)) => Lookup::Bucketed { scheme, buckets },
        None => Lookup::Canonical,
    };
    let index = ElementIndex {
        radius,
        elems: out.elems,
        bounds: out.bounds,
        lookup,
    };
    Ok((table, index))
}

enum Lookup {
    /// The oracle's reduced form is canonical and geodesic; lookups reduce
    /// and compare lengths, and positions come from binary search.
    Canonical,
    Bucketed {
        scheme: FingerprintScheme,
        buckets: HashMap<Fingerprint, Vec<u32>>,
    },
}

/// Canonical geodesic representatives for every element of B(R), ordered by
/// (radius, shortlex), with exact membership and distance queries.
pub struct ElementIndex {
    radius: usize,
    elems: Vec<Word>,
    bounds: Vec<usize>,
    lookup: Lookup,
}

impl ElementIndex {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn ball_size(&self) -> usize {
        self.elems.len()
    }

    pub fn sphere_elements(&self, n: usize) -> Result<&[Word]> {
        if n + 1 >= self.bounds.len() {
            return Err(Error::RadiusExceeded {
                required: n,
                have: self.bounds.len().saturating_sub(2),
            });
        }
        Ok(&self.elems[self.bounds[n]..self.bounds[n + 1]])
    }

    pub fn element(&self, id: usize) -> &Word {
        &self.elems[id]
    }

    /// Radius of the element with flat id `id`.
    pub fn radius_of_id(&self, id: usize) -> usize {
        self.bounds.partition_point(|&b| b <= id) - 1
    }

    /// Flat id of the element represented by `w`, if it lies in B(R).
    /// For Dehn oracles the reported `required` radius on a miss is a lower
    /// bound (R+1), since Dehn reduction is not geodesic.
    pub fn global_id(&self, p: &GroupPresentation, w: &Word) -> Result<usize> {
        match &self.lookup {
            Lookup::Canonical => {
                let nf = p.reduce(w);
                if nf.len() > self.radius {
                    return Err(Error::RadiusExceeded {
                        required: nf.len(),
                        have: self.radius,
                    });
                }
                let sphere = &self.elems[self.bounds[nf.len()]..self.bounds[nf.len() + 1]];
                match sphere.binary_search_by(|probe| probe.shortlex_cmp(&nf)) {
                    Ok(i) => Ok(self.bounds[nf.len()] + i),
                    Err(_) => unreachable!("canonical form of length <= R must be stored"),
                }
            }
            Lookup::Bucketed { scheme, buckets } => {
                let reduced = p.reduce(w);
                let fp = scheme.fingerprint(&reduced);
                if let Some(bucket) = buckets.get(&fp) {
                    for &i in bucket {
                        let probe = reduced.concat(&self.elems[i as usize].inverse());
                        if p.is_identity(&probe) {
                            return Ok(i as usize);
                        }
                    }
                }
                Err(Error::RadiusExceeded {
                    required: self.radius + 1,
                    have: self.radius,
                })
            }
        }
    }

    pub fn contains(&self, p: &GroupPresentation, w: &Word) -> bool {
        self.global_id(p, w).is_ok()
    }

    /// Distance of `w` from the identity, exact for any element of B(R).
    pub fn radius_of(&self, p: &GroupPresentation, w: &Word) -> Result<usize> {
        Ok(self.radius_of_id(self.global_id(p, w)?))
    }

    /// The stored canonical (shortlex-least geodesic) representative of `w`.
    pub fn canonical_word(&self, p: &GroupPresentation, w: &Word) -> Result<Word> {
        Ok(self.elems[self.global_id(p, w)?].clone())
    }

    /// Word-metric distance d(g, h) = |g⁻¹h|, defined whenever g⁻¹h ∈ B(R).
    pub fn distance(&self, p: &GroupPresentation, g: &Word, h: &Word) -> Result<usize> {
        self.radius_of(p, &g.inverse().concat(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_builtin;

    fn counts(table: &GrowthTable) -> Vec<u64> {
        table
            .spheres()
            .iter()
            .map(|s| u64::try_from(s).unwrap())
            .collect()
    }

    fn ball_counts(table: &GrowthTable) -> Vec<u64> {
        table
            .balls()
            .iter()
            .map(|s| u64::try_from(s).unwrap())
            .collect()
    }

    #[test]
    fn free_rank_two_counts() {
        let p = load_builtin("f2").unwrap();
        let t = enumerate_growth(&p, 4, &EnumerationOptions::default()).unwrap();
        assert_eq!(counts(&t), [1, 4, 12, 36, 108]);
        assert_eq!(ball_counts(&t), [1, 5, 17, 53, 161]);
    }

    #[test]
    fn line_counts() {
        let p = load_builtin("z").unwrap();
        let t = enumerate_growth(&p, 3, &EnumerationOptions::default()).unwrap();
        assert_eq!(counts(&t), [1, 2, 2, 2]);
        assert_eq!(ball_counts(&t), [1, 3, 5, 7]);
    }

    #[test]
    fn modular_group_counts() {
        let p = load_builtin("c2c3").unwrap();
        let t = enumerate_growth(&p, 6, &EnumerationOptions::default()).unwrap();
        assert_eq!(counts(&t), [1, 3, 4, 6, 8, 12, 16]);
    }

    #[test]
    fn plane_counts() {
        let p = load_builtin("z2").unwrap();
        let t = enumerate_growth(&p, 6, &EnumerationOptions::default()).unwrap();
        assert_eq!(counts(&t), [1, 4, 8, 12, 16, 20, 24]);
    }

    #[test]
    fn surface_counts_small() {
        let p = load_builtin("surface2").unwrap();
        let t = enumerate_growth(&p, 4, &EnumerationOptions::default()).unwrap();
        assert_eq!(counts(&t), [1, 8, 56, 392, 2736]);
    }

    #[test]
    fn stored_elements_are_geodesic_sorted_and_counted() {
        for key in ["f2", "z2", "c2c3", "surface2"] {
            let p = load_builtin(key).unwrap();
            let opts = EnumerationOptions {
                store_elements: true,
                ..Default::default()
            };
            let t = enumerate_growth(&p, 3, &opts).unwrap();
            let levels = t.elements().unwrap();
            for (n, level) in levels.iter().enumerate() {
                assert_eq!(BigInt::from(level.len()), *t.sphere(n).unwrap(), "{key}");
                for w in level {
                    assert_eq!(w.len(), n);
                    assert!(w.is_freely_reduced());
                }
                for pair in level.windows(2) {
                    assert!(pair[0].shortlex_cmp(&pair[1]).is_lt());
                }
            }
        }
    }

    #[test]
    fn determinism_across_runs() {
        let p = load_builtin("surface2").unwrap();
        let opts = EnumerationOptions {
            store_elements: true,
            ..Default::default()
        };
        let a = enumerate_growth(&p, 3, &opts).unwrap();
        let b = enumerate_growth(&p, 3, &opts).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.elements(), b.elements());
        assert_eq!(
            a.to_json(p.alphabet()).to_string(),
            b.to_json(p.alphabet()).to_string()
        );
    }

    #[test]
    fn differencing_and_submultiplicativity() {
        for key in ["f2", "z2", "c2c3", "surface2"] {
            let p = load_builtin(key).unwrap();
            let t = enumerate_growth(&p, 5, &EnumerationOptions::default()).unwrap();
            let s = t.spheres();
            let b = t.balls();
            for n in 1..=t.radius() {
                assert_eq!(s[n], &b[n] - &b[n - 1]);
            }
            for n in 0..=t.radius() {
                for m in 0..=(t.radius() - n) {
                    assert!(s[n + m] <= &s[n] * &s[m], "{key} spheres {n}+{m}");
                    assert!(b[n + m] <= &b[n] * &b[m], "{key} balls {n}+{m}");
                }
            }
        }
    }

    #[test]
    fn budget_breach_reports_completed_radius() {
        let p = load_builtin("f2").unwrap();
        let opts = EnumerationOptions {
            store_elements: true,
            budget_mb: 0,
        };
        match enumerate_growth(&p, 6, &opts) {
            Err(Error::MemoryBudget {
                budget_mb,
                attempted,
                completed,
            }) => {
                assert_eq!(budget_mb, 0);
                assert_eq!(attempted, 6);
                assert!(completed < 6);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        let (partial, complete) = enumerate_growth_best_effort(&p, 6, &opts);
        assert!(!complete);
        assert!(partial.radius() < 6);
    }

    #[test]
    fn budget_breach_keeps_dehn_index_consistent() {
        let p = load_builtin("surface2").unwrap();
        // Small budget: a few levels fit, then the breach truncates.
        let opts = EnumerationOptions {
            store_elements: false,
            budget_mb: 1,
        };
        let (partial, complete) = enumerate_growth_best_effort(&p, 6, &opts);
        assert!(!complete);
        assert!(partial.radius() >= 2, "1 MiB should cover a few thousand elements");
        let expected: &[u64] = &[1, 8, 56, 392, 2736, 19096, 133288];
        assert_eq!(counts(&partial), expected[..=partial.radius()]);
    }

    #[test]
    fn index_lookups_free() {
        let p = load_builtin("f2").unwrap();
        let (t, idx) = enumerate_with_index(&p, 4, &EnumerationOptions::default()).unwrap();
        assert_eq!(idx.ball_size(), 161);
        assert_eq!(u64::try_from(t.ball(4).unwrap()).unwrap(), 161);
        let w = p.parse_word("a b a'").unwrap();
        assert_eq!(idx.radius_of(&p, &w).unwrap(), 3);
        let g = p.parse_word("a").unwrap();
        let h = p.parse_word("a b").unwrap();
        assert_eq!(idx.distance(&p, &g, &h).unwrap(), 1);
        // d(1, g) equals the stored radius for every element.
        for id in 0..idx.ball_size() {
            let w = idx.element(id).clone();
            assert_eq!(idx.radius_of(&p, &w).unwrap(), idx.radius_of_id(id));
        }
        let far = p.parse_word("a b a b a").unwrap();
        assert!(matches!(
            idx.radius_of(&p, &far),
            Err(Error::RadiusExceeded { required: 5, have: 4 })
        ));
    }

    #[test]
    fn index_lookups_dehn() {
        let p = load_builtin("surface2").unwrap();
        let (t, idx) = enumerate_with_index(&p, 4, &EnumerationOptions::default()).unwrap();
        assert_eq!(u64::try_from(t.ball(4).unwrap()).unwrap(), 3193);
        // The relator collapses to the identity.
        let r = p.relators()[0].clone();
        assert_eq!(idx.radius_of(&p, &r).unwrap(), 0);
        assert_eq!(idx.canonical_word(&p, &r).unwrap(), Word::empty());
        // A seven-letter prefix of the relator equals the inverse of the
        // missing letter's completion — still radius <= 4? No: its geodesic
        // length is 1 below only after the full relator; check a 5-prefix.
        let u = r.prefix(5);
        let v = idx.canonical_word(&p, &u).unwrap();
        assert_eq!(idx.radius_of(&p, &u).unwrap(), 3);
        assert_eq!(v.len(), 3);
        assert!(p.equal(&u, &v));
        let g = p.parse_word("a").unwrap();
        let h = p.parse_word("a b").unwrap();
        assert_eq!(idx.distance(&p, &g, &h).unwrap(), 1);
    }

    #[test]
    fn modular_group_distance_and_canonicals() {
        let p = load_builtin("c2c3").unwrap();
        let (_, idx) = enumerate_with_index(&p, 6, &EnumerationOptions::default()).unwrap();
        let b = p.parse_word("b").unwrap();
        let binv = p.parse_word("b'").unwrap();
        // b' = b·b, so the two differ by one edge.
        assert_eq!(idx.distance(&p, &b, &binv).unwrap(), 1);
        assert_eq!(p.distance(&b, &binv).unwrap(), 1);
        let e = Word::empty();
        let g = p.parse_word("a b a").unwrap();
        assert_eq!(idx.distance(&p, &e, &g).unwrap(), 3);
    }

    #[test]
    fn csv_and_element_lines_format() {
        let p = load_builtin("z").unwrap();
        let opts = EnumerationOptions {
            store_elements: true,
            ..Default::default()
        };
        let t = enumerate_growth(&p, 2, &opts).unwrap();
        assert_eq!(t.to_csv(), "n,sphere,ball\n0,1,1\n1,2,3\n2,2,5\n");
        assert_eq!(
            t.element_lines(p.alphabet()).unwrap(),
            "0\t1\n1\ta\n1\ta'\n2\ta a\n2\ta' a'\n"
        );
        let doc = t.to_json(p.alphabet());
        assert_eq!(doc["schema"], "growth-table/1");
        assert_eq!(doc["spheres"][1], "2");
        let plain = enumerate_growth(&p, 2, &EnumerationOptions::default()).unwrap();
        assert!(matches!(
            plain.element_lines(p.alphabet()),
            Err(Error::MissingElementStore)
        ));
    }

    /// Independent oracle: enumerate *all* words up to length n over the
    /// free group and count distinct freely reduced forms by length,
    /// reducing with a deliberately naive fixed-point deleter.
    #[test]
    fn naive_free_enumeration_agrees() {
        fn naive_reduce(mut letters: Vec<u16>) -> Vec<u16> {
            loop {
                let mut changed = false;
                let mut i = 0;
                while i + 1 < letters.len() {
                    if letters[i] ^ 1 == letters[i + 1] {
                        letters.drain(i..=i + 1);
                        changed = true;
                    } else {
                        i += 1;
                    }
                }
                if !changed {
                    return letters;
                }
            }
        }
        let max = 6usize;
        let mut classes: HashSet<Vec<u16>> = HashSet::new();
        let mut words: Vec<Vec<u16>> = vec![vec![]];
        for _ in 0..max {
            let mut next = Vec::new();
            for w in &words {
                for l in 0..4u16 {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            words = next;
            for w in &words {
                classes.insert(naive_reduce(w.clone()));
            }
        }
        classes.insert(vec![]);
        let mut by_len = vec![0u64; max + 1];
        for c in &classes {
            by_len[c.len()] += 1;
        }
        let p = load_builtin("f2").unwrap();
        let t = enumerate_growth(&p, max, &EnumerationOptions::default()).unwrap();
        assert_eq!(counts(&t), by_len);
    }

    /// Independent oracle for ℤ²: an element is its pair of exponent sums,
    /// and the geodesic length is the taxicab norm.
    #[test]
    fn naive_plane_enumeration_agrees() {
        let max = 6usize;
        let mut by_len = vec![0u64; max + 1];
        let m = max as i64;
        for x in -m..=m {
            for y in -m..=m {
                let n = x.abs() + y.abs();
                if n <= m {
                    by_len[n as usize] += 1;
                }
            }
        }
        let p = load_builtin("z2").unwrap();
        let t = enumerate_growth(&p, max, &EnumerationOptions::default()).unwrap();
        assert_eq!(counts(&t), by_len);
    }

    /// Full-depth surface enumeration; slow, so opt-in. The acceptance
    /// suite covers the same table with a time budget.
    #[test]
    #[ignore]
    fn surface_counts_full_depth() {
        let p = load_builtin("surface2").unwrap();
        let start = std::time::Instant::now();
        let t = enumerate_growth(&p, 8, &EnumerationOptions::default()).unwrap();
        eprintln!("surface R=8 in {:?}", start.elapsed());
        assert_eq!(
            counts(&t),
            [1, 8, 56, 392, 2736, 19096, 133288, 930328, 6493536]
        );
    }

    #[test]
    fn fingerprints_are_element_invariant_on_surface() {
        let p = load_builtin("surface2").unwrap();
        let scheme = FingerprintScheme::build(p.alphabet(), p.relators());
        assert_eq!(scheme.homs.len(), FP_HOMS);
        assert!(scheme.use_abelian);
        let r = p.relators()[0].clone();
        // Any product with a relator inserted keeps the fingerprint.
        let w = p.parse_word("a c b'").unwrap();
        let spliced = w.prefix(2).concat(&r).concat(&p.parse_word("b'").unwrap());
        assert_eq!(scheme.fingerprint(&w), scheme.fingerprint(&spliced));
        // And inequivalent words get distinct buckets here.
        let other = p.parse_word("a c b").unwrap();
        assert_ne!(scheme.fingerprint(&w), scheme.fingerprint(&other));
    }
}
