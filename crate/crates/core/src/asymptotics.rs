//! Exponential growth rate, polynomial correction, and two-sided constants
//! extracted from a fitted rational growth function.
//!
//! The dominant pole ρ of the generating function gives λ = 1/ρ; the pole's
//! multiplicity d gives the polynomial correction factor n^(d−1). Constants
//! are then chosen so that C·n^α·λ_lo^n ≤ 𝔖(n) ≤ D·n^α·λ_hi^n holds for every
//! tabulated n ≥ 1, with each interval endpoint picked on the safe side.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::enumerate::GrowthTable;
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::roots::{default_root_tolerance, isolate_real_roots, smallest_positive_root, RootInterval};
use crate::series::{RationalGrowthFunction, SeriesKind};

/// Growth-rate data read off a rational fit, with interval endpoints kept
/// exact so later inequality checks stay sound.
#[derive(Clone, Debug)]
pub struct GrowthAsymptotics {
    /// Two-sided enclosure of λ; a degenerate interval when the dominant
    /// pole is rational (free groups: exactly [3, 3]).
    pub lambda: (BigRational, BigRational),
    /// Polynomial correction exponent: sphere sizes grow like n^alpha·λ^n.
    pub alpha: u32,
    /// Largest constant with c_hat·n^alpha·λ_lo^n ≤ 𝔖(n) for all tabulated
    /// n ≥ 1 (computed against λ_hi, the conservative endpoint).
    pub c_hat: BigRational,
    /// Smallest constant with 𝔖(n) ≤ d_hat·n^alpha·λ_hi^n for all tabulated
    /// n ≥ 1 (computed against λ_lo).
    pub d_hat: BigRational,
    /// Soundness caveats: another pole whose modulus may tie the dominant
    /// one makes the n^alpha·λ^n shape unreliable, so flag it rather than
    /// silently report α.
    pub warnings: Vec<String>,
}

impl GrowthAsymptotics {
    pub fn lambda_is_exact(&self) -> bool {
        self.lambda.0 == self.lambda.1
    }
}

impl serde::Serialize for GrowthAsymptotics {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("GrowthAsymptotics", 6)?;
        st.serialize_field("lambda_lo", &self.lambda.0.to_string())?;
        st.serialize_field("lambda_hi", &self.lambda.1.to_string())?;
        st.serialize_field("alpha", &self.alpha)?;
        st.serialize_field("c_hat", &self.c_hat.to_string())?;
        st.serialize_field("d_hat", &self.d_hat.to_string())?;
        st.serialize_field("warnings", &self.warnings)?;
        st.end()
    }
}

/// Smallest positive real root of the denominator together with its
/// multiplicity, or `None` when the denominator has no positive real root
/// (polynomial growth denominators always keep one at t = 1, so `None`
/// signals a fit that is not a growth series at all).
pub fn smallest_positive_pole(den: &IntPoly) -> Option<RootInterval> {
    smallest_positive_root(den, &default_root_tolerance()).ok()
}

pub(crate) fn rat_pow(x: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = x.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn big(n: usize) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Scan the remaining poles for one whose modulus could tie (or undercut)
/// the dominant positive pole. Real poles come from exact isolation; a
/// single complex-conjugate pair is bounded through the product of all root
/// moduli, |den(0)/lead|. More than one pair is reported unresolved.
fn modulus_tie_warnings(den: &IntPoly, rho: &RootInterval) -> Vec<String> {
    let mut warnings = Vec::new();
    let tol = default_root_tolerance();
    // Margin for "could tie": 1 + 1e-6, exact.
    let margin = BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    let threshold = &rho.hi * &margin;

    let real_roots = isolate_real_roots(den, &tol);
    let mut real_mult = 0usize;
    let mut abs_prod_lo = BigRational::one();
    let mut abs_prod_hi = BigRational::one();
    for r in &real_roots {
        real_mult += r.multiplicity;
        let (alo, ahi) = r.abs_bounds();
        abs_prod_lo *= rat_pow(&alo, r.multiplicity);
        abs_prod_hi *= rat_pow(&ahi, r.multiplicity);
        if r.lo == rho.lo && r.hi == rho.hi {
            continue;
        }
        if alo <= threshold {
            warnings.push(format!(
                "pole in [{}, {}] has modulus within tolerance of the dominant pole; \
                 the n^alpha*lambda^n shape may oscillate",
                r.lo, r.hi
            ));
        }
    }

    let deg = den.degree();
    if real_mult < deg {
        let pairs = (deg - real_mult) / 2;
        // Product of all root moduli equals |constant/leading|.
        let prod_all = BigRational::new(den.coeff(0).abs(), den.leading().cloned().unwrap().abs());
        if pairs == 1 && abs_prod_lo.is_positive() {
            // modulus² of the lone pair = prod_all / (product of real moduli)
            let pair_sq_lo = &prod_all / &abs_prod_hi;
            let threshold_sq = &threshold * &threshold;
            if pair_sq_lo <= threshold_sq {
                warnings.push(
                    "complex pole pair has modulus within tolerance of the dominant pole; \
                     the n^alpha*lambda^n shape may oscillate"
                        .to_string(),
                );
            }
        } else {
            warnings.push(format!(
                "{} complex pole pairs; modulus separation from the dominant pole \
                 was not verified",
                pairs
            ));
        }
    }
    warnings
}

/// Reads λ, α, and the two-sided constants off a fitted spherical growth
/// function, checking them against the table that produced the fit.
///
/// Needs a table of radius ≥ 4 so the constants are anchored to more than
/// noise. Errors with [`Error::NoPositiveRoot`] when the denominator has no
/// positive real root.
pub fn extract_asymptotics(
    r: &RationalGrowthFunction,
    table: &GrowthTable,
) -> Result<GrowthAsymptotics> {
    if r.kind != SeriesKind::Spherical {
        return Err(Error::MalformedSeries(
            "asymptotics are extracted from a spherical fit; convert the volume fit first"
                .to_string(),
        ));
    }
    if table.radius() < 4 {
        return Err(Error::RadiusExceeded { required: 4, have: table.radius() });
    }

    let rho = smallest_positive_root(&r.denominator, &default_root_tolerance())
        .map_err(|_| Error::NoPositiveRoot)?;
    assert!(rho.lo.is_positive(), "dominant pole interval touches zero");
    let lambda_lo = BigRational::one() / &rho.hi;
    let lambda_hi = BigRational::one() / &rho.lo;
    let alpha = (rho.multiplicity - 1) as u32;

    let warnings = modulus_tie_warnings(&r.denominator, &rho);

    let mut c_hat: Option<BigRational> = None;
    let mut d_hat: Option<BigRational> = None;
    for n in 1..=table.radius() {
        let s_n = BigRational::from(table.sphere(n)?.clone());
        let shape = rat_pow(&big(n), alpha as usize);
        let c_cand = &s_n / (&shape * rat_pow(&lambda_hi, n));
        let d_cand = &s_n / (&shape * rat_pow(&lambda_lo, n));
        c_hat = Some(match c_hat {
            Some(c) if c <= c_cand => c,
            _ => c_cand,
        });
        d_hat = Some(match d_hat {
            Some(d) if d >= d_cand => d,
            _ => d_cand,
        });
    }
    let c_hat = c_hat.expect("radius >= 4 gives at least one sphere");
    let d_hat = d_hat.expect("radius >= 4 gives at least one sphere");

    // The defining property, re-checked on the same data with each λ
    // endpoint on its conservative side.
    assert!(c_hat.is_positive() && c_hat <= d_hat);
    for n in 1..=table.radius() {
        let s_n = BigRational::from(table.sphere(n)?.clone());
        let shape = rat_pow(&big(n), alpha as usize);
        assert!(&c_hat * &shape * rat_pow(&lambda_lo, n) <= s_n);
        assert!(s_n <= &d_hat * &shape * rat_pow(&lambda_hi, n));
    }

    Ok(GrowthAsymptotics { lambda: (lambda_lo, lambda_hi), alpha, c_hat, d_hat, warnings })
}
