//! Growth series as exact coefficient data, and recovery of the generating
//! function as a reduced rational function with integer coefficients.
//!
//! Fitting is deliberately paranoid: the minimal recurrence is synthesized
//! from a training prefix in exact rational arithmetic, and the result is
//! rejected outright unless it reproduces every held-out coefficient.

use crate::error::{Error, Result};
use crate::poly::{IntPoly, Poly, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// Coefficient n counts elements at distance exactly n.
    Spherical,
    /// Coefficient n counts elements at distance at most n.
    Volume,
}

/// Exact coefficients c₀..c_R of a growth series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoefficients {
    pub kind: SeriesKind,
    pub values: Vec<BigInt>,
}

impl SeriesCoefficients {
    pub fn new(kind: SeriesKind, values: Vec<BigInt>) -> Result<SeriesCoefficients> {
        if values.is_empty() {
            return Err(Error::MalformedSeries("empty coefficient list".into()));
        }
        if !values[0].is_one() {
            return Err(Error::MalformedSeries(format!(
                "c_0 must be 1 (the identity), got {}",
                values[0]
            )));
        }
        if kind == SeriesKind::Volume {
            for (n, w) in values.windows(2).enumerate() {
                if w[1] < w[0] {
                    return Err(Error::MalformedSeries(format!(
                        "volume series decreases at n={}: {} then {}",
                        n + 1,
                        w[0],
                        w[1]
                    )));
                }
            }
        }
        Ok(SeriesCoefficients { kind, values })
    }

    pub fn radius(&self) -> usize {
        self.values.len() - 1
    }
}

/// Prefix sums turn a spherical series into a volume series; first
/// differences invert that. The two directions are mutually inverse.
pub fn spherical_volume_convert(s: &SeriesCoefficients) -> Result<SeriesCoefficients> {
    match s.kind {
        SeriesKind::Spherical => {
            let mut acc = BigInt::zero();
            let values = s
                .values
                .iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect();
            SeriesCoefficients::new(SeriesKind::Volume, values)
        }
        SeriesKind::Volume => {
            let mut prev = BigInt::zero();
            let mut values = Vec::with_capacity(s.values.len());
            for c in &s.values {
                if *c < prev {
                    return Err(Error::MalformedSeries(format!(
                        "volume series decreases: {prev} then {c}"
                    )));
                }
                values.push(c - &prev);
                prev = c.clone();
            }
            SeriesCoefficients::new(SeriesKind::Spherical, values)
        }
    }
}

/// A growth series pinned down as numerator/denominator, with the window
/// the fit was trained on and the last index it was verified against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGrowthFunction {
    pub kind: SeriesKind,
    pub numerator: IntPoly,
    pub denominator: IntPoly,
    /// Coefficient indices [start, end] used by the recurrence synthesis.
    pub train_window: (usize, usize),
    /// Last coefficient index (training or held out) reproduced exactly.
    pub verified_through: usize,
}

impl RationalGrowthFunction {
    /// First `len` Taylor coefficients of numerator/denominator, by the
    /// recurrence sₙ = Nₙ − Σ_{j≥1} Dⱼ·s_{n−j} (valid since D(0) = 1).
    pub fn taylor_coefficients(&self, len: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for n in 0..len {
            let mut v = self.numerator.coeff(n);
            for j in 1..=self.denominator.degree().min(n) {
                v -= self.denominator.coeff(j) * &out[n - j];
            }
            out.push(v);
        }
        out
    }
}

impl fmt::Display for RationalGrowthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numerator, self.denominator)
    }
}

impl Serialize for RationalGrowthFunction {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("RationalGrowthFunction", 5)?;
        st.serialize_field("kind", &self.kind)?;
        let num: Vec<String> = self.numerator.coeffs().iter().map(|c| c.to_string()).collect();
        let den: Vec<String> = self.denominator.coeffs().iter().map(|c| c.to_string()).collect();
        st.serialize_field("numerator", &num)?;
        st.serialize_field("denominator", &den)?;
        st.serialize_field("train_window", &self.train_window)?;
        st.serialize_field("verified_through", &self.verified_through)?;
        st.end()
    }
}

/// Minimal linear recurrence for the prefix s[0..n_limit), as (L, C) where
/// C(t) = 1 + c₁t + ... has degree ≤ L and Σ_{j=0..L} Cⱼ·s_{n−j} = 0 for
/// every n in L..n_limit.
fn minimal_recurrence(s: &[BigRational], n_limit: usize) -> (usize, RatPoly) {
    let mut c = RatPoly::one();
    let mut b = RatPoly::one();
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_d = BigRational::one();
    for n in 0..n_limit {
        let mut d = s[n].clone();
        for i in 1..=l {
            d += c.coeff(i) * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
        } else if 2 * l <= n {
            let t = c.clone();
            let shift = Poly::monomial(&d / &last_d, m);
            c = c.sub(&shift.mul(&b));
            l = n + 1 - l;
            b = t;
            last_d = d;
            m = 1;
        } else {
            let shift = Poly::monomial(&d / &last_d, m);
            c = c.sub(&shift.mul(&b));
            m += 1;
        }
    }
    (l, c)
}

/// Fits the training prefix (the first 2·max_order + 2 coefficients) with
/// the minimal exact recurrence, converts it to a reduced rational
/// function, and rejects the result unless every remaining coefficient is
/// reproduced exactly. The held-out tail must have at least 2 entries.
pub fn fit_rational(c: &SeriesCoefficients, max_order: usize) -> Result<RationalGrowthFunction> {
    let train_len = 2 * max_order + 2;
    if c.values.len() < train_len + 2 {
        return Err(Error::InsufficientData {
            need: train_len + 2,
            have: c.values.len(),
            context: "training window plus a held-out tail of 2",
        });
    }
    fit_rational_windowed(c, max_order, train_len)
}

/// Same fit with an explicit training prefix length. A window shorter than
/// 2·max_order + 2 may leave the minimal recurrence undetermined; the
/// verification pass still rejects any candidate that misses a later
/// coefficient, so a short window fails loudly instead of fitting wrong.
pub fn fit_rational_windowed(
    c: &SeriesCoefficients,
    max_order: usize,
    train_len: usize,
) -> Result<RationalGrowthFunction> {
    let len = c.values.len();
    if train_len < 2 || len < train_len {
        return Err(Error::InsufficientData {
            need: train_len.max(2),
            have: len,
            context: "training window",
        });
    }
    let s: Vec<BigRational> = c.values.iter().map(|v| BigRational::from(v.clone())).collect();
    let (order, connection) = minimal_recurrence(&s, train_len);

    // Numerator = (series · connection) truncated below t^order; the
    // recurrence kills every later coefficient of the product.
    let series_prefix = RatPoly::new(s[..train_len].to_vec());
    let numerator_rat = series_prefix.mul_truncated(&connection, order.max(1));
    let (num, den) = reduce_pair(&numerator_rat, &connection);

    // The LFSR length overstates the order when numerator and denominator
    // share structure; what we cap is the order of the reduced recurrence.
    if den.degree() > max_order {
        return Err(Error::NoFit { max_order, found: den.degree() });
    }

    // Verify every coefficient — training and held out — before trusting
    // the fit, still in rational arithmetic.
    for (index, actual) in s.iter().enumerate() {
        let mut predicted = num.coeff(index);
        for j in 1..=den.degree().min(index) {
            predicted -= den.coeff(j) * &s[index - j];
        }
        if predicted != *actual {
            return Err(Error::Overfit {
                index,
                predicted: predicted.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    // An integer power series that is rational has an integer reduced form
    // with denominator constant 1; a fractional coefficient surviving to
    // here means the window is too short to pin the true function.
    let to_int = |p: &RatPoly| -> Result<IntPoly> {
        let mut coeffs = Vec::with_capacity(p.coeffs().len());
        for c in p.coeffs() {
            if !c.is_integer() {
                return Err(Error::MalformedSeries(format!(
                    "fit matched every coefficient yet has the fractional \
                     coefficient {c}; extend the series to pin an integer fit"
                )));
            }
            coeffs.push(c.to_integer());
        }
        Ok(Poly::new(coeffs))
    };

    Ok(RationalGrowthFunction {
        kind: c.kind,
        numerator: to_int(&num)?,
        denominator: to_int(&den)?,
        train_window: (0, train_len - 1),
        verified_through: len - 1,
    })
}

/// Cancel the gcd, then normalize so the denominator has constant term 1.
fn reduce_pair(num: &RatPoly, den: &RatPoly) -> (RatPoly, RatPoly) {
    let (num, den) = if num.is_zero() {
        (RatPoly::zero(), RatPoly::one())
    } else {
        let g = num.gcd(den);
        (num.exact_div(&g), den.exact_div(&g))
    };
    let d0 = den.coeff(0);
    assert!(!d0.is_zero(), "denominator with zero constant term after reduction");
    let inv = BigRational::one() / d0;
    (num.scale(&inv), den.scale(&inv))
}
