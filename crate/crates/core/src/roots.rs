//! Real-root isolation for integer polynomials, in exact rational
//! arithmetic. Roots are returned as closed intervals with rational
//! endpoints; an interval with `lo == hi` is an exact root. Every
//! comparison is exact, so the intervals are certificates, not estimates.

use crate::error::{Error, Result};
use crate::poly::{IntPoly, Poly, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Interval known to contain exactly one real root of the polynomial it
/// was isolated from, together with that root's multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Interval enclosing the absolute value of the root.
    pub fn abs_bounds(&self) -> (BigRational, BigRational) {
        if !self.hi.is_positive() {
            (-self.hi.clone(), -self.lo.clone())
        } else if !self.lo.is_negative() {
            (self.lo.clone(), self.hi.clone())
        } else {
            let m = std::cmp::max(-self.lo.clone(), self.hi.clone());
            (BigRational::zero(), m)
        }
    }
}

/// Default isolation width: 10⁻⁹.
pub fn default_root_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of a square-free polynomial: g, g′, then negated remainders.
fn sturm_chain(g: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![g.clone(), g.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(r.neg());
    }
    chain.pop();
    chain
}

fn sign_variations(chain: &[RatPoly], x: &BigRational) -> usize {
    let mut prev = 0i8;
    let mut v = 0;
    for p in chain {
        let s = sign(&p.eval(x));
        if s != 0 {
            if prev != 0 && s != prev {
                v += 1;
            }
            prev = s;
        }
    }
    v
}

/// Number of distinct roots in the open interval (a, b). Requires
/// g(a) ≠ 0 and g(b) ≠ 0.
fn count_open(chain: &[RatPoly], a: &BigRational, b: &BigRational) -> usize {
    let va = sign_variations(chain, a);
    let vb = sign_variations(chain, b);
    debug_assert!(va >= vb);
    va - vb
}

/// Strict upper bound on the absolute value of every root: 1 + max |aᵢ/aₙ|.
fn cauchy_bound(g: &RatPoly) -> BigRational {
    let lead = g.leading().expect("nonzero polynomial").clone();
    let mut m = BigRational::zero();
    for c in &g.coeffs()[..g.degree()] {
        let q = (c / &lead).abs();
        if q > m {
            m = q;
        }
    }
    m + BigRational::one()
}

fn divisors_up_to(n: &BigInt, cap: u64) -> Option<Vec<u64>> {
    let m = n.magnitude().to_u64()?;
    if m == 0 || m > cap {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            out.push(m / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// All rational roots of an integer polynomial with nonzero constant term,
/// by exhausting p/q with p | a₀ and q | aₙ. Returns None when the
/// constant or leading coefficient is too large to factor cheaply.
fn rational_roots(p: &IntPoly) -> Option<Vec<BigRational>> {
    const CAP: u64 = 1_000_000;
    let ps = divisors_up_to(&p.coeff(0), CAP)?;
    let qs = divisors_up_to(p.leading().unwrap(), CAP)?;
    let pr = p.to_rational();
    let mut roots = Vec::new();
    for &num in &ps {
        for &den in &qs {
            for s in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(s) * BigInt::from(num), BigInt::from(den));
                if pr.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// Rational roots split off a square-free polynomial. When `complete` is
/// true the detection exhausted every candidate, so `rest` has no rational
/// root at all — in particular no bisection midpoint can ever land on one.
struct Deflation {
    rational: Vec<BigRational>,
    rest: RatPoly,
    complete: bool,
}

fn deflate_rational_roots(g: &RatPoly) -> Deflation {
    match rational_roots(&g.primitive_integer()) {
        None => Deflation { rational: Vec::new(), rest: g.clone(), complete: false },
        Some(rs) => {
            let mut rest = g.clone();
            for r in &rs {
                let lin = RatPoly::new(vec![-r.clone(), BigRational::one()]);
                rest = rest.exact_div(&lin);
            }
            Deflation { rational: rs, rest, complete: true }
        }
    }
}

/// Remove the factor tᵏ, returning (k, remaining polynomial).
fn strip_zero_root(p: &IntPoly) -> (usize, IntPoly) {
    let k = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    (k, Poly::new(p.coeffs()[k..].to_vec()))
}

/// Multiplicity lookup once a root is pinned to an exact value.
fn multiplicity_exact(parts: &[RatPoly], r: &BigRational) -> usize {
    parts
        .iter()
        .position(|f| f.eval(r).is_zero())
        .expect("root belongs to one square-free factor")
        + 1
}

/// Multiplicity lookup for a root isolated in (lo, hi).
fn multiplicity_interval(parts: &[RatPoly], lo: &BigRational, hi: &BigRational) -> usize {
    for (i, f) in parts.iter().enumerate() {
        if f.degree() == 0 {
            continue;
        }
        let chain = sturm_chain(f);
        if count_open(&chain, lo, hi) == 1 {
            return i + 1;
        }
    }
    unreachable!("isolated root belongs to one square-free factor")
}

fn half(x: &BigRational) -> BigRational {
    x / BigRational::from_integer(BigInt::from(2))
}

/// The smallest positive real root of `p`, as an interval of width at most
/// `tol` (exact when the root is rational with small numerator and
/// denominator), together with its multiplicity in `p`.
pub fn smallest_positive_root(p: &IntPoly, tol: &BigRational) -> Result<RootInterval> {
    assert!(!p.is_zero(), "zero polynomial has no isolated roots");
    let (_, stripped) = strip_zero_root(p);
    if stripped.degree() == 0 {
        return Err(Error::NoPositiveRoot);
    }
    let parts = stripped.to_rational().squarefree_decomposition();
    let g = parts.iter().fold(RatPoly::one(), |acc, f| acc.mul(f));
    let defl = deflate_rational_roots(&g);
    let zero = BigRational::zero();
    let r_min = defl.rational.iter().find(|r| r.is_positive()).cloned();

    let mut rest = defl.rest;
    if rest.degree() == 0 {
        // Every root is rational and already in hand.
        return match r_min {
            Some(r) => Ok(RootInterval {
                lo: r.clone(),
                hi: r.clone(),
                multiplicity: multiplicity_exact(&parts, &r),
            }),
            None => Err(Error::NoPositiveRoot),
        };
    }

    // Hunt only below the smallest positive rational root (if any): an
    // irrational root beyond it cannot be the minimum.
    let mut chain = sturm_chain(&rest);
    let bound = cauchy_bound(&rest);
    let cap = match &r_min {
        Some(r) if *r < bound => r.clone(),
        _ => bound,
    };
    if count_open(&chain, &zero, &cap) == 0 {
        return match r_min {
            Some(r) => Ok(RootInterval {
                lo: r.clone(),
                hi: r.clone(),
                multiplicity: multiplicity_exact(&parts, &r),
            }),
            None => Err(Error::NoPositiveRoot),
        };
    }

    // Bisection, keeping the smallest positive root of `rest` inside
    // (lo, hi); endpoints are never roots of `rest`.
    let mut lo = zero;
    let mut hi = cap;
    loop {
        if lo.is_positive()
            && &hi - &lo <= *tol
            && count_open(&chain, &lo, &hi) == 1
            && !g.eval(&lo).is_zero()
            && !g.eval(&hi).is_zero()
        {
            let multiplicity = multiplicity_interval(&parts, &lo, &hi);
            return Ok(RootInterval { lo, hi, multiplicity });
        }
        let mid = half(&(&lo + &hi));
        if rest.eval(&mid).is_zero() {
            // Only reachable when rational-root detection was skipped for
            // oversized coefficients; deflate the hit and keep going.
            debug_assert!(!defl.complete);
            let lin = RatPoly::new(vec![-mid.clone(), BigRational::one()]);
            rest = rest.exact_div(&lin);
            chain = sturm_chain(&rest);
            if count_open(&chain, &lo, &mid) == 0 {
                let multiplicity = multiplicity_exact(&parts, &mid);
                return Ok(RootInterval { lo: mid.clone(), hi: mid, multiplicity });
            }
            hi = mid;
        } else if count_open(&chain, &lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Every real root of `p`, isolated to width `tol`, sorted by position.
pub fn isolate_real_roots(p: &IntPoly, tol: &BigRational) -> Vec<RootInterval> {
    assert!(!p.is_zero(), "zero polynomial has no isolated roots");
    let (t_mult, stripped) = strip_zero_root(p);
    let mut out = Vec::new();
    if t_mult > 0 {
        out.push(RootInterval {
            lo: BigRational::zero(),
            hi: BigRational::zero(),
            multiplicity: t_mult,
        });
    }
    if stripped.degree() == 0 {
        return out;
    }
    let parts = stripped.to_rational().squarefree_decomposition();
    let g = parts.iter().fold(RatPoly::one(), |acc, f| acc.mul(f));
    let defl = deflate_rational_roots(&g);
    for r in &defl.rational {
        out.push(RootInterval {
            lo: r.clone(),
            hi: r.clone(),
            multiplicity: multiplicity_exact(&parts, r),
        });
    }

    let mut rest = defl.rest;
    if rest.degree() >= 1 {
        let mut chain = sturm_chain(&rest);
        let bound = cauchy_bound(&rest);
        let mut work = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = work.pop() {
            if count_open(&chain, &a, &b) == 0 {
                continue;
            }
            let mid = half(&(&a + &b));
            if rest.eval(&mid).is_zero() {
                // Only on the oversized-coefficient path; see above.
                debug_assert!(!defl.complete);
                out.push(RootInterval {
                    lo: mid.clone(),
                    hi: mid.clone(),
                    multiplicity: multiplicity_exact(&parts, &mid),
                });
                let lin = RatPoly::new(vec![-mid.clone(), BigRational::one()]);
                rest = rest.exact_div(&lin);
                chain = sturm_chain(&rest);
                work.push((a, mid.clone()));
                work.push((mid, b));
                continue;
            }
            if count_open(&chain, &a, &b) == 1
                && &b - &a <= *tol
                && !g.eval(&a).is_zero()
                && !g.eval(&b).is_zero()
            {
                let multiplicity = multiplicity_interval(&parts, &a, &b);
                out.push(RootInterval { lo: a, hi: b, multiplicity });
                continue;
            }
            work.push((a, mid.clone()));
            work.push((mid, b));
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}
