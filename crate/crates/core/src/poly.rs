use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Coefficient scalar for polynomials: any commutative ring whose elements
/// we can clone and compare. Integers, rationals, and floats all qualify.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + FromPrimitive
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + FromPrimitive
{
}

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<T>(Vec<T>);

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Poly<T> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Poly<T> {
        Poly(Vec::new())
    }

    pub fn one() -> Poly<T> {
        Poly(vec![T::one()])
    }

    pub fn constant(c: T) -> Poly<T> {
        Poly::new(vec![c])
    }

    /// The monomial c·tᵏ.
    pub fn monomial(c: T, k: usize) -> Poly<T> {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Poly(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> T {
        self.0.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree of the zero polynomial is reported as 0 alongside is_zero().
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.0.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.0.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Poly<T> {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.0[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() * T::from_usize(i + 1).expect("small integer fits scalar"))
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Poly<T> {
        Poly::new(self.0.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn add(&self, other: &Poly<T>) -> Poly<T> {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly<T>) -> Poly<T> {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly<T> {
        Poly::new(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Poly<T>) -> Poly<T> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Product truncated to degree < k (power-series style).
    pub fn mul_truncated(&self, other: &Poly<T>, k: usize) -> Poly<T> {
        let mut out = vec![T::zero(); k];
        for (i, a) in self.0.iter().enumerate().take(k) {
            for (j, b) in other.0.iter().enumerate() {
                if i + j >= k {
                    break;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar + Div<Output = T>> Poly<T> {
    /// Euclidean division; requires a field scalar. Returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &Poly<T>) -> (Poly<T>, Poly<T>) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dlead = divisor.leading().unwrap().clone();
        let dd = divisor.degree();
        if rem.len() < divisor.0.len() {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut quot = vec![T::zero(); rem.len() - divisor.0.len() + 1];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            let q = lead / dlead.clone();
            for (j, c) in divisor.0.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * c.clone();
            }
            quot[k] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Division that must be exact; panics on a nonzero remainder.
    pub fn exact_div(&self, divisor: &Poly<T>) -> Poly<T> {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly<T>) -> Poly<T> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        Poly::new(a.0.into_iter().map(|c| c / lead.clone()).collect())
    }

    /// Yun's square-free decomposition: returns [f₁, f₂, ...] with
    /// self = lc · ∏ fᵢ^i, each fᵢ monic square-free, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<Poly<T>> {
        assert!(!self.is_zero());
        let lead = self.leading().unwrap().clone();
        let f = Poly::new(self.0.iter().map(|c| c.clone() / lead.clone()).collect());
        if f.degree() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut out = Vec::new();
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                out.push(b);
                break;
            }
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.exact_div(&a);
            c = d.exact_div(&a);
        }
        out
    }
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl IntPoly {
    /// Gcd of the coefficients; zero polynomial has content zero.
    pub fn content(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Poly::new(self.0.iter().map(|x| x / &c).collect())
    }

    pub fn to_rational(&self) -> RatPoly {
        Poly::new(self.0.iter().map(|c| BigRational::from(c.clone())).collect())
    }

    pub fn display(&self, var: &str) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude().to_string();
            let term = if k == 0 {
                mag
            } else {
                let pow = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                if c.magnitude().is_one() {
                    pow
                } else {
                    format!("{mag}*{pow}")
                }
            };
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
                s.push_str(&term);
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
                s.push_str(&term);
            }
        }
        s
    }
}

impl RatPoly {
    /// Clear denominators and divide out the integer content; the sign of the
    /// leading coefficient is preserved.
    pub fn primitive_integer(&self) -> IntPoly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &lcm).to_integer()).collect();
        Poly::new(ints).primitive_part()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}
