//! Exact coefficient domains: rationals, polynomials and rational functions in
//! one variable `t`, quadratic extensions `a + b√d`, and truncated power series.
//!
//! Nothing in here touches floating point.

mod poly;
mod quad;
mod ratfun;
mod series;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use poly::Poly;
pub use quad::QuadExt;
pub use ratfun::RatFun;
pub use series::{
    exp_series, geometric_series, inverse_pochhammer_series, q_exponential_series, Series,
};

pub type Rational = num_rational::BigRational;

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

pub trait Field: Ring + Div<Output = Self> {}

impl Ring for Rational {}
impl Field for Rational {}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/r"`, `"p"` or `"-p/r"`.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let err = || crate::Error::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(crate::Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// `"num/den"`, or just `"num"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `(u; t)_n = Π_{j=1}^{n} (1 - u t^{j-1})`.
pub fn pochhammer<R: Ring>(u: &R, t: &R, n: u32) -> R {
    let mut acc = R::one();
    let mut tp = R::one();
    for _ in 0..n {
        acc = acc * (R::one() - u.clone() * tp.clone());
        tp = tp * t.clone();
    }
    acc
}

/// An element of one of the exact coefficient domains.
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffValue {
    Rational(Rational),
    RatFun(RatFun),
    Quad(QuadExt),
}

impl CoeffValue {
    /// Specializes a symbolic value at `t`; rational and quadratic values pass
    /// through (quadratic values must be rational to specialize).
    pub fn specialize(&self, t: &Rational) -> crate::Result<Rational> {
        match self {
            CoeffValue::Rational(r) => Ok(r.clone()),
            CoeffValue::RatFun(f) => f.eval(t),
            CoeffValue::Quad(q) => q
                .as_rational()
                .ok_or_else(|| crate::Error::InvalidParameter(format!("{q} is irrational"))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CoeffValue::Rational(r) => r.is_zero(),
            CoeffValue::RatFun(f) => f.is_zero(),
            CoeffValue::Quad(q) => q.is_zero(),
        }
    }

    /// Sign of a numeric value; `None` for symbolic values.
    pub fn signum(&self) -> Option<i8> {
        match self {
            CoeffValue::Rational(r) => Some(if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }),
            CoeffValue::Quad(q) => Some(q.signum()),
            CoeffValue::RatFun(f) => f.as_constant().map(|c| {
                if c.is_zero() {
                    0
                } else if c.is_positive() {
                    1
                } else {
                    -1
                }
            }),
        }
    }
}

impl fmt::Display for CoeffValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffValue::Rational(r) => write!(f, "{}", fmt_rational(r)),
            CoeffValue::RatFun(r) => write!(f, "{r}"),
            CoeffValue::Quad(q) => write!(f, "{q}"),
        }
    }
}

impl From<Rational> for CoeffValue {
    fn from(r: Rational) -> Self {
        CoeffValue::Rational(r)
    }
}

impl From<RatFun> for CoeffValue {
    fn from(r: RatFun) -> Self {
        CoeffValue::RatFun(r)
    }
}

impl From<Poly> for CoeffValue {
    fn from(p: Poly) -> Self {
        CoeffValue::RatFun(RatFun::from(p))
    }
}

impl From<QuadExt> for CoeffValue {
    fn from(q: QuadExt) -> Self {
        CoeffValue::Quad(q)
    }
}

/// Serializes as the canonical string form.
impl Serialize for CoeffValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoeffValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(CoeffValue::Rational).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        let t = Poly::t();
        assert_eq!(pochhammer(&t, &t, 0), Poly::one());
        let expect = (Poly::one() - Poly::t()) * (Poly::one() - Poly::monomial(int(1), 2));
        assert_eq!(pochhammer(&t, &t, 2), expect);
        assert_eq!(pochhammer(&rat(1, 3), &rat(1, 3), 2), rat(16, 27));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-1/3").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&rat(2, 4)), "1/2");
        assert_eq!(fmt_rational(&int(-3)), "-3");
    }
}
