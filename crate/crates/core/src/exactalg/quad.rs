use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Field, Rational, Ring};
use crate::error::{Error, Result};

/// `a + b√d` over the rationals. The radicand is stored as a squarefree
/// integer other than 1 (as far as trial division can tell), or `None` when
/// the value is rational.
///
/// Mixing two irrational values with different radicands panics in the
/// operator impls; the `try_*` methods report it as an error instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: Option<BigInt>,
}

const TRIAL_LIMIT: u64 = 100_000;

/// Splits `n > 0` as `s² · r`. Square factors of primes below the trial
/// limit are removed, as is a leftover perfect square.
fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut r = n.clone();
    let mut s = BigInt::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let pp = BigInt::from(p * p);
        if pp > r {
            break;
        }
        while (&r % &pp).is_zero() {
            r /= &pp;
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = num_integer::Roots::sqrt(&r);
    if &root * &root == r {
        s *= root;
        r = BigInt::one();
    }
    (s, r)
}

impl QuadExt {
    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: None }
    }

    /// `a + b√d`; `d` is reduced so that equal numbers compare equal.
    pub fn new(a: Rational, b: Rational, d: &Rational) -> Self {
        if b.is_zero() || d.is_zero() {
            return Self::rational(a);
        }
        // √(n/m) = √(n m) / m
        let nm = d.numer() * d.denom();
        let sign = if nm.is_negative() { -BigInt::one() } else { BigInt::one() };
        let (s, r) = square_split(&nm.abs());
        let r = r * sign;
        let coef = b * Rational::new(s, d.denom().clone());
        if r.is_one() {
            return Self::rational(a + coef);
        }
        QuadExt { a, b: coef, d: Some(r) }
    }

    /// `√d` for a rational `d`.
    pub fn sqrt(d: &Rational) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        self.d.as_ref()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.d.is_none().then(|| self.a.clone())
    }

    fn common_radicand(&self, o: &QuadExt) -> Result<Option<BigInt>> {
        match (&self.d, &o.d) {
            (Some(x), Some(y)) if x != y => Err(Error::RadicandMismatch),
            (Some(x), _) | (None, Some(x)) => Ok(Some(x.clone())),
            (None, None) => Ok(None),
        }
    }

    fn build(a: Rational, b: Rational, d: Option<BigInt>) -> Self {
        match d {
            Some(d) if !b.is_zero() => QuadExt { a, b, d: Some(d) },
            _ => Self::rational(a),
        }
    }

    pub fn try_add(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.common_radicand(o)?;
        Ok(Self::build(&self.a + &o.a, &self.b + &o.b, d))
    }

    pub fn try_mul(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.common_radicand(o)?;
        let dd = d.clone().map(Rational::from_integer).unwrap_or_else(Rational::zero);
        let a = &self.a * &o.a + &self.b * &o.b * dd;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(Self::build(a, b, d))
    }

    /// `a - b√d`.
    pub fn conj(&self) -> QuadExt {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// `a² - d b²`.
    pub fn norm(&self) -> Rational {
        match &self.d {
            None => &self.a * &self.a,
            Some(d) => &self.a * &self.a - &self.b * &self.b * Rational::from_integer(d.clone()),
        }
    }

    pub fn inv(&self) -> Result<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(Self::build(c.a / &n, c.b / &n, c.d))
    }

    pub fn try_div(&self, o: &QuadExt) -> Result<QuadExt> {
        self.try_mul(&o.inv()?)
    }

    /// Exact sign of the real number `a + b√d`. Panics for a negative radicand.
    pub fn signum(&self) -> i8 {
        fn sg(x: &Rational) -> i8 {
            if x.is_zero() {
                0
            } else if x.is_positive() {
                1
            } else {
                -1
            }
        }
        let (sa, sb) = (sg(&self.a), sg(&self.b));
        let Some(d) = &self.d else { return sa };
        assert!(d.is_positive(), "sign of a non-real quadratic number");
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with b²d
        match (&self.a * &self.a).cmp(&(&self.b * &self.b * Rational::from_integer(d.clone()))) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn pow_i(&self, e: u32) -> QuadExt {
        Ring::pow(self, e)
    }
}

impl Ring for QuadExt {}
impl Field for QuadExt {}

impl Zero for QuadExt {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        self.try_add(&o).expect("radicand mismatch")
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: QuadExt) -> QuadExt {
        self.try_add(&-o).expect("radicand mismatch")
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        self.try_mul(&o).expect("radicand mismatch")
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, o: QuadExt) -> QuadExt {
        self.try_div(&o).expect("radicand mismatch or division by zero")
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = &self.d else {
            return write!(f, "{}", fmt_rational(&self.a));
        };
        let root = format!("sqrt({d})");
        let babs = self.b.abs();
        let irr = if babs.is_one() { root } else { format!("{}*{root}", fmt_rational(&babs)) };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{irr}")
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {irr}", fmt_rational(&self.a))
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExt({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat};
    use super::*;

    #[test]
    fn canonical_radicand() {
        assert_eq!(QuadExt::sqrt(&int(4)), QuadExt::rational(int(2)));
        assert_eq!(QuadExt::sqrt(&int(8)), QuadExt::new(int(0), int(2), &int(2)));
        assert_eq!(QuadExt::sqrt(&rat(1, 2)), QuadExt::new(int(0), rat(1, 2), &int(2)));
        assert_eq!(QuadExt::sqrt(&rat(9, 4)).as_rational(), Some(rat(3, 2)));
    }

    #[test]
    fn arithmetic() {
        let r2 = QuadExt::sqrt(&int(2));
        assert_eq!(r2.clone() * r2.clone(), QuadExt::rational(int(2)));
        let x = QuadExt::rational(int(1)) + r2.clone();
        let y = x.inv().unwrap();
        assert_eq!(x * y, QuadExt::one());
        assert!(r2.try_add(&QuadExt::sqrt(&int(3))).is_err());
    }

    #[test]
    fn exact_sign() {
        // 3 - 2√2 > 0, 1 - √2 < 0
        assert_eq!(QuadExt::new(int(3), int(-2), &int(2)).signum(), 1);
        assert_eq!(QuadExt::new(int(1), int(-1), &int(2)).signum(), -1);
        assert_eq!(QuadExt::new(int(-7), int(5), &int(2)).signum(), 1);
        assert_eq!(QuadExt::zero().signum(), 0);
        assert_eq!(QuadExt::new(int(0), int(1), &int(2)).to_string(), "sqrt(2)");
        assert_eq!(QuadExt::new(rat(1, 2), int(-3), &int(5)).to_string(), "1/2 - 3*sqrt(5)");
    }
}
