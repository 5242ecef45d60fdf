use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Poly, Rational, Ring};
use crate::error::{Error, Result};

/// Rational function `num / den` in `t`, kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Builds and normalizes `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = Rational::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn t() -> Self {
        Poly::t().into()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::constant(c).into()
    }

    /// `1 / (1 - t^k)`.
    pub fn inv_one_minus_t_pow(k: u32) -> Self {
        Self::normalized(Poly::one(), Poly::one_minus_t_pow(k))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        (self.den.degree() == Some(0)).then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_poly().and_then(Poly::as_constant)
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(t) / d)
    }

    pub fn inv(&self) -> Result<Self> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl Ring for RatFun {}
impl Field for RatFun {}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }
}

impl From<Rational> for RatFun {
    fn from(c: Rational) -> Self {
        RatFun::constant(c)
    }
}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::normalized(&self.num + &o.num, self.den.clone());
        }
        RatFun::normalized(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        RatFun::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

/// Panics on division by the zero function; use [`RatFun::inv`] to get an error instead.
impl Div<&RatFun> for &RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFun::normalized(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: RatFun) -> RatFun {
                (&self).$m(&o)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: &RatFun) -> RatFun {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if let Some(p) = self.as_poly() {
            return write!(f, "{p}");
        }
        // print with denominator constant term 1 when possible: 1/(1 - t^2)
        let c = self.den.coeff(0);
        let (n, d) = if c.is_zero() {
            (self.num.clone(), self.den.clone())
        } else {
            let inv = Rational::one() / c;
            (self.num.scale(&inv), self.den.scale(&inv))
        };
        write!(f, "{}/{}", wrap(&n), wrap(&d))
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat};
    use super::*;

    #[test]
    fn reduces_to_canonical_form() {
        let a = RatFun::new(Poly::one_minus_t_pow(2), Poly::from_ints(&[2, -2])).unwrap();
        assert_eq!(a, RatFun::from(Poly::new(vec![rat(1, 2), rat(1, 2)])));
        let b = RatFun::inv_one_minus_t_pow(1);
        assert_eq!(b.denom(), &Poly::from_ints(&[-1, 1]));
        assert_eq!(b.numer(), &Poly::from_ints(&[-1]));
        assert!(RatFun::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn arithmetic_and_eval() {
        let x = RatFun::inv_one_minus_t_pow(1);
        let y = RatFun::inv_one_minus_t_pow(2);
        let s = &x + &y;
        let t = rat(1, 3);
        assert_eq!(s.eval(&t).unwrap(), rat(3, 2) + rat(9, 8));
        assert_eq!((&x / &y).as_poly().cloned(), Some(Poly::from_ints(&[1, 1])));
        assert!(x.eval(&int(1)).is_err());
        assert_eq!(y.to_string(), "1/(1 - t^2)");
    }
}
