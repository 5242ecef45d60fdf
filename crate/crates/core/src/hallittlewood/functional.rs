use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{hl_q_polynomial, to_power_sums, PowerSumExpansion, MAX_ORACLE_DEGREE};
use crate::error::{Error, Result};
use crate::exactalg::{fmt_rational, QuadExt, RatFun, Rational};
use crate::partitions::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A linear functional on symmetric functions given by its values on the
/// power sums `p_ρ`.
#[derive(Clone, Debug, PartialEq)]
pub enum HlFunctional {
    /// `p_{(2^n)} ↦ 1` (even) or `p_{(2^n,1)} ↦ 1` (odd), all other `p_ρ ↦ 0`.
    Plancherel(Parity),
    /// Principal specialization `x = c_m(1, t, …, t^{m-1})`, `m = None` for `∞`,
    /// with `c_m² = (1-t²)/(1-t^{2m})`; `t` is fixed.
    Principal { m: Option<u32>, t: Rational },
    /// Two-variable specialization `x = (a₁, a₂)`.
    TwoPoint { a1: Rational, a2: Rational },
}

pub fn plancherel_functional(parity: Parity) -> HlFunctional {
    HlFunctional::Plancherel(parity)
}

/// `m = None` gives `Φ_∞`. Requires `m ≥ 1` and `-1 < t < 0`.
pub fn principal_functional(m: Option<u32>, t: Rational) -> Result<HlFunctional> {
    if m == Some(0) {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if !(t < Rational::zero() && t > -Rational::one()) {
        return Err(Error::InvalidParameter(format!("t = {} is not in (-1, 0)", fmt_rational(&t))));
    }
    Ok(HlFunctional::Principal { m, t })
}

/// Requires `a₁ > 0 > a₂`, `a₁² + a₂² = 1` and `a₁ > |a₂|`.
pub fn two_point_functional(a1: Rational, a2: Rational) -> Result<HlFunctional> {
    let ok = a1.is_positive()
        && a2.is_negative()
        && &a1 * &a1 + &a2 * &a2 == Rational::one()
        && a1 > a2.abs();
    if !ok {
        return Err(Error::InvalidParameter(format!(
            "({}, {}) is not a point with a1 > |a2|, a2 < 0 on the unit circle",
            fmt_rational(&a1),
            fmt_rational(&a2)
        )));
    }
    Ok(HlFunctional::TwoPoint { a1, a2 })
}

fn one_minus_pow(t: &Rational, k: u32) -> Rational {
    Rational::one() - t.pow(k as i32)
}

impl HlFunctional {
    /// Parity tag, for the Plancherel functionals.
    pub fn parity(&self) -> Option<Parity> {
        match self {
            HlFunctional::Plancherel(p) => Some(*p),
            _ => None,
        }
    }

    /// The parameter `t` a principal functional is tied to.
    pub fn fixed_t(&self) -> Option<&Rational> {
        match self {
            HlFunctional::Principal { t, .. } => Some(t),
            _ => None,
        }
    }

    /// `c_m²` for a principal functional at its `t`.
    pub fn c_squared(&self) -> Option<Rational> {
        match self {
            HlFunctional::Principal { m, t } => Some(match m {
                None => one_minus_pow(t, 2),
                Some(m) => one_minus_pow(t, 2) / one_minus_pow(t, 2 * m),
            }),
            _ => None,
        }
    }

    /// `c^n` where `c² = d`.
    fn c_pow(d: &Rational, n: usize) -> QuadExt {
        let half = d.pow((n / 2) as i32);
        if n.is_multiple_of(2) {
            QuadExt::rational(half)
        } else {
            QuadExt::new(Rational::zero(), half, d)
        }
    }

    /// `Φ(p_ρ)` as an exact number; principal functionals use their own `t`.
    pub fn value_p(&self, rho: &Partition) -> QuadExt {
        match self {
            HlFunctional::Plancherel(_) | HlFunctional::TwoPoint { .. } => {
                QuadExt::rational(self.value_p_rational(rho).expect("rational family"))
            }
            HlFunctional::Principal { m, t } => {
                let d = self.c_squared().expect("principal");
                let mut acc = Self::c_pow(&d, rho.size());
                for &k in rho.parts() {
                    let f = match m {
                        None => Rational::one() / one_minus_pow(t, k),
                        Some(m) => one_minus_pow(t, m * k) / one_minus_pow(t, k),
                    };
                    acc = acc * QuadExt::rational(f);
                }
                acc
            }
        }
    }

    /// `Φ(p_ρ)` for the families whose values do not depend on `t`.
    pub fn value_p_rational(&self, rho: &Partition) -> Option<Rational> {
        match self {
            HlFunctional::Plancherel(parity) => {
                let twos = rho.parts().iter().filter(|&&p| p == 2).count();
                let ones = rho.mult(1);
                let shape_ok = twos + ones == rho.len();
                let hit = match parity {
                    Parity::Even => shape_ok && ones == 0,
                    Parity::Odd => shape_ok && ones == 1,
                };
                Some(if hit { Rational::one() } else { Rational::zero() })
            }
            HlFunctional::TwoPoint { a1, a2 } => Some(
                rho.parts()
                    .iter()
                    .map(|&k| a1.pow(k as i32) + a2.pow(k as i32))
                    .fold(Rational::one(), |a, b| a * b),
            ),
            HlFunctional::Principal { .. } => None,
        }
    }

    /// Applies the functional to an expansion with coefficients evaluated at `t`.
    pub fn apply(&self, e: &PowerSumExpansion, t: &Rational) -> Result<QuadExt> {
        if let Some(own) = self.fixed_t() {
            if own != t {
                return Err(Error::InvalidParameter(format!(
                    "functional is tied to t = {}, asked for t = {}",
                    fmt_rational(own),
                    fmt_rational(t)
                )));
            }
        }
        Ok(e.evaluate(|c| QuadExt::rational(c.eval(t)), |rho| self.value_p(rho)))
    }

    /// Applies a `t`-independent functional symbolically.
    pub fn apply_symbolic(&self, e: &PowerSumExpansion) -> Result<RatFun> {
        if matches!(self, HlFunctional::Principal { .. }) {
            return Err(Error::InvalidParameter("principal functionals need a numeric t".into()));
        }
        Ok(e.evaluate(
            |c| RatFun::from(c.clone()),
            |rho| RatFun::constant(self.value_p_rational(rho).expect("rational family")),
        ))
    }

    /// `Φ(Q_λ)` at `t`, through the power-sum expansion when `|λ|` is within
    /// the oracle range and otherwise by direct evaluation at the
    /// specialization point (or the closed form, for `Φ_∞`).
    pub fn apply_q(&self, lambda: &Partition, t: &Rational) -> Result<QuadExt> {
        if lambda.size() <= MAX_ORACLE_DEGREE {
            return self.apply(&*to_power_sums(lambda)?, t);
        }
        match self {
            HlFunctional::Principal { m: None, t: own } => {
                if own != t {
                    return Err(Error::InvalidParameter("t differs from the functional's t".into()));
                }
                Ok(self.principal_q_closed_form(lambda).expect("principal"))
            }
            _ => self.apply_q_at_point(lambda, t),
        }
    }

    /// `Φ(Q̃_λ)` at `t`.
    pub fn apply_q_tilde(&self, lambda: &Partition, t: &Rational) -> Result<QuadExt> {
        let v = self.apply_q(lambda, t)?;
        Ok(if lambda.n_stat().is_multiple_of(2) { v } else { -v })
    }

    /// The finitely many variables of a two-point or finite principal
    /// specialization.
    pub fn point(&self) -> Option<Vec<QuadExt>> {
        match self {
            HlFunctional::TwoPoint { a1, a2 } => {
                Some(vec![QuadExt::rational(a1.clone()), QuadExt::rational(a2.clone())])
            }
            HlFunctional::Principal { m: Some(m), t } => {
                let c = QuadExt::sqrt(&self.c_squared()?);
                Some((0..*m).map(|i| c.clone() * QuadExt::rational(t.pow(i as i32))).collect())
            }
            _ => None,
        }
    }

    /// `Φ(Q_λ)` by evaluating `Q_λ(x₁..x_m; t)` at the specialization point.
    pub fn apply_q_at_point(&self, lambda: &Partition, t: &Rational) -> Result<QuadExt> {
        let point = self.point().ok_or_else(|| {
            Error::InvalidParameter(format!("{self} is not a finite specialization"))
        })?;
        if let Some(own) = self.fixed_t() {
            if own != t {
                return Err(Error::InvalidParameter("t differs from the functional's t".into()));
            }
        }
        let q = hl_q_polynomial(lambda, point.len())?;
        Ok(q.evaluate(|c| QuadExt::rational(c.eval(t)), &point))
    }

    /// Closed form `Φ_m(Q_λ) = c_m^{|λ|} t^{n(λ)} Π_{i ≤ ℓ(λ)} (1 - t^{m-i+1})`,
    /// zero when `ℓ(λ) > m`; `Φ_∞(Q_λ) = c_∞^{|λ|} t^{n(λ)}`.
    pub fn principal_q_closed_form(&self, lambda: &Partition) -> Option<QuadExt> {
        let HlFunctional::Principal { m, t } = self else { return None };
        let d = self.c_squared()?;
        let mut val = t.pow(lambda.n_stat() as i32);
        if let Some(m) = *m {
            if lambda.len() > m as usize {
                return Some(QuadExt::zero());
            }
            for i in 1..=lambda.len() as u32 {
                val *= one_minus_pow(t, m - i + 1);
            }
        }
        Some(Self::c_pow(&d, lambda.size()) * QuadExt::rational(val))
    }

    /// `Φ(p₁)`, which fixes the odd normalization.
    pub fn value_p1(&self) -> QuadExt {
        self.value_p(&Partition::new(vec![1]).expect("valid"))
    }
}

impl fmt::Display for HlFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HlFunctional::Plancherel(p) => write!(f, "plancherel-{p}"),
            HlFunctional::Principal { m: Some(m), t } => write!(f, "principal(m={m}, t={})", fmt_rational(t)),
            HlFunctional::Principal { m: None, t } => write!(f, "principal(m=inf, t={})", fmt_rational(t)),
            HlFunctional::TwoPoint { a1, a2 } => {
                write!(f, "two-point({}, {})", fmt_rational(a1), fmt_rational(a2))
            }
        }
    }
}
