use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{fmt_rational, Rational};

/// A point `ω = (α, β)` of the boundary parameter space at a fixed `t ∈ (0, 1)`.
///
/// Besides finitely many rational `α_i`, `α` may contain geometric blocks
/// `(u, r)` standing for the infinite run `u, ur, ur², …` with `0 ≤ r < 1`;
/// the Haar point `α_i = (1-t)t^{i-1}` is one such block.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaPoint {
    alpha: Vec<Rational>,
    alpha_geometric: Vec<(Rational, Rational)>,
    beta: Vec<Rational>,
    t: Rational,
}

fn nonincreasing_nonneg(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative()) && v.windows(2).all(|w| w[0] >= w[1])
}

impl OmegaPoint {
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>, t: Rational) -> Result<Self> {
        Self::with_geometric(alpha, Vec::new(), beta, t)
    }

    pub fn with_geometric(
        alpha: Vec<Rational>,
        alpha_geometric: Vec<(Rational, Rational)>,
        beta: Vec<Rational>,
        t: Rational,
    ) -> Result<Self> {
        if !(t.is_positive() && t < Rational::one()) {
            return Err(Error::InvalidParameter(format!("t = {} is not in (0, 1)", fmt_rational(&t))));
        }
        if !nonincreasing_nonneg(&alpha) || !nonincreasing_nonneg(&beta) {
            return Err(Error::InvalidParameter("alpha and beta must be nonincreasing and nonnegative".into()));
        }
        if alpha_geometric.iter().any(|(u, r)| u.is_negative() || r.is_negative() || *r >= Rational::one()) {
            return Err(Error::InvalidParameter("geometric blocks need u ≥ 0 and 0 ≤ r < 1".into()));
        }
        let w = OmegaPoint { alpha, alpha_geometric, beta, t };
        if w.gamma_tilde().is_negative() {
            return Err(Error::InvalidParameter(format!(
                "sum(alpha) + sum(beta)/(1-t) = {} exceeds 1",
                fmt_rational(&(Rational::one() - w.gamma_tilde()))
            )));
        }
        Ok(w)
    }

    /// Haar point: `α_i = (1-t)t^{i-1}`, `β = 0`.
    pub fn haar(t: Rational) -> Result<Self> {
        Self::with_geometric(vec![], vec![(Rational::one() - &t, t.clone())], vec![], t)
    }

    /// Plancherel point: `α = β = 0`, all mass in `γ̃`.
    pub fn plancherel(t: Rational) -> Result<Self> {
        Self::new(vec![], vec![], t)
    }

    /// `β = (1-t)`: the point measure at the zero matrix.
    pub fn dirac_zero(t: Rational) -> Result<Self> {
        Self::new(vec![], vec![Rational::one() - &t], t)
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn alpha_geometric(&self) -> &[(Rational, Rational)] {
        &self.alpha_geometric
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    /// `γ̃ = 1 - Σα - (1-t)^{-1} Σβ`.
    pub fn gamma_tilde(&self) -> Rational {
        let mut s: Rational = self.alpha.iter().sum();
        for (u, r) in &self.alpha_geometric {
            s += u / (Rational::one() - r);
        }
        let b: Rational = self.beta.iter().sum();
        Rational::one() - s - b / (Rational::one() - &self.t)
    }

    /// Whether `γ̃ = 0`.
    pub fn is_gamma_free(&self) -> bool {
        self.gamma_tilde().is_zero()
    }
}

impl fmt::Display for OmegaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>().join(",");
        write!(f, "alpha=[{}", list(&self.alpha))?;
        for (u, r) in &self.alpha_geometric {
            if !self.alpha.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "{}*{}^i...", fmt_rational(u), fmt_rational(r))?;
        }
        write!(f, "] beta=[{}] t={}", list(&self.beta), fmt_rational(&self.t))
    }
}
