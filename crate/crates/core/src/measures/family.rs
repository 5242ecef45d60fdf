use std::fmt;

use num_traits::{One, Signed, Zero};

use super::OmegaPoint;
use crate::error::{Error, Result};
use crate::exactalg::{
    exp_series, fmt_rational, geometric_series, inverse_pochhammer_series, pochhammer, q_exponential_series,
    rat, QuadExt, Rational, Ring, Series,
};
use crate::fflab::class_size;
use crate::graphs::{gauge, BranchingGraph, GraphKind, GraphParam};
use crate::hallittlewood::{omega_specialize, to_power_sums, HlFunctional, Parity};
use crate::partitions::{binomial2, enumerate, Partition};

/// `φ_ω(λ) = Q_λ(ω; t) / (1 - t)^{|λ|}`.
pub fn gl_harmonic(lambda: &Partition, omega: &OmegaPoint) -> Result<Rational> {
    let one_t = Rational::one() - omega.t();
    let v = omega_specialize(&*to_power_sums(lambda)?, omega);
    Ok(v / Ring::pow(&one_t, lambda.size() as u32))
}

fn check_gl_t(omega: &OmegaPoint, q: u32) -> Result<()> {
    if *omega.t() != rat(1, q as i64) {
        return Err(Error::InvalidParameter(format!(
            "omega has t = {}, expected 1/{q}",
            fmt_rational(omega.t())
        )));
    }
    Ok(())
}

/// Mass of a cylinder set over a nilpotent of type `λ`:
/// `q^{n(λ) - n(n-1)/2} (1 - q⁻¹)^{-n} Q_λ(ω; q⁻¹)`.
pub fn gl_cylinder_mass(lambda: &Partition, omega: &OmegaPoint, q: u32) -> Result<Rational> {
    check_gl_t(omega, q)?;
    Ok(gauge(lambda, q) * gl_harmonic(lambda, omega)?)
}

/// `h_n(ω)`: coefficient of `zⁿ` in `e^{γ̃z} Π(-β_i z; t)_∞ / Π(1 - α_i z)`.
pub fn omega_h(n: usize, omega: &OmegaPoint) -> Rational {
    let t = omega.t();
    let mut s: Series<Rational> = exp_series(&omega.gamma_tilde(), n);
    for a in omega.alpha() {
        s = s.mul(&geometric_series(a, n));
    }
    for (u, r) in omega.alpha_geometric() {
        s = s.mul(&inverse_pochhammer_series(u, r, n));
    }
    for b in omega.beta() {
        s = s.mul(&q_exponential_series(b, t, n));
    }
    s.coeff(n)
}

/// Mass of the level `n` nilpotent cone:
/// `(t;t)_n h_n(ω) / ((1-t)ⁿ t^{n(n-1)/2})` at `t = q⁻¹`.
pub fn gl_level_mass(n: usize, omega: &OmegaPoint, q: u32) -> Result<Rational> {
    check_gl_t(omega, q)?;
    let t = omega.t();
    let one_t = Rational::one() - t;
    let num = pochhammer(t, t, n as u32) * omega_h(n, omega);
    Ok(num / (Ring::pow(&one_t, n as u32) * Ring::pow(t, binomial2(n) as u32)))
}

/// The same level mass summed over conjugacy classes.
pub fn gl_level_mass_by_classes(n: usize, omega: &OmegaPoint, q: u32) -> Result<Rational> {
    let mut s = Rational::zero();
    for lambda in enumerate(n) {
        s += Rational::from_integer(class_size(&lambda, q)) * gl_cylinder_mass(&lambda, omega, q)?;
    }
    Ok(s)
}

/// `φ(λ) = c Φ(Q̃_λ) / (1 - t²)^{⌊|λ|/2⌋}`, with `c = 1` for even `|λ|` and
/// `c = 1 / ((1-t)Φ(p₁))` for odd `|λ|`, so that the root has value 1.
pub fn unitary_harmonic(lambda: &Partition, phi: &HlFunctional, t: &Rational) -> Result<Rational> {
    let parity = Parity::of(lambda.size());
    if let Some(tag) = phi.parity() {
        if tag != parity {
            return Err(Error::ParityMismatch(format!("{phi} applied to {lambda}")));
        }
    }
    let one_t2 = Rational::one() - t * t;
    let mut v = phi.apply_q_tilde(lambda, t)? / QuadExt::rational(Ring::pow(&one_t2, (lambda.size() / 2) as u32));
    if parity == Parity::Odd {
        let norm = QuadExt::rational(Rational::one() - t) * phi.value_p1();
        v = v.try_div(&norm)?;
    }
    v.as_rational()
        .ok_or_else(|| Error::InvalidParameter(format!("{phi} gives an irrational value at {lambda}")))
}

/// `q^{n(λ) - N(N-1)/2} φ(λ)` at `t = -q⁻¹`, `N = |λ|`.
pub fn unitary_cylinder_mass(lambda: &Partition, phi: &HlFunctional, q: u32) -> Result<Rational> {
    let t = rat(-1, q as i64);
    Ok(gauge(lambda, q) * unitary_harmonic(lambda, phi, &t)?)
}

/// Which invariant measure, together with the prime `q`.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasureSpec {
    /// A finite convex combination of boundary points at `t = q⁻¹`.
    Gl { mixture: Vec<(Rational, OmegaPoint)>, q: u32 },
    /// A functional at `t = -q⁻¹` on the even or odd graph.
    Unitary { parity: Parity, functional: HlFunctional, q: u32 },
}

impl MeasureSpec {
    pub fn gl(omega: OmegaPoint, q: u32) -> Result<Self> {
        Self::gl_mixture(vec![(Rational::one(), omega)], q)
    }

    pub fn gl_mixture(mixture: Vec<(Rational, OmegaPoint)>, q: u32) -> Result<Self> {
        if mixture.is_empty() {
            return Err(Error::InvalidParameter("empty mixture".into()));
        }
        if mixture.iter().any(|(w, _)| w.is_negative()) {
            return Err(Error::InvalidParameter("mixture weights must be nonnegative".into()));
        }
        let total: Rational = mixture.iter().map(|(w, _)| w.clone()).sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!("mixture weights sum to {}", fmt_rational(&total))));
        }
        for (_, w) in &mixture {
            check_gl_t(w, q)?;
        }
        Ok(MeasureSpec::Gl { mixture, q })
    }

    pub fn unitary(parity: Parity, functional: HlFunctional, q: u32) -> Result<Self> {
        crate::fflab::FieldCtx::new(q)?;
        if let Some(tag) = functional.parity() {
            if tag != parity {
                return Err(Error::ParityMismatch(format!("{functional} on the {parity} graph")));
            }
        }
        if let Some(t) = functional.fixed_t() {
            if *t != rat(-1, q as i64) {
                return Err(Error::InvalidParameter(format!(
                    "{functional} is tied to t = {}, expected -1/{q}",
                    fmt_rational(t)
                )));
            }
        }
        Ok(MeasureSpec::Unitary { parity, functional, q })
    }

    pub fn q(&self) -> u32 {
        match self {
            MeasureSpec::Gl { q, .. } | MeasureSpec::Unitary { q, .. } => *q,
        }
    }

    /// `q⁻¹` or `-q⁻¹`.
    pub fn t(&self) -> Rational {
        match self {
            MeasureSpec::Gl { q, .. } => rat(1, *q as i64),
            MeasureSpec::Unitary { q, .. } => rat(-1, *q as i64),
        }
    }

    /// The Hall-Littlewood graph the harmonic function lives on.
    pub fn harmonic_graph(&self, lmax: usize) -> Result<BranchingGraph> {
        let kind = match self {
            MeasureSpec::Gl { .. } => GraphKind::Hl,
            MeasureSpec::Unitary { parity: Parity::Even, .. } => GraphKind::HlEven,
            MeasureSpec::Unitary { parity: Parity::Odd, .. } => GraphKind::HlOdd,
        };
        BranchingGraph::build(kind, lmax, GraphParam::T(self.t()))
    }

    /// The counting graph the cylinder masses are harmonic on.
    pub fn mass_graph(&self, lmax: usize) -> Result<BranchingGraph> {
        let kind = match self {
            MeasureSpec::Gl { .. } => GraphKind::Gl,
            MeasureSpec::Unitary { parity: Parity::Even, .. } => GraphKind::UEven,
            MeasureSpec::Unitary { parity: Parity::Odd, .. } => GraphKind::UOdd,
        };
        BranchingGraph::build(kind, lmax, GraphParam::Q(self.q()))
    }

    pub fn harmonic(&self, lambda: &Partition) -> Result<Rational> {
        match self {
            MeasureSpec::Gl { mixture, .. } => {
                let mut s = Rational::zero();
                for (w, omega) in mixture {
                    s += w * gl_harmonic(lambda, omega)?;
                }
                Ok(s)
            }
            MeasureSpec::Unitary { functional, .. } => unitary_harmonic(lambda, functional, &self.t()),
        }
    }

    pub fn cylinder_mass(&self, lambda: &Partition) -> Result<Rational> {
        Ok(gauge(lambda, self.q()) * self.harmonic(lambda)?)
    }

    /// Level mass from the generating series; GL families only.
    pub fn level_mass(&self, n: usize) -> Result<Option<Rational>> {
        match self {
            MeasureSpec::Gl { mixture, q } => {
                let mut s = Rational::zero();
                for (w, omega) in mixture {
                    s += w * gl_level_mass(n, omega, *q)?;
                }
                Ok(Some(s))
            }
            MeasureSpec::Unitary { .. } => Ok(None),
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::Gl { mixture, q } => {
                write!(f, "gl q={q}")?;
                for (w, omega) in mixture {
                    write!(f, " [{} x {omega}]", fmt_rational(w))?;
                }
                Ok(())
            }
            MeasureSpec::Unitary { parity, functional, q } => write!(f, "unitary-{parity} q={q} {functional}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn haar_masses_are_flat() {
        let omega = OmegaPoint::haar(rat(1, 3)).unwrap();
        for n in 0..=4 {
            let want = Rational::one() / Ring::pow(&int(3), binomial2(n) as u32);
            for lambda in enumerate(n) {
                assert_eq!(gl_cylinder_mass(&lambda, &omega, 3).unwrap(), want);
            }
        }
        assert!(gl_cylinder_mass(&Partition::empty(), &omega, 5).is_err());
    }
}
