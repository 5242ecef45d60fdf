//! Hall-Littlewood Q-functions: Pieri coefficients, a multivariate oracle,
//! power-sum expansions and the linear functionals used by the unitary
//! measure families.

mod functional;
mod oracle;
mod powersum;
mod sympoly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Poly, RatFun, Rational};
use crate::partitions::{DoubleCoverCase, Partition};

pub use functional::{
    plancherel_functional, principal_functional, two_point_functional, HlFunctional, Parity,
};
pub use oracle::{hl_q_oracle, hl_q_polynomial, q_monomial_coeffs, MAX_ORACLE_DEGREE};
pub use powersum::{
    expand_in_q_basis, omega_specialize, power_sum_monomial_coeff, to_power_sums,
    to_power_sums_tilde, PowerSumExpansion,
};
pub use sympoly::SymPoly;

/// `(1 - t)p₁ Q_μ = Σ ψ_{λ/μ} Q_λ`: `1 - t^{m_{k-1}(μ)}` for a box added in
/// column `k > 1`, and `1` in the first column.
pub fn psi_single(mu: &Partition, lambda: &Partition) -> Result<Poly> {
    let k = match mu.added_columns(lambda).as_deref() {
        Some(&[k]) => k,
        _ => return Err(Error::NotSingleCover { mu: mu.clone(), lambda: lambda.clone() }),
    };
    if k == 1 {
        return Ok(Poly::one());
    }
    Ok(Poly::one_minus_t_pow(mu.mult(k - 1) as u32))
}

/// `(1 - t²)p₂ Q̃_μ = Σ ξ_{λ/μ} Q̃_λ`. Zero unless `μ ↗↗ λ`.
pub fn xi_double(mu: &Partition, lambda: &Partition) -> Result<Poly> {
    if lambda.size() != mu.size() + 2 {
        return Err(Error::SizeMismatch { mu: mu.clone(), lambda: lambda.clone(), expected: 2 });
    }
    Ok(match DoubleCoverCase::classify(mu, lambda) {
        None => Poly::zero(),
        Some(DoubleCoverCase::VerticalDomino(1)) => Poly::one(),
        // a domino in column k > 1 forces m_{k-1}(μ) ≥ 2
        Some(DoubleCoverCase::VerticalDomino(k)) => {
            let a = mu.mult(k - 1);
            Poly::one_minus_t_pow(a as u32) * Poly::one_minus_t_pow(a as u32 - 1)
        }
        Some(DoubleCoverCase::ConsecutiveColumns(k)) => {
            let sign = Poly::neg_t_pow(mu.mult(k) as u32);
            // t^{m_0} is read as 0
            let last = if k == 1 { Poly::one() } else { Poly::one_minus_t_pow(mu.mult(k - 1) as u32) };
            sign * Poly::from_ints(&[1, 1]) * last
        }
    })
}

/// `b_λ(t) = Π_i Π_{j ≤ m_i(λ)} (1 - t^j)`.
pub fn b_factor(lambda: &Partition) -> Poly {
    let mut acc = Poly::one();
    for part in lambda.distinct_parts() {
        for j in 1..=lambda.mult(part) {
            acc = acc * Poly::one_minus_t_pow(j as u32);
        }
    }
    acc
}

/// `z_ρ = Π_i i^{m_i} m_i!`.
pub fn z_factor(rho: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for part in rho.distinct_parts() {
        for j in 1..=rho.mult(part) {
            z *= BigInt::from(part) * BigInt::from(j);
        }
    }
    z
}

/// `⟨p_ρ, p_σ⟩ = δ_{ρσ} z_ρ Π_i (1 - t^{ρ_i})^{-1}`.
pub fn hl_inner_p(rho: &Partition, sigma: &Partition) -> RatFun {
    if rho != sigma {
        return RatFun::zero();
    }
    let mut den = Poly::one();
    for &r in rho.parts() {
        den = den * Poly::one_minus_t_pow(r);
    }
    RatFun::new(Poly::constant(Rational::from_integer(z_factor(rho))), den)
        .expect("nonzero denominator")
}

/// Checks `(1 - t)p₁ Q_μ = Σ_{μ↗λ} ψ_{λ/μ} Q_λ` as an identity of symmetric
/// polynomials in `|μ| + 1` variables.
pub fn verify_pieri_p1(mu: &Partition) -> Result<bool> {
    let n = mu.size() + 1;
    let lhs = hl_q_oracle(mu, n)?.mul_power_sum(1).scale(&Poly::one_minus_t_pow(1));
    let mut rhs = SymPoly::zero(n);
    for (lambda, _) in mu.single_covers() {
        let q = hl_q_oracle(&lambda, n)?;
        rhs = rhs.add(&q.scale(&psi_single(mu, &lambda)?));
    }
    Ok(lhs == rhs)
}

/// Checks `(1 - t²)p₂ Q̃_μ = Σ_{μ↗↗λ} ξ_{λ/μ} Q̃_λ` in `|μ| + 2` variables.
pub fn verify_pieri_p2(mu: &Partition) -> Result<bool> {
    let n = mu.size() + 2;
    let sign = |p: &Partition| if p.n_stat().is_multiple_of(2) { Poly::one() } else { -Poly::one() };
    let lhs = hl_q_oracle(mu, n)?
        .mul_power_sum(2)
        .scale(&(Poly::one_minus_t_pow(2) * sign(mu)));
    let mut rhs = SymPoly::zero(n);
    for (lambda, _) in mu.double_covers() {
        let q = hl_q_oracle(&lambda, n)?;
        rhs = rhs.add(&q.scale(&(xi_double(mu, &lambda)? * sign(&lambda))));
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_single(&p(&[1]), &p(&[2])).unwrap(), Poly::from_ints(&[1, -1]));
        assert_eq!(psi_single(&p(&[1]), &p(&[1, 1])).unwrap(), Poly::one());
        assert_eq!(psi_single(&p(&[2, 1]), &p(&[2, 2])).unwrap(), Poly::from_ints(&[1, -1]));
        assert!(psi_single(&p(&[1]), &p(&[3])).is_err());
    }

    #[test]
    fn xi_examples() {
        let e = Partition::empty();
        assert_eq!(xi_double(&e, &p(&[1, 1])).unwrap(), Poly::one());
        assert_eq!(xi_double(&e, &p(&[2])).unwrap(), Poly::from_ints(&[1, 1]));
        assert_eq!(xi_double(&p(&[1]), &p(&[2, 1])).unwrap(), Poly::from_ints(&[0, -1, -1]));
        assert_eq!(xi_double(&p(&[1]), &p(&[1, 1, 1])).unwrap(), Poly::one());
        assert!(xi_double(&p(&[1]), &p(&[2])).is_err());
        assert!(xi_double(&p(&[1]), &p(&[4])).is_err());
        assert!(xi_double(&p(&[2]), &p(&[3, 1])).unwrap().is_zero());
    }

    #[test]
    fn b_and_inner_product() {
        assert_eq!(b_factor(&Partition::empty()), Poly::one());
        assert_eq!(b_factor(&p(&[1])), Poly::one_minus_t_pow(1));
        assert_eq!(
            b_factor(&p(&[2, 2])),
            Poly::one_minus_t_pow(1) * Poly::one_minus_t_pow(2)
        );
        let two_two = p(&[2, 2]);
        let expect = RatFun::new(
            Poly::constant(int(8)),
            Poly::one_minus_t_pow(2) * Poly::one_minus_t_pow(2),
        )
        .unwrap();
        assert_eq!(hl_inner_p(&two_two, &two_two), expect);
        assert_eq!(hl_inner_p(&p(&[1]), &p(&[1])), RatFun::inv_one_minus_t_pow(1));
        assert!(hl_inner_p(&p(&[1]), &p(&[2])).is_zero());
    }
}
