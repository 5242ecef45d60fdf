use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use super::{b_factor, hl_q_oracle, q_monomial_coeffs, SymPoly};
use crate::error::{Error, Result};
use crate::exactalg::{int, CoeffValue, Poly, Rational, Ring};
use crate::measures::OmegaPoint;
use crate::partitions::{self, Partition};

/// `Σ_ρ c_ρ p_ρ` with `|ρ| = degree` for every term and `c_ρ ∈ ℚ[t]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSumExpansion {
    degree: usize,
    terms: BTreeMap<Partition, Poly>,
}

impl PowerSumExpansion {
    pub fn new(degree: usize, terms: BTreeMap<Partition, Poly>) -> Result<Self> {
        if let Some((rho, _)) = terms.iter().find(|(r, _)| r.size() != degree) {
            return Err(Error::InvalidParameter(format!("{rho} has size other than {degree}")));
        }
        Ok(PowerSumExpansion {
            degree,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// The single power sum `p_ρ`.
    pub fn p(rho: &Partition) -> Self {
        PowerSumExpansion { degree: rho.size(), terms: BTreeMap::from([(rho.clone(), Poly::one())]) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Poly> {
        &self.terms
    }

    pub fn coeff(&self, rho: &Partition) -> Poly {
        self.terms.get(rho).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeff_value(&self, rho: &Partition) -> CoeffValue {
        self.coeff(rho).into()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let terms = self.terms.iter().map(|(r, v)| (r.clone(), v * c)).collect();
        PowerSumExpansion::new(self.degree, terms).expect("degree preserved")
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(Error::InvalidParameter("adding expansions of different degree".into()));
        }
        let degree = if self.is_zero() { o.degree } else { self.degree };
        let mut terms = self.terms.clone();
        for (r, c) in &o.terms {
            let e = terms.entry(r.clone()).or_insert_with(Poly::zero);
            *e = &*e + c;
        }
        PowerSumExpansion::new(degree, terms)
    }

    /// Product; `p_ρ p_σ = p_{ρ ∪ σ}`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<Partition, Poly> = BTreeMap::new();
        for (r, a) in &self.terms {
            for (s, b) in &o.terms {
                let mut parts = r.parts().to_vec();
                parts.extend_from_slice(s.parts());
                let e = terms.entry(Partition::from_unsorted(parts)).or_insert_with(Poly::zero);
                *e = &*e + &(a * b);
            }
        }
        PowerSumExpansion::new(self.degree + o.degree, terms).expect("degrees add")
    }

    /// The symmetric polynomial in `nvars` variables.
    pub fn to_sympoly(&self, nvars: usize) -> SymPoly {
        let mut acc = SymPoly::zero(nvars);
        for (rho, c) in &self.terms {
            let mut term = SymPoly::from_monomial_basis(nvars, BTreeMap::from([(Partition::empty(), Poly::one())]))
                .expect("constant");
            for &k in rho.parts() {
                term = term.mul_power_sum(k);
            }
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    /// Evaluates with `p_ρ ↦ value(ρ)` and coefficients `c_ρ(t) ↦ embed(c_ρ)`.
    pub fn evaluate<R: Ring>(&self, embed: impl Fn(&Poly) -> R, mut value: impl FnMut(&Partition) -> R) -> R {
        let mut acc = R::zero();
        for (rho, c) in &self.terms {
            let v = value(rho);
            if !v.is_zero() {
                acc = acc + embed(c) * v;
            }
        }
        acc
    }
}

impl fmt::Display for PowerSumExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (rho, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*p{rho}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PowerSumExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSumExpansion({self})")
    }
}

/// Coefficient of `m_κ` in `p_ρ`: the number of ways to distribute the parts
/// of `ρ` over the rows of `κ` so that row `i` receives total `κ_i`.
pub fn power_sum_monomial_coeff(rho: &Partition, kappa: &Partition) -> u64 {
    fn rec(parts: &[u32], caps: &mut [u32]) -> u64 {
        let Some((&p, rest)) = parts.split_first() else {
            return u64::from(caps.iter().all(|&c| c == 0));
        };
        let mut total = 0;
        for i in 0..caps.len() {
            if caps[i] >= p {
                caps[i] -= p;
                total += rec(rest, caps);
                caps[i] += p;
            }
        }
        total
    }
    if rho.size() != kappa.size() {
        return 0;
    }
    rec(rho.parts(), &mut kappa.parts().to_vec())
}

/// Rewrites `Σ c_κ m_κ` (homogeneous of degree `n`) in the power-sum basis.
fn monomial_to_power_sums(n: usize, coeffs: &BTreeMap<Partition, Poly>) -> PowerSumExpansion {
    let parts: Vec<Partition> = partitions::enumerate(n).into_iter().rev().collect();
    let mut out: BTreeMap<Partition, Poly> = BTreeMap::new();
    // p_ρ has m_κ only for κ ⊵ ρ, so solve from (1^n) upwards
    for (i, kappa) in parts.iter().enumerate() {
        let mut val = coeffs.get(kappa).cloned().unwrap_or_else(Poly::zero);
        for rho in &parts[..i] {
            if let Some(a) = out.get(rho) {
                let l = power_sum_monomial_coeff(rho, kappa);
                if l != 0 {
                    val = val - a.scale(&int(l as i64));
                }
            }
        }
        let diag = power_sum_monomial_coeff(kappa, kappa);
        let a = val.scale(&(Rational::one() / int(diag as i64)));
        if !a.is_zero() {
            out.insert(kappa.clone(), a);
        }
    }
    PowerSumExpansion::new(n, out).expect("homogeneous")
}

fn cache() -> &'static RwLock<HashMap<Partition, Arc<PowerSumExpansion>>> {
    static CACHE: OnceLock<RwLock<HashMap<Partition, Arc<PowerSumExpansion>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Q_λ(; t)` in the power-sum basis (memoized).
pub fn to_power_sums(lambda: &Partition) -> Result<Arc<PowerSumExpansion>> {
    if let Some(e) = cache().read().expect("cache lock").get(lambda) {
        return Ok(e.clone());
    }
    let coeffs = q_monomial_coeffs(lambda)?;
    let e = Arc::new(monomial_to_power_sums(lambda.size(), &coeffs));
    let mut w = cache().write().expect("cache lock");
    Ok(w.entry(lambda.clone()).or_insert(e).clone())
}

/// `Q̃_λ = (-1)^{n(λ)} Q_λ` in the power-sum basis.
pub fn to_power_sums_tilde(lambda: &Partition) -> Result<PowerSumExpansion> {
    let e = to_power_sums(lambda)?;
    Ok(if lambda.n_stat().is_multiple_of(2) { (*e).clone() } else { e.scale(&-Poly::one()) })
}

/// Coefficients of a symmetric polynomial in the `Q_λ` basis. The number of
/// variables must be at least the top degree for the expansion to be unique.
pub fn expand_in_q_basis(f: &SymPoly) -> Result<BTreeMap<Partition, Poly>> {
    let n = f.nvars();
    if let Some(k) = f.terms().keys().find(|k| k.size() > n) {
        return Err(Error::TooFewVariables { needed: k.size(), got: n });
    }
    let mut rem = f.clone();
    let mut out = BTreeMap::new();
    // P_κ = m_κ + (dominance-lower terms), and lex order refines dominance
    while let Some((kappa, lead)) = rem.terms().iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
        let c = lead.div_exact(&b_factor(&kappa))?;
        rem = rem.sub(&hl_q_oracle(&kappa, n)?.scale(&c));
        out.insert(kappa, c);
    }
    Ok(out)
}

/// `p_k(ω)`: 1 for `k = 1`, else `Σα_i^k + (-1)^{k-1}(1 - t^k)^{-1} Σβ_i^k`.
pub(crate) fn omega_power_sum(omega: &OmegaPoint, k: u32) -> Rational {
    if k == 1 {
        return Rational::one();
    }
    let t = omega.t();
    let mut a = Rational::zero();
    for x in omega.alpha() {
        a += x.pow(k as i32);
    }
    for (u, r) in omega.alpha_geometric() {
        a += u.pow(k as i32) / (Rational::one() - r.pow(k as i32));
    }
    let mut b = Rational::zero();
    for y in omega.beta() {
        b += y.pow(k as i32);
    }
    let sign = if k % 2 == 1 { int(1) } else { int(-1) };
    a + sign * b / (Rational::one() - t.pow(k as i32))
}

/// Evaluates an expansion under the ω-specialization, at the point's `t`.
pub fn omega_specialize(e: &PowerSumExpansion, omega: &OmegaPoint) -> Rational {
    let t = omega.t().clone();
    let mut pk: HashMap<u32, Rational> = HashMap::new();
    e.evaluate(
        |c| c.eval(&t),
        |rho| {
            rho.parts()
                .iter()
                .map(|&k| pk.entry(k).or_insert_with(|| omega_power_sum(omega, k)).clone())
                .fold(Rational::one(), |a, b| a * b)
        },
    )
}
