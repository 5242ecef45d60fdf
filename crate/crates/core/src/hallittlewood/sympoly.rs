use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Poly, Ring};
use crate::partitions::{self, Partition};

/// A symmetric polynomial in `N` variables with coefficients in `ℚ[t]`.
///
/// Stored by the coefficients of the dominant monomials `x^κ` (`κ` a
/// partition with at most `N` parts), i.e. in the monomial symmetric basis;
/// every other monomial is a permutation of one of these.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Partition, Poly>,
}

/// Distinct permutations of `v`, in no particular order.
fn permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut v = v.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next_permutation over the sorted multiset
    loop {
        let n = v.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("exists");
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
}

fn padded(kappa: &Partition, n: usize) -> Vec<u32> {
    let mut v = kappa.parts().to_vec();
    v.resize(n, 0);
    v
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, terms: BTreeMap::new() }
    }

    /// `Σ c_κ m_κ`; rejects `κ` with more than `nvars` parts and drops zero coefficients.
    pub fn from_monomial_basis(nvars: usize, terms: BTreeMap<Partition, Poly>) -> Result<Self> {
        if let Some((k, _)) = terms.iter().find(|(k, _)| k.len() > nvars) {
            return Err(Error::TooFewVariables { needed: k.len(), got: nvars });
        }
        Ok(SymPoly { nvars, terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    /// Builds from a full monomial map, checking invariance under permutations.
    pub fn from_monomials(nvars: usize, monomials: &BTreeMap<Vec<u32>, Poly>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in monomials {
            if e.len() != nvars {
                return Err(Error::InvalidParameter(format!(
                    "exponent vector of length {} in {nvars} variables",
                    e.len()
                )));
            }
            if c.is_zero() {
                continue;
            }
            let kappa = Partition::from_unsorted(e.clone());
            for perm in permutations(e) {
                if monomials.get(&perm) != Some(c) {
                    return Err(Error::InvalidParameter("polynomial is not symmetric".into()));
                }
            }
            terms.insert(kappa, c.clone());
        }
        Ok(SymPoly { nvars, terms })
    }

    /// All monomials with their coefficients.
    pub fn monomials(&self) -> BTreeMap<Vec<u32>, Poly> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            for perm in permutations(&padded(k, self.nvars)) {
                out.insert(perm, c.clone());
            }
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coefficients in the monomial symmetric basis.
    pub fn terms(&self) -> &BTreeMap<Partition, Poly> {
        &self.terms
    }

    /// Coefficient of `m_κ` (equivalently of the monomial `x^κ`).
    pub fn coeff(&self, kappa: &Partition) -> Poly {
        self.terms.get(kappa).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same coefficients viewed in `n` variables: terms with more than `n`
    /// parts vanish. Increasing `n` is faithful only when the polynomial was
    /// already stable, e.g. homogeneous of degree at most the old `nvars`.
    pub fn with_nvars(&self, n: usize) -> SymPoly {
        SymPoly {
            nvars: n,
            terms: self.terms.iter().filter(|(k, _)| k.len() <= n).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Poly) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        SymPoly::from_monomial_basis(self.nvars, terms).expect("same support")
    }

    pub fn add(&self, o: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, o.nvars, "variable counts differ");
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            let e = terms.entry(k.clone()).or_insert_with(Poly::zero);
            *e = &*e + c;
        }
        terms.retain(|_, c| !c.is_zero());
        SymPoly { nvars: self.nvars, terms }
    }

    pub fn sub(&self, o: &SymPoly) -> SymPoly {
        self.add(&o.scale(&-Poly::one()))
    }

    /// `p_k · self`. The coefficient of `x^η` is the sum over positions `i`
    /// with `η_i ≥ k` of the coefficient of `x^{η - k e_i}`.
    pub fn mul_power_sum(&self, k: u32) -> SymPoly {
        assert!(k > 0);
        let mut candidates = std::collections::BTreeSet::new();
        for kappa in self.terms.keys() {
            let v = padded(kappa, self.nvars);
            let mut seen = std::collections::BTreeSet::new();
            for i in 0..v.len() {
                if seen.insert(v[i]) {
                    let mut w = v.clone();
                    w[i] += k;
                    candidates.insert(Partition::from_unsorted(w));
                }
            }
        }
        let mut terms = BTreeMap::new();
        for eta in candidates {
            let v = padded(&eta, self.nvars);
            let mut acc = Poly::zero();
            for i in 0..v.len() {
                if v[i] >= k {
                    let mut w = v.clone();
                    w[i] -= k;
                    if let Some(c) = self.terms.get(&Partition::from_unsorted(w)) {
                        acc = acc + c;
                    }
                }
            }
            if !acc.is_zero() {
                terms.insert(eta, acc);
            }
        }
        SymPoly { nvars: self.nvars, terms }
    }

    /// Product of two symmetric polynomials in the same variables.
    pub fn mul(&self, o: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, o.nvars, "variable counts differ");
        let n = self.nvars;
        let mono = self.monomials();
        let mut degrees = std::collections::BTreeSet::new();
        for a in self.terms.keys() {
            for b in o.terms.keys() {
                degrees.insert(a.size() + b.size());
            }
        }
        let mut terms = BTreeMap::new();
        for d in degrees {
            for eta in partitions::enumerate(d).into_iter().filter(|p| p.len() <= n) {
                let v = padded(&eta, n);
                let mut acc = Poly::zero();
                for (alpha, ca) in &mono {
                    if alpha.iter().zip(&v).all(|(a, b)| a <= b) {
                        let rest: Vec<u32> = alpha.iter().zip(&v).map(|(a, b)| b - a).collect();
                        if let Some(cb) = o.terms.get(&Partition::from_unsorted(rest)) {
                            acc = acc + ca * cb;
                        }
                    }
                }
                if !acc.is_zero() {
                    terms.insert(eta, acc);
                }
            }
        }
        SymPoly { nvars: n, terms }
    }

    /// Value at a point, with coefficients mapped by `embed`.
    pub fn evaluate<R: Ring>(&self, embed: impl Fn(&Poly) -> R, point: &[R]) -> R {
        assert_eq!(point.len(), self.nvars, "point has the wrong dimension");
        let mut acc = R::zero();
        for (e, c) in self.monomials() {
            let mut term = embed(&c);
            for (x, &k) in point.iter().zip(&e) {
                term = term * x.pow(k);
            }
            acc = acc + term;
        }
        acc
    }

    /// The power sum `p_k` in `n` variables.
    pub fn power_sum(k: u32, n: usize) -> SymPoly {
        let mut terms = BTreeMap::new();
        if n > 0 {
            terms.insert(Partition::new(vec![k]).expect("single part"), Poly::one());
        }
        SymPoly { nvars: n, terms }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*m{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly[{}]({self})", self.nvars)
    }
}
