//! Q_λ(x₁..x_N; t) by symmetrization.
//!
//! With `T = Π_{i<j} (x_i - t x_j)` and `Δ` the Vandermonde product,
//! `Σ_w w(x^λ T / Δ) = Σ_ν c_ν s_ν` where `c_ν` collects the signed
//! coefficients of those monomials `x^α` of `x^λ T` whose exponents are
//! distinct and sort to `ν + δ`. Dividing by the stabilizer factor gives
//! `P_λ`, and `Q_λ = b_λ P_λ` simplifies to `(1-t)^N R_λ / (t;t)_{N-ℓ(λ)}`.
//! Schur functions go to monomials through Kostka numbers.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::SymPoly;
use crate::error::{Error, Result};
use crate::exactalg::{int, Poly};
use crate::partitions::{self, Partition};

/// Largest `|λ|` the oracle will expand (the tournament product in 8
/// variables has about half a million monomials).
pub const MAX_ORACLE_DEGREE: usize = 8;

type IntPoly = Vec<i64>;

fn add_into(acc: &mut IntPoly, p: &[i64], shift: usize, sign: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += sign * c;
    }
}

/// Monomials of `Π_{i<j}(x_i - t x_j)`, exponent vectors packed 4 bits per variable.
fn tournament(n: usize) -> Vec<(u32, IntPoly)> {
    let mut cur: HashMap<u32, IntPoly> = HashMap::from([(0, vec![1])]);
    for j in 1..n {
        for i in 0..j {
            let mut next: HashMap<u32, IntPoly> = HashMap::with_capacity(cur.len() * 2);
            for (k, p) in &cur {
                add_into(next.entry(k + (1 << (4 * i))).or_default(), p, 0, 1);
                add_into(next.entry(k + (1 << (4 * j))).or_default(), p, 1, -1);
            }
            cur = next;
        }
    }
    cur.into_iter().filter(|(_, p)| p.iter().any(|&c| c != 0)).collect()
}

/// Sorts `v` into decreasing order; returns the permutation sign, or `None`
/// when two entries coincide.
fn sort_with_sign(v: &mut [u32]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] <= v[j] {
            if v[j - 1] == v[j] {
                return None;
            }
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    Some(sign)
}

/// Ways to remove a horizontal strip of size `r` from `nu`.
fn strip_removals(nu: &[u32], r: u32) -> Vec<Vec<u32>> {
    fn rec(nu: &[u32], i: usize, r: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == nu.len() {
            if r == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let floor = nu.get(i + 1).copied().unwrap_or(0);
        let max_take = (nu[i] - floor).min(r);
        for take in 0..=max_take {
            cur.push(nu[i] - take);
            rec(nu, i + 1, r - take, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nu, 0, r, &mut Vec::new(), &mut out);
    out
}

/// Kostka number: semistandard tableaux of shape `nu` with content `content`.
fn kostka(nu: &[u32], content: &[u32], memo: &mut HashMap<(Vec<u32>, Vec<u32>), i64>) -> i64 {
    let nu: Vec<u32> = nu.iter().copied().filter(|&x| x > 0).collect();
    if content.is_empty() {
        return i64::from(nu.is_empty());
    }
    let key = (nu.clone(), content.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let (&r, rest) = content.split_last().expect("nonempty");
    let v = strip_removals(&nu, r).iter().map(|sigma| kostka(sigma, rest, memo)).sum();
    memo.insert(key, v);
    v
}

/// Monomial coefficients of `Q_λ(x₁..x_N; t)` for each `λ` (all with
/// `ℓ(λ) ≤ N`), given the tournament product in `N` variables.
fn q_in_vars(lambdas: &[Partition], n: usize, tour: &[(u32, IntPoly)]) -> Vec<(Partition, BTreeMap<Partition, Poly>)> {
    let schur: Vec<(Partition, HashMap<Partition, IntPoly>)> = lambdas
        .par_iter()
        .map(|lambda| {
            let mut lam = lambda.parts().to_vec();
            lam.resize(n, 0);
            let mut c: HashMap<Partition, IntPoly> = HashMap::new();
            let mut v = vec![0u32; n];
            for (key, p) in tour {
                for i in 0..n {
                    v[i] = lam[i] + ((key >> (4 * i)) & 0xf);
                }
                let Some(sign) = sort_with_sign(&mut v) else { continue };
                let nu: Vec<u32> = v.iter().enumerate().map(|(i, x)| x - (n - 1 - i) as u32).collect();
                add_into(c.entry(Partition::from_unsorted(nu)).or_default(), p, 0, sign);
            }
            (lambda.clone(), c)
        })
        .collect();

    let mut memo = HashMap::new();
    let one_minus_t_n = (0..n).fold(Poly::one(), |acc, _| acc * Poly::one_minus_t_pow(1));
    schur
        .into_iter()
        .map(|(lambda, c)| {
            let phi = (1..=(n - lambda.len()) as u32)
                .fold(Poly::one(), |acc, j| acc * Poly::one_minus_t_pow(j));
            let mut out = BTreeMap::new();
            for kappa in partitions::enumerate(lambda.size()).into_iter().filter(|k| k.len() <= n) {
                let mut r: IntPoly = Vec::new();
                for (nu, cn) in &c {
                    let k = kostka(nu.parts(), kappa.parts(), &mut memo);
                    if k != 0 {
                        add_into(&mut r, cn, 0, k);
                    }
                }
                let r = Poly::new(r.into_iter().map(int).collect());
                if r.is_zero() {
                    continue;
                }
                let q = (&r * &one_minus_t_n).div_exact(&phi).expect("stabilizer factor divides");
                out.insert(kappa, q);
            }
            (lambda, out)
        })
        .collect()
}

/// Stable monomial coefficients of every `Q_λ` with `|λ| = n`.
fn compute_level(n: usize) -> Vec<(Partition, BTreeMap<Partition, Poly>)> {
    if n == 0 {
        return vec![(Partition::empty(), BTreeMap::from([(Partition::empty(), Poly::one())]))];
    }
    q_in_vars(&partitions::enumerate(n), n, &tournament(n))
}

type Coeffs = Arc<BTreeMap<Partition, Poly>>;

fn cache() -> &'static RwLock<HashMap<Partition, Coeffs>> {
    static CACHE: OnceLock<RwLock<HashMap<Partition, Coeffs>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of `Q_λ` in the monomial symmetric basis. They do not depend
/// on the number of variables once it is at least `|λ|`.
pub fn q_monomial_coeffs(lambda: &Partition) -> Result<Coeffs> {
    if lambda.size() > MAX_ORACLE_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "oracle limited to |λ| ≤ {MAX_ORACLE_DEGREE}, got {lambda}"
        )));
    }
    if let Some(c) = cache().read().expect("cache lock").get(lambda) {
        return Ok(c.clone());
    }
    static LEVEL: Mutex<()> = Mutex::new(());
    let _guard = LEVEL.lock().expect("level lock");
    if let Some(c) = cache().read().expect("cache lock").get(lambda) {
        return Ok(c.clone());
    }
    let level = compute_level(lambda.size());
    let mut w = cache().write().expect("cache lock");
    for (l, c) in level {
        w.entry(l).or_insert_with(|| Arc::new(c));
    }
    Ok(w[lambda].clone())
}

/// `Q_λ(x₁, …, x_N; t)` for `N ≥ |λ|`, the range in which the polynomial
/// determines `Q_λ` as a symmetric function.
pub fn hl_q_oracle(lambda: &Partition, nvars: usize) -> Result<SymPoly> {
    if nvars < lambda.size() {
        return Err(Error::TooFewVariables { needed: lambda.size(), got: nvars });
    }
    let c = q_monomial_coeffs(lambda)?;
    SymPoly::from_monomial_basis(nvars, (*c).clone())
}

/// `Q_λ(x₁, …, x_N; t)` for any `N`. With `N < |λ|` this symmetrizes
/// directly in `N` variables (zero when `ℓ(λ) > N`), so `|λ|` is not bounded
/// by the oracle limit as long as `N` is.
pub fn hl_q_polynomial(lambda: &Partition, nvars: usize) -> Result<SymPoly> {
    if nvars >= lambda.size() {
        return hl_q_oracle(lambda, nvars);
    }
    if lambda.len() > nvars {
        return Ok(SymPoly::zero(nvars));
    }
    if nvars > MAX_ORACLE_DEGREE {
        return Err(Error::InvalidParameter(format!("too many variables: {nvars}")));
    }
    let (_, c) = q_in_vars(std::slice::from_ref(lambda), nvars, &tournament(nvars))
        .pop()
        .expect("one partition");
    SymPoly::from_monomial_basis(nvars, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tournament_sizes() {
        // the product has 2^{C(n,2)} terms before collecting
        let total: i64 = tournament(3).iter().map(|(_, p)| p.iter().map(|c| c.abs()).sum::<i64>()).sum();
        assert_eq!(total, 8);
        assert_eq!(tournament(1).len(), 1);
    }

    #[test]
    fn kostka_small() {
        let mut memo = HashMap::new();
        assert_eq!(kostka(&[2, 1], &[1, 1, 1], &mut memo), 2);
        assert_eq!(kostka(&[2, 1], &[2, 1], &mut HashMap::new()), 1);
        assert_eq!(kostka(&[1, 1, 1], &[2, 1], &mut HashMap::new()), 0);
        assert_eq!(kostka(&[3, 2], &[1, 1, 1, 1, 1], &mut HashMap::new()), 5);
    }

    #[test]
    fn sign_of_sort() {
        let mut v = vec![1, 3, 2];
        assert_eq!(sort_with_sign(&mut v), Some(1));
        assert_eq!(v, vec![3, 2, 1]);
        assert_eq!(sort_with_sign(&mut [1, 2, 3]), Some(-1));
        assert_eq!(sort_with_sign(&mut [2, 2]), None);
    }
}
