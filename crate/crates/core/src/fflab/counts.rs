use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{canonical_nilpotent_gl, canonical_nilpotent_skew_hermitian, v_subspace, FFMatrix, FieldCtx, Fq2};
use crate::error::{Error, Result};
use crate::exactalg::{int, pochhammer, Rational};
use crate::hallittlewood::b_factor;
use crate::partitions::{DoubleCoverCase, Partition};

type Tally = BTreeMap<Partition, u64>;

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Digits of `idx` in base `base`, least significant first.
fn digits(mut idx: u64, base: u64, len: usize) -> impl Iterator<Item = u64> {
    (0..len).map(move |_| {
        let d = idx % base;
        idx /= base;
        d
    })
}

fn qpow(q: u32, e: i64) -> Rational {
    int(q as i64).pow(e as i32)
}

fn to_integer(r: Rational) -> BigInt {
    assert!(r.is_integer(), "count formula produced a non-integer");
    r.to_integer()
}

/// Number of nilpotent matrices of type `λ` in gl(n, q):
/// `(t;t)_n t^{2n(λ) - n(n-1)} / b_λ(t)` at `t = 1/q`.
pub fn class_size(lambda: &Partition, q: u32) -> BigInt {
    let n = lambda.size() as i64;
    let t = Rational::new(1.into(), (q as i64).into());
    let poch = pochhammer(&t, &t, n as u32);
    let e = 2 * lambda.n_stat() as i64 - n * (n - 1);
    let b = b_factor(lambda).eval(&t);
    to_integer(poch * t.pow(e as i32) / b)
}

/// Jordan types of all nilpotent `n×n` matrices over F_q.
pub fn nilpotent_census(n: usize, ctx: FieldCtx) -> Tally {
    let q = ctx.q() as u64;
    let total = q.pow((n * n) as u32);
    (0..total)
        .into_par_iter()
        .fold(Tally::new, |mut acc, idx| {
            let rows: Vec<Vec<Fq2>> = {
                let mut d = digits(idx, q, n * n);
                (0..n).map(|_| (0..n).map(|_| Fq2 { a: d.next().unwrap() as u32, b: 0 }).collect()).collect()
            };
            let m = FFMatrix::from_rows(ctx, rows).expect("square");
            if let Ok(l) = m.jordan_type() {
                *acc.entry(l).or_insert(0) += 1;
            }
            acc
        })
        .reduce(Tally::new, merge)
}

/// Type of `[[X, x], [0, 0]]` for every `x ∈ F_qⁿ`, tallied.
pub fn l_row_bruteforce(mu: &Partition, ctx: FieldCtx) -> Tally {
    let x = canonical_nilpotent_gl(ctx, mu);
    let n = mu.size();
    let q = ctx.q() as u64;
    (0..q.pow(n as u32))
        .into_par_iter()
        .fold(Tally::new, |mut acc, idx| {
            let mut y = FFMatrix::zeros(ctx, n + 1, n + 1);
            for i in 0..n {
                for j in 0..n {
                    y.set(i, j, x.get(i, j));
                }
            }
            for (i, d) in digits(idx, q, n).enumerate() {
                y.set(i, n, Fq2 { a: d as u32, b: 0 });
            }
            *acc.entry(y.jordan_type().expect("nilpotent")).or_insert(0) += 1;
            acc
        })
        .reduce(Tally::new, merge)
}

pub fn count_l_bruteforce(mu: &Partition, lambda: &Partition, ctx: FieldCtx) -> u64 {
    l_row_bruteforce(mu, ctx).get(lambda).copied().unwrap_or(0)
}

/// `q^{n - Σ_{j≥k} m_j(μ)}(1 - q^{-m_{k-1}(μ)})` for a box added in column `k`
/// (the last factor is absent for `k = 1`), zero unless `μ ↗ λ`.
pub fn l_formula(mu: &Partition, lambda: &Partition, q: u32) -> BigInt {
    let Some(cols) = mu.added_columns(lambda) else { return BigInt::zero() };
    if cols.len() != 1 {
        return BigInt::zero();
    }
    let k = cols[0];
    let n = mu.size() as i64;
    let mut v = qpow(q, n - mu.mult_tail(k) as i64);
    if k > 1 {
        v *= Rational::one() - qpow(q, -(mu.mult(k - 1) as i64));
    }
    to_integer(v)
}

/// Type of the bordered matrix `[[0, -x*W, εy], [0, X, x], [0, 0, 0]]` for
/// every `(x, y) ∈ F_{q²}^N × F_q`, tallied, for a given skew-Hermitian `X`.
pub fn ltilde_row_bruteforce_with(x: &FFMatrix) -> Tally {
    let ctx = x.ctx();
    let n = x.rows();
    let q2 = ctx.q() as u64 * ctx.q() as u64;
    let q = ctx.q() as u64;
    (0..q2.pow(n as u32) * q)
        .into_par_iter()
        .fold(Tally::new, |mut acc, idx| {
            let yv = ctx.base_elements().nth((idx % q) as usize).expect("in range");
            let xv: Vec<Fq2> = digits(idx / q, q2, n).map(|d| ctx.element(d)).collect();
            let mut m = FFMatrix::zeros(ctx, n + 2, n + 2);
            for j in 0..n {
                // (x* W)_j = conj(x_{N-1-j})
                m.set(0, 1 + j, ctx.neg(ctx.conj(xv[n - 1 - j])));
                m.set(1 + j, n + 1, xv[j]);
                for i in 0..n {
                    m.set(1 + i, 1 + j, x.get(i, j));
                }
            }
            m.set(0, n + 1, ctx.mul(ctx.eps(), yv));
            *acc.entry(m.jordan_type().expect("nilpotent")).or_insert(0) += 1;
            acc
        })
        .reduce(Tally::new, merge)
}

pub fn ltilde_row_bruteforce(mu: &Partition, ctx: FieldCtx) -> Result<Tally> {
    Ok(ltilde_row_bruteforce_with(&canonical_nilpotent_skew_hermitian(ctx, mu)?))
}

pub fn count_ltilde_bruteforce(mu: &Partition, lambda: &Partition, ctx: FieldCtx) -> Result<u64> {
    Ok(ltilde_row_bruteforce(mu, ctx)?.get(lambda).copied().unwrap_or(0))
}

/// As [`count_ltilde_bruteforce`] with an arbitrary skew-Hermitian nilpotent `X`.
pub fn count_ltilde_bruteforce_with(x: &FFMatrix, lambda: &Partition) -> Result<u64> {
    if !x.is_skew_hermitian() {
        return Err(Error::NotHermitian);
    }
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    Ok(ltilde_row_bruteforce_with(x).get(lambda).copied().unwrap_or(0))
}

/// Closed form for the unitary edge counts, zero unless `μ ↗↗ λ`.
pub fn ltilde_formula(mu: &Partition, lambda: &Partition, q: u32) -> BigInt {
    if lambda.size() != mu.size() + 2 {
        return BigInt::zero();
    }
    let Some(case) = DoubleCoverCase::classify(mu, lambda) else { return BigInt::zero() };
    let k = case.column();
    let n = mu.size() as i64;
    let mq = -Rational::from_integer((q as i64).into());
    // (-q)^{-m_0} := 0
    let neg_pow = |e: i64| -> Rational { if k == 1 { Rational::zero() } else { mq.clone().pow(e as i32) } };
    let m = mu.mult(k.saturating_sub(1)) as i64;
    let base = qpow(q, 2 * n - 2 * mu.mult_tail(k) as i64);
    let v = match case {
        DoubleCoverCase::VerticalDomino(_) => {
            base * (Rational::one() - neg_pow(-m)) * (Rational::one() - neg_pow(1 - m))
        }
        DoubleCoverCase::ConsecutiveColumns(_) => base * int(q as i64 - 1) * (Rational::one() - neg_pow(-m)),
    };
    to_integer(v)
}

/// `c₀(m) = q^{2m-1} + (-1)^m q^{m-1}(q-1)`, isotropic vectors of an
/// `m`-dimensional Hermitian space (1 for `m = 0`).
pub fn c0_formula(m: u32, q: u32) -> BigInt {
    if m == 0 {
        return BigInt::one();
    }
    let q = BigInt::from(q);
    let sign = if m.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    Pow::pow(&q, 2 * m - 1) + sign * Pow::pow(&q, m - 1) * (&q - 1)
}

/// Solutions of `Σ x_i x̄_i = 0` in F_{q²}^m.
pub fn c0_bruteforce(m: u32, ctx: FieldCtx) -> u64 {
    let q2 = ctx.q() as u64 * ctx.q() as u64;
    (0..q2.pow(m))
        .into_par_iter()
        .filter(|&idx| {
            let s = digits(idx, q2, m as usize).fold(0u64, |acc, d| acc + ctx.norm(ctx.element(d)) as u64);
            s % ctx.q() as u64 == 0
        })
        .count() as u64
}

/// The four ways a bordered matrix can grow `μ`: a vertical domino or two
/// boxes in consecutive columns, with the first box in column `k ≥ 2` (A)
/// or in column 1 (B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum UnitaryCase {
    VerticalA(u32),
    VerticalB,
    ConsecutiveA(u32),
    ConsecutiveB,
}

impl UnitaryCase {
    pub fn of(mu: &Partition, lambda: &Partition) -> Option<UnitaryCase> {
        Some(match DoubleCoverCase::classify(mu, lambda)? {
            DoubleCoverCase::VerticalDomino(1) => UnitaryCase::VerticalB,
            DoubleCoverCase::VerticalDomino(k) => UnitaryCase::VerticalA(k),
            DoubleCoverCase::ConsecutiveColumns(1) => UnitaryCase::ConsecutiveB,
            DoubleCoverCase::ConsecutiveColumns(k) => UnitaryCase::ConsecutiveA(k),
        })
    }
}

/// Brute-force counts grouped by case.
pub fn case_counts_bruteforce(mu: &Partition, ctx: FieldCtx) -> Result<BTreeMap<UnitaryCase, u64>> {
    let mut out = BTreeMap::new();
    for (lambda, c) in ltilde_row_bruteforce(mu, ctx)? {
        let case = UnitaryCase::of(mu, &lambda).ok_or_else(|| Error::NotSingleCover {
            mu: mu.clone(),
            lambda: lambda.clone(),
        })?;
        *out.entry(case).or_insert(0) += c;
    }
    Ok(out)
}

/// Case counts from the dimensions of `V_k` (computed on the canonical
/// Hermitian model) and `c₀`, `c₁`; zero entries are dropped.
pub fn case_counts_formula(mu: &Partition, ctx: FieldCtx) -> Result<BTreeMap<UnitaryCase, BigInt>> {
    let x = canonical_nilpotent_skew_hermitian(ctx, mu)?;
    let q = BigInt::from(ctx.q());
    let dims: Vec<u32> = (1..=mu.largest_part() + 1)
        .map(|k| v_subspace(&x, k).map(|s| s.dim() as u32))
        .collect::<Result<_>>()?;
    let dim = |k: u32| if k == 0 { 0 } else { dims[k as usize - 1] };
    let qp = |e: u32| Pow::pow(&q, e);
    let mut out = BTreeMap::new();
    out.insert(UnitaryCase::VerticalB, qp(2 * dim(1)));
    out.insert(UnitaryCase::ConsecutiveB, qp(2 * dim(1)) * (&q - 1));
    for k in 2..=mu.largest_part() + 1 {
        let m = dim(k) - dim(k - 1);
        let c0 = c0_formula(m, ctx.q());
        let c1 = qp(2 * m) - &c0;
        out.insert(UnitaryCase::VerticalA(k), &q * (c0 - 1) * qp(2 * dim(k - 1)));
        out.insert(UnitaryCase::ConsecutiveA(k), &q * c1 * qp(2 * dim(k - 1)));
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}
