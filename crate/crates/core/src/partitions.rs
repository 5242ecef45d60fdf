//! Integer partitions (Young diagrams) and the covering relations used by the
//! branching graphs: single-box growth `μ ↗ λ`, two-box growth `μ ↗↗ λ`, and
//! the 2-core reduction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as its nonzero parts in weakly decreasing order.
///
/// The derived `Ord` is lexicographic on the parts, which refines the
/// dominance order on partitions of a fixed size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition, dropping trailing zeros. Rejects sequences that are
    /// not weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// `(r^k)`: `k` parts equal to `r`.
    pub fn rectangle(r: u32, k: usize) -> Self {
        if r == 0 {
            return Self::empty();
        }
        Partition(vec![r; k])
    }

    /// The staircase `(m, m-1, ..., 1)`.
    pub fn staircase(m: u32) -> Self {
        Partition((1..=m).rev().collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `λ_i` with 1-based indexing; zero past the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn largest_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// `m_i(λ)`, the number of parts equal to `i` (for `i ≥ 1`).
    pub fn mult(&self, i: u32) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// `Σ_{j ≥ k} m_j(λ)`, which equals the column length `λ'_k` for `k ≥ 1`.
    pub fn mult_tail(&self, k: u32) -> usize {
        self.0.iter().filter(|&&p| p >= k.max(1)).count()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.largest_part();
        Partition((1..=cols).map(|k| self.mult_tail(k) as u32).collect())
    }

    /// Containment of Young diagrams, `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Distinct part sizes, largest first.
    pub fn distinct_parts(&self) -> Vec<u32> {
        let mut d = self.0.clone();
        d.dedup();
        d
    }

    /// Column indices (1-based, with multiplicity) of the boxes of `other ∖ self`,
    /// or `None` when `self` is not contained in `other`.
    pub fn added_columns(&self, other: &Partition) -> Option<Vec<u32>> {
        if !self.is_contained_in(other) {
            return None;
        }
        let a = self.transpose();
        let b = other.transpose();
        let mut cols = Vec::new();
        for k in 1..=b.len() {
            let diff = b.part(k) - a.part(k);
            for _ in 0..diff {
                cols.push(k as u32);
            }
        }
        Some(cols)
    }

    /// All partitions obtained by adding one box, each with the column number
    /// of the added box. Ordered lexicographically decreasing.
    pub fn single_covers(&self) -> Vec<(Partition, u32)> {
        let mut out = Vec::new();
        let rows = self.len();
        for i in 0..=rows {
            let cur = self.part(i + 1);
            if i == 0 || self.part(i) > cur {
                let mut p = self.0.clone();
                if i == rows {
                    p.push(1);
                } else {
                    p[i] += 1;
                }
                out.push((Partition(p), cur + 1));
            }
        }
        out
    }

    /// All partitions obtained by removing one box.
    pub fn single_removals(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            if self.part(i + 1) > self.part(i + 2) {
                let mut p = self.0.clone();
                p[i] -= 1;
                out.push(Partition::from_unsorted(p));
            }
        }
        out
    }

    /// All `λ` with `μ ↗↗ λ`: two added boxes lying in one column or in two
    /// consecutive columns. Ordered lexicographically decreasing.
    pub fn double_covers(&self) -> Vec<(Partition, DoubleCoverCase)> {
        let mut seen = std::collections::BTreeSet::new();
        for (nu, _) in self.single_covers() {
            for (lam, _) in nu.single_covers() {
                seen.insert(lam);
            }
        }
        seen.into_iter()
            .rev()
            .filter_map(|lam| DoubleCoverCase::classify(self, &lam).map(|c| (lam, c)))
            .collect()
    }

    /// Removes 2-rim hooks (dominoes) until none remain.
    pub fn two_core(&self) -> Partition {
        let mut p = self.0.clone();
        loop {
            let n = p.len();
            let at = |p: &Vec<u32>, i: usize| p.get(i).copied().unwrap_or(0);
            let mut changed = false;
            for i in 0..n {
                if at(&p, i) >= at(&p, i + 1) + 2 {
                    p[i] -= 2;
                    changed = true;
                    break;
                }
                if i + 1 < n && p[i] == p[i + 1] && p[i + 1] > at(&p, i + 2) {
                    p[i] -= 1;
                    p[i + 1] -= 1;
                    changed = true;
                    break;
                }
            }
            while p.last() == Some(&0) {
                p.pop();
            }
            if !changed {
                return Partition(p);
            }
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `∅`, `()`, `(2,1)`, `2,1` or `[2,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s.trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
        if inner.is_empty() || inner == "∅" || inner == "0" {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// How the two boxes of `λ ∖ μ` sit when `μ ↗↗ λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DoubleCoverCase {
    /// Both boxes in column `k`.
    VerticalDomino(u32),
    /// One box in column `k`, one in column `k+1` (includes horizontal dominoes).
    ConsecutiveColumns(u32),
}

impl DoubleCoverCase {
    pub fn column(self) -> u32 {
        match self {
            DoubleCoverCase::VerticalDomino(k) | DoubleCoverCase::ConsecutiveColumns(k) => k,
        }
    }

    /// Classifies `λ ∖ μ`; `None` unless `μ ↗↗ λ`.
    pub fn classify(mu: &Partition, lambda: &Partition) -> Option<Self> {
        if lambda.size() != mu.size() + 2 {
            return None;
        }
        let cols = mu.added_columns(lambda)?;
        match cols.as_slice() {
            [a, b] if a == b => Some(DoubleCoverCase::VerticalDomino(*a)),
            [a, b] if *b == a + 1 => Some(DoubleCoverCase::ConsecutiveColumns(*a)),
            _ => None,
        }
    }
}

/// All partitions of `n` in lexicographically decreasing order
/// (`(n)` first, `(1^n)` last).
pub fn enumerate(n: usize) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// `p(n)` without materialising the partitions.
pub fn count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}

pub fn binomial2(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}
