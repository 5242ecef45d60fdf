use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{fmt_rational, Rational};
use crate::graphs::BranchingGraph;
use crate::partitions::Partition;

/// One transition `current → next` and its exact probability.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthStep {
    pub current: Partition,
    pub next: Partition,
    pub probability: Rational,
}

/// Markov chain on a branching graph with `p(μ → λ) = W(μ, λ) φ(λ) / φ(μ)`,
/// precomputed on every vertex reachable from the root within `steps`.
#[derive(Clone, Debug)]
pub struct GrowthChain {
    root: Partition,
    steps: usize,
    transitions: HashMap<Partition, Vec<GrowthStep>>,
}

impl GrowthChain {
    pub fn new(
        graph: &BranchingGraph,
        phi: impl Fn(&Partition) -> Result<Rational>,
        steps: usize,
    ) -> Result<Self> {
        if steps > graph.lmax() {
            return Err(Error::InvalidParameter(format!(
                "{steps} steps exceed the graph depth {}",
                graph.lmax()
            )));
        }
        let root = graph.root().clone();
        let mut transitions = HashMap::new();
        let mut frontier = vec![root.clone()];
        let mut values: HashMap<Partition, Rational> = HashMap::new();
        let mut value = |p: &Partition| -> Result<Rational> {
            if let Some(v) = values.get(p) {
                return Ok(v.clone());
            }
            let v = phi(p)?;
            if v.is_negative() {
                return Err(Error::InvalidParameter(format!("phi({p}) = {} is negative", fmt_rational(&v))));
            }
            values.insert(p.clone(), v.clone());
            Ok(v)
        };
        if !value(&root)?.is_one() {
            return Err(Error::InvalidParameter("phi is not normalized at the root".into()));
        }
        for _ in 0..steps {
            let mut next = BTreeMap::new();
            for mu in &frontier {
                let pm = value(mu)?;
                if pm.is_zero() {
                    return Err(Error::Vanishing(mu.clone()));
                }
                let mut row = Vec::new();
                let mut total = Rational::zero();
                for e in graph.out_edges(mu) {
                    let p = graph.weight_at(e) * value(&e.to)? / &pm;
                    total += &p;
                    if !p.is_zero() {
                        next.insert(e.to.clone(), ());
                        row.push(GrowthStep { current: mu.clone(), next: e.to.clone(), probability: p });
                    }
                }
                if !total.is_one() {
                    return Err(Error::NotHarmonic(mu.clone()));
                }
                transitions.insert(mu.clone(), row);
            }
            frontier = next.into_keys().collect();
        }
        Ok(GrowthChain { root, steps, transitions })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn transitions(&self, mu: &Partition) -> Option<&[GrowthStep]> {
        self.transitions.get(mu).map(|v| v.as_slice())
    }

    /// Picks the first transition whose cumulative probability exceeds
    /// `u / 2⁶⁴`.
    fn choose(row: &[GrowthStep], u: u64) -> &GrowthStep {
        let draw = Rational::new(BigInt::from(u), BigInt::one() << 64);
        let mut acc = Rational::zero();
        for s in row {
            acc += &s.probability;
            if draw < acc {
                return s;
            }
        }
        row.last().expect("a reachable vertex has an outgoing edge")
    }

    pub fn sample_path(&self, rng: &mut impl RngCore) -> Vec<Partition> {
        let mut path = vec![self.root.clone()];
        for _ in 0..self.steps {
            let cur = path.last().expect("nonempty");
            let row = &self.transitions[cur];
            let s = Self::choose(row, rng.next_u64());
            path.push(s.next.clone());
        }
        path
    }

    /// `count` paths from a ChaCha8 stream seeded with `seed`.
    pub fn sample_paths(&self, count: usize, seed: u64) -> Vec<Vec<Partition>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sample_path(&mut rng)).collect()
    }
}

/// One sampled path of length `steps` from the root.
pub fn markov_growth(
    graph: &BranchingGraph,
    phi: impl Fn(&Partition) -> Result<Rational>,
    steps: usize,
    seed: u64,
) -> Result<Vec<Partition>> {
    let chain = GrowthChain::new(graph, phi, steps)?;
    Ok(chain.sample_paths(1, seed).remove(0))
}

#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalRow {
    pub to: Partition,
    pub count: u64,
    pub frequency: f64,
    /// Exact transition probability as `num/den`.
    pub expected: String,
    pub sigma: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalReport {
    pub from: Partition,
    pub visits: u64,
    pub rows: Vec<EmpiricalRow>,
}

impl EmpiricalReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Transition frequencies out of `mu` against their exact values, each
/// accepted when within three binomial standard deviations.
pub fn empirical_check(paths: &[Vec<Partition>], chain: &GrowthChain, mu: &Partition) -> EmpiricalReport {
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    let mut visits = 0u64;
    for path in paths {
        for w in path.windows(2) {
            if &w[0] == mu {
                visits += 1;
                *counts.entry(w[1].clone()).or_insert(0) += 1;
            }
        }
    }
    let mut rows = Vec::new();
    if visits > 0 {
        for s in chain.transitions(mu).unwrap_or(&[]) {
            let count = counts.get(&s.next).copied().unwrap_or(0);
            let p = s.probability.to_f64().unwrap_or(f64::NAN);
            let n = visits as f64;
            let sigma = (n * p * (1.0 - p)).max(0.0).sqrt();
            let pass = (count as f64 - n * p).abs() <= 3.0 * sigma + 1e-9;
            rows.push(EmpiricalRow {
                to: s.next.clone(),
                count,
                frequency: count as f64 / n,
                expected: fmt_rational(&s.probability),
                sigma,
                pass,
            });
        }
    }
    EmpiricalReport { from: mu.clone(), visits, rows }
}
