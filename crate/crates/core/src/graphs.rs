//! Weighted branching graphs built on the Young lattice.
//!
//! Weights of the `t`-deformed kinds are kept as polynomials in `t` and
//! specialized on demand; the finite-field kinds carry integer weights.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{fmt_rational, int, CoeffValue, Poly, RatFun, Rational, Ring};
use crate::fflab::{l_formula, ltilde_formula, FieldCtx};
use crate::hallittlewood::{psi_single, xi_double};
use crate::partitions::{binomial2, enumerate, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    /// Plain Young graph, all weights 1.
    Young,
    /// Pieri weights `ψ_{λ/μ}(t)`, `0 < t < 1`.
    Hl,
    /// Two-box weights `ξ_{λ/μ}(t)` on partitions of even size, `-1 < t < 0`.
    HlEven,
    /// As [`GraphKind::HlEven`] on odd sizes, rooted at `(1)`.
    HlOdd,
    /// Augmentation counts `L(μ, λ)` over F_q.
    Gl,
    /// Unitary augmentation counts `L̃(μ, λ)`, even sizes.
    UEven,
    /// Unitary augmentation counts, odd sizes, rooted at `(1)`.
    UOdd,
}

impl GraphKind {
    pub const ALL: [GraphKind; 7] = [
        GraphKind::Young,
        GraphKind::Hl,
        GraphKind::HlEven,
        GraphKind::HlOdd,
        GraphKind::Gl,
        GraphKind::UEven,
        GraphKind::UOdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Young => "young",
            GraphKind::Hl => "hl",
            GraphKind::HlEven => "hl-even",
            GraphKind::HlOdd => "hl-odd",
            GraphKind::Gl => "gl",
            GraphKind::UEven => "u-even",
            GraphKind::UOdd => "u-odd",
        }
    }

    pub fn root(self) -> Partition {
        match self {
            GraphKind::HlOdd | GraphKind::UOdd => Partition::new(vec![1]).expect("valid"),
            _ => Partition::empty(),
        }
    }

    /// Boxes added per step.
    pub fn step(self) -> usize {
        match self {
            GraphKind::HlEven | GraphKind::HlOdd | GraphKind::UEven | GraphKind::UOdd => 2,
            _ => 1,
        }
    }

    /// Size of the partitions at `level`.
    pub fn size_at(self, level: usize) -> usize {
        self.root().size() + self.step() * level
    }

    pub fn takes_t(self) -> bool {
        matches!(self, GraphKind::Hl | GraphKind::HlEven | GraphKind::HlOdd)
    }

    pub fn takes_q(self) -> bool {
        matches!(self, GraphKind::Gl | GraphKind::UEven | GraphKind::UOdd)
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown graph kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GraphParam {
    None,
    T(Rational),
    Q(u32),
}

impl fmt::Display for GraphParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphParam::None => Ok(()),
            GraphParam::T(t) => write!(f, "t={}", fmt_rational(t)),
            GraphParam::Q(q) => write!(f, "q={q}"),
        }
    }
}

fn validate(kind: GraphKind, param: &GraphParam) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidParameter(msg));
    match (kind, param) {
        (GraphKind::Young, GraphParam::None) => Ok(()),
        (GraphKind::Hl, GraphParam::T(t)) => {
            if t.is_positive() && *t < Rational::one() {
                Ok(())
            } else {
                bad(format!("{kind} needs 0 < t < 1, got {}", fmt_rational(t)))
            }
        }
        (GraphKind::HlEven | GraphKind::HlOdd, GraphParam::T(t)) => {
            if t.is_negative() && *t > -Rational::one() {
                Ok(())
            } else {
                bad(format!("{kind} needs -1 < t < 0, got {}", fmt_rational(t)))
            }
        }
        (GraphKind::Gl | GraphKind::UEven | GraphKind::UOdd, GraphParam::Q(q)) => FieldCtx::new(*q).map(|_| ()),
        (k, p) => bad(format!("{k} does not take parameter {p:?}")),
    }
}

/// An edge `μ → λ`. The weight is a polynomial in `t`, constant for kinds
/// without a `t` parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub from: Partition,
    pub to: Partition,
    pub weight: Poly,
}

#[derive(Clone, Debug)]
pub struct BranchingGraph {
    kind: GraphKind,
    param: GraphParam,
    levels: Vec<Vec<Partition>>,
    edges: Vec<Edge>,
    out: HashMap<Partition, Vec<usize>>,
    inc: HashMap<Partition, Vec<usize>>,
}

fn constant(n: BigInt) -> Poly {
    Poly::constant(Rational::from_integer(n))
}

impl BranchingGraph {
    /// All vertices and nonzero edges up to level `lmax`.
    pub fn build(kind: GraphKind, lmax: usize, param: GraphParam) -> Result<Self> {
        validate(kind, &param)?;
        let levels: Vec<Vec<Partition>> = (0..=lmax)
            .map(|l| if l == 0 { vec![kind.root()] } else { enumerate(kind.size_at(l)) })
            .collect();
        let mut edges = Vec::new();
        for level in levels.iter().take(lmax) {
            for mu in level {
                let targets: Vec<Partition> = if kind.step() == 1 {
                    mu.single_covers().into_iter().map(|(l, _)| l).collect()
                } else {
                    mu.double_covers().into_iter().map(|(l, _)| l).collect()
                };
                for lambda in targets {
                    let weight = match (kind, &param) {
                        (GraphKind::Young, _) => Poly::one(),
                        (GraphKind::Hl, _) => psi_single(mu, &lambda)?,
                        (GraphKind::HlEven | GraphKind::HlOdd, _) => xi_double(mu, &lambda)?,
                        (GraphKind::Gl, GraphParam::Q(q)) => constant(l_formula(mu, &lambda, *q)),
                        (GraphKind::UEven | GraphKind::UOdd, GraphParam::Q(q)) => {
                            constant(ltilde_formula(mu, &lambda, *q))
                        }
                        _ => unreachable!("validated"),
                    };
                    if !weight.is_zero() {
                        edges.push(Edge { from: mu.clone(), to: lambda, weight });
                    }
                }
            }
        }
        let mut out: HashMap<Partition, Vec<usize>> = HashMap::new();
        let mut inc: HashMap<Partition, Vec<usize>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            out.entry(e.from.clone()).or_default().push(i);
            inc.entry(e.to.clone()).or_default().push(i);
        }
        Ok(BranchingGraph { kind, param, levels, edges, out, inc })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn param(&self) -> &GraphParam {
        &self.param
    }

    pub fn lmax(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn root(&self) -> &Partition {
        &self.levels[0][0]
    }

    pub fn levels(&self) -> &[Vec<Partition>] {
        &self.levels
    }

    pub fn level_of(&self, lambda: &Partition) -> Option<usize> {
        let s = lambda.size().checked_sub(self.kind.root().size())?;
        if s % self.kind.step() != 0 {
            return None;
        }
        let l = s / self.kind.step();
        (l <= self.lmax() && (l > 0 || lambda == self.root())).then_some(l)
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        self.level_of(lambda).is_some()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, mu: &Partition) -> impl Iterator<Item = &Edge> {
        self.out.get(mu).into_iter().flatten().map(|&i| &self.edges[i])
    }

    pub fn in_edges(&self, lambda: &Partition) -> impl Iterator<Item = &Edge> {
        self.inc.get(lambda).into_iter().flatten().map(|&i| &self.edges[i])
    }

    pub fn edge(&self, mu: &Partition, lambda: &Partition) -> Option<&Edge> {
        self.out_edges(mu).find(|e| &e.to == lambda)
    }

    /// The weight as an exact value: a rational function of `t` for the
    /// deformed kinds, a rational otherwise.
    pub fn weight_value(&self, e: &Edge) -> CoeffValue {
        if self.kind.takes_t() {
            CoeffValue::from(e.weight.clone())
        } else {
            CoeffValue::Rational(e.weight.coeff(0))
        }
    }

    /// The weight specialized at the graph parameter.
    pub fn weight_at(&self, e: &Edge) -> Rational {
        match &self.param {
            GraphParam::T(t) => e.weight.eval(t),
            _ => e.weight.coeff(0),
        }
    }

    /// Every specialized weight is strictly positive.
    pub fn check_positive(&self) -> bool {
        self.edges.iter().all(|e| self.weight_at(e).is_positive())
    }

    /// Every vertex above the root has an incoming edge of nonzero weight.
    pub fn check_predecessors(&self) -> bool {
        self.levels
            .iter()
            .skip(1)
            .flatten()
            .all(|l| self.in_edges(l).any(|e| !self.weight_at(e).is_zero()))
    }

    /// Every vertex below the top level has an outgoing edge of nonzero weight.
    pub fn check_successors(&self) -> bool {
        self.levels
            .iter()
            .take(self.lmax())
            .flatten()
            .all(|m| self.out_edges(m).any(|e| !self.weight_at(e).is_zero()))
    }

    fn harmonic_with<R: Ring>(&self, lmax: usize, w: impl Fn(&Edge) -> R, phi: impl Fn(&Partition) -> Result<R>) -> Result<bool> {
        for level in self.levels.iter().take(lmax.min(self.lmax())) {
            for mu in level {
                let mut s = R::zero();
                for e in self.out_edges(mu) {
                    s = s + w(e) * phi(&e.to)?;
                }
                if s != phi(mu)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `φ(μ) = Σ_{μ→λ} W(μ, λ) φ(λ)` for every `μ` below level `lmax`,
    /// with weights specialized at the graph parameter.
    pub fn is_harmonic(&self, lmax: usize, phi: impl Fn(&Partition) -> Result<Rational>) -> Result<bool> {
        self.harmonic_with(lmax, |e| self.weight_at(e), phi)
    }

    /// As [`BranchingGraph::is_harmonic`] with symbolic weights.
    pub fn is_harmonic_symbolic(&self, lmax: usize, phi: impl Fn(&Partition) -> Result<RatFun>) -> Result<bool> {
        self.harmonic_with(lmax, |e| RatFun::from(e.weight.clone()), phi)
    }

    /// Sum over root-to-`λ` paths of the product of edge weights.
    pub fn weighted_path_sum(&self, lambda: &Partition) -> Result<CoeffValue> {
        let target = self
            .level_of(lambda)
            .ok_or_else(|| Error::InvalidParameter(format!("{lambda} is not a vertex")))?;
        let mut cur: BTreeMap<Partition, Poly> = BTreeMap::from([(self.root().clone(), Poly::one())]);
        for _ in 0..target {
            let mut next: BTreeMap<Partition, Poly> = BTreeMap::new();
            for (mu, v) in &cur {
                for e in self.out_edges(mu) {
                    let acc = next.entry(e.to.clone()).or_insert_with(Poly::zero);
                    *acc = &*acc + &(v * &e.weight);
                }
            }
            cur = next;
        }
        let p = cur.remove(lambda).unwrap_or_else(Poly::zero);
        Ok(if self.kind.takes_t() { CoeffValue::from(p) } else { CoeffValue::Rational(p.coeff(0)) })
    }

    pub fn export(&self, format: &str) -> Result<String> {
        match format {
            "json" => Ok(self.to_json()),
            "dot" => Ok(self.to_dot()),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }

    fn param_string(&self) -> Option<String> {
        match &self.param {
            GraphParam::None => None,
            GraphParam::T(t) => Some(fmt_rational(t)),
            GraphParam::Q(q) => Some(q.to_string()),
        }
    }

    /// `{kind, param, levels, edges}` with partitions as integer arrays.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct EdgeDoc<'a> {
            from: &'a Partition,
            to: &'a Partition,
            weight: String,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            kind: GraphKind,
            param: Option<String>,
            levels: &'a [Vec<Partition>],
            edges: Vec<EdgeDoc<'a>>,
        }
        let doc = Doc {
            kind: self.kind,
            param: self.param_string(),
            levels: &self.levels,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc { from: &e.from, to: &e.to, weight: self.weight_value(e).to_string() })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph branching {\n  rankdir=TB;\n");
        let id = |p: &Partition| format!("\"{p}\"");
        for (l, level) in self.levels.iter().enumerate() {
            s.push_str(&format!("  {{ rank=same; // level {l}\n"));
            for v in level {
                s.push_str(&format!("    {};\n", id(v)));
            }
            s.push_str("  }\n");
        }
        for e in &self.edges {
            s.push_str(&format!("  {} -> {} [label=\"{}\"];\n", id(&e.from), id(&e.to), self.weight_value(e)));
        }
        s.push_str("}\n");
        s
    }
}

fn q_pow(q: u32, e: i64) -> Rational {
    let b = int(q as i64);
    if e >= 0 {
        Ring::pow(&b, e as u32)
    } else {
        Rational::one() / Ring::pow(&b, (-e) as u32)
    }
}

/// `f(λ) = q^{n(λ) - C(|λ|, 2)}`.
pub fn gauge(lambda: &Partition, q: u32) -> Rational {
    q_pow(q, lambda.n_stat() as i64 - binomial2(lambda.size()) as i64)
}

/// `q^{n(μ) - n(λ) + 2N + 1}` with `N = |μ|`.
pub fn unitary_edge_factor(mu: &Partition, lambda: &Partition, q: u32) -> Rational {
    q_pow(q, mu.n_stat() as i64 - lambda.n_stat() as i64 + 2 * mu.size() as i64 + 1)
}

/// Whether `W'(μ, λ) = W(μ, λ) f(μ) / f(λ)` on every edge, the two graphs
/// having the same vertices and edges.
pub fn check_similarity(g: &BranchingGraph, h: &BranchingGraph, f: impl Fn(&Partition) -> Rational) -> bool {
    if g.levels != h.levels || g.edges.len() != h.edges.len() {
        return false;
    }
    g.edges.iter().all(|e| match h.edge(&e.from, &e.to) {
        Some(e2) => h.weight_at(e2) == g.weight_at(e) * f(&e.from) / f(&e.to),
        None => false,
    })
}
