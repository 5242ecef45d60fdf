use std::fmt::Write as _;

use hlbranch::exactalg::{rat, Rational};
use hlbranch::fflab::{
    c0_bruteforce, c0_formula, class_size, l_formula, l_row_bruteforce, ltilde_formula, ltilde_row_bruteforce,
    nilpotent_census, FieldCtx,
};
use hlbranch::graphs::{check_similarity, gauge, BranchingGraph, GraphKind, GraphParam};
use hlbranch::hallittlewood::{
    plancherel_functional, principal_functional, two_point_functional, verify_pieri_p1, verify_pieri_p2, Parity,
};
use hlbranch::measures::{gl_harmonic, unitary_harmonic, OmegaPoint};
use hlbranch::partitions::enumerate;
use num_bigint::BigInt;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

use crate::cli::{Format, Suite, VerifyArgs};
use crate::error::{guard, usage, CliError, CliResult};
use crate::output::emit;

#[derive(Debug, Serialize)]
struct Case {
    case: String,
    pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    detail: String,
}

impl Case {
    fn new(case: impl Into<String>, pass: bool) -> Self {
        Case { case: case.into(), pass, detail: String::new() }
    }

    fn with(mut self, detail: impl Into<String>) -> Self {
        if !self.pass {
            self.detail = detail.into();
        }
        self
    }
}

/// The largest size the symmetric-function oracle reaches after a Pieri
/// step of two boxes.
const PIERI_MAX: usize = 6;

fn pow(q: u32, e: usize) -> f64 {
    (q as f64).powi(e as i32)
}

fn gl_oracle(q: u32, max: usize, force: bool) -> CliResult<Vec<Case>> {
    let ctx = FieldCtx::new(q)?;
    guard(force, pow(q, 2 * max + 1) * enumerate(max).len() as f64, 1e8, "gl-oracle")?;
    let mut cases = Vec::new();
    for n in 0..=max {
        for mu in enumerate(n) {
            let row = l_row_bruteforce(&mu, ctx);
            let mut ok = true;
            let mut detail = String::new();
            for lambda in enumerate(n + 1) {
                let brute = row.get(&lambda).copied().unwrap_or(0);
                let f = l_formula(&mu, &lambda, q);
                if BigInt::from(brute) != f {
                    ok = false;
                    write!(detail, "{lambda}: counted {brute}, formula {f}; ").unwrap();
                }
            }
            let total: u64 = row.values().sum();
            if BigInt::from(total) != BigInt::from(q).pow(n as u32) {
                ok = false;
                write!(detail, "row sum {total}").unwrap();
            }
            cases.push(Case::new(format!("L row of {mu}"), ok).with(detail));
        }
    }
    Ok(cases)
}

fn u_oracle(q: u32, max: usize, force: bool) -> CliResult<Vec<Case>> {
    let ctx = FieldCtx::new(q)?;
    guard(force, pow(q, 4 * max + 2), 1e8, "u-oracle")?;
    let mut cases = Vec::new();
    for n in 0..=max {
        for mu in enumerate(n) {
            let row = ltilde_row_bruteforce(&mu, ctx)?;
            let mut ok = true;
            let mut detail = String::new();
            for lambda in enumerate(n + 2) {
                let brute = row.get(&lambda).copied().unwrap_or(0);
                let f = ltilde_formula(&mu, &lambda, q);
                if BigInt::from(brute) != f {
                    ok = false;
                    write!(detail, "{lambda}: counted {brute}, formula {f}; ").unwrap();
                }
            }
            let total: u64 = row.values().sum();
            if BigInt::from(total) != BigInt::from(q).pow(2 * n as u32 + 1) {
                ok = false;
                write!(detail, "row sum {total}").unwrap();
            }
            cases.push(Case::new(format!("L̃ row of {mu}"), ok).with(detail));
        }
    }
    Ok(cases)
}

fn pieri(max: usize) -> CliResult<Vec<Case>> {
    if max > PIERI_MAX {
        return Err(usage(format!("the symmetric-function oracle handles |μ| ≤ {PIERI_MAX}")));
    }
    let mut cases = Vec::new();
    for n in 0..=max {
        for mu in enumerate(n) {
            cases.push(Case::new(format!("p1 Pieri at {mu}"), verify_pieri_p1(&mu)?));
            cases.push(Case::new(format!("p2 Pieri at {mu}"), verify_pieri_p2(&mu)?));
        }
    }
    Ok(cases)
}

fn gauge_suite(q: u32, max: usize, force: bool) -> CliResult<Vec<Case>> {
    FieldCtx::new(q)?;
    guard(force, enumerate(max + 2).len() as f64, 5000.0, "gauge")?;
    let t = rat(1, q as i64);
    let mt = rat(-1, q as i64);
    let mut cases = Vec::new();
    let pairs = [
        (GraphKind::Hl, GraphKind::Gl, t, max + 1),
        (GraphKind::HlEven, GraphKind::UEven, mt.clone(), max / 2 + 1),
        (GraphKind::HlOdd, GraphKind::UOdd, mt, (max.max(1) - 1) / 2 + 1),
    ];
    for (hk, gk, t, lmax) in pairs {
        let h = BranchingGraph::build(hk, lmax, GraphParam::T(t))?;
        let g = BranchingGraph::build(gk, lmax, GraphParam::Q(q))?;
        cases.push(Case::new(format!("{gk} ~ {hk}"), check_similarity(&h, &g, |l| gauge(l, q))));
    }
    Ok(cases)
}

fn harmonic(q: u32, max: usize) -> CliResult<Vec<Case>> {
    FieldCtx::new(q)?;
    if max + 2 > 8 {
        return Err(usage("the harmonic suite handles |μ| ≤ 6"));
    }
    let t = rat(1, q as i64);
    let mut cases = Vec::new();
    let hl = BranchingGraph::build(GraphKind::Hl, max + 1, GraphParam::T(t.clone()))?;
    let points = [
        ("Haar", OmegaPoint::haar(t.clone())?),
        ("Plancherel", OmegaPoint::plancherel(t.clone())?),
        ("Dirac at 0", OmegaPoint::dirac_zero(t.clone())?),
        ("α = (1/2), β = (1/8)", OmegaPoint::new(vec![rat(1, 2)], vec![rat(1, 8)], t)?),
    ];
    for (name, omega) in points {
        cases.push(Case::new(format!("gl {name}"), hl.is_harmonic(max + 1, |l| gl_harmonic(l, &omega))?));
    }
    let t: Rational = rat(-1, q as i64);
    for (kind, parity, lmax) in [
        (GraphKind::HlEven, Parity::Even, max / 2 + 1),
        (GraphKind::HlOdd, Parity::Odd, (max.max(1) - 1) / 2 + 1),
    ] {
        let g = BranchingGraph::build(kind, lmax, GraphParam::T(t.clone()))?;
        let families = [
            plancherel_functional(parity),
            principal_functional(Some(2), t.clone())?,
            principal_functional(None, t.clone())?,
            two_point_functional(rat(4, 5), rat(-3, 5))?,
        ];
        for f in families {
            let ok = g.is_harmonic(lmax, |l| unitary_harmonic(l, &f, &t))?;
            cases.push(Case::new(format!("{parity} {f}"), ok));
        }
    }
    Ok(cases)
}

fn c0(q: u32, max_m: u32, force: bool) -> CliResult<Vec<Case>> {
    let ctx = FieldCtx::new(q)?;
    guard(force, pow(q, 2 * max_m as usize), 1e8, "c0")?;
    Ok((1..=max_m)
        .map(|m| {
            let b = c0_bruteforce(m, ctx);
            let f = c0_formula(m, q);
            Case::new(format!("c0 in dimension {m}"), BigInt::from(b) == f)
                .with(format!("counted {b}, formula {f}"))
        })
        .collect())
}

fn census(q: u32, max: usize, force: bool) -> CliResult<Vec<Case>> {
    let ctx = FieldCtx::new(q)?;
    guard(force, pow(q, max * max), 1e8, "census")?;
    let mut cases = Vec::new();
    for n in 0..=max {
        let tally = nilpotent_census(n, ctx);
        let mut ok = true;
        let mut detail = String::new();
        for l in enumerate(n) {
            let b = tally.get(&l).copied().unwrap_or(0);
            let f = class_size(&l, q);
            if BigInt::from(b) != f {
                ok = false;
                write!(detail, "{l}: counted {b}, formula {f}; ").unwrap();
            }
        }
        let total: u64 = tally.values().sum();
        if BigInt::from(total) != BigInt::from(q).pow((n * n.saturating_sub(1)) as u32) {
            ok = false;
            write!(detail, "total {total}").unwrap();
        }
        cases.push(Case::new(format!("nilpotent classes of size {n}"), ok).with(detail));
    }
    Ok(cases)
}

pub fn run(a: &VerifyArgs) -> CliResult<()> {
    let force = a.common.force;
    let cases = match a.suite {
        Suite::GlOracle => gl_oracle(a.q, a.max_size.unwrap_or(3), force)?,
        Suite::UOracle => u_oracle(a.q, a.max_size.unwrap_or(2), force)?,
        Suite::Pieri => pieri(a.max_size.unwrap_or(4))?,
        Suite::Gauge => gauge_suite(a.q, a.max_size.unwrap_or(4), force)?,
        Suite::Harmonic => harmonic(a.q, a.max_size.unwrap_or(4))?,
        Suite::C0 => c0(a.q, a.max_m.unwrap_or(3), force)?,
        Suite::Census => census(a.q, a.max_size.unwrap_or(3), force)?,
    };
    let passed = cases.iter().filter(|c| c.pass).count();
    let all = passed == cases.len();
    let body = match a.common.format {
        Format::Text => {
            let mut s = String::new();
            for c in &cases {
                if c.pass {
                    writeln!(s, "PASS {}", c.case).unwrap();
                } else {
                    writeln!(s, "FAIL {}: {}", c.case, c.detail).unwrap();
                }
            }
            writeln!(s, "{passed}/{} passed", cases.len()).unwrap();
            s
        }
        Format::Json => {
            let v = json!({ "suite": a.suite.to_possible_value().expect("named").get_name(), "q": a.q, "passed": all, "cases": cases });
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s
        }
        _ => return Err(usage("verification reports come as text or json")),
    };
    emit(&a.common, &body)?;
    if all {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} of {} cases failed", cases.len() - passed, cases.len())))
    }
}
