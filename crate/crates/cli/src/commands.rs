use std::fmt::Write as _;

use hlbranch::exactalg::{fmt_rational, parse_rational, rat, Rational};
use hlbranch::fflab::{class_size, nilpotent_census, FieldCtx};
use hlbranch::graphs::{BranchingGraph, GraphKind, GraphParam};
use hlbranch::hallittlewood::Parity;
use hlbranch::measures::{empirical_check, gl_harmonic, unitary_harmonic, GrowthChain, MeasureSpec, MeasureTable};
use hlbranch::partitions::{self, enumerate, Partition};
use serde_json::{json, Value};

use crate::cli::{CensusArgs, Format, MeasureArgs, SampleArgs, WeightsArgs};
use crate::error::{guard, usage, CliError, CliResult};
use crate::family::{resolve, Family, Side};
use crate::output::emit;

const MAX_VERTICES: f64 = 5_000.0;

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| usage(e.to_string());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn graph_param(kind: GraphKind, q: Option<u32>, t: Option<&str>) -> CliResult<GraphParam> {
    if kind.takes_t() {
        if q.is_some() {
            return Err(usage(format!("--q does not apply to kind {kind}; use --t")));
        }
        let t = t.ok_or_else(|| usage(format!("kind {kind} needs --t")))?;
        Ok(GraphParam::T(parse_rational(t)?))
    } else if kind.takes_q() {
        if t.is_some() {
            return Err(usage(format!("--t does not apply to kind {kind}; use --q")));
        }
        Ok(GraphParam::Q(q.ok_or_else(|| usage(format!("kind {kind} needs --q")))?))
    } else {
        if q.is_some() || t.is_some() {
            return Err(usage("kind young takes no parameter"));
        }
        Ok(GraphParam::None)
    }
}

fn guard_graph(kind: GraphKind, lmax: usize, force: bool) -> CliResult<()> {
    let top = partitions::count(kind.size_at(lmax)) as f64;
    guard(force, top, MAX_VERTICES, &format!("{kind} up to level {lmax}"))
}

pub fn weights(a: &WeightsArgs) -> CliResult<()> {
    let param = graph_param(a.kind, a.q, a.t.as_deref())?;
    guard_graph(a.kind, a.lmax, a.common.force)?;
    let g = BranchingGraph::build(a.kind, a.lmax, param)?;
    let body = match a.common.format {
        Format::Text => {
            let mut s = String::new();
            for e in g.edges() {
                writeln!(s, "{} → {}: {}", e.from, e.to, fmt_rational(&g.weight_at(e))).unwrap();
            }
            s
        }
        Format::Csv => csv_string(
            &["from", "to", "weight", "symbolic"],
            g.edges().iter().map(|e| {
                vec![e.from.to_string(), e.to.to_string(), fmt_rational(&g.weight_at(e)), g.weight_value(e).to_string()]
            }),
        )?,
        Format::Json => {
            let mut v: Value = serde_json::from_str(&g.to_json()).expect("valid json");
            let edges = v["edges"].as_array_mut().expect("edge list");
            for (doc, e) in edges.iter_mut().zip(g.edges()) {
                doc["value"] = json!(fmt_rational(&g.weight_at(e)));
            }
            pretty(&v)
        }
        Format::Dot => g.to_dot(),
    };
    emit(&a.common, &body)
}

fn measure_spec(a: &MeasureArgs) -> CliResult<MeasureSpec> {
    FieldCtx::new(a.q)?;
    let side = if a.family.family.starts_with("gl-") { Side::Gl } else { Side::Unitary(Parity::Even) };
    let t = match side {
        Side::Gl => rat(1, a.q as i64),
        Side::Unitary(_) => rat(-1, a.q as i64),
    };
    match resolve(&a.family, &t, None)? {
        Family::Gl(omega) => Ok(MeasureSpec::gl(omega, a.q)?),
        Family::Unitary(parity, f) => Ok(MeasureSpec::unitary(parity, f, a.q)?),
    }
}

pub fn measure(a: &MeasureArgs) -> CliResult<()> {
    let spec = measure_spec(a)?;
    let kind = spec.mass_graph(0)?.kind();
    guard_graph(kind, a.lmax, a.common.force)?;
    let table = MeasureTable::build(&spec, a.lmax)?;
    let body = match a.common.format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "# {spec}").unwrap();
            for r in &table.rows {
                writeln!(s, "{}: {}", r.partition, fmt_rational(&r.mass)).unwrap();
            }
            if let Some(lm) = &table.level_masses {
                for (n, m) in lm.iter().enumerate() {
                    writeln!(s, "level {n}: {}", fmt_rational(m)).unwrap();
                }
            }
            s
        }
        Format::Csv => table.to_csv()?,
        Format::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
        Format::Dot => return Err(usage("measure tables come as text, csv or json")),
    };
    emit(&a.common, &body)
}

type Phi = Box<dyn Fn(&Partition) -> hlbranch::Result<Rational>>;

/// The harmonic function driving the chain on `g`: `φ` itself on the
/// Hall-Littlewood kinds, the cylinder masses on the counting kinds.
fn sample_phi(a: &SampleArgs, g: &BranchingGraph) -> CliResult<Phi> {
    let kind = a.kind;
    let parity = match kind {
        GraphKind::HlEven | GraphKind::UEven => Some(Parity::Even),
        GraphKind::HlOdd | GraphKind::UOdd => Some(Parity::Odd),
        _ => None,
    };
    let side = parity.map_or(Side::Gl, Side::Unitary);
    match g.param() {
        GraphParam::T(t) => {
            let t = t.clone();
            match resolve(&a.family, &t, Some(side))? {
                Family::Gl(omega) if side == Side::Gl => Ok(Box::new(move |l| gl_harmonic(l, &omega))),
                Family::Unitary(p, f) if Some(p) == parity => {
                    if let Some(own) = f.fixed_t() {
                        if *own != t {
                            return Err(usage(format!("{f} is tied to t = {}", fmt_rational(own))));
                        }
                    }
                    Ok(Box::new(move |l| unitary_harmonic(l, &f, &t)))
                }
                _ => Err(usage(format!("family {} does not live on kind {kind}", a.family.family))),
            }
        }
        GraphParam::Q(q) => {
            let t = if side == Side::Gl { rat(1, *q as i64) } else { rat(-1, *q as i64) };
            let spec = match resolve(&a.family, &t, Some(side))? {
                Family::Gl(omega) if side == Side::Gl => MeasureSpec::gl(omega, *q)?,
                Family::Unitary(p, f) if Some(p) == parity => MeasureSpec::unitary(p, f, *q)?,
                _ => return Err(usage(format!("family {} does not live on kind {kind}", a.family.family))),
            };
            Ok(Box::new(move |l| spec.cylinder_mass(l)))
        }
        GraphParam::None => Err(usage("sampling needs a Hall-Littlewood or counting graph")),
    }
}

pub fn sample(a: &SampleArgs) -> CliResult<()> {
    if a.kind == GraphKind::Young {
        return Err(usage("sampling needs a Hall-Littlewood or counting graph"));
    }
    let param = graph_param(a.kind, a.q, a.t.as_deref())?;
    guard_graph(a.kind, a.steps, a.common.force)?;
    guard(a.common.force, (a.count * a.steps.max(1)) as f64, 1e7, "sampling")?;
    let g = BranchingGraph::build(a.kind, a.steps, param)?;
    let phi = sample_phi(a, &g)?;
    let chain = GrowthChain::new(&g, phi, a.steps)?;
    let paths = chain.sample_paths(a.count, a.seed);

    if let Some(from) = &a.check {
        let mu: Partition = from.parse()?;
        let report = empirical_check(&paths, &chain, &mu);
        if report.visits == 0 {
            return Err(usage(format!("no sampled path passes through {mu}")));
        }
        let body = match a.common.format {
            Format::Json => pretty(&serde_json::to_value(&report).expect("serializable")),
            Format::Text => {
                let mut s = format!("{} visits to {}\n", report.visits, report.from);
                for r in &report.rows {
                    writeln!(
                        s,
                        "{} {} → {}: {} of {} ({:.5}), expected {}, σ = {:.2}",
                        if r.pass { "PASS" } else { "FAIL" },
                        report.from,
                        r.to,
                        r.count,
                        report.visits,
                        r.frequency,
                        r.expected,
                        r.sigma
                    )
                    .unwrap();
                }
                s
            }
            _ => return Err(usage("a frequency check comes as text or json")),
        };
        emit(&a.common, &body)?;
        return if report.passed() {
            Ok(())
        } else {
            Err(CliError::Failed(format!("frequencies out of {mu} outside 3σ")))
        };
    }

    if !matches!(a.common.format, Format::Text | Format::Json) {
        return Err(usage("samples come as JSON lines"));
    }
    let mut body = String::new();
    for (i, path) in paths.iter().enumerate() {
        let rec = json!({
            "path": i,
            "step": a.steps,
            "partition": path.last().expect("nonempty"),
            "trajectory": path,
        });
        body.push_str(&serde_json::to_string(&rec).expect("serializable"));
        body.push('\n');
    }
    emit(&a.common, &body)
}

pub fn census(a: &CensusArgs) -> CliResult<()> {
    let ctx = FieldCtx::new(a.q)?;
    let brute = if a.brute {
        let cost = (a.q as f64).powi((a.n * a.n) as i32);
        guard(a.common.force, cost, 1e8, &format!("enumerating {n}×{n} matrices over F_{q}", n = a.n, q = a.q))?;
        Some(nilpotent_census(a.n, ctx))
    } else {
        None
    };
    let rows: Vec<(Partition, String, Option<u64>)> = enumerate(a.n)
        .into_iter()
        .map(|l| {
            let f = class_size(&l, a.q).to_string();
            let b = brute.as_ref().map(|c| c.get(&l).copied().unwrap_or(0));
            (l, f, b)
        })
        .collect();
    let mismatch = rows.iter().any(|(_, f, b)| b.is_some_and(|b| b.to_string() != *f));
    let body = match a.common.format {
        Format::Text => {
            let mut s = String::new();
            for (l, f, b) in &rows {
                match b {
                    Some(b) => writeln!(s, "{l}: {f} (enumerated {b})").unwrap(),
                    None => writeln!(s, "{l}: {f}").unwrap(),
                }
            }
            s
        }
        Format::Csv => csv_string(
            &["partition", "class_size", "enumerated"],
            rows.iter().map(|(l, f, b)| vec![l.to_string(), f.clone(), b.map(|b| b.to_string()).unwrap_or_default()]),
        )?,
        Format::Json => pretty(&json!({
            "q": a.q,
            "n": a.n,
            "classes": rows.iter().map(|(l, f, b)| json!({"partition": l, "class_size": f, "enumerated": b})).collect::<Vec<_>>(),
        })),
        Format::Dot => return Err(usage("census comes as text, csv or json")),
    };
    emit(&a.common, &body)?;
    if mismatch {
        Err(CliError::Failed("enumerated class sizes differ from the formula".into()))
    } else {
        Ok(())
    }
}
