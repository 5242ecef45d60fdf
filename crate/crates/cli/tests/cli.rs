use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hlbranch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlbranch"))
        .args(args)
        .env_remove("HLB_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = hlbranch(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn code(args: &[&str]) -> i32 {
    hlbranch(args).status.code().expect("exited")
}

fn assert_schema(name: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match validator.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    panic!("{name}: {msgs:?}");
}

#[test]
fn weights_examples() {
    let gl = ok(&["weights", "--kind", "gl", "--q", "3", "--lmax", "2"]);
    assert!(gl.lines().any(|l| l == "(1) → (2): 2"), "{gl}");
    assert!(gl.lines().any(|l| l == "(1) → (1,1): 1"));
    let even = ok(&["weights", "--kind", "hl-even", "--t", "-1/3", "--lmax", "1"]);
    assert!(even.lines().any(|l| l == "∅ → (2): 2/3"), "{even}");
    assert_eq!(ok(&["weights", "--kind", "hl", "--t", "1/2", "--lmax", "1"]), "∅ → (1): 1\n");
    let young = ok(&["weights", "--kind", "young", "--lmax", "3"]);
    assert_eq!(young.lines().count(), 7);
}

#[test]
fn weights_formats() {
    for (kind, param) in [("gl", ["--q", "5"]), ("hl-odd", ["--t", "-1/5"]), ("hl", ["--t", "1/3"])] {
        let out = ok(&["weights", "--kind", kind, param[0], param[1], "--lmax", "2", "--format", "json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_schema("weights.schema.json", &v);
        assert_eq!(v["kind"], kind);
    }
    let v: Value =
        serde_json::from_str(&ok(&["weights", "--kind", "hl", "--t", "1/3", "--lmax", "2", "--format", "json"])).unwrap();
    let e = v["edges"].as_array().unwrap().iter().find(|e| e["to"] == serde_json::json!([2])).unwrap();
    assert_eq!(e["value"], "2/3");
    assert_eq!(e["weight"], "1 - t");

    let csv = ok(&["weights", "--kind", "gl", "--q", "3", "--lmax", "2", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("from,to,weight,symbolic"));
    assert!(csv.contains("(1),(2),2,2"), "{csv}");

    let dot = ok(&["weights", "--kind", "gl", "--q", "3", "--lmax", "2", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["weights", "--kind", "hl", "--q", "3"]), 2);
    assert_eq!(code(&["weights", "--kind", "hl"]), 2);
    assert_eq!(code(&["weights", "--kind", "hl", "--t", "3/2"]), 2);
    assert_eq!(code(&["weights", "--kind", "gl", "--q", "4"]), 2);
    assert_eq!(code(&["weights", "--kind", "nope"]), 2);
    assert_eq!(code(&["weights", "--kind", "young", "--lmax", "2", "--format", "yaml"]), 2);
    assert_eq!(code(&["measure", "--family", "gl-nope", "--q", "3"]), 2);
    assert_eq!(code(&["measure", "--family", "haar", "--q", "3"]), 2);
    assert_eq!(code(&["sample", "--kind", "hl-odd", "--t", "-1/3", "--family", "u-even-planch"]), 2);
    assert_eq!(code(&["sample", "--kind", "hl", "--t", "1/3", "--family", "u-even-planch"]), 2);
    assert_eq!(code(&["verify", "--suite", "pieri", "--max-size", "7"]), 2);
    assert_eq!(code(&["bogus"]), 2);
    let o = hlbranch(&["weights", "--kind", "hl", "--q", "3"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--t"));
}

#[test]
fn desk_scale_guards() {
    let o = hlbranch(&["verify", "--suite", "census", "--q", "5", "--max-size", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force"));
    assert_eq!(code(&["weights", "--kind", "young", "--lmax", "40"]), 2);
    assert_eq!(code(&["weights", "--kind", "young", "--lmax", "9", "--force"]), 0);
}

#[test]
fn verify_suites() {
    for args in [
        vec!["--suite", "gl-oracle", "--q", "3", "--max-size", "3"],
        vec!["--suite", "u-oracle", "--q", "3", "--max-size", "2"],
        vec!["--suite", "pieri", "--max-size", "4"],
        vec!["--suite", "gauge", "--q", "5", "--max-size", "4"],
        vec!["--suite", "harmonic", "--q", "3", "--max-size", "4"],
        vec!["--suite", "c0", "--q", "3", "--max-m", "3"],
        vec!["--suite", "census", "--q", "3", "--max-size", "3"],
    ] {
        let mut full = vec!["verify"];
        full.extend(&args);
        let text = ok(&full);
        assert!(!text.contains("FAIL"), "{text}");
        assert!(text.lines().all(|l| l.starts_with("PASS") || l.ends_with("passed")));
        full.extend(["--format", "json"]);
        let v: Value = serde_json::from_str(&ok(&full)).unwrap();
        assert_schema("verify.schema.json", &v);
        assert_eq!(v["passed"], true);
        assert_eq!(v["suite"], args[1]);
    }
}

#[test]
fn measure_examples() {
    let haar = ok(&["measure", "--family", "gl-haar", "--q", "3", "--lmax", "3"]);
    for (p, m) in [("∅", "1"), ("(1)", "1"), ("(2)", "1/3"), ("(1,1)", "1/3"), ("(3)", "1/27"), ("(1,1,1)", "1/27")] {
        assert!(haar.lines().any(|l| l == format!("{p}: {m}")), "{p} in {haar}");
    }
    assert!(haar.contains("level 3: 27"));
    let u = ok(&["measure", "--family", "u-even-planch", "--q", "3", "--lmax", "2"]);
    assert!(u.lines().any(|l| l == "(2): 1/6"), "{u}");
    let w = ok(&["measure", "--family", "gl-omega", "--alpha", "1", "--q", "3", "--lmax", "0"]);
    assert!(w.lines().any(|l| l == "∅: 1"), "{w}");

    for fam in [
        vec!["--family", "gl-planch"],
        vec!["--family", "gl-dirac"],
        vec!["--family", "gl-omega", "--alpha", "1/2,1/4", "--beta", "1/8"],
        vec!["--family", "u-odd-planch"],
        vec!["--family", "u-even-principal", "--m", "2"],
        vec!["--family", "u-odd-principal"],
        vec!["--family", "u-even-two-point", "--a1", "4/5", "--a2", "-3/5"],
    ] {
        let mut args = vec!["measure", "--q", "3", "--lmax", "2", "--format", "json"];
        args.extend(&fam);
        let v: Value = serde_json::from_str(&ok(&args)).unwrap();
        assert_schema("measure.schema.json", &v);
        assert_eq!(v["rows"][0]["mass"], "1", "{fam:?}");
    }
    let csv = ok(&["measure", "--family", "gl-haar", "--q", "3", "--lmax", "1", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("partition,n_stat,mass_num,mass_den,level_mass"));
    assert_eq!(code(&["measure", "--family", "gl-omega", "--alpha", "3/4,1/2", "--q", "3"]), 2);
    assert_eq!(code(&["measure", "--family", "u-even-two-point", "--a1", "1/2", "--a2", "-1/2", "--q", "3"]), 2);
}

#[test]
fn sample_paths() {
    let args = ["sample", "--kind", "hl", "--family", "haar", "--t", "1/3", "--steps", "1", "--count", "5", "--seed", "7"];
    let out = ok(&args);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    for l in &lines {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_schema("sample.schema.json", &v);
        assert_eq!(v["partition"], serde_json::json!([1]));
    }
    assert_eq!(hlbranch(&args).stdout, hlbranch(&args).stdout);

    let long = ["sample", "--kind", "hl-odd", "--family", "planch", "--t", "-1/3", "--steps", "3", "--count", "20", "--seed", "5"];
    let a = ok(&long);
    assert_eq!(a, ok(&long));
    for l in a.lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        let size: u64 = v["partition"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
        assert_eq!(size, 7);
    }
    let mut other = long.to_vec();
    *other.last_mut().unwrap() = "6";
    assert_ne!(a, ok(&other));

    // the same chain seen through the counting graph
    let via_q = ok(&["sample", "--kind", "gl", "--family", "planch", "--q", "3", "--steps", "3", "--count", "10", "--seed", "1"]);
    let via_t = ok(&["sample", "--kind", "hl", "--family", "planch", "--t", "1/3", "--steps", "3", "--count", "10", "--seed", "1"]);
    assert_eq!(via_q, via_t);
}

#[test]
fn sample_frequency_check() {
    let out = ok(&[
        "sample", "--kind", "hl", "--family", "haar", "--t", "1/3", "--steps", "2", "--count", "100000", "--seed", "3",
        "--check", "(1)", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_schema("check.schema.json", &v);
    assert_eq!(v["visits"], 100000);
    let two = v["rows"].as_array().unwrap().iter().find(|r| r["to"] == serde_json::json!([2])).unwrap();
    assert_eq!(two["expected"], "2/3");
    assert_eq!(two["pass"], true);
    assert_eq!(
        code(&["sample", "--kind", "hl", "--family", "haar", "--t", "1/3", "--steps", "1", "--count", "10", "--check", "(5)"]),
        2
    );
}

#[test]
fn census_output() {
    let out = ok(&["census", "--q", "3", "--n", "3"]);
    assert!(out.lines().any(|l| l == "(1,1,1): 1"));
    assert!(out.lines().any(|l| l == "(3): 624"), "{out}");
    assert!(out.lines().any(|l| l == "(2,1): 104"));
    let v: Value = serde_json::from_str(&ok(&["census", "--q", "3", "--n", "3", "--brute", "--format", "json"])).unwrap();
    assert_schema("census.schema.json", &v);
    let total: u64 = v["classes"].as_array().unwrap().iter().map(|c| c["enumerated"].as_u64().unwrap()).sum();
    assert_eq!(total, 729);
}

#[test]
fn output_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_hlbranch"))
        .args(["weights", "--kind", "gl", "--q", "3", "--lmax", "2", "--format", "dot", "--output", "g/gl.dot"])
        .env("HLB_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(dir.path().join("g/gl.dot")).unwrap();
    assert!(body.starts_with("digraph"));

    let abs = dir.path().join("m.csv");
    ok(&["measure", "--family", "gl-haar", "--q", "3", "--lmax", "1", "--format", "csv", "--output", abs.to_str().unwrap()]);
    assert!(std::fs::read_to_string(abs).unwrap().starts_with("partition,"));
}
