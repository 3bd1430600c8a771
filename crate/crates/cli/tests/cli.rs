use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel)
}

fn run_in(dir: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_orthologic"));
    cmd.args(args);
    if let Some(d) = dir {
        cmd.current_dir(d);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(None, args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{name}.schema.json"));
    let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&doc).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_conforms(name: &str, v: &Value) {
    let validator = schema(name);
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{v}");
}

/// Runs with `--json`, checks the exit code and the schema, returns the document.
fn json_run(schema_name: &str, expected_code: i32, args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(code(&o), expected_code, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_conforms(schema_name, &v);
    v
}

#[test]
fn classify_hexagon_prints_flags() {
    let o = run(&["classify", "--builtin", "O6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "ol=1 woml=1 wdol=1 oml=0 ba=0\n");
    let o = run(&["classify", "--builtin", "MO2"]);
    assert_eq!(stdout(&o), "ol=1 woml=1 wdol=0 oml=1 ba=0\n");
}

#[test]
fn validate_and_tautology_exit_codes() {
    let o = run(&["validate", "--builtin", "O6", "--formula", "(p0 v p1) = (p0 v (~p0 ^ (p0 v p1)))"]);
    assert_eq!(code(&o), 0);
    let o = run(&["tautology", "--formula", "p0"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).lines().any(|l| l == "p0=0"), "{}", stdout(&o));
    assert_eq!(code(&run(&["tautology", "--formula", "p0 -0> p0"])), 0);
}

#[test]
fn counterexamples_are_var_element_lines() {
    let o = run(&["validate", "--builtin", "O6", "--formula", "p0 v ~p0 ^ (p0 v p1) == p0 v p1"]);
    // `==` is not a connective
    assert_eq!(code(&o), 2);
    let o = run(&["validate", "--builtin", "O6", "--formula", "p0 v p1"]);
    assert_eq!(code(&o), 1);
    let lines: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert!(lines[0].starts_with("p0=") && lines[1].starts_with("p1="), "{lines:?}");
    assert!(lines[2].starts_with("value: "));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&run(&["tautology", "--formula", "p0 v"])), 2);
    assert_eq!(code(&run(&["tautology", "--formula", "p0 v p1 v p2"])), 2);
    assert_eq!(code(&run(&["validate", "--lattice", "no-such-lattice", "--formula", "p0"])), 2);
    assert_eq!(code(&run(&["oml-valid", "--formula", "(p0 v p1) v p2"])), 2);
    assert_eq!(code(&run(&["lindenbaum", "--logic", "QL", "--vars", "2", "--depth", "4"])), 2);
    assert_eq!(code(&run(&["catalog", "enumerate", "--max-size", "11"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["classify"])), 2);
    let v = json_run("error", 2, &["prove-check", "/no/such/file.proof"]);
    assert!(v["error"].as_str().unwrap().contains("cannot read"));
}

#[test]
fn check_lattice_distinguishes_law_and_format_errors() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let good = data("lattices/o6.lat");
    let v = json_run("check-lattice", 0, &["check-lattice", "--lattice", good.to_str().unwrap()]);
    assert_eq!(v["size"], 6);
    let bad = write("self.lat", "elements: 0 a 1\ncomp: 0->1 a->a\nle: 0 a\nle: a 1\n");
    let v = json_run("check-lattice", 1, &["check-lattice", "--lattice", &bad]);
    assert_eq!(v["valid"], false);
    let malformed = write("fmt.lat", "elements 0 1\n");
    json_run("error", 2, &["check-lattice", "--lattice", &malformed]);
}

#[test]
fn lattice_files_take_precedence_over_builtin_names() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("O6"), fs::read_to_string(data("lattices/two.lat")).unwrap()).unwrap();
    let o = run_in(Some(dir.path()), &["classify", "--lattice", "O6"]);
    assert_eq!(stdout(&o), "ol=1 woml=1 wdol=1 oml=1 ba=1\n");
    let o = run_in(Some(dir.path()), &["classify", "--builtin", "O6"]);
    assert_eq!(stdout(&o), "ol=1 woml=1 wdol=1 oml=0 ba=0\n");
}

#[test]
fn catalog_enumerate_writes_index_and_lattices() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat");
    let o = run(&["catalog", "enumerate", "--max-size", "8", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let index = fs::read_to_string(out.join("index.tsv")).unwrap();
    assert_eq!(index, stdout(&o));
    let mut lines = index.lines();
    assert_eq!(lines.next(), Some("key\tsize\tol\twoml\twdol\toml\tba"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 9);
    for row in &rows {
        let file = out.join(format!("{}.lat", row[0]));
        let v = json_run("check-lattice", 0, &["check-lattice", "--lattice", file.to_str().unwrap()]);
        assert_eq!(v["canonical_key"], row[0]);
        assert_eq!(v["size"].to_string(), row[1]);
        let c = run(&["classify", "--lattice", file.to_str().unwrap()]);
        let expected = format!("ol={} woml={} wdol={} oml={} ba={}\n", row[2], row[3], row[4], row[5], row[6]);
        assert_eq!(stdout(&c), expected);
    }
    let v = json_run("catalog-enumerate", 0, &["catalog", "enumerate", "--max-size", "6"]);
    assert_eq!(v["count"], 4);
}

#[test]
fn catalog_witnesses() {
    let v = json_run("catalog-witness", 0, &["catalog", "witness", "--pattern", "woml,!oml"]);
    assert_eq!(v["size"], 6);
    assert_eq!(v["flags"]["is_wdol"], true);
    let v = json_run("catalog-witness", 0, &["catalog", "witness", "--pattern", "!woml"]);
    assert_eq!(v["size"], 8);
    json_run("catalog-witness", 1, &["catalog", "witness", "--pattern", "wdol,!woml", "--max-size", "8"]);
    json_run("error", 2, &["catalog", "witness", "--pattern", "xyz"]);
}

#[test]
fn consequence_and_gamma_files() {
    let mp = ["consequence", "-b", "O6", "-p", "p0", "-p", "p0 -3> p1", "-f", "p1"];
    json_run("verdict", 0, &mp);
    let v = json_run("verdict", 1, &["consequence", "-b", "O6", "-p", "p0", "-f", "p1"]);
    assert_eq!(v["counterexample"]["assignment"][0]["var"], "p0");
    assert_eq!(v["counterexample"]["assignment"][0]["element"], "1");
    json_run("error", 2, &["consequence", "-b", "O6", "-f", "p1"]);

    let dir = tempfile::tempdir().unwrap();
    let gamma = dir.path().join("gamma.txt");
    fs::write(&gamma, "# premises\np0\n\np0 -3> p1\n").unwrap();
    let g = gamma.to_str().unwrap();
    let v = json_run("verdict", 0, &["validate", "-b", "MO2", "-f", "p1", "--gamma", g]);
    assert_eq!(v["premises"].as_array().unwrap().len(), 2);
}

#[test]
fn oml_validity() {
    let v = json_run("oml-valid", 0, &["oml-valid", "-f", "p0 v ~p0 ^ (p0 v p1) = p0 v p1"]);
    assert_eq!(v["witness"], Value::Null);
    let v = json_run("oml-valid", 1, &["oml-valid", "-f", "p0 ^ (p1 v ~p1) = p0 ^ p1 v p0 ^ ~p1"]);
    assert_eq!(v["witness"]["lattice"], "MO2");
    let v = json_run("oml-valid", 1, &["oml-valid", "-f", "p0"]);
    assert_eq!(v["witness"]["lattice"], "MO2");
    json_run("tautology", 1, &["tautology", "-f", "p0 v p1"]);
}

#[test]
fn proof_scripts() {
    for (file, accepted) in [("r1_detachment.proof", true), ("cl_identity.proof", true), ("transitivity.proof", true)] {
        let v = json_run(
            "prove-check",
            if accepted { 0 } else { 1 },
            &["prove-check", data(&format!("proofs/{file}")).to_str().unwrap()],
        );
        assert_eq!(v["accepted"], accepted);
    }
    for (file, step) in [
        ("r1_wrong_implication.proof", 3),
        ("r1_swapped_premises.proof", 3),
        ("transitivity_swapped_premises.proof", 6),
    ] {
        let path = data(&format!("proofs/{file}"));
        let v = json_run("prove-check", 1, &["prove-check", path.to_str().unwrap()]);
        assert_eq!(v["rejection"]["step"], step, "{file}");
        let o = run(&["prove-check", path.to_str().unwrap()]);
        assert!(stdout(&o).starts_with(&format!("rejected at step {step}:")), "{}", stdout(&o));
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.proof");
    fs::write(&bad, "logic: QL\n1. p0 ; frobnicate\n").unwrap();
    json_run("error", 2, &["prove-check", bad.to_str().unwrap()]);
}

#[test]
fn equational_simulation() {
    for file in ["orthomodularity.eq", "distributivity.eq", "identity.eq"] {
        let path = data(&format!("equational/{file}"));
        let v = json_run("simulate", 0, &["simulate", path.to_str().unwrap()]);
        assert_eq!(v["mapped_valid_everywhere"], true, "{file}");
    }
    let path = data("equational/orthomodularity.eq");
    let v = json_run("simulate", 0, &["simulate", path.to_str().unwrap()]);
    assert_eq!(v["hexagon_separates"], true);
    assert_eq!(v["models_checked"], 8);
}

#[test]
fn soundness_sweeps() {
    let v = json_run("soundness", 0, &["soundness", "--logic", "QL", "--max-size", "8"]);
    assert_eq!(v["in_class"], 8);
    let v = json_run("soundness", 0, &["soundness", "--logic", "CL", "--max-size", "6"]);
    assert_eq!(v["in_class"], 3);
    assert_eq!(v["out_of_class_failures"].as_array().unwrap().len(), 1);
}

#[test]
fn lindenbaum_json_lines_and_report() {
    let args = ["lindenbaum", "--logic", "QL", "--kind", "refined", "--vars", "2", "--depth", "2"];
    let o = run(&args);
    assert_eq!(code(&o), 0);
    let records: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    for r in &records {
        assert_conforms("lindenbaum-record", r);
    }
    assert_eq!(records[0]["record"], "universe");
    assert_eq!(records[0]["formulas"], 442);
    assert_eq!(records[1]["classes"], 20);
    assert_eq!(records.iter().filter(|r| r["record"] == "class").count(), 20);
    assert_eq!(records.iter().filter(|r| r["record"] == "law").count(), 9);

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let mut with_report = args.to_vec();
    with_report.extend(["--report", report.to_str().unwrap()]);
    let o = run(&with_report);
    assert_eq!(fs::read_to_string(&report).unwrap(), stdout(&run(&args)));
    assert!(stdout(&o).contains("QL refined congruence: 20 classes"), "{}", stdout(&o));

    let mut json_args = args.to_vec();
    json_args[4] = "standard";
    let v = json_run("lindenbaum", 0, &json_args);
    assert_eq!(v["congruence"]["kind"], "standard");
    assert_eq!(v["unit_class"]["theorems_only"], true);
}

#[test]
fn parse_and_hasse() {
    let v = json_run("parse", 0, &["parse", "-f", "p0 -3> p1"]);
    assert_eq!(v["variables"], serde_json::json!(["p0", "p1"]));
    assert_eq!(v["primitive"], false);
    let v = json_run("hasse", 0, &["hasse", "-b", "O6"]);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(v["covers"].as_array().unwrap().len(), 6);
    let o = run(&["hasse", "-b", "MO2"]);
    assert!(stdout(&o).starts_with("digraph hasse {"));
}

#[test]
fn classify_json_and_identities() {
    let v = json_run("classify", 0, &["classify", "-b", "O6", "--identities"]);
    assert_eq!(v["flags"]["is_oml"], false);
    assert_eq!(v["witnesses"]["hexagon"].as_array().unwrap().len(), 6);
    assert_eq!(v["identities"]["zero_5"]["status"], "holds");
    let v = json_run("classify", 0, &["classify", "-b", "boolean-3"]);
    assert_eq!(v["witnesses"]["distributivity"], Value::Null);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["catalog", "enumerate", "--max-size", "8"],
        vec!["--json", "soundness", "--logic", "CL"],
        vec!["lindenbaum", "--logic", "CL", "--kind", "standard"],
    ] {
        assert_eq!(stdout(&run(&args)), stdout(&run(&args)), "{args:?}");
    }
}
