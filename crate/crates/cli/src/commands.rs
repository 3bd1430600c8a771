use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use orthologic::catalog::{self, CatalogEntry};
use orthologic::formula::parse;
use orthologic::lattice::{builtin, BUILTIN_NAMES};
use orthologic::lindenbaum::{self, FormulaUniverse, LawStatus};
use orthologic::proofs::{check_proof, parse_equational, simulate_equational, ProofScript};
use orthologic::semantics::{self, is_consequence, is_valid, oml_valid};
use orthologic::{Elem, FiniteOrthoLattice, Formula, LatticeError};
use serde_json::{json, Value};

use crate::output::{bit, counterexample_json, counterexample_text, CmdResult, Failure, Outcome};
use crate::{
    CatalogCommand, ClassifyArgs, Command, ConsequenceArgs, FormulaArg, LatticeSource, LindenbaumArgs, ProveCheckArgs,
    SimulateArgs, SoundnessArgs, ValidateArgs,
};

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Parse(a) => parse_cmd(&a),
        Command::CheckLattice(src) => check_lattice(&src),
        Command::Classify(a) => classify(&a),
        Command::Catalog(CatalogCommand::Enumerate { max_size, out }) => enumerate(max_size, out.as_deref()),
        Command::Catalog(CatalogCommand::Witness { pattern, max_size }) => witness(&pattern, max_size),
        Command::Validate(a) => validate(&a),
        Command::Consequence(a) => consequence(&a),
        Command::Tautology(a) => tautology(&a),
        Command::OmlValid(a) => oml_valid_cmd(&a),
        Command::Soundness(a) => soundness(&a),
        Command::ProveCheck(a) => prove_check(&a),
        Command::Simulate(a) => simulate(&a),
        Command::Lindenbaum(a) => lindenbaum_cmd(&a),
        Command::Hasse(src) => hasse(&src),
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::new(format!("cannot parse formula {text:?}: {e}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(format!("cannot read {}: {e}", path.display())))
}

enum LoadError {
    Input(Failure),
    Lattice(LatticeError),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Input(f) => f,
            LoadError::Lattice(e) => Failure::new(format!("invalid lattice: {e}")),
        }
    }
}

/// Resolves the source to a lattice and a label for messages.
fn try_load(src: &LatticeSource) -> Result<(String, FiniteOrthoLattice), LoadError> {
    let unknown = |name: &str| {
        LoadError::Input(Failure::new(format!("{name:?} is neither a lattice file nor a builtin ({BUILTIN_NAMES})")))
    };
    if let Some(name) = &src.builtin {
        return builtin(name).map(|l| (name.clone(), l)).ok_or_else(|| unknown(name));
    }
    let name = src.lattice.as_deref().expect("clap requires one lattice source");
    let path = Path::new(name);
    if path.is_file() {
        let text = read(path).map_err(LoadError::Input)?;
        let l = FiniteOrthoLattice::parse_text(&text).map_err(LoadError::Lattice)?;
        return Ok((name.to_string(), l));
    }
    builtin(name).map(|l| (name.to_string(), l)).ok_or_else(|| unknown(name))
}

fn load(src: &LatticeSource) -> Result<(String, FiniteOrthoLattice), Failure> {
    try_load(src).map_err(Failure::from)
}

/// Premises from a file: one formula per line, `#` comments.
fn gamma_file(path: &Path) -> Result<Vec<Formula>, Failure> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f = parse(line).map_err(|e| Failure::new(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(f);
    }
    Ok(out)
}

fn names(l: &FiniteOrthoLattice, elems: &[Elem]) -> Vec<String> {
    elems.iter().map(|&e| l.name(e).to_string()).collect()
}

fn parse_cmd(a: &FormulaArg) -> CmdResult {
    let f = formula(&a.formula)?;
    let expanded = f.expand();
    let vars: Vec<String> = f.variables().iter().map(|v| format!("p{v}")).collect();
    let mut text = String::new();
    let _ = writeln!(text, "formula: {f}");
    let _ = writeln!(text, "full: {}", f.render_full());
    let _ = writeln!(text, "expanded: {expanded}");
    let _ = writeln!(text, "variables: {}", vars.join(" "));
    let _ = writeln!(text, "depth: {}", f.depth());
    let _ = writeln!(text, "size: {}", f.size());
    let json = json!({
        "formula": f,
        "full": f.render_full(),
        "expanded": expanded,
        "primitive": f.is_primitive(),
        "variables": vars,
        "depth": f.depth(),
        "size": f.size(),
    });
    Ok(Outcome::new(true, text, json))
}

fn check_lattice(src: &LatticeSource) -> CmdResult {
    match try_load(src) {
        Ok((name, l)) => {
            let key = catalog::canonical_key(&l);
            let mut text = format!("{name}: ortholattice with {} elements\n", l.size());
            if let Some(k) = &key {
                let _ = writeln!(text, "canonical key: {k}");
            }
            let json = json!({ "valid": true, "size": l.size(), "elements": l.names(), "canonical_key": key });
            Ok(Outcome::new(true, text, json))
        }
        Err(LoadError::Lattice(e)) if violates_law(&e) => {
            let text = format!("not an ortholattice: {e}\n");
            Ok(Outcome::new(false, text, json!({ "valid": false, "error": e.to_string() })))
        }
        Err(e) => Err(e.into()),
    }
}

/// Well-formed input that breaks an order or ortholattice law, as opposed
/// to a malformed description.
fn violates_law(e: &LatticeError) -> bool {
    matches!(e, LatticeError::NotPartialOrder { .. } | LatticeError::NoBound { .. } | LatticeError::OlLaw { .. })
}

fn classify(a: &ClassifyArgs) -> CmdResult {
    let (_, l) = load(&a.source)?;
    let flags = l.try_classify().map_err(|e| Failure::new(e.to_string()))?;
    let mut text = format!("{flags}\n");
    let woml = l.woml_counterexample().map(|(x, y, z)| names(&l, &[x, y, z]));
    let wdol = l.wdol_counterexample().map(|(x, y)| names(&l, &[x, y]));
    let oml = l.oml_by_orthomodular_law().map(|(x, y)| names(&l, &[x, y]));
    let distributivity = l.distributivity_counterexample().map(|(x, y, z)| names(&l, &[x, y, z]));
    let hexagon = if flags.is_oml { None } else { l.find_o6_subalgebra().map(|s| names(&l, &s)) };
    if a.details {
        let mut line = |label: &str, w: &Option<Vec<String>>| {
            if let Some(w) = w {
                let _ = writeln!(text, "{label}: {}", w.join(" "));
            }
        };
        line("woml fails at a b c", &woml);
        line("wdol fails at a b", &wdol);
        line("orthomodular law fails at a b", &oml);
        line("distributivity fails at a b c", &distributivity);
        line("hexagon subalgebra (0 x y y' x' 1)", &hexagon);
    }
    let mut json = json!({
        "size": l.size(),
        "flags": flags,
        "witnesses": {
            "woml": woml,
            "wdol": wdol,
            "orthomodular_law": oml,
            "distributivity": distributivity,
            "hexagon": hexagon,
        },
    });
    if a.identities {
        let report = l.derived_identities_check();
        let outcome = |o: &orthologic::lattice::IdentityOutcome| match o {
            orthologic::lattice::IdentityOutcome::Holds => "holds".to_string(),
            orthologic::lattice::IdentityOutcome::Fails { a, b, value } => {
                format!("fails at a={a} b={b} (value {value})")
            }
        };
        let _ = writeln!(text, "zero_1: {}", outcome(&report.zero_1));
        let _ = writeln!(text, "zero_5: {}", outcome(&report.zero_5));
        let _ = writeln!(text, "equiv_3 = equiv: {}", outcome(&report.equiv_3_is_equiv_q));
        let _ = writeln!(text, "equiv_3 = 1 iff equiv = 1: {}", outcome(&report.equiv_3_unit_is_equiv_q_unit));
        let _ = writeln!(text, "equiv_3 = equiv_0: {}", outcome(&report.equiv_3_is_equiv_0));
        for (i, o) in report.union_from_implication.iter().enumerate() {
            let _ = writeln!(text, "union from ->{}: {}", i + 1, outcome(o));
        }
        json["identities"] = serde_json::to_value(&report).expect("report serializes");
    }
    Ok(Outcome::new(true, text, json))
}

fn catalog_entries(max_size: usize) -> Result<Vec<CatalogEntry>, Failure> {
    catalog::enumerate(max_size).map_err(|e| Failure::new(e.to_string()))
}

fn entry_json(e: &CatalogEntry) -> Value {
    json!({ "key": e.canonical_key, "size": e.size(), "flags": e.flags })
}

fn index_line(e: &CatalogEntry) -> String {
    let f = &e.flags;
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        e.canonical_key,
        e.size(),
        bit(f.is_ol),
        bit(f.is_woml),
        bit(f.is_wdol),
        bit(f.is_oml),
        bit(f.is_boolean)
    )
}

const INDEX_HEADER: &str = "key\tsize\tol\twoml\twdol\toml\tba";

fn enumerate(max_size: usize, out: Option<&Path>) -> CmdResult {
    let entries = catalog_entries(max_size)?;
    let mut index = format!("{INDEX_HEADER}\n");
    for e in &entries {
        index.push_str(&index_line(e));
        index.push('\n');
    }
    if let Some(dir) = out {
        let io = |e: std::io::Error| Failure::new(format!("cannot write to {}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        for e in &entries {
            let canonical = catalog::canonical_form(&e.lattice).unwrap_or_else(|| e.lattice.clone());
            fs::write(dir.join(format!("{}.lat", e.canonical_key)), canonical.to_text()).map_err(io)?;
        }
        fs::write(dir.join("index.tsv"), &index).map_err(io)?;
    }
    let json = json!({
        "max_size": max_size,
        "count": entries.len(),
        "entries": entries.iter().map(entry_json).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(true, index, json))
}

fn witness(pattern: &catalog::ClassPattern, max_size: usize) -> CmdResult {
    let entries = catalog_entries(max_size)?;
    match catalog::witness_search(&entries, pattern) {
        Some(e) => {
            let text = format!("{} {}\n{}", e.canonical_key, e.flags, e.lattice.to_text());
            let mut json = entry_json(e);
            json["pattern"] = json!(pattern.to_string());
            json["found"] = json!(true);
            json["lattice"] = json!(e.lattice.to_text());
            Ok(Outcome::new(true, text, json))
        }
        None => {
            let text = format!("no ortholattice with at most {max_size} elements matches {pattern}\n");
            let json = json!({ "pattern": pattern.to_string(), "found": false, "max_size": max_size });
            Ok(Outcome::new(false, text, json))
        }
    }
}

fn verdict_outcome(name: &str, l: &FiniteOrthoLattice, f: &Formula, gamma: &[Formula]) -> Outcome {
    let verdict = is_consequence(l, gamma, f);
    let mut text = String::new();
    let relation = if gamma.is_empty() { "valid" } else { "a consequence" };
    match &verdict.counterexample {
        None => {
            let _ = writeln!(text, "{f} is {relation} in {name}");
        }
        Some(cx) => {
            let _ = writeln!(text, "{f} is not {relation} in {name}");
            counterexample_text(&mut text, l, cx);
        }
    }
    let json = json!({
        "lattice": name,
        "formula": f,
        "premises": gamma,
        "valid": verdict.valid,
        "counterexample": verdict.counterexample.as_ref().map(|cx| counterexample_json(l, cx)),
    });
    Outcome::new(verdict.valid, text, json)
}

fn validate(a: &ValidateArgs) -> CmdResult {
    let (name, l) = load(&a.source)?;
    let f = formula(&a.formula)?;
    let gamma = match &a.gamma {
        Some(p) => gamma_file(p)?,
        None => Vec::new(),
    };
    Ok(verdict_outcome(&name, &l, &f, &gamma))
}

fn consequence(a: &ConsequenceArgs) -> CmdResult {
    let (name, l) = load(&a.source)?;
    let f = formula(&a.formula)?;
    let mut gamma = a.premises.iter().map(|p| formula(p)).collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = &a.gamma {
        gamma.extend(gamma_file(p)?);
    }
    if gamma.is_empty() {
        return Err(Failure::new("consequence needs at least one --premise or a --gamma file"));
    }
    Ok(verdict_outcome(&name, &l, &f, &gamma))
}

fn tautology(a: &FormulaArg) -> CmdResult {
    let f = formula(&a.formula)?;
    let two = semantics::two();
    let verdict = is_valid(two, &f);
    let mut text = String::new();
    match &verdict.counterexample {
        None => {
            let _ = writeln!(text, "{f} is a tautology");
        }
        Some(cx) => {
            let _ = writeln!(text, "{f} is not a tautology");
            counterexample_text(&mut text, two, cx);
        }
    }
    let json = json!({
        "formula": f,
        "tautology": verdict.valid,
        "counterexample": verdict.counterexample.as_ref().map(|cx| counterexample_json(two, cx)),
    });
    Ok(Outcome::new(verdict.valid, text, json))
}

fn oml_valid_cmd(a: &FormulaArg) -> CmdResult {
    let f = formula(&a.formula)?;
    let valid = oml_valid(&f).map_err(|e| Failure::new(e.to_string()))?;
    let mut text = String::new();
    let mut witness = Value::Null;
    if valid {
        let _ = writeln!(text, "{f} is valid in every orthomodular lattice");
    } else {
        let _ = writeln!(text, "{f} is not valid in every orthomodular lattice");
        let lattices = [("MO2", semantics::mo2()), ("2", semantics::two())];
        if let Some((name, l, cx)) =
            lattices.iter().find_map(|&(name, l)| is_valid(l, &f).counterexample.map(|cx| (name, l, cx)))
        {
            let _ = writeln!(text, "fails in {name}:");
            counterexample_text(&mut text, l, &cx);
            witness = json!({ "lattice": name, "counterexample": counterexample_json(l, &cx) });
        }
    }
    let json = json!({ "formula": f, "oml_valid": valid, "witness": witness });
    Ok(Outcome::new(valid, text, json))
}

fn soundness(a: &SoundnessArgs) -> CmdResult {
    let entries = catalog_entries(a.max_size)?;
    let report = semantics::soundness_suite(a.logic, &entries);
    let class = match a.logic {
        orthologic::Logic::Quantum => "WOML",
        orthologic::Logic::Classical => "WDOL",
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{}: {} on {} {class} entries up to size {} ({} axiom instances each)",
        a.logic,
        if report.sound() { "sound" } else { "UNSOUND" },
        report.in_class,
        a.max_size,
        report.instances
    );
    for v in &report.violations {
        let _ = writeln!(text, "violation in {}: {}", v.canonical_key, failure_text(&v.failure));
    }
    let _ = writeln!(
        text,
        "outside {class}: {} entries, {} refuted, {} passing",
        report.out_of_class,
        report.out_of_class_failures.len(),
        report.out_of_class_passing.len()
    );
    for f in &report.out_of_class_failures {
        let _ = writeln!(text, "  {}: {}", f.canonical_key, failure_text(&f.failure));
    }
    for key in &report.out_of_class_passing {
        let _ = writeln!(text, "  {key}: passes");
    }
    let mut json = serde_json::to_value(&report).expect("report serializes");
    json["max_size"] = json!(a.max_size);
    json["sound"] = json!(report.sound());
    Ok(Outcome::new(report.sound(), text, json))
}

fn failure_text(f: &semantics::SoundnessFailure) -> String {
    match f {
        semantics::SoundnessFailure::Axiom { axiom, instance, assignment } => {
            format!("{axiom} instance {instance} fails at {}", assignment.join(" "))
        }
        semantics::SoundnessFailure::Detachment { minor, conclusion } => {
            format!("R1 detaches {conclusion} from {minor}")
        }
    }
}

fn prove_check(a: &ProveCheckArgs) -> CmdResult {
    let text = read(&a.file)?;
    let script: ProofScript = text.parse().map_err(|e| Failure::new(format!("{}: {e}", a.file.display())))?;
    let steps = script.steps.len();
    match check_proof(&script) {
        Ok(conclusion) => {
            let text = format!("accepted: {} proof of {conclusion} in {steps} steps\n", script.logic);
            let json = json!({
                "accepted": true,
                "logic": script.logic,
                "steps": steps,
                "conclusion": conclusion,
                "rejection": null,
            });
            Ok(Outcome::new(true, text, json))
        }
        Err(r) => {
            let mut text = format!("rejected at step {}: {}\n", r.step, r.reason);
            if let Some(step) = r.step.checked_sub(1).and_then(|i| script.steps.get(i)) {
                let _ = writeln!(text, "  {}. {}", r.step, step.formula);
            }
            let json = json!({
                "accepted": false,
                "logic": script.logic,
                "steps": steps,
                "conclusion": null,
                "rejection": { "step": r.step, "message": r.reason.to_string(), "detail": r.reason },
            });
            Ok(Outcome::new(false, text, json))
        }
    }
}

fn simulate(a: &SimulateArgs) -> CmdResult {
    let text = read(&a.file)?;
    let proof = parse_equational(&text).map_err(|e| Failure::new(format!("{}: {e}", a.file.display())))?;
    let entries = catalog_entries(a.max_size)?;
    let report = simulate_equational(&proof, &entries);
    let target = proof.target;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "target {}: {} steps checked on {} {} entries up to size {}",
        target.name(),
        report.steps.len(),
        report.models_checked,
        target.model_class(),
        a.max_size
    );
    for (i, s) in report.steps.iter().enumerate() {
        let _ = writeln!(out, "{}. {}", i + 1, s.equation);
        let _ = writeln!(out, "   mapped: {}", s.mapped);
        if s.failing_models.is_empty() {
            let _ = writeln!(out, "   valid in every {} entry", target.model_class());
        } else {
            let _ = writeln!(out, "   fails in {}", s.failing_models.join(" "));
        }
        let _ = write!(out, "   hexagon: mapped valid {}", yes(s.hexagon_mapped_valid));
        match &s.hexagon_equation_counterexample {
            Some(cx) => {
                let _ = writeln!(out, ", equation fails at {}", cx.join(" "));
            }
            None => {
                let _ = writeln!(out, ", equation holds");
            }
        }
    }
    let _ = writeln!(
        out,
        "mapped valid everywhere: {}; hexagon separates: {}",
        yes(report.mapped_valid_everywhere()),
        yes(report.hexagon_separates())
    );
    let mut json = serde_json::to_value(&report).expect("report serializes");
    json["mapped_valid_everywhere"] = json!(report.mapped_valid_everywhere());
    json["hexagon_separates"] = json!(report.hexagon_separates());
    Ok(Outcome::new(report.mapped_valid_everywhere(), out, json))
}

fn lindenbaum_cmd(a: &LindenbaumArgs) -> CmdResult {
    let err = |e: lindenbaum::LindenbaumError| Failure::new(e.to_string());
    let universe = lindenbaum::build_universe(a.vars, a.depth).map_err(err)?;
    let congruence = lindenbaum::build_congruence(a.kind, a.logic, &universe);
    let quotient = lindenbaum::quotient(&universe, &congruence).map_err(err)?;
    let report = quotient.check_laws(&universe);
    let non_theorems = quotient.non_theorems_in_unit_class(&universe);

    let universe_rec =
        json!({ "vars": a.vars, "depth": a.depth, "formulas": universe.len(), "terms": universe.term_count() });
    let congruence_rec = json!({ "logic": a.logic, "kind": a.kind, "classes": quotient.class_count() });
    let classes: Vec<Value> = (0..quotient.class_count() as u32)
        .map(|c| {
            json!({
                "class": c,
                "size": quotient.members(c).len(),
                "representative": universe.display(quotient.representative(c)),
            })
        })
        .collect();
    let laws: Vec<Value> =
        report.verdicts.iter().map(|v| serde_json::to_value(v).expect("verdict serializes")).collect();
    let unit_rec = json!({
        "class": quotient.one(),
        "members": quotient.one().map_or(0, |c| quotient.members(c).len()),
        "theorems_only": non_theorems.is_empty(),
        "non_theorems": non_theorems.iter().map(|&id| universe.display(id)).collect::<Vec<_>>(),
    });
    let summary = json!({
        "ol": report.ol_ok(),
        "woml": report.woml_ok(),
        "wdol": report.wdol_ok(),
        "oml_counterexample": report.oml_counterexample(),
        "distributivity_counterexample": report.distributivity_counterexample(),
    });

    let mut lines = String::new();
    let mut record = |kind: &str, mut v: Value| {
        v["record"] = json!(kind);
        lines.push_str(&v.to_string());
        lines.push('\n');
    };
    record("universe", universe_rec.clone());
    record("congruence", congruence_rec.clone());
    for c in &classes {
        record("class", c.clone());
    }
    for l in &laws {
        record("law", l.clone());
    }
    record("unit_class", unit_rec.clone());
    record("summary", summary.clone());

    let json = json!({
        "universe": universe_rec,
        "congruence": congruence_rec,
        "classes": classes,
        "laws": laws,
        "unit_class": unit_rec,
        "summary": summary,
        "report": a.report.as_ref().map(|p| p.display().to_string()),
    });
    let text = match &a.report {
        None => lines,
        Some(path) => {
            fs::write(path, &lines).map_err(|e| Failure::new(format!("cannot write {}: {e}", path.display())))?;
            summary_text(&universe, a, quotient.class_count(), &report.verdicts, non_theorems.is_empty())
        }
    };
    Ok(Outcome::new(true, text, json))
}

fn summary_text(
    universe: &FormulaUniverse,
    a: &LindenbaumArgs,
    classes: usize,
    verdicts: &[lindenbaum::LawVerdict],
    theorems_only: bool,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "universe k={} d={}: {} formulas, {} terms",
        a.vars,
        a.depth,
        universe.len(),
        universe.term_count()
    );
    let _ = writeln!(out, "{} {} congruence: {classes} classes", a.logic, a.kind);
    for v in verdicts {
        let status = match v.status {
            LawStatus::Holds => "holds",
            LawStatus::Fails => "fails",
            LawStatus::Undefined => "undefined",
        };
        let law = serde_json::to_value(v.law).expect("law serializes");
        let _ = write!(out, "{}: {status} on {}/{} tuples", law.as_str().unwrap_or("?"), v.checked, v.total);
        if let Some(w) = &v.witness {
            let w: Vec<String> = w.iter().map(|f| f.to_string()).collect();
            let _ = write!(out, " at ({})", w.join(", "));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "class of 1 holds only theorems: {}", if theorems_only { "yes" } else { "no" });
    out
}

fn hasse(src: &LatticeSource) -> CmdResult {
    let (_, l) = load(src)?;
    let dot = l.hasse_dot();
    let heights = l.heights();
    let nodes: Vec<Value> = l.elements().map(|e| json!({ "name": l.name(e), "height": heights[e.index()] })).collect();
    let covers: Vec<Value> = l.covers().iter().map(|&(lo, hi)| json!([l.name(lo), l.name(hi)])).collect();
    let json = json!({ "nodes": nodes, "covers": covers, "dot": dot });
    Ok(Outcome::new(true, dot, json))
}
