//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every criterion is exact (tolerance 0: element equality, zero
//! violations, zero mismatches). Each also has a pinned wall-clock budget.
//! The lines go straight to stdout, past the test harness's capture, so
//! they show up in a plain `cargo test` run.

use std::io::Write as _;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use orthologic::catalog::{self, CatalogEntry};
use orthologic::lattice::FiniteOrthoLattice;
use orthologic::lindenbaum::{self, Kind, Law, LawStatus};
use orthologic::proofs::{
    check_proof, cl_identity, parse_equational, r1_detachment, simulate_equational, transitivity, Justification,
    ProofScript, RejectReason,
};
use orthologic::semantics::{self, mo2, o6, soundness_suite, two, Valuation};
use orthologic::sigspace::{Generators, SignatureSpace};
use orthologic::{Elem, Formula, Logic};

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);
const MINUTES: Duration = Duration::from_secs(600);

fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

fn data(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", rel].iter().collect();
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn catalog8() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| catalog::enumerate(8).expect("size 8 is within bounds"))
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn o6_ground_truth() -> Outcome {
    let flags = o6().classify();
    ensure(flags.is_ol && flags.is_woml && flags.is_wdol && !flags.is_oml && !flags.is_boolean, || {
        format!("O6 classified as {flags}")
    })?;
    Ok(flags.to_string())
}

fn hexagon_distributivity_witness() -> Outcome {
    let l = o6();
    let e = |n: &str| l.elem(n).unwrap();
    let (x, xc, y) = (e("x"), e("x'"), e("y"));
    let lhs = l.meet(y, l.join(x, xc));
    let rhs = l.join(l.meet(y, x), l.meet(y, xc));
    ensure(lhs == y && rhs == x, || format!("lattice: lhs={} rhs={}", l.name(lhs), l.name(rhs)))?;
    let v = Valuation::by_names(l, &[(0, "y"), (1, "x")]).unwrap();
    let fl = v.evaluate(&f("p0 ^ (p1 v ~p1)")).unwrap();
    let fr = v.evaluate(&f("p0 ^ p1 v p0 ^ ~p1")).unwrap();
    ensure(fl == y && fr == x, || format!("valuation: lhs={} rhs={}", l.name(fl), l.name(fr)))?;
    Ok("y∩(x∪x')=y, (y∩x)∪(y∩x')=x".into())
}

fn ql_soundness() -> Outcome {
    let report = soundness_suite(Logic::Quantum, catalog8());
    ensure(report.in_class > 0, || "no WOML entries".into())?;
    ensure(report.sound(), || format!("{} violations, first {:?}", report.violations.len(), report.violations[0]))?;
    Ok(format!(
        "{} WOML entries x {} instances, 0 violations; {} non-WOML entries fail some check, {} pass all",
        report.in_class,
        report.instances,
        report.out_of_class_failures.len(),
        report.out_of_class_passing.len()
    ))
}

fn cl_soundness_and_hexagon_completeness() -> Outcome {
    let report = soundness_suite(Logic::Classical, catalog8());
    ensure(report.in_class > 0 && report.sound(), || format!("CL soundness: {:?}", report.violations.first()))?;

    // Formulas are grouped by their value tables in 2 and O6; both verdicts
    // depend only on those tables. Depth is measured on the primitive form.
    // Three sweeps: primitive depth <= 4 over three variables, every
    // connective counted as one level up to depth 2 over three variables,
    // and the complete set of tables over two variables (a fixpoint, so
    // every two-variable formula of any depth).
    let mut notes = vec![format!("{} WDOL entries sound", report.in_class)];
    let three = SignatureSpace::new(vec![two().clone(), o6().clone()], 3);
    let pair = SignatureSpace::new(vec![two().clone(), o6().clone()], 2);
    let closure = pair.classes(12, Generators::Primitive);
    ensure(pair.classes(11, Generators::Primitive).len() == closure.len(), || "two-variable tables not closed".into())?;
    let sweeps = [
        ("primitive depth<=4, 3 vars", &three, three.classes(4, Generators::Primitive)),
        ("all connectives depth<=2, 3 vars", &three, three.classes(2, Generators::AllConnectives)),
        ("all depths, 2 vars", &pair, closure),
    ];
    for (label, space, classes) in sweeps {
        let mut tautologies = 0;
        for (i, class) in classes.classes.iter().enumerate() {
            let rep = classes.representative(i);
            let taut = semantics::tautology(&rep);
            let hex = semantics::is_valid(o6(), &rep).valid;
            ensure(taut == hex, || format!("mismatch on {rep}: tautology={taut}, O6-valid={hex}"))?;
            ensure(space.valid_in(&class.signature, 0) == taut && space.valid_in(&class.signature, 1) == hex, || {
                format!("table verdicts disagree with evaluation on {rep}")
            })?;
            tautologies += usize::from(taut);
        }
        ensure(tautologies > 0 && tautologies < classes.len(), || format!("{label}: only one direction exercised"))?;
        notes.push(format!("{label}: {} tables, {tautologies} valid, 0 mismatches", classes.len()));
    }
    Ok(notes.join("; "))
}

fn hidden_axioms() -> Outcome {
    let u = lindenbaum::build_universe(2, 3).map_err(|e| e.to_string())?;
    let mut notes = vec![format!("k=2 d=3: {} formulas", u.len())];
    let cases = [
        (Logic::Quantum, "p0 v p1", "p0 v (~p0 ^ (p0 v p1))", Law::Orthomodularity, vec!["p0", "p1"]),
        (Logic::Classical, "p0 ^ (p1 v ~p1)", "p0 ^ p1 v p0 ^ ~p1", Law::Distributivity, vec!["p0", "p1", "~p1"]),
    ];
    for (logic, a, b, law, witness) in cases {
        let refined = lindenbaum::build_congruence(Kind::Refined, logic, &u);
        let standard = lindenbaum::build_congruence(Kind::Standard, logic, &u);
        ensure(refined.refines(&standard), || format!("{logic}: refined is not finer than standard"))?;
        let class = |c: &lindenbaum::Congruence, s: &str| {
            lindenbaum::class_of_formula(&u, c, &f(s)).ok_or_else(|| format!("{s} not in universe"))
        };
        ensure(class(&refined, a)? != class(&refined, b)?, || format!("{logic} refined merges |{a}| and |{b}|"))?;
        ensure(class(&standard, a)? == class(&standard, b)?, || format!("{logic} standard separates |{a}| and |{b}|"))?;

        let rq = lindenbaum::quotient(&u, &refined).map_err(|e| e.to_string())?;
        let sq = lindenbaum::quotient(&u, &standard).map_err(|e| e.to_string())?;
        let rr = rq.check_laws(&u);
        let sr = sq.check_laws(&u);
        ensure(rr.ol_ok() && sr.ol_ok(), || format!("{logic}: an OL law fails"))?;
        ensure(rr.verdict(law).status == LawStatus::Fails, || format!("{logic} refined: no {law:?} counterexample"))?;
        let args: Vec<u32> = witness.iter().map(|w| class(&refined, w)).collect::<Result<_, _>>()?;
        ensure(rq.law_instance(law, &args) == Some(false), || {
            format!("{logic} refined: {law:?} at {witness:?} is {:?}", rq.law_instance(law, &args))
        })?;
        let sv = sr.verdict(law);
        ensure(sv.status == LawStatus::Holds, || format!("{logic} standard: {law:?} is {:?}", sv.status))?;
        match logic {
            Logic::Quantum => ensure(rr.woml_ok(), || "refined QL quotient is not weakly orthomodular".into())?,
            Logic::Classical => ensure(rr.wdol_ok(), || "refined CL quotient is not weakly distributive".into())?,
        }
        ensure(rq.non_theorems_in_unit_class(&u).is_empty(), || format!("{logic}: class of 1 holds a non-theorem"))?;
        notes.push(format!(
            "{logic}: refined {} classes, {law:?} fails at {witness:?}; standard {} classes, holds on {}/{} tuples",
            rq.class_count(),
            sq.class_count(),
            sv.checked,
            sv.total
        ));
    }
    Ok(notes.join("; "))
}

fn simulation() -> Outcome {
    let mut notes = Vec::new();
    for file in ["equational/orthomodularity.eq", "equational/distributivity.eq"] {
        let proof = parse_equational(&data(file)).map_err(|e| e.to_string())?;
        let report = simulate_equational(&proof, catalog8());
        ensure(report.models_checked > 0, || format!("{file}: no models"))?;
        ensure(report.mapped_valid_everywhere(), || format!("{file}: mapped formula fails in a model"))?;
        ensure(report.hexagon_separates(), || format!("{file}: hexagon does not separate"))?;
        notes.push(format!("{file}: {} steps valid in {} models", report.steps.len(), report.models_checked));
    }
    let o6_key = catalog::canonical_key(o6()).unwrap();
    ensure(catalog8().iter().any(|e| e.canonical_key == o6_key && e.flags.is_woml && e.flags.is_wdol), || {
        "O6 missing from the models".into()
    })?;
    Ok(notes.join("; "))
}

fn holland() -> Outcome {
    let mut checked = 0;
    for e in catalog8().iter().filter(|e| !e.flags.is_oml) {
        let image = e.lattice.find_o6_subalgebra().ok_or_else(|| format!("{} has no O6", e.canonical_key))?;
        ensure(e.lattice.embeds(o6(), &image), || format!("{}: bad embedding", e.canonical_key))?;
        checked += 1;
    }
    for e in catalog8().iter().filter(|e| e.flags.is_oml) {
        ensure(e.lattice.find_o6_subalgebra().is_none(), || format!("OML {} contains O6", e.canonical_key))?;
    }
    Ok(format!("{checked} non-OML entries, each contains O6"))
}

/// Whether `a→b = 1 ⟺ a ≤ b`, with the implication built from joins,
/// meets and complements here rather than taken from the library.
fn implication_is_order(l: &FiniteOrthoLattice, imp: impl Fn(Elem, Elem) -> Elem) -> bool {
    l.elements().all(|a| l.elements().all(|b| (imp(a, b) == l.one()) == l.le(a, b)))
}

fn implication_characterizations() -> Outcome {
    let entries = catalog8();
    for e in entries {
        let l = &e.lattice;
        let sasaki = implication_is_order(l, |a, b| l.join(l.comp(a), l.meet(a, b)));
        let classical = implication_is_order(l, |a, b| l.join(l.comp(a), b));
        ensure(sasaki == e.flags.is_oml, || format!("{}: →1 order {sasaki}, oml {}", e.canonical_key, e.flags.is_oml))?;
        ensure(classical == e.flags.is_boolean, || {
            format!("{}: →0 order {classical}, ba {}", e.canonical_key, e.flags.is_boolean)
        })?;
        ensure(
            l.implication_characterizes_order(1) == sasaki && l.implication_characterizes_order(0) == classical,
            || format!("{}: library disagrees", e.canonical_key),
        )?;
    }
    let omls = entries.iter().filter(|e| e.flags.is_oml).count();
    let bas = entries.iter().filter(|e| e.flags.is_boolean).count();
    Ok(format!("{} entries ({omls} OML, {bas} Boolean), 0 mismatches", entries.len()))
}

fn oracle_consistency() -> Outcome {
    let omls: Vec<FiniteOrthoLattice> =
        catalog8().iter().filter(|e| e.flags.is_oml).map(|e| e.lattice.clone()).collect();
    let mut lattices = vec![mo2().clone(), two().clone()];
    lattices.extend(omls.iter().cloned());
    let space = SignatureSpace::new(lattices, 2);
    let classes = space.classes(4, Generators::AllConnectives);
    let mut agreed_valid = 0;
    for (i, class) in classes.classes.iter().enumerate() {
        let rep = classes.representative(i);
        let oracle = semantics::oml_valid(&rep).map_err(|e| e.to_string())?;
        let mut everywhere = true;
        for (j, l) in omls.iter().enumerate() {
            let valid = semantics::is_valid(l, &rep).valid;
            ensure(space.valid_in(&class.signature, j + 2) == valid, || format!("table mismatch on {rep}"))?;
            everywhere &= valid;
        }
        ensure(everywhere == oracle, || format!("{rep}: oml_valid={oracle}, valid in every catalog OML={everywhere}"))?;
        agreed_valid += usize::from(oracle);
    }
    Ok(format!(
        "{} catalog OMLs, {} value-table classes ({agreed_valid} valid), 0 disagreements",
        omls.len(),
        classes.len()
    ))
}

fn rejection_step(script: &ProofScript) -> Option<(usize, RejectReason)> {
    check_proof(script).err().map(|r| (r.step, r.reason))
}

fn proof_checker_fidelity() -> Outcome {
    let load = |name: &str| data(&format!("proofs/{name}")).parse::<ProofScript>().map_err(|e| format!("{name}: {e}"));
    let accepted = [
        ("transitivity.proof", transitivity(&f("p0"), &f("p1"), &f("p2")), "p0 = p2"),
        ("cl_identity.proof", cl_identity(), "p0 -0> p0"),
        ("r1_detachment.proof", r1_detachment(), "p1"),
    ];
    for (name, generated, conclusion) in accepted {
        let script = load(name)?;
        ensure(script == generated, || format!("{name} differs from the macro output"))?;
        ensure(check_proof(&script) == Ok(f(conclusion)), || format!("{name}: {:?}", check_proof(&script)))?;
    }
    let trans = load("transitivity.proof")?;
    let count = |pred: &dyn Fn(&Justification) -> bool| trans.steps.iter().filter(|s| pred(&s.justification)).count();
    let a2 = count(&|j| matches!(j, Justification::Axiom { id, .. } if id == "QL.A2"));
    let a14 = count(&|j| matches!(j, Justification::Axiom { id, .. } if id == "QL.A14"));
    let mp = count(&|j| matches!(j, Justification::ModusPonens(..)));
    ensure((a2, a14, mp) == (1, 2, 6), || format!("transitivity uses A2 x{a2}, A14 x{a14}, MP x{mp}"))?;

    let wrong = rejection_step(&load("r1_wrong_implication.proof")?);
    ensure(matches!(wrong, Some((3, RejectReason::WrongImplication { .. }))), || {
        format!("wrong implication: {wrong:?}")
    })?;
    for (name, step) in [("r1_swapped_premises.proof", 3), ("transitivity_swapped_premises.proof", 6)] {
        let got = rejection_step(&load(name)?);
        ensure(got.as_ref().map(|g| g.0) == Some(step), || format!("{name}: {got:?}"))?;
    }
    Ok("3 scripts accepted; transitivity uses A2 x1, A14 x2, MP x6; 3 mutants rejected at steps 3, 3, 6".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("O6 classification", SECOND, o6_ground_truth),
        ("O6 distributivity witness", SECOND, hexagon_distributivity_witness),
        ("QL soundness over catalog WOMLs", MINUTES, ql_soundness),
        ("CL soundness and hexagon completeness", MINUTES, cl_soundness_and_hexagon_completeness),
        ("hidden orthomodularity and distributivity", MINUTES, hidden_axioms),
        ("equational simulation", MINUTE, simulation),
        ("O6 inside every non-OML", MINUTES, holland),
        ("implication characterizations", MINUTES, implication_characterizations),
        ("OML-validity oracle consistency", MINUTES, oracle_consistency),
        ("proof-checker fidelity", SECOND, proof_checker_fidelity),
    ];
    // `println!` output of passing tests is swallowed by the harness.
    macro_rules! report {
        ($($arg:tt)*) => {{
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, $($arg)*);
            let _ = out.flush();
        }};
    }
    let start = Instant::now();
    let size = catalog8().len();
    report!("catalog of ortholattices with at most 8 elements: {size} entries ({:.2?})", start.elapsed());
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match &outcome {
            Ok(detail) => report!("[PASS] {:>2}. {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                report!("[FAIL] {:>2}. {name}: {why} ({elapsed:.2?})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    report!("{} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
