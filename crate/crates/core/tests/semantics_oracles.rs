use std::path::PathBuf;

use orthologic::catalog::{self, CatalogEntry};
use orthologic::lattice::{product, two as two_owned, FiniteOrthoLattice};
use orthologic::proofs::{check_proof, cl_identity, r1_detachment, schemas, transitivity, ProofScript};
use orthologic::semantics::{self, is_consequence, is_valid, mo2, o6, oml_valid, tautology, two, Valuation};
use orthologic::sigspace::{Generators, SignatureSpace};
use orthologic::{Connective, Elem, Formula, Logic};
use proptest::prelude::*;

fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

fn catalog8() -> Vec<CatalogEntry> {
    catalog::enumerate(8).unwrap()
}

/// Truth value of `f` on the row `row` (bit `v` is `p_v`), from the Boolean
/// readings of the connectives.
fn truth(f: &Formula, row: u32) -> bool {
    match f {
        Formula::Var(v) => row >> v & 1 == 1,
        Formula::Not(a) => !truth(a, row),
        Formula::Or(a, b) => truth(a, row) || truth(b, row),
        Formula::Sugar(c, a, b) => {
            let (x, y) = (truth(a, row), truth(b, row));
            match c {
                Connective::Conj => x && y,
                Connective::EquivQ | Connective::Equiv0 => x == y,
                _ => !x || y,
            }
        }
    }
}

fn formula(vars: u32) -> impl Strategy<Value = Formula> {
    let leaf = (0..vars).prop_map(Formula::var);
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (0..Connective::ALL.len(), inner.clone(), inner).prop_map(|(c, a, b)| Formula::sugar(
                Connective::ALL[c],
                a,
                b
            )),
        ]
    })
}

/// First falsifying assignment found by walking assignments with `p0`
/// most significant.
fn first_counterexample(l: &FiniteOrthoLattice, f: &Formula) -> Option<Vec<(u32, Elem)>> {
    let vars: Vec<u32> = f.variables().into_iter().collect();
    let n = l.size();
    for index in 0..n.pow(vars.len() as u32) {
        let mut rest = index;
        let mut assignment = vec![(0, Elem(0)); vars.len()];
        for slot in (0..vars.len()).rev() {
            assignment[slot] = (vars[slot], Elem::from(rest % n));
            rest /= n;
        }
        if Valuation::new(l, assignment.clone()).evaluate(f).unwrap() != l.one() {
            return Some(assignment);
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(400) })]

    #[test]
    fn tautology_matches_truth_tables(f in formula(3)) {
        let expected = (0..8).all(|row| truth(&f, row));
        prop_assert_eq!(tautology(&f), expected);
        prop_assert_eq!(is_valid(two(), &f).valid, expected);
    }

    #[test]
    fn counterexamples_are_lexicographically_first(f in formula(3)) {
        for l in [o6(), mo2()] {
            let got = is_valid(l, &f).counterexample.map(|c| c.assignment);
            prop_assert_eq!(got, first_counterexample(l, &f));
        }
    }
}

#[test]
fn parallel_search_reports_the_first_counterexample() {
    // 12^4 assignments, above the threshold for the parallel search
    let l = product(&two_owned(), &semantics::o6().clone());
    for s in ["(p0 v p1) v (p2 v p3)", "~(p0 ^ p1) v (p2 -1> p3)", "(p3 = p2) v (p1 = p0)"] {
        let formula = f(s);
        let got = is_valid(&l, &formula).counterexample.map(|c| c.assignment);
        assert_eq!(got, first_counterexample(&l, &formula), "{s}");
    }
}

#[test]
fn consequence_examples() {
    assert!(is_consequence(o6(), &[f("p0")], &f("p0 v p1")).valid);
    assert_eq!(is_consequence(o6(), &[], &f("p0 v ~p0")), is_valid(o6(), &f("p0 v ~p0")));
    let detach = [f("p0"), f("p0 -3> p1")];
    for e in catalog8().iter().filter(|e| e.flags.is_woml) {
        assert!(is_consequence(&e.lattice, &detach, &f("p1")).valid, "{}", e.canonical_key);
    }
}

#[test]
fn axiom_fidelity() {
    for s in schemas(Logic::Quantum) {
        assert!(is_valid(o6(), &s.template).valid, "{} in O6", s.id);
        if s.metavariables() <= 2 {
            assert_eq!(oml_valid(&s.template), Ok(true), "{}", s.id);
        }
    }
    for s in schemas(Logic::Classical) {
        assert!(tautology(&s.template), "{}", s.id);
        assert!(is_valid(o6(), &s.template).valid, "{} in O6", s.id);
    }
}

#[test]
fn accepted_proofs_are_sound_in_their_model_class() {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", "proofs"].iter().collect();
    let mut scripts = vec![r1_detachment(), cl_identity(), transitivity(&f("p0 v p1"), &f("~p1"), &f("p0 ^ p1"))];
    for name in ["transitivity.proof", "cl_identity.proof", "r1_detachment.proof"] {
        scripts.push(std::fs::read_to_string(dir.join(name)).unwrap().parse::<ProofScript>().unwrap());
    }
    let entries = catalog8();
    for script in scripts {
        let conclusion = check_proof(&script).unwrap();
        for e in &entries {
            let in_class = match script.logic {
                Logic::Quantum => e.flags.is_woml,
                Logic::Classical => e.flags.is_wdol,
            };
            if in_class {
                assert!(
                    is_consequence(&e.lattice, &script.gamma, &conclusion).valid,
                    "{conclusion} in {}",
                    e.canonical_key
                );
            }
        }
    }
}

#[test]
fn formulas_valid_in_every_woml_are_valid_in_every_oml() {
    let entries = catalog8();
    let womls: Vec<&CatalogEntry> = entries.iter().filter(|e| e.flags.is_woml).collect();
    let space = SignatureSpace::new(womls.iter().map(|e| e.lattice.clone()).collect(), 2);
    let classes = space.classes(3, Generators::AllConnectives);
    let mut valid_everywhere = 0;
    for class in &classes.classes {
        let all_woml = (0..womls.len()).all(|i| space.valid_in(&class.signature, i));
        let all_oml = (0..womls.len()).filter(|&i| womls[i].flags.is_oml).all(|i| space.valid_in(&class.signature, i));
        assert!(!all_woml || all_oml);
        valid_everywhere += usize::from(all_woml);
    }
    assert!(valid_everywhere > 0);
}

#[test]
fn oml_validity_implies_hexagon_validity_and_the_converse_is_reported() {
    // Two-variable tables over MO2, 2 and O6 reach a fixpoint, so this
    // covers every two-variable formula.
    let space = SignatureSpace::new(vec![mo2().clone(), two().clone(), o6().clone()], 2);
    let classes = space.classes(12, Generators::Primitive);
    assert_eq!(space.classes(11, Generators::Primitive).len(), classes.len());
    let (mut oml, mut hex_only) = (0, 0);
    let mut example = None;
    for (i, class) in classes.classes.iter().enumerate() {
        let rep = classes.representative(i);
        let oml_ok = oml_valid(&rep).unwrap();
        let hex_ok = is_valid(o6(), &rep).valid;
        assert_eq!(oml_ok, space.valid_in(&class.signature, 0) && space.valid_in(&class.signature, 1));
        assert!(!oml_ok || hex_ok, "{rep} is OML-valid but fails in O6");
        oml += usize::from(oml_ok);
        if hex_ok && !oml_ok {
            hex_only += 1;
            example.get_or_insert(rep);
        }
    }
    println!("two-variable tables: {}, OML-valid: {oml}, valid in O6 only: {hex_only}", classes.len());
    if let Some(rep) = example {
        println!("valid in O6 but not OML-valid: {rep}");
    }
}

#[test]
fn derived_identities_across_the_catalog() {
    for e in catalog8() {
        let r = e.lattice.derived_identities_check();
        if e.flags.is_oml {
            assert!(r.union_from_implication.iter().all(|o| o.holds()), "{}", e.canonical_key);
            assert!(r.equiv_3_unit_is_equiv_q_unit.holds(), "{}", e.canonical_key);
        }
        if e.flags.is_boolean {
            assert!(r.equiv_3_is_equiv_0.holds(), "{}", e.canonical_key);
        }
    }
    let hex = o6().derived_identities_check();
    assert!(hex.union_from_implication.iter().any(|o| !o.holds()));
}

#[test]
fn lattice_invariants_across_the_catalog() {
    for e in catalog8() {
        let l = &e.lattice;
        for a in l.elements() {
            assert_eq!(l.equiv_q(a, a), l.one());
            assert_eq!(l.equiv_0(a, a), l.one());
            for b in l.elements() {
                if e.flags.is_oml {
                    assert_eq!(l.equiv_q(a, b), l.meet(l.imp(1, a, b), l.imp(1, b, a)));
                }
                if e.flags.is_boolean {
                    assert_eq!(l.imp(0, a, b), l.imp(1, a, b));
                }
            }
        }
    }
}
