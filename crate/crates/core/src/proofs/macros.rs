//! Derived rules expanded into explicit steps.

use crate::formula::Formula;
use crate::Logic;

use super::{Justification, ProofScript};

/// Appends the steps deriving `A≡C` from the steps numbered `ab` (`A≡B`)
/// and `bc` (`B≡C`): A2 once, A14 twice, Modus Ponens six times. Returns the
/// number of the final step.
pub fn transitivity_steps(
    script: &mut ProofScript,
    (a, b, c): (&Formula, &Formula, &Formula),
    ab: usize,
    bc: usize,
) -> usize {
    let x = Formula::equiv(a.clone(), b.clone());
    let bc_f = Formula::equiv(b.clone(), c.clone());
    let ac = Formula::equiv(a.clone(), c.clone());
    let y = Formula::imp(0, bc_f.clone(), ac.clone());

    // (A≡B) →₀ ((B≡C) →₀ (A≡C))
    let a2 = script.axiom("A2", vec![a.clone(), b.clone(), c.clone()]);
    let a14 = script.axiom("A14", vec![x, y.clone()]);
    let s5 = script.mp(a2, a14);
    let s6 = script.mp(ab, s5);
    let s7 = script.mp(ab, s6);
    let a14b = script.axiom("A14", vec![bc_f, ac]);
    let s9 = script.mp(s7, a14b);
    let s10 = script.mp(bc, s9);
    script.mp(bc, s10)
}

/// The script deriving `A≡C` from hypotheses `A≡B` and `B≡C`.
pub fn transitivity(a: &Formula, b: &Formula, c: &Formula) -> ProofScript {
    let gamma = vec![Formula::equiv(a.clone(), b.clone()), Formula::equiv(b.clone(), c.clone())];
    let mut script = ProofScript::new(Logic::Quantum, gamma);
    let h0 = script.hyp(0);
    let h1 = script.hyp(1);
    transitivity_steps(&mut script, (a, b, c), h0, h1);
    script.claim = Some(Formula::equiv(a.clone(), c.clone()));
    script
}

fn equiv_sides(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Sugar(crate::Connective::EquivQ, a, b) => Some((a, b)),
        _ => None,
    }
}

/// Joins a QL proof of `A≡B` and one of `B≡C` (over the same hypotheses)
/// into a proof of `A≡C`. `None` if the conclusions do not chain.
pub fn chain_equivalences(p: &ProofScript, q: &ProofScript) -> Option<ProofScript> {
    if p.logic != Logic::Quantum || q.logic != Logic::Quantum || p.gamma != q.gamma {
        return None;
    }
    let (a, b) = equiv_sides(p.conclusion()?)?;
    let (b2, c) = equiv_sides(q.conclusion()?)?;
    if b != b2 {
        return None;
    }
    let mut script = ProofScript::new(Logic::Quantum, p.gamma.clone());
    script.steps.extend(p.steps.iter().cloned());
    let offset = p.steps.len();
    for step in &q.steps {
        let mut step = step.clone();
        if let Justification::ModusPonens(i, j) = step.justification {
            step.justification = Justification::ModusPonens(i + offset, j + offset);
        }
        script.steps.push(step);
    }
    let (a, b, c) = (a.clone(), b.clone(), c.clone());
    let last = script.steps.len();
    transitivity_steps(&mut script, (&a, &b, &c), offset, last);
    script.claim = Some(Formula::equiv(a, c));
    Some(script)
}

/// `p0 →₀ p0` in CL from A1, A2, A4.
pub fn cl_identity() -> ProofScript {
    let p0 = Formula::var(0);
    let p0p0 = Formula::or(p0.clone(), p0.clone());
    let mut s = ProofScript::new(Logic::Classical, Vec::new());
    let s1 = s.axiom("A2", vec![p0.clone(), p0.clone()]);
    let s2 = s.axiom("A1", vec![p0.clone()]);
    let s3 = s.axiom("A4", vec![p0p0, p0.clone(), Formula::neg(p0.clone())]);
    let s4 = s.mp(s2, s3);
    let target = Formula::imp(0, p0.clone(), p0.clone());
    s.push(target.clone(), Justification::ModusPonens(s1, s4));
    s.claim = Some(target);
    s
}

/// `p1` from `p0` and `p0 →₃ p1` in QL.
pub fn r1_detachment() -> ProofScript {
    let (p0, p1) = (Formula::var(0), Formula::var(1));
    let mut s = ProofScript::new(Logic::Quantum, vec![p0.clone(), Formula::imp(3, p0, p1.clone())]);
    let h0 = s.hyp(0);
    let h1 = s.hyp(1);
    s.mp(h0, h1);
    s.claim = Some(p1);
    s
}
