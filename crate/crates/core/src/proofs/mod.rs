//! Hilbert-style derivations in QL and CL.
//!
//! Axiom schemata are stored as formulas over `p0`, `p1`, `p2`, which play
//! the metavariables `A`, `B`, `C`. A proof step matches an axiom, a
//! hypothesis, or a Modus Ponens conclusion when the two formulas have the
//! same primitive expansion, so scripts may write derived connectives either
//! sugared or spelled out.

mod macros;
mod simulation;
mod text;

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::formula::{parse, Formula};
use crate::Logic;

pub use macros::{chain_equivalences, cl_identity, r1_detachment, transitivity, transitivity_steps};
pub use simulation::{
    parse_equational, simulate_equational, EquationalProof, EquationalStep, SimulationReport, SimulationStep,
    TargetClass,
};
pub use text::ScriptParseError;

/// An axiom schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomSchema {
    /// `QL.A1` … `QL.A15`, `CL.A1` … `CL.A4`.
    pub id: String,
    pub logic: Logic,
    /// The schema with `A`, `B`, `C` written as `p0`, `p1`, `p2`.
    pub template: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstantiateError {
    #[error("{schema} needs {needed} metavariables, {given} given")]
    MissingMetavariable { schema: String, needed: usize, given: usize },
}

pub const METAVARIABLES: [char; 3] = ['A', 'B', 'C'];

impl AxiomSchema {
    /// Number of metavariables the template uses.
    pub fn metavariables(&self) -> usize {
        self.template.variables().iter().next_back().map_or(0, |&v| v as usize + 1)
    }

    /// The id without its logic prefix, e.g. `A5`.
    pub fn short_id(&self) -> &str {
        self.id.split_once('.').map_or(&self.id, |(_, s)| s)
    }

    /// Substitutes `subst[0]` for `A`, `subst[1]` for `B`, `subst[2]` for `C`.
    pub fn instantiate(&self, subst: &[Formula]) -> Result<Formula, InstantiateError> {
        let needed = self.metavariables();
        if subst.len() < needed {
            return Err(InstantiateError::MissingMetavariable { schema: self.id.clone(), needed, given: subst.len() });
        }
        Ok(self.template.substitute(&|v| subst.get(v as usize).cloned()))
    }

    /// The template written with `A`, `B`, `C`.
    pub fn display_template(&self) -> String {
        let mut s = self.template.render();
        for (i, m) in METAVARIABLES.iter().enumerate() {
            s = s.replace(&format!("p{i}"), &m.to_string());
        }
        s
    }
}

const QL_AXIOMS: [&str; 15] = [
    "p0 = p0",
    "p0 = p1 -0> (p1 = p2 -0> p0 = p2)",
    "p0 = p1 -0> ~p0 = ~p1",
    "p0 = p1 -0> p0 ^ p2 = p1 ^ p2",
    "p0 ^ p1 = p1 ^ p0",
    "p0 ^ (p1 ^ p2) = (p0 ^ p1) ^ p2",
    "p0 ^ (p0 v p1) = p0",
    "~p0 ^ p0 = (~p0 ^ p0) ^ p1",
    "p0 = ~~p0",
    "~(p0 v p1) = ~p0 ^ ~p1",
    "p0 v (~p0 ^ (p0 v p1)) = p0 v p1",
    "(p0 = p1) = (p1 = p0)",
    "p0 = p1 -0> (p0 -0> p1)",
    "(p0 -0> p1) -3> (p0 -3> (p0 -3> p1))",
    "(p0 -3> p1) -0> (p0 -0> p1)",
];

const CL_AXIOMS: [&str; 4] =
    ["p0 v p0 -0> p0", "p0 -0> p0 v p1", "p0 v p1 -0> p1 v p0", "(p0 -0> p1) -0> (p2 v p0 -0> p2 v p1)"];

fn build(logic: Logic, texts: &[&str]) -> Vec<AxiomSchema> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| AxiomSchema {
            id: format!("{}.A{}", logic.name(), i + 1),
            logic,
            template: parse(t).expect("axiom templates parse"),
        })
        .collect()
}

/// The axioms of a logic, in order.
pub fn schemas(logic: Logic) -> &'static [AxiomSchema] {
    static QL: OnceLock<Vec<AxiomSchema>> = OnceLock::new();
    static CL: OnceLock<Vec<AxiomSchema>> = OnceLock::new();
    match logic {
        Logic::Quantum => QL.get_or_init(|| build(Logic::Quantum, &QL_AXIOMS)),
        Logic::Classical => CL.get_or_init(|| build(Logic::Classical, &CL_AXIOMS)),
    }
}

/// Looks up `A5` or `QL.A5` style ids within a logic.
pub fn schema(logic: Logic, id: &str) -> Option<&'static AxiomSchema> {
    let short = match id.split_once('.') {
        Some((prefix, rest)) if prefix.eq_ignore_ascii_case(logic.name()) => rest,
        Some(_) => return None,
        None => id,
    };
    schemas(logic).iter().find(|s| s.short_id().eq_ignore_ascii_case(short))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Axiom id and the formulas for `A`, `B`, `C` in order.
    Axiom { id: String, subst: Vec<Formula> },
    /// Zero-based index into the hypotheses.
    Hypothesis(usize),
    /// One-based step numbers of the minor premise `A` and the major
    /// premise `A → B`.
    ModusPonens(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub logic: Logic,
    pub gamma: Vec<Formula>,
    pub steps: Vec<ProofStep>,
    /// When present, the last step must match it.
    pub claim: Option<Formula>,
}

impl ProofScript {
    pub fn new(logic: Logic, gamma: Vec<Formula>) -> Self {
        ProofScript { logic, gamma, steps: Vec::new(), claim: None }
    }

    /// Appends a step and returns its one-based number.
    pub fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.steps.push(ProofStep { formula, justification });
        self.steps.len()
    }

    /// Appends an axiom instance, computing its formula.
    pub fn axiom(&mut self, id: &str, subst: Vec<Formula>) -> usize {
        let s = schema(self.logic, id).unwrap_or_else(|| panic!("no axiom {id} in {}", self.logic));
        let f = s.instantiate(&subst).expect("enough metavariables");
        self.push(f, Justification::Axiom { id: s.id.clone(), subst })
    }

    pub fn hyp(&mut self, index: usize) -> usize {
        let f = self.gamma[index].clone();
        self.push(f, Justification::Hypothesis(index))
    }

    /// Appends Modus Ponens from steps `minor` and `major`, taking the
    /// conclusion from the major premise's right operand.
    pub fn mp(&mut self, minor: usize, major: usize) -> usize {
        let conclusion = match &self.steps[major - 1].formula {
            Formula::Sugar(_, _, b) => (**b).clone(),
            other => panic!("major premise {other} is not an implication"),
        };
        self.push(conclusion, Justification::ModusPonens(minor, major))
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }
}

/// Why a step was not accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum RejectReason {
    EmptyProof,
    UnknownAxiom {
        id: String,
    },
    MissingMetavariable {
        id: String,
        needed: usize,
        given: usize,
    },
    NotAnAxiomInstance {
        id: String,
        expected: Formula,
    },
    UnknownHypothesis {
        index: usize,
    },
    HypothesisMismatch {
        index: usize,
        expected: Formula,
    },
    ForwardReference {
        step: usize,
    },
    /// The major premise uses an implication other than the logic's
    /// detachment connective.
    WrongImplication {
        expected: String,
        found: String,
    },
    MajorPremiseMismatch {
        expected: Formula,
    },
    ClaimMismatch {
        claim: Formula,
    },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::EmptyProof => write!(f, "proof has no steps"),
            RejectReason::UnknownAxiom { id } => write!(f, "unknown axiom {id}"),
            RejectReason::MissingMetavariable { id, needed, given } => {
                write!(f, "{id} needs {needed} metavariables, {given} given")
            }
            RejectReason::NotAnAxiomInstance { id, expected } => {
                write!(f, "formula is not the {id} instance {expected}")
            }
            RejectReason::UnknownHypothesis { index } => write!(f, "no hypothesis {index}"),
            RejectReason::HypothesisMismatch { index, expected } => {
                write!(f, "formula differs from hypothesis {index}: {expected}")
            }
            RejectReason::ForwardReference { step } => {
                write!(f, "step {step} is not an earlier step")
            }
            RejectReason::WrongImplication { expected, found } => {
                write!(f, "Modus Ponens needs a {expected} major premise, found {found}")
            }
            RejectReason::MajorPremiseMismatch { expected } => {
                write!(f, "major premise should be {expected}")
            }
            RejectReason::ClaimMismatch { claim } => {
                write!(f, "last step does not match the claim {claim}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("step {step}: {reason}")]
pub struct Rejection {
    /// One-based; 0 for whole-script problems.
    pub step: usize,
    pub reason: RejectReason,
}

fn same(a: &Formula, b: &Formula) -> bool {
    a == b || a.expand() == b.expand()
}

/// Checks every step in order; on success returns the conclusion.
pub fn check_proof(script: &ProofScript) -> Result<Formula, Rejection> {
    let logic = script.logic;
    let reject = |step: usize, reason: RejectReason| Err(Rejection { step, reason });
    if script.steps.is_empty() {
        return reject(0, RejectReason::EmptyProof);
    }
    for (i, step) in script.steps.iter().enumerate() {
        let k = i + 1;
        match &step.justification {
            Justification::Axiom { id, subst } => {
                let Some(s) = schema(logic, id) else {
                    return reject(k, RejectReason::UnknownAxiom { id: id.clone() });
                };
                let instance = match s.instantiate(subst) {
                    Ok(f) => f,
                    Err(InstantiateError::MissingMetavariable { needed, given, .. }) => {
                        return reject(k, RejectReason::MissingMetavariable { id: s.id.clone(), needed, given })
                    }
                };
                if !same(&instance, &step.formula) {
                    return reject(k, RejectReason::NotAnAxiomInstance { id: s.id.clone(), expected: instance });
                }
            }
            Justification::Hypothesis(index) => {
                let Some(h) = script.gamma.get(*index) else {
                    return reject(k, RejectReason::UnknownHypothesis { index: *index });
                };
                if !same(h, &step.formula) {
                    return reject(k, RejectReason::HypothesisMismatch { index: *index, expected: h.clone() });
                }
            }
            Justification::ModusPonens(minor, major) => {
                for &r in &[*minor, *major] {
                    if r == 0 || r >= k {
                        return reject(k, RejectReason::ForwardReference { step: r });
                    }
                }
                let a = &script.steps[minor - 1].formula;
                let major_formula = &script.steps[major - 1].formula;
                let expected = Formula::sugar(logic.detachment(), a.clone(), step.formula.clone());
                if same(major_formula, &expected) {
                    continue;
                }
                // a recognisable implication of the wrong kind gets a precise reason
                if let Formula::Sugar(c, x, y) = major_formula {
                    if c.implication_index().is_some()
                        && *c != logic.detachment()
                        && same(x, a)
                        && same(y, &step.formula)
                    {
                        return reject(
                            k,
                            RejectReason::WrongImplication {
                                expected: logic.detachment().ascii().to_string(),
                                found: c.ascii().to_string(),
                            },
                        );
                    }
                }
                return reject(k, RejectReason::MajorPremiseMismatch { expected });
            }
        }
    }
    let last = script.steps.last().expect("non-empty").formula.clone();
    if let Some(claim) = &script.claim {
        if !same(claim, &last) {
            return reject(script.steps.len(), RejectReason::ClaimMismatch { claim: claim.clone() });
        }
    }
    Ok(last)
}
