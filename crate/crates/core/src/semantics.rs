//! Valuations into finite ortholattices and the decision procedures built on
//! them.
//!
//! Formulas are expanded to `¬`/`∨` and compiled into a small stack program
//! once; each assignment then costs one pass over the program. Assignments
//! are enumerated lexicographically with the lowest-numbered variable most
//! significant, and every search reports the first counterexample in that
//! order even when run in parallel.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::formula::Formula;
use crate::lattice::{self, Elem, FiniteOrthoLattice};
use crate::proofs::{self, AxiomSchema};
use crate::Logic;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("variable p{0} has no assigned element")]
    Unassigned(u32),
    #[error("formula has {0} variables; at most 2 are supported")]
    TooManyVariables(usize),
}

pub fn two() -> &'static FiniteOrthoLattice {
    static L: OnceLock<FiniteOrthoLattice> = OnceLock::new();
    L.get_or_init(lattice::two)
}

pub fn o6() -> &'static FiniteOrthoLattice {
    static L: OnceLock<FiniteOrthoLattice> = OnceLock::new();
    L.get_or_init(lattice::o6)
}

pub fn mo2() -> &'static FiniteOrthoLattice {
    static L: OnceLock<FiniteOrthoLattice> = OnceLock::new();
    L.get_or_init(lattice::mo2)
}

/// An assignment of lattice elements to variables.
#[derive(Clone, Debug)]
pub struct Valuation<'l> {
    pub lattice: &'l FiniteOrthoLattice,
    pub assignment: BTreeMap<u32, Elem>,
}

impl<'l> Valuation<'l> {
    pub fn new(lattice: &'l FiniteOrthoLattice, assignment: impl IntoIterator<Item = (u32, Elem)>) -> Self {
        Valuation { lattice, assignment: assignment.into_iter().collect() }
    }

    /// Assignment by element names; `None` if a name is not in the lattice.
    pub fn by_names(lattice: &'l FiniteOrthoLattice, pairs: &[(u32, &str)]) -> Option<Self> {
        let assignment =
            pairs.iter().map(|&(v, name)| lattice.elem(name).map(|e| (v, e))).collect::<Option<BTreeMap<_, _>>>()?;
        Some(Valuation { lattice, assignment })
    }

    /// The homomorphic image of `f`.
    pub fn evaluate(&self, f: &Formula) -> Result<Elem, SemanticsError> {
        let program = Program::compile(f);
        let slots = program
            .vars
            .iter()
            .map(|v| self.assignment.get(v).copied().ok_or(SemanticsError::Unassigned(*v)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(program.run(self.lattice, &slots, &mut Vec::new()))
    }
}

pub fn evaluate(v: &Valuation<'_>, f: &Formula) -> Result<Elem, SemanticsError> {
    v.evaluate(f)
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Load(usize),
    Not,
    Or,
}

/// A formula compiled to postfix over `¬`/`∨`, with its variables mapped to
/// dense slots in ascending order.
#[derive(Clone, Debug)]
pub struct Program {
    pub vars: Vec<u32>,
    ops: Vec<Op>,
}

impl Program {
    pub fn compile(f: &Formula) -> Program {
        let vars: Vec<u32> = f.variables().into_iter().collect();
        Self::compile_with(f, &vars)
    }

    /// Compiles against a given variable list, which must cover `f`.
    pub fn compile_with(f: &Formula, vars: &[u32]) -> Program {
        let mut ops = Vec::new();
        emit(&f.expand(), vars, &mut ops);
        Program { vars: vars.to_vec(), ops }
    }

    pub fn run(&self, l: &FiniteOrthoLattice, slots: &[Elem], stack: &mut Vec<Elem>) -> Elem {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Load(i) => stack.push(slots[i]),
                Op::Not => {
                    let a = stack.pop().expect("operand");
                    stack.push(l.comp(a));
                }
                Op::Or => {
                    let b = stack.pop().expect("operand");
                    let a = stack.pop().expect("operand");
                    stack.push(l.join(a, b));
                }
            }
        }
        stack.pop().expect("program leaves one value")
    }
}

fn emit(f: &Formula, vars: &[u32], ops: &mut Vec<Op>) {
    match f {
        Formula::Var(i) => {
            let slot = vars.iter().position(|v| v == i).expect("variable list covers formula");
            ops.push(Op::Load(slot));
        }
        Formula::Not(a) => {
            emit(a, vars, ops);
            ops.push(Op::Not);
        }
        Formula::Or(a, b) => {
            emit(a, vars, ops);
            emit(b, vars, ops);
            ops.push(Op::Or);
        }
        Formula::Sugar(..) => unreachable!("programs are compiled from expanded formulas"),
    }
}

/// A falsifying assignment and the value the conclusion took under it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<(u32, Elem)>,
    pub value: Elem,
}

impl Counterexample {
    /// `p0=x` style lines in the lattice's element names.
    pub fn describe(&self, l: &FiniteOrthoLattice) -> Vec<String> {
        self.assignment.iter().map(|&(v, e)| format!("p{v}={}", l.name(e))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    fn from_search(counterexample: Option<Counterexample>) -> Self {
        Verdict { valid: counterexample.is_none(), counterexample }
    }
}

fn decode(mut index: usize, n: usize, k: usize, out: &mut [Elem]) {
    for slot in (0..k).rev() {
        out[slot] = Elem::from(index % n);
        index /= n;
    }
}

const PARALLEL_THRESHOLD: usize = 1 << 14;

/// First assignment (lexicographically) under which every premise is 1 and
/// the conclusion is not.
fn search(l: &FiniteOrthoLattice, gamma: &[Formula], f: &Formula) -> Option<Counterexample> {
    let mut all = f.variables();
    for g in gamma {
        all.extend(g.variables());
    }
    let vars: Vec<u32> = all.into_iter().collect();
    let premises: Vec<Program> = gamma.iter().map(|g| Program::compile_with(g, &vars)).collect();
    let conclusion = Program::compile_with(f, &vars);
    let (n, k) = (l.size(), vars.len());
    let total = n.checked_pow(k as u32).expect("assignment space fits in usize");
    let one = l.one();

    let test = |index: usize, slots: &mut Vec<Elem>, stack: &mut Vec<Elem>| -> Option<Counterexample> {
        slots.resize(k, Elem(0));
        decode(index, n, k, slots);
        if premises.iter().any(|p| p.run(l, slots, stack) != one) {
            return None;
        }
        let value = conclusion.run(l, slots, stack);
        (value != one)
            .then(|| Counterexample { assignment: vars.iter().copied().zip(slots.iter().copied()).collect(), value })
    };

    if total < PARALLEL_THRESHOLD {
        let (mut slots, mut stack) = (Vec::new(), Vec::new());
        (0..total).find_map(|i| test(i, &mut slots, &mut stack))
    } else {
        (0..total)
            .into_par_iter()
            .map_init(|| (Vec::new(), Vec::new()), |(slots, stack), i| test(i, slots, stack))
            .find_first(Option::is_some)
            .flatten()
    }
}

/// `h(f) = 1` for every valuation `h` into `l`.
pub fn is_valid(l: &FiniteOrthoLattice, f: &Formula) -> Verdict {
    Verdict::from_search(search(l, &[], f))
}

/// `h(f) = 1` for every valuation sending all of `gamma` to 1.
pub fn is_consequence(l: &FiniteOrthoLattice, gamma: &[Formula], f: &Formula) -> Verdict {
    Verdict::from_search(search(l, gamma, f))
}

/// First assignment under which `lhs` and `rhs` take different elements;
/// the counterexample's value is that of `lhs`.
pub fn equation_counterexample(l: &FiniteOrthoLattice, lhs: &Formula, rhs: &Formula) -> Option<Counterexample> {
    let mut all = lhs.variables();
    all.extend(rhs.variables());
    let vars: Vec<u32> = all.into_iter().collect();
    let (pl, pr) = (Program::compile_with(lhs, &vars), Program::compile_with(rhs, &vars));
    let (n, k) = (l.size(), vars.len());
    let mut slots = vec![Elem(0); k];
    let mut stack = Vec::new();
    for index in 0..n.pow(k as u32) {
        decode(index, n, k, &mut slots);
        let value = pl.run(l, &slots, &mut stack);
        if value != pr.run(l, &slots, &mut stack) {
            return Some(Counterexample {
                assignment: vars.iter().copied().zip(slots.iter().copied()).collect(),
                value,
            });
        }
    }
    None
}

/// Truth-table validity.
pub fn tautology(f: &Formula) -> bool {
    is_valid(two(), f).valid
}

/// Validity in every orthomodular lattice, for formulas in at most two
/// variables: the free orthomodular lattice on two generators is a product
/// of copies of MO2 and 2, so checking those two factors decides it.
pub fn oml_valid(f: &Formula) -> Result<bool, SemanticsError> {
    let k = f.variables().len();
    if k > 2 {
        return Err(SemanticsError::TooManyVariables(k));
    }
    Ok(is_valid(mo2(), f).valid && is_valid(two(), f).valid)
}

/// The substitution pool for axiom instances.
pub fn soundness_pool() -> Vec<Formula> {
    let (p0, p1) = (Formula::var(0), Formula::var(1));
    vec![p0.clone(), p1.clone(), Formula::neg(p0.clone()), Formula::or(p0, p1)]
}

/// Every instance of `schema` with metavariables drawn from `pool`.
pub fn pool_instances(schema: &AxiomSchema, pool: &[Formula]) -> Vec<Formula> {
    let k = schema.metavariables();
    let mut out = Vec::new();
    let total = pool.len().pow(k as u32);
    for index in 0..total {
        let mut rest = index;
        let mut picks = vec![0; k];
        for slot in (0..k).rev() {
            picks[slot] = rest % pool.len();
            rest /= pool.len();
        }
        let subst: Vec<Formula> = picks.iter().map(|&i| pool[i].clone()).collect();
        out.push(schema.instantiate(&subst).expect("pool covers every metavariable"));
    }
    out
}

/// One failed check in a soundness sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SoundnessFailure {
    Axiom {
        axiom: String,
        instance: Formula,
        assignment: Vec<String>,
    },
    /// `1 → b = 1` while `b ≠ 1`.
    Detachment {
        minor: String,
        conclusion: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryFinding {
    pub canonical_key: String,
    pub failure: SoundnessFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub logic: Logic,
    /// Entries in the model class (WOML for QL, WDOL for CL).
    pub in_class: usize,
    pub out_of_class: usize,
    pub instances: usize,
    /// Failures inside the model class; soundness means this is empty.
    pub violations: Vec<EntryFinding>,
    /// First failure for each out-of-class entry that has one.
    pub out_of_class_failures: Vec<EntryFinding>,
    /// Out-of-class entries on which every instance and R1 hold.
    pub out_of_class_passing: Vec<String>,
}

impl SoundnessReport {
    pub fn sound(&self) -> bool {
        self.violations.is_empty()
    }
}

fn first_failure(l: &FiniteOrthoLattice, logic: Logic, instances: &[(String, Formula)]) -> Option<SoundnessFailure> {
    for (axiom, f) in instances {
        if let Some(cx) = is_valid(l, f).counterexample {
            return Some(SoundnessFailure::Axiom {
                axiom: axiom.clone(),
                instance: f.clone(),
                assignment: cx.describe(l),
            });
        }
    }
    let i = logic.detachment().implication_index().expect("detachment is an implication");
    let one = l.one();
    l.elements()
        .find(|&b| l.imp(i, one, b) == one && b != one)
        .map(|b| SoundnessFailure::Detachment { minor: l.name(one).to_string(), conclusion: l.name(b).to_string() })
}

/// Checks every pool instance of the logic's axioms and closure under R1 on
/// each entry. Entries inside the model class must pass; the others are
/// reported separately.
pub fn soundness_suite(logic: Logic, entries: &[CatalogEntry]) -> SoundnessReport {
    let pool = soundness_pool();
    let instances: Vec<(String, Formula)> = proofs::schemas(logic)
        .iter()
        .flat_map(|s| pool_instances(s, &pool).into_iter().map(move |f| (s.id.clone(), f)))
        .collect();
    let in_class = |e: &CatalogEntry| match logic {
        Logic::Quantum => e.flags.is_woml,
        Logic::Classical => e.flags.is_wdol,
    };
    let results: Vec<(bool, &CatalogEntry, Option<SoundnessFailure>)> =
        entries.par_iter().map(|e| (in_class(e), e, first_failure(&e.lattice, logic, &instances))).collect();

    let mut report = SoundnessReport {
        logic,
        in_class: 0,
        out_of_class: 0,
        instances: instances.len(),
        violations: Vec::new(),
        out_of_class_failures: Vec::new(),
        out_of_class_passing: Vec::new(),
    };
    for (member, e, failure) in results {
        let key = e.canonical_key.clone();
        match (member, failure) {
            (true, failure) => {
                report.in_class += 1;
                if let Some(failure) = failure {
                    report.violations.push(EntryFinding { canonical_key: key, failure });
                }
            }
            (false, Some(failure)) => {
                report.out_of_class += 1;
                report.out_of_class_failures.push(EntryFinding { canonical_key: key, failure });
            }
            (false, None) => {
                report.out_of_class += 1;
                report.out_of_class_passing.push(key);
            }
        }
    }
    report
}
