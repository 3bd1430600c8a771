//! Bounded Lindenbaum quotients.
//!
//! The formula algebra is truncated to a finite universe: every term over
//! `p0 … p(k-1)` built from `¬`, `∨` and `∧` with at most `d` nested
//! connectives, written in primitive form (`A∧B` becomes `¬(¬A∨¬B)`), plus
//! the subformulas that expansion introduces. Formulas are hash-consed, so
//! the universe is a DAG of distinct primitive formulas and is closed under
//! subformulas.
//!
//! Two congruences are built on it, with no hypotheses:
//!
//! - *standard*: `A ≈ B` iff `⊢ A ≡ B` (QL) or `⊢ A ≡₀ B` (CL);
//! - *refined*: additionally every valuation into O6 agrees on `A` and `B`.
//!
//! Theoremhood is decided semantically: `⊢_QL A≡B` iff `A` and `B` agree
//! under every valuation into MO2 and 2, and `⊢_CL A≡₀B` iff they agree in
//! 2. Each formula's value table over MO2, 2 and O6 is computed once,
//! bottom-up through the DAG, so both relations are partitions by a
//! projection of that table.
//!
//! Class operations are partial: `|A| ∪ |B|` is defined when some
//! disjunction in the universe has disjuncts in those classes. Laws are
//! checked on every tuple of classes where all operations they use are
//! defined, and the report states how many tuples that was.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::formula::{Connective, Formula};
use crate::lattice::Elem;
use crate::semantics::{self, SemanticsError};
use crate::sigspace::SignatureSpace;
use crate::Logic;

pub const MAX_VARS: usize = 2;
pub const MAX_DEPTH: usize = 4;
/// Universes whose node count could exceed this are refused.
pub const NODE_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LindenbaumError {
    #[error("bounds k={vars}, d={depth} exceed k<={MAX_VARS}, d<={MAX_DEPTH}")]
    OutOfRange { vars: usize, depth: usize },
    #[error("universe for k={vars}, d={depth} would need about {estimate} formulas (budget {NODE_BUDGET})")]
    BoundExceeded { vars: usize, depth: usize, estimate: usize },
    #[error("class operation {op} is not well defined on classes {classes:?}")]
    NotWellDefined { op: &'static str, classes: Vec<u32> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Refined,
    Standard,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Refined => "refined",
            Kind::Standard => "standard",
        }
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "refined" => Ok(Kind::Refined),
            "standard" => Ok(Kind::Standard),
            other => Err(format!("unknown congruence kind {other:?}; expected refined or standard")),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A node of the formula DAG; children are node ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Var(u32),
    Not(u32),
    Or(u32, u32),
}

/// Lattice blocks of the value tables, in signature order.
const MO2_BLOCK: usize = 0;
const TWO_BLOCK: usize = 1;
const O6_BLOCK: usize = 2;

pub struct FormulaUniverse {
    vars: usize,
    depth: usize,
    nodes: Vec<Node>,
    index: HashMap<Node, u32>,
    /// Generated terms in generation order.
    terms: Vec<u32>,
    space: SignatureSpace,
    /// Distinct value tables; `sig_of[node]` indexes into this.
    sigs: Vec<Vec<Elem>>,
    sig_of: Vec<u32>,
}

struct SigInterner {
    ids: HashMap<Vec<Elem>, u32>,
    not_memo: HashMap<u32, u32>,
    or_memo: HashMap<(u32, u32), u32>,
}

impl FormulaUniverse {
    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of formulas, subformulas included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of generated terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn node(&self, id: u32) -> Node {
        self.nodes[id as usize]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn lookup(&self, node: Node) -> Option<u32> {
        self.index.get(&node).copied()
    }

    /// The node for `f`'s primitive expansion, if it is in the universe.
    pub fn find(&self, f: &Formula) -> Option<u32> {
        match f {
            Formula::Var(i) => self.lookup(Node::Var(*i)),
            Formula::Not(a) => self.lookup(Node::Not(self.find(a)?)),
            Formula::Or(a, b) => self.lookup(Node::Or(self.find(a)?, self.find(b)?)),
            Formula::Sugar(..) => self.find(&f.expand()),
        }
    }

    /// The primitive formula of a node.
    pub fn formula(&self, id: u32) -> Formula {
        match self.node(id) {
            Node::Var(i) => Formula::var(i),
            Node::Not(a) => Formula::neg(self.formula(a)),
            Node::Or(a, b) => Formula::or(self.formula(a), self.formula(b)),
        }
    }

    /// The node's formula with `¬(¬A∨¬B)` written back as `A∧B`.
    pub fn display(&self, id: u32) -> Formula {
        if let Node::Not(inner) = self.node(id) {
            if let Node::Or(x, y) = self.node(inner) {
                if let (Node::Not(a), Node::Not(b)) = (self.node(x), self.node(y)) {
                    return Formula::and(self.display(a), self.display(b));
                }
            }
        }
        match self.node(id) {
            Node::Var(i) => Formula::var(i),
            Node::Not(a) => Formula::neg(self.display(a)),
            Node::Or(a, b) => Formula::or(self.display(a), self.display(b)),
        }
    }

    /// Value table of a node over MO2, 2 and O6.
    pub fn signature(&self, id: u32) -> &[Elem] {
        &self.sigs[self.sig_of[id as usize] as usize]
    }

    fn intern(&mut self, node: Node, interner: &mut SigInterner) -> u32 {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let sig = match node {
            Node::Var(i) => intern_sig(&mut self.sigs, interner, self.space.var(i as usize).to_vec()),
            Node::Not(a) => {
                let sa = self.sig_of[a as usize];
                match interner.not_memo.get(&sa) {
                    Some(&s) => s,
                    None => {
                        let v = self.space.neg(&self.sigs[sa as usize]);
                        let s = intern_sig(&mut self.sigs, interner, v);
                        interner.not_memo.insert(sa, s);
                        s
                    }
                }
            }
            Node::Or(a, b) => {
                let key = (self.sig_of[a as usize], self.sig_of[b as usize]);
                match interner.or_memo.get(&key) {
                    Some(&s) => s,
                    None => {
                        let v = self.space.or(&self.sigs[key.0 as usize], &self.sigs[key.1 as usize]);
                        let s = intern_sig(&mut self.sigs, interner, v);
                        interner.or_memo.insert(key, s);
                        s
                    }
                }
            }
        };
        let id = u32::try_from(self.nodes.len()).expect("node count fits in u32");
        self.nodes.push(node);
        self.index.insert(node, id);
        self.sig_of.push(sig);
        id
    }
}

fn intern_sig(sigs: &mut Vec<Vec<Elem>>, interner: &mut SigInterner, sig: Vec<Elem>) -> u32 {
    if let Some(&id) = interner.ids.get(&sig) {
        return id;
    }
    let id = sigs.len() as u32;
    interner.ids.insert(sig.clone(), id);
    sigs.push(sig);
    id
}

/// Builds the universe of terms over `k` variables with at most `d` nested
/// `¬`, `∨`, `∧`.
///
/// Level 0 holds the variables; level `L` adds, in this order, the negation
/// of every term new at level `L-1`, then for every ordered pair of earlier
/// terms with at least one new at `L-1`, their disjunction and conjunction.
pub fn build_universe(k: usize, d: usize) -> Result<FormulaUniverse, LindenbaumError> {
    if k == 0 || k > MAX_VARS || d > MAX_DEPTH {
        return Err(LindenbaumError::OutOfRange { vars: k, depth: d });
    }
    let lattices = vec![semantics::mo2().clone(), semantics::two().clone(), semantics::o6().clone()];
    let mut u = FormulaUniverse {
        vars: k,
        depth: d,
        nodes: Vec::new(),
        index: HashMap::new(),
        terms: Vec::new(),
        space: SignatureSpace::new(lattices, k),
        sigs: Vec::new(),
        sig_of: Vec::new(),
    };
    let mut interner = SigInterner { ids: HashMap::new(), not_memo: HashMap::new(), or_memo: HashMap::new() };
    let mut is_term: Vec<bool> = Vec::new();
    let add_term = |u: &mut FormulaUniverse, is_term: &mut Vec<bool>, id: u32| {
        is_term.resize(u.nodes.len(), false);
        if !is_term[id as usize] {
            is_term[id as usize] = true;
            u.terms.push(id);
        }
    };
    for v in 0..k {
        let id = u.intern(Node::Var(v as u32), &mut interner);
        add_term(&mut u, &mut is_term, id);
    }
    let mut previous_end = 0;
    for _level in 1..=d {
        let end = u.terms.len();
        let fresh = end - previous_end;
        let pairs = end * end - previous_end * previous_end;
        let estimate = u.nodes.len() + fresh + pairs * 5;
        if estimate > NODE_BUDGET {
            return Err(LindenbaumError::BoundExceeded { vars: k, depth: d, estimate });
        }
        for t in previous_end..end {
            let a = u.terms[t];
            let id = u.intern(Node::Not(a), &mut interner);
            add_term(&mut u, &mut is_term, id);
        }
        for s in 0..end {
            for t in 0..end {
                if s < previous_end && t < previous_end {
                    continue;
                }
                let (a, b) = (u.terms[s], u.terms[t]);
                let or = u.intern(Node::Or(a, b), &mut interner);
                add_term(&mut u, &mut is_term, or);
                let na = u.intern(Node::Not(a), &mut interner);
                let nb = u.intern(Node::Not(b), &mut interner);
                let inner = u.intern(Node::Or(na, nb), &mut interner);
                let and = u.intern(Node::Not(inner), &mut interner);
                add_term(&mut u, &mut is_term, and);
            }
        }
        previous_end = end;
    }
    Ok(u)
}

/// Theoremhood without hypotheses: QL via validity in every orthomodular
/// lattice, CL via truth tables. Formulas may use at most two variables.
pub fn theoremhood(logic: Logic, f: &Formula) -> Result<bool, SemanticsError> {
    let k = f.variables().len();
    if k > MAX_VARS {
        return Err(SemanticsError::TooManyVariables(k));
    }
    match logic {
        Logic::Quantum => semantics::oml_valid(f),
        Logic::Classical => Ok(semantics::tautology(f)),
    }
}

/// The equivalence a congruence asks to be provable.
pub fn congruence_formula(logic: Logic, a: &Formula, b: &Formula) -> Formula {
    match logic {
        Logic::Quantum => Formula::equiv(a.clone(), b.clone()),
        Logic::Classical => Formula::equiv0(a.clone(), b.clone()),
    }
}

/// Whether the pair is related, decided formula by formula: provability of
/// the equivalence, and for the refined kind agreement under every O6
/// valuation.
pub fn related(kind: Kind, logic: Logic, a: &Formula, b: &Formula) -> Result<bool, SemanticsError> {
    if !theoremhood(logic, &congruence_formula(logic, a, b))? {
        return Ok(false);
    }
    Ok(match kind {
        Kind::Standard => true,
        Kind::Refined => semantics::equation_counterexample(semantics::o6(), a, b).is_none(),
    })
}

/// A partition of the universe; classes are numbered by their first member.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub kind: Kind,
    pub logic: Logic,
    class_of: Vec<u32>,
    class_count: usize,
}

impl Congruence {
    pub fn class_of(&self, node: u32) -> u32 {
        self.class_of[node as usize]
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn related(&self, a: u32, b: u32) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Congruence) -> bool {
        let mut image: Vec<Option<u32>> = vec![None; self.class_count];
        for (node, &c) in self.class_of.iter().enumerate() {
            let target = coarser.class_of[node];
            match image[c as usize] {
                Some(t) if t != target => return false,
                _ => image[c as usize] = Some(target),
            }
        }
        true
    }
}

fn blocks(kind: Kind, logic: Logic) -> &'static [usize] {
    match (logic, kind) {
        (Logic::Quantum, Kind::Standard) => &[MO2_BLOCK, TWO_BLOCK],
        (Logic::Quantum, Kind::Refined) => &[MO2_BLOCK, TWO_BLOCK, O6_BLOCK],
        (Logic::Classical, Kind::Standard) => &[TWO_BLOCK],
        (Logic::Classical, Kind::Refined) => &[TWO_BLOCK, O6_BLOCK],
    }
}

pub fn build_congruence(kind: Kind, logic: Logic, universe: &FormulaUniverse) -> Congruence {
    let wanted = blocks(kind, logic);
    // project each distinct table once
    let mut key_ids: HashMap<Vec<Elem>, u32> = HashMap::new();
    let sig_key: Vec<u32> = universe
        .sigs
        .iter()
        .map(|sig| {
            let key: Vec<Elem> = wanted.iter().flat_map(|&b| universe.space.block(sig, b).iter().copied()).collect();
            let next = key_ids.len() as u32;
            *key_ids.entry(key).or_insert(next)
        })
        .collect();
    let mut class_by_key: HashMap<u32, u32> = HashMap::new();
    let mut class_of = Vec::with_capacity(universe.len());
    for &s in &universe.sig_of {
        let next = class_by_key.len() as u32;
        class_of.push(*class_by_key.entry(sig_key[s as usize]).or_insert(next));
    }
    Congruence { kind, logic, class_count: class_by_key.len(), class_of }
}

/// The quotient with partial complement and join tables.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub kind: Kind,
    pub logic: Logic,
    class_count: usize,
    members: Vec<Vec<u32>>,
    comp: Vec<Option<u32>>,
    join: Vec<Option<u32>>,
    one: Option<u32>,
}

pub fn quotient(universe: &FormulaUniverse, congruence: &Congruence) -> Result<QuotientAlgebra, LindenbaumError> {
    let c = congruence.class_count();
    let mut members = vec![Vec::new(); c];
    let mut comp: Vec<Option<u32>> = vec![None; c];
    let mut join: Vec<Option<u32>> = vec![None; c * c];
    for (id, node) in universe.nodes.iter().enumerate() {
        let class = congruence.class_of(id as u32);
        members[class as usize].push(id as u32);
        match *node {
            Node::Var(_) => {}
            Node::Not(a) => {
                let ca = congruence.class_of(a);
                match comp[ca as usize] {
                    Some(prev) if prev != class => {
                        return Err(LindenbaumError::NotWellDefined { op: "'", classes: vec![ca] })
                    }
                    _ => comp[ca as usize] = Some(class),
                }
            }
            Node::Or(a, b) => {
                let (ca, cb) = (congruence.class_of(a), congruence.class_of(b));
                let slot = &mut join[ca as usize * c + cb as usize];
                match *slot {
                    Some(prev) if prev != class => {
                        return Err(LindenbaumError::NotWellDefined { op: "∪", classes: vec![ca, cb] })
                    }
                    _ => *slot = Some(class),
                }
            }
        }
    }
    let one = universe
        .lookup(Node::Var(0))
        .and_then(|p0| universe.lookup(Node::Or(p0, universe.lookup(Node::Not(p0))?)))
        .map(|id| congruence.class_of(id));
    Ok(QuotientAlgebra { kind: congruence.kind, logic: congruence.logic, class_count: c, members, comp, join, one })
}

/// Laws checked on the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    JoinCommutative,
    JoinAssociative,
    DoubleComplement,
    ComplementBound,
    Absorption,
    WeakOrthomodularity,
    Orthomodularity,
    WeakDistributivity,
    Distributivity,
}

impl Law {
    pub const ALL: [Law; 9] = [
        Law::JoinCommutative,
        Law::JoinAssociative,
        Law::DoubleComplement,
        Law::ComplementBound,
        Law::Absorption,
        Law::WeakOrthomodularity,
        Law::Orthomodularity,
        Law::WeakDistributivity,
        Law::Distributivity,
    ];

    pub fn arity(self) -> usize {
        match self {
            Law::DoubleComplement => 1,
            Law::JoinCommutative | Law::ComplementBound | Law::Absorption => 2,
            Law::Orthomodularity | Law::WeakDistributivity => 2,
            Law::JoinAssociative | Law::WeakOrthomodularity | Law::Distributivity => 3,
        }
    }

    pub fn equation(self) -> &'static str {
        match self {
            Law::JoinCommutative => "a∪b = b∪a",
            Law::JoinAssociative => "(a∪b)∪c = a∪(b∪c)",
            Law::DoubleComplement => "a'' = a",
            Law::ComplementBound => "a∪(b∪b') = b∪b'",
            Law::Absorption => "a∪(a∩b) = a",
            Law::WeakOrthomodularity => "a≡b=1 ⇒ (a∪c)≡(b∪c)=1",
            Law::Orthomodularity => "a∪(a'∩(a∪b)) = a∪b",
            Law::WeakDistributivity => "(a≡b)∪(a≡b') = 1",
            Law::Distributivity => "a∩(b∪c) = (a∩b)∪(a∩c)",
        }
    }

    pub fn is_ortholattice_law(self) -> bool {
        matches!(
            self,
            Law::JoinCommutative
                | Law::JoinAssociative
                | Law::DoubleComplement
                | Law::ComplementBound
                | Law::Absorption
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawStatus {
    Holds,
    Fails,
    /// No tuple had all needed operations defined.
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawVerdict {
    pub law: Law,
    pub equation: &'static str,
    pub status: LawStatus,
    /// Tuples on which the law could be evaluated.
    pub checked: u64,
    pub total: u64,
    /// Class ids of the first failing tuple.
    pub witness_classes: Option<Vec<u32>>,
    /// Representatives of those classes.
    pub witness: Option<Vec<Formula>>,
}

impl LawVerdict {
    pub fn coverage(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.checked as f64 / self.total as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub kind: Kind,
    pub logic: Logic,
    pub classes: usize,
    pub verdicts: Vec<LawVerdict>,
}

impl LawReport {
    pub fn verdict(&self, law: Law) -> &LawVerdict {
        self.verdicts.iter().find(|v| v.law == law).expect("every law is reported")
    }

    fn not_failing(&self, law: Law) -> bool {
        self.verdict(law).status != LawStatus::Fails
    }

    pub fn ol_ok(&self) -> bool {
        self.verdicts.iter().filter(|v| v.law.is_ortholattice_law()).all(|v| v.status != LawStatus::Fails)
    }

    pub fn woml_ok(&self) -> bool {
        self.not_failing(Law::WeakOrthomodularity)
    }

    pub fn wdol_ok(&self) -> bool {
        self.not_failing(Law::WeakDistributivity)
    }

    pub fn oml_counterexample(&self) -> Option<&[Formula]> {
        self.verdict(Law::Orthomodularity).witness.as_deref()
    }

    pub fn distributivity_counterexample(&self) -> Option<&[Formula]> {
        self.verdict(Law::Distributivity).witness.as_deref()
    }
}

impl QuotientAlgebra {
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn members(&self, class: u32) -> &[u32] {
        &self.members[class as usize]
    }

    /// First member of the class.
    pub fn representative(&self, class: u32) -> u32 {
        self.members[class as usize][0]
    }

    /// The class of `p0 ∨ ¬p0`.
    pub fn one(&self) -> Option<u32> {
        self.one
    }

    pub fn comp(&self, a: u32) -> Option<u32> {
        self.comp[a as usize]
    }

    pub fn join(&self, a: u32, b: u32) -> Option<u32> {
        self.join[a as usize * self.class_count + b as usize]
    }

    /// `(a'∪b')'`
    pub fn meet(&self, a: u32, b: u32) -> Option<u32> {
        self.comp(self.join(self.comp(a)?, self.comp(b)?)?)
    }

    /// `(a∩b)∪(a'∩b')`
    pub fn equiv(&self, a: u32, b: u32) -> Option<u32> {
        self.join(self.meet(a, b)?, self.meet(self.comp(a)?, self.comp(b)?)?)
    }

    /// Evaluates one instance: `None` when an operation is undefined.
    pub fn law_instance(&self, law: Law, args: &[u32]) -> Option<bool> {
        let a = args[0];
        let b = args.get(1).copied().unwrap_or(a);
        let c = args.get(2).copied().unwrap_or(a);
        let one = self.one?;
        Some(match law {
            Law::JoinCommutative => self.join(a, b)? == self.join(b, a)?,
            Law::JoinAssociative => self.join(self.join(a, b)?, c)? == self.join(a, self.join(b, c)?)?,
            Law::DoubleComplement => self.comp(self.comp(a)?)? == a,
            Law::ComplementBound => {
                let bb = self.join(b, self.comp(b)?)?;
                self.join(a, bb)? == bb
            }
            Law::Absorption => self.join(a, self.meet(a, b)?)? == a,
            Law::WeakOrthomodularity => {
                if self.equiv(a, b)? != one {
                    true
                } else {
                    self.equiv(self.join(a, c)?, self.join(b, c)?)? == one
                }
            }
            Law::Orthomodularity => {
                let ab = self.join(a, b)?;
                self.join(a, self.meet(self.comp(a)?, ab)?)? == ab
            }
            Law::WeakDistributivity => self.join(self.equiv(a, b)?, self.equiv(a, self.comp(b)?)?)? == one,
            Law::Distributivity => self.meet(a, self.join(b, c)?)? == self.join(self.meet(a, b)?, self.meet(a, c)?)?,
        })
    }

    pub fn check_law(&self, universe: &FormulaUniverse, law: Law) -> LawVerdict {
        let n = self.class_count as u64;
        let k = law.arity();
        let total = n.pow(k as u32);
        let mut checked = 0;
        let mut witness_classes = None;
        let mut args = vec![0u32; k];
        for index in 0..total {
            let mut rest = index;
            for slot in (0..k).rev() {
                args[slot] = (rest % n) as u32;
                rest /= n;
            }
            match self.law_instance(law, &args) {
                None => {}
                Some(true) => checked += 1,
                Some(false) => {
                    checked += 1;
                    if witness_classes.is_none() {
                        witness_classes = Some(args.clone());
                    }
                }
            }
        }
        let status = if witness_classes.is_some() {
            LawStatus::Fails
        } else if checked == 0 {
            LawStatus::Undefined
        } else {
            LawStatus::Holds
        };
        let witness = witness_classes
            .as_ref()
            .map(|cs: &Vec<u32>| cs.iter().map(|&c| universe.display(self.representative(c))).collect());
        LawVerdict { law, equation: law.equation(), status, checked, total, witness_classes, witness }
    }

    pub fn check_laws(&self, universe: &FormulaUniverse) -> LawReport {
        LawReport {
            kind: self.kind,
            logic: self.logic,
            classes: self.class_count,
            verdicts: Law::ALL.iter().map(|&law| self.check_law(universe, law)).collect(),
        }
    }

    /// Members of the class of 1 that are not theorems; empty when the
    /// class of 1 consists of theorems only.
    pub fn non_theorems_in_unit_class(&self, universe: &FormulaUniverse) -> Vec<u32> {
        let Some(one) = self.one else { return Vec::new() };
        self.members(one)
            .iter()
            .copied()
            .filter(|&id| !theoremhood(self.logic, &universe.formula(id)).unwrap_or(false))
            .collect()
    }
}

/// The class of a formula, if its expansion is in the universe.
pub fn class_of_formula(universe: &FormulaUniverse, congruence: &Congruence, f: &Formula) -> Option<u32> {
    universe.find(f).map(|id| congruence.class_of(id))
}

/// `∧` as a sugar connective is expanded before lookup; kept for callers
/// that build conjunctions programmatically.
pub fn conj(a: Formula, b: Formula) -> Formula {
    Formula::sugar(Connective::Conj, a, b)
}
