//! Finite ortholattices.
//!
//! A lattice is given by its order relation and orthocomplement; joins and
//! meets are derived once at validation time and every later query is a
//! table lookup. Class membership (WOML, WDOL, OML, Boolean) is decided by
//! brute-force quantification over the carrier.

mod builtins;
mod hasse;
mod identities;
mod text;

use std::fmt;

use serde::Serialize;

pub use builtins::{boolean, builtin, mo2, o6, product, two, BUILTIN_NAMES};
pub use identities::{IdentityOutcome, IdentityReport};

/// An element of a [`FiniteOrthoLattice`], as a dense index into its carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Elem(pub u16);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Elem {
    fn from(i: usize) -> Self {
        Elem(u16::try_from(i).expect("lattice carrier exceeds u16 range"))
    }
}

/// Unvalidated lattice data: names, an order relation, and a complement map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawLattice {
    pub names: Vec<String>,
    /// `le[a][b]` is `a ≤ b`.
    pub le: Vec<Vec<bool>>,
    pub comp: Vec<usize>,
}

impl RawLattice {
    /// Builds the order as the reflexive-transitive closure of `pairs`.
    pub fn from_pairs(names: Vec<String>, comp: Vec<usize>, pairs: &[(usize, usize)]) -> Self {
        let n = names.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a < n && b < n {
                le[a][b] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        RawLattice { names, le, comp }
    }
}

/// The six defining equations of an ortholattice, in their usual order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OlLaw {
    JoinCommutative,
    JoinAssociative,
    DoubleComplement,
    ComplementBound,
    Absorption,
    DeMorgan,
}

impl OlLaw {
    pub const ALL: [OlLaw; 6] = [
        OlLaw::JoinCommutative,
        OlLaw::JoinAssociative,
        OlLaw::DoubleComplement,
        OlLaw::ComplementBound,
        OlLaw::Absorption,
        OlLaw::DeMorgan,
    ];

    pub fn equation(self) -> &'static str {
        match self {
            OlLaw::JoinCommutative => "a∪b = b∪a",
            OlLaw::JoinAssociative => "(a∪b)∪c = a∪(b∪c)",
            OlLaw::DoubleComplement => "a'' = a",
            OlLaw::ComplementBound => "a∪(b∪b') = b∪b'",
            OlLaw::Absorption => "a∪(a∩b) = a",
            OlLaw::DeMorgan => "a∩b = (a'∪b')'",
        }
    }
}

impl fmt::Display for OlLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.equation())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("empty carrier")]
    Empty,
    #[error("carrier has {0} elements; at most 4096 are supported")]
    TooLarge(usize),
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("{0} table does not match the carrier size")]
    TableShape(&'static str),
    #[error("complement of {element:?} is out of range")]
    ComplementOutOfRange { element: String },
    #[error("order is not {property}: witness {witness:?}")]
    NotPartialOrder { property: &'static str, witness: Vec<String> },
    #[error("{a:?} and {b:?} have no {bound}")]
    NoBound { bound: &'static str, a: String, b: String },
    #[error("ortholattice condition {law} fails at {witness:?}")]
    OlLaw { law: OlLaw, witness: Vec<String> },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

/// Membership in the lattice classes studied here.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ClassFlags {
    pub is_ol: bool,
    pub is_woml: bool,
    pub is_wdol: bool,
    pub is_oml: bool,
    pub is_boolean: bool,
}

impl fmt::Display for ClassFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |x: bool| u8::from(x);
        write!(
            f,
            "ol={} woml={} wdol={} oml={} ba={}",
            b(self.is_ol),
            b(self.is_woml),
            b(self.is_wdol),
            b(self.is_oml),
            b(self.is_boolean)
        )
    }
}

/// Two definitions of the same class disagreed on a lattice.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("definitions of {class} disagree: {detail}")]
pub struct Inconsistency {
    pub class: &'static str,
    pub detail: String,
}

/// A validated finite ortholattice. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOrthoLattice {
    names: Vec<String>,
    n: usize,
    le: Vec<bool>,
    comp: Vec<Elem>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    zero: Elem,
    one: Elem,
}

/// Checks the OL conditions on raw tables and returns the validated lattice.
pub fn verify_ortholattice(raw: RawLattice) -> Result<FiniteOrthoLattice, LatticeError> {
    FiniteOrthoLattice::new(raw)
}

impl FiniteOrthoLattice {
    pub fn new(raw: RawLattice) -> Result<Self, LatticeError> {
        let RawLattice { names, le: le_rows, comp: comp_raw } = raw;
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if n > 4096 {
            return Err(LatticeError::TooLarge(n));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(LatticeError::DuplicateName(name.clone()));
            }
        }
        if le_rows.len() != n || le_rows.iter().any(|r| r.len() != n) {
            return Err(LatticeError::TableShape("order"));
        }
        if comp_raw.len() != n {
            return Err(LatticeError::TableShape("complement"));
        }
        if let Some(i) = comp_raw.iter().position(|&c| c >= n) {
            return Err(LatticeError::ComplementOutOfRange { element: names[i].clone() });
        }
        let name = |i: usize| names[i].clone();

        for i in 0..n {
            if !le_rows[i][i] {
                return Err(LatticeError::NotPartialOrder { property: "reflexive", witness: vec![name(i)] });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le_rows[i][j] && le_rows[j][i] {
                    return Err(LatticeError::NotPartialOrder {
                        property: "antisymmetric",
                        witness: vec![name(i), name(j)],
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !le_rows[i][j] {
                    continue;
                }
                for k in 0..n {
                    if le_rows[j][k] && !le_rows[i][k] {
                        return Err(LatticeError::NotPartialOrder {
                            property: "transitive",
                            witness: vec![name(i), name(j), name(k)],
                        });
                    }
                }
            }
        }

        let le: Vec<bool> = le_rows.iter().flatten().copied().collect();
        let leq = |a: usize, b: usize| le[a * n + b];
        let mut join = vec![Elem(0); n * n];
        let mut meet = vec![Elem(0); n * n];
        for a in 0..n {
            for b in a..n {
                let lub = least(n, |c| leq(a, c) && leq(b, c), &leq).ok_or_else(|| LatticeError::NoBound {
                    bound: "join",
                    a: name(a),
                    b: name(b),
                })?;
                let glb = least(n, |c| leq(c, a) && leq(c, b), &|x, y| leq(y, x))
                    .ok_or_else(|| LatticeError::NoBound { bound: "meet", a: name(a), b: name(b) })?;
                join[a * n + b] = Elem::from(lub);
                join[b * n + a] = Elem::from(lub);
                meet[a * n + b] = Elem::from(glb);
                meet[b * n + a] = Elem::from(glb);
            }
        }
        let zero = (0..n).find(|&z| (0..n).all(|x| leq(z, x))).expect("lattice has a bottom");
        let one = (0..n).find(|&t| (0..n).all(|x| leq(x, t))).expect("lattice has a top");

        let lattice = FiniteOrthoLattice {
            n,
            le,
            comp: comp_raw.into_iter().map(Elem::from).collect(),
            join,
            meet,
            zero: Elem::from(zero),
            one: Elem::from(one),
            names,
        };
        if let Some((law, witness)) = lattice.first_ol_violation() {
            return Err(LatticeError::OlLaw {
                law,
                witness: witness.iter().map(|&e| lattice.name(e).to_string()).collect(),
            });
        }
        Ok(lattice)
    }

    /// Builds a lattice from tables already known to be consistent, still
    /// running the full validation.
    pub fn from_pairs(names: &[&str], comp: &[usize], pairs: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let names = names.iter().map(|s| s.to_string()).collect();
        Self::new(RawLattice::from_pairs(names, comp.to_vec(), pairs))
    }

    fn first_ol_violation(&self) -> Option<(OlLaw, Vec<Elem>)> {
        let els: Vec<Elem> = self.elements().collect();
        for law in OlLaw::ALL {
            for &a in &els {
                for &b in &els {
                    let fails = match law {
                        OlLaw::JoinCommutative => self.join(a, b) != self.join(b, a),
                        OlLaw::DoubleComplement => self.comp(self.comp(a)) != a,
                        OlLaw::ComplementBound => {
                            let bb = self.join(b, self.comp(b));
                            self.join(a, bb) != bb
                        }
                        OlLaw::Absorption => self.join(a, self.meet(a, b)) != a,
                        OlLaw::DeMorgan => self.meet(a, b) != self.comp(self.join(self.comp(a), self.comp(b))),
                        OlLaw::JoinAssociative => {
                            if let Some(&c) =
                                els.iter().find(|&&c| self.join(self.join(a, b), c) != self.join(a, self.join(b, c)))
                            {
                                return Some((law, vec![a, b, c]));
                            }
                            false
                        }
                    };
                    if fails {
                        let witness = match law {
                            OlLaw::DoubleComplement => vec![a],
                            _ => vec![a, b],
                        };
                        return Some((law, witness));
                    }
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.n).map(Elem::from)
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name).map(Elem::from)
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.le[a.index() * self.n + b.index()]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.index() * self.n + b.index()]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.index() * self.n + b.index()]
    }

    pub fn comp(&self, a: Elem) -> Elem {
        self.comp[a.index()]
    }

    /// The complement map as a slice indexed by element.
    pub fn comp_table(&self) -> &[Elem] {
        &self.comp
    }

    /// Row-major join table.
    pub fn join_table(&self) -> &[Elem] {
        &self.join
    }

    /// The implications `→₀` … `→₅` as lattice polynomials.
    pub fn imp(&self, i: u8, a: Elem, b: Elem) -> Elem {
        let c = |x| self.comp(x);
        let j = |x, y| self.join(x, y);
        let m = |x, y| self.meet(x, y);
        match i {
            0 => j(c(a), b),
            1 => j(c(a), m(a, b)),
            2 => self.imp(1, c(b), c(a)),
            3 => j(j(m(c(a), b), m(c(a), c(b))), m(a, j(c(a), b))),
            4 => self.imp(3, c(b), c(a)),
            5 => j(j(m(a, b), m(c(a), b)), m(c(a), c(b))),
            _ => panic!("implication index {i} out of range 0..=5"),
        }
    }

    /// Quantum equivalence `(a∩b)∪(a'∩b')`.
    pub fn equiv_q(&self, a: Elem, b: Elem) -> Elem {
        self.join(self.meet(a, b), self.meet(self.comp(a), self.comp(b)))
    }

    /// Classical equivalence `(a→₀b)∩(b→₀a)`.
    pub fn equiv_0(&self, a: Elem, b: Elem) -> Elem {
        self.meet(self.imp(0, a, b), self.imp(0, b, a))
    }

    /// `a` commutes with `b`: `a = (a∩b)∪(a∩b')`.
    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        a == self.join(self.meet(a, b), self.meet(a, self.comp(b)))
    }

    fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.elements().flat_map(move |a| self.elements().map(move |b| (a, b)))
    }

    fn triples(&self) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
        self.pairs().flat_map(move |(a, b)| self.elements().map(move |c| (a, b, c)))
    }

    /// `a≡b=1 ⇒ (a∪c)≡(b∪c)=1`; returns the first failing `(a, b, c)`.
    pub fn woml_counterexample(&self) -> Option<(Elem, Elem, Elem)> {
        self.triples().find(|&(a, b, c)| {
            self.equiv_q(a, b) == self.one && self.equiv_q(self.join(a, c), self.join(b, c)) != self.one
        })
    }

    /// `(a∩b)∪(a∩b')∪(a'∩b)∪(a'∩b') = 1`; returns the first failing pair.
    pub fn wdol_counterexample(&self) -> Option<(Elem, Elem)> {
        self.pairs().find(|&(a, b)| self.join(self.equiv_q(a, b), self.equiv_q(a, self.comp(b))) != self.one)
    }

    /// `a≡b=1 ⇒ a=b`.
    pub fn oml_by_equivalence(&self) -> Option<(Elem, Elem)> {
        self.pairs().find(|&(a, b)| self.equiv_q(a, b) == self.one && a != b)
    }

    /// `a∪(a'∩(a∪b)) = a∪b`.
    pub fn oml_by_orthomodular_law(&self) -> Option<(Elem, Elem)> {
        self.pairs().find(|&(a, b)| {
            let ab = self.join(a, b);
            self.join(a, self.meet(self.comp(a), ab)) != ab
        })
    }

    /// `b C a & c C a ⇒ a∩(b∪c) = (a∩b)∪(a∩c)`.
    ///
    /// With the commutation hypotheses read as `a C b & a C c` the condition
    /// already holds in O6 (take `a = x`), so it cannot single out the
    /// orthomodular lattices; with `b` and `c` commuting with `a` it can.
    pub fn oml_by_commuting_distributivity(&self) -> Option<(Elem, Elem, Elem)> {
        self.triples().find(|&(a, b, c)| self.commutes(b, a) && self.commutes(c, a) && !self.distributes(a, b, c))
    }

    /// Same as [`Self::oml_by_commuting_distributivity`] with hypotheses
    /// `a C b & a C c`.
    pub fn commuting_distributivity_a_first(&self) -> Option<(Elem, Elem, Elem)> {
        self.triples().find(|&(a, b, c)| self.commutes(a, b) && self.commutes(a, c) && !self.distributes(a, b, c))
    }

    fn distributes(&self, a: Elem, b: Elem, c: Elem) -> bool {
        self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
    }

    /// `a≡₀b=1 ⇒ a=b`.
    pub fn boolean_by_equivalence(&self) -> Option<(Elem, Elem)> {
        self.pairs().find(|&(a, b)| self.equiv_0(a, b) == self.one && a != b)
    }

    /// `a∩(b∪c) = (a∩b)∪(a∩c)`.
    pub fn distributivity_counterexample(&self) -> Option<(Elem, Elem, Elem)> {
        self.triples().find(|&(a, b, c)| !self.distributes(a, b, c))
    }

    /// Decides every class, cross-checking equivalent definitions.
    pub fn try_classify(&self) -> Result<ClassFlags, Inconsistency> {
        let oml1 = self.oml_by_equivalence().is_none();
        let oml2 = self.oml_by_orthomodular_law().is_none();
        let oml3 = self.oml_by_commuting_distributivity().is_none();
        if oml1 != oml2 || oml2 != oml3 {
            return Err(Inconsistency {
                class: "OML",
                detail: format!("a≡b=1⇒a=b: {oml1}, orthomodular law: {oml2}, commuting distributivity: {oml3}"),
            });
        }
        let ba1 = self.boolean_by_equivalence().is_none();
        let ba2 = self.distributivity_counterexample().is_none();
        if ba1 != ba2 {
            return Err(Inconsistency {
                class: "Boolean",
                detail: format!("a≡₀b=1⇒a=b: {ba1}, distributivity: {ba2}"),
            });
        }
        Ok(ClassFlags {
            is_ol: true,
            is_woml: self.woml_counterexample().is_none(),
            is_wdol: self.wdol_counterexample().is_none(),
            is_oml: oml1,
            is_boolean: ba1,
        })
    }

    /// As [`Self::try_classify`]; disagreement between equivalent definitions
    /// is a bug and panics with the witness.
    pub fn classify(&self) -> ClassFlags {
        match self.try_classify() {
            Ok(flags) => flags,
            Err(e) => panic!("{e}"),
        }
    }

    /// `∀a,b: a→ᵢb = 1 ⟺ a ≤ b`.
    pub fn implication_characterizes_order(&self, i: u8) -> bool {
        self.pairs().all(|(a, b)| (self.imp(i, a, b) == self.one) == self.le(a, b))
    }

    /// An embedding of O6, returned as the images of `[0, x, y, y', x', 1]`.
    ///
    /// Candidate images of `x < y` are tried in element order; the six
    /// images must be distinct and preserve `'`, `∪` and `∩`, which makes the
    /// image a subalgebra isomorphic to O6.
    pub fn find_o6_subalgebra(&self) -> Option<[Elem; 6]> {
        let hex = o6();
        for x in self.elements() {
            for y in self.elements() {
                if x == y || !self.le(x, y) {
                    continue;
                }
                let image = [self.zero, x, y, self.comp(y), self.comp(x), self.one];
                if self.embeds(&hex, &image) {
                    return Some(image);
                }
            }
        }
        None
    }

    /// Whether `image[i]` (for each element `i` of `source`) is an injective
    /// homomorphism of ortholattices.
    pub fn embeds(&self, source: &FiniteOrthoLattice, image: &[Elem]) -> bool {
        if image.len() != source.size() {
            return false;
        }
        for (i, &a) in image.iter().enumerate() {
            if image[..i].contains(&a) {
                return false;
            }
        }
        let f = |e: Elem| image[e.index()];
        source.elements().all(|a| f(source.comp(a)) == self.comp(f(a)))
            && source.pairs().all(|(a, b)| f(source.join(a, b)) == self.join(f(a), f(b)))
    }

    /// Elements covered by nothing between: `a < b` with no `c` strictly
    /// between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        self.pairs()
            .filter(|&(a, b)| {
                a != b && self.le(a, b) && !self.elements().any(|c| c != a && c != b && self.le(a, c) && self.le(c, b))
            })
            .collect()
    }

    /// The same lattice with elements renamed.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self, LatticeError> {
        if names.len() != self.n {
            return Err(LatticeError::TableShape("name"));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(LatticeError::DuplicateName(name.clone()));
            }
        }
        Ok(FiniteOrthoLattice { names, ..self.clone() })
    }

    /// The same lattice with element `i` moved to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, LatticeError> {
        let n = self.n;
        if perm.len() != n {
            return Err(LatticeError::TableShape("permutation"));
        }
        let mut names = vec![String::new(); n];
        let mut comp = vec![0; n];
        let mut le = vec![vec![false; n]; n];
        for a in self.elements() {
            let pa = perm[a.index()];
            names[pa] = self.name(a).to_string();
            comp[pa] = perm[self.comp(a).index()];
            for b in self.elements() {
                le[pa][perm[b.index()]] = self.le(a, b);
            }
        }
        FiniteOrthoLattice::new(RawLattice { names, le, comp })
    }

    pub fn to_raw(&self) -> RawLattice {
        RawLattice {
            names: self.names.clone(),
            le: self.elements().map(|a| self.elements().map(|b| self.le(a, b)).collect()).collect(),
            comp: self.comp.iter().map(|c| c.index()).collect(),
        }
    }
}

/// The element `c` satisfying `pred` that lies below every other such
/// element under `below`, if one exists.
fn least(n: usize, pred: impl Fn(usize) -> bool, below: &dyn Fn(usize, usize) -> bool) -> Option<usize> {
    let candidates: Vec<usize> = (0..n).filter(|&c| pred(c)).collect();
    candidates.iter().copied().find(|&c| candidates.iter().all(|&d| below(c, d)))
}
