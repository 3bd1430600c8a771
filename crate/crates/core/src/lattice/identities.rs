//! Derived identities: two of the "sixfold" zeros, the `≡₃` polynomial, and
//! the recovery of `∪` from each quantum implication.

use serde::Serialize;

use super::{Elem, FiniteOrthoLattice};

/// Result of checking one identity over all pairs `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IdentityOutcome {
    Holds,
    /// First failing pair in element order, with the value the left-hand
    /// side took there.
    Fails {
        a: String,
        b: String,
        value: String,
    },
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityOutcome::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// `a∩(a'∪b)∩(a∪b') = 0`
    pub zero_1: IdentityOutcome,
    /// `(a∪b)∩(a∪b')∩(a'∪b)∩(a'∪b') = 0`
    pub zero_5: IdentityOutcome,
    /// `(a'∪b)∩(a∪(a'∩b')) = a≡b`
    pub equiv_3_is_equiv_q: IdentityOutcome,
    /// `(a'∪b)∩(a∪(a'∩b')) = 1 ⟺ a≡b = 1`
    pub equiv_3_unit_is_equiv_q_unit: IdentityOutcome,
    /// `(a'∪b)∩(a∪(a'∩b')) = a≡₀b`
    pub equiv_3_is_equiv_0: IdentityOutcome,
    /// `(a→ᵢb)→ᵢ(((a→ᵢb)→ᵢ(b→ᵢa))→ᵢa) = a∪b` for `i = 1..=5`, in order.
    pub union_from_implication: Vec<IdentityOutcome>,
}

impl FiniteOrthoLattice {
    pub fn zero_1(&self, a: Elem, b: Elem) -> Elem {
        let (na, nb) = (self.comp(a), self.comp(b));
        self.meet(self.meet(a, self.join(na, b)), self.join(a, nb))
    }

    pub fn zero_5(&self, a: Elem, b: Elem) -> Elem {
        let (na, nb) = (self.comp(a), self.comp(b));
        let left = self.meet(self.join(a, b), self.join(a, nb));
        let right = self.meet(self.join(na, b), self.join(na, nb));
        self.meet(left, right)
    }

    pub fn equiv_3(&self, a: Elem, b: Elem) -> Elem {
        let (na, nb) = (self.comp(a), self.comp(b));
        self.meet(self.join(na, b), self.join(a, self.meet(na, nb)))
    }

    /// `(a→ᵢb)→ᵢ(((a→ᵢb)→ᵢ(b→ᵢa))→ᵢa)`
    pub fn union_via_implication(&self, i: u8, a: Elem, b: Elem) -> Elem {
        let imp = |x, y| self.imp(i, x, y);
        let ab = imp(a, b);
        imp(ab, imp(imp(ab, imp(b, a)), a))
    }

    fn check(&self, lhs: impl Fn(Elem, Elem) -> Elem, rhs: impl Fn(Elem, Elem) -> Elem) -> IdentityOutcome {
        for a in self.elements() {
            for b in self.elements() {
                let value = lhs(a, b);
                if value != rhs(a, b) {
                    return IdentityOutcome::Fails {
                        a: self.name(a).to_string(),
                        b: self.name(b).to_string(),
                        value: self.name(value).to_string(),
                    };
                }
            }
        }
        IdentityOutcome::Holds
    }

    pub fn derived_identities_check(&self) -> IdentityReport {
        let zero = self.zero();
        let one = self.one();
        // the unit comparison is encoded as lhs ↦ 1 iff the two sides agree on being 1
        let unit_agrees = |a, b| (self.equiv_3(a, b) == one) == (self.equiv_q(a, b) == one);
        IdentityReport {
            zero_1: self.check(|a, b| self.zero_1(a, b), |_, _| zero),
            zero_5: self.check(|a, b| self.zero_5(a, b), |_, _| zero),
            equiv_3_is_equiv_q: self.check(|a, b| self.equiv_3(a, b), |a, b| self.equiv_q(a, b)),
            equiv_3_unit_is_equiv_q_unit: self.check(
                |a, b| self.equiv_3(a, b),
                |a, b| if unit_agrees(a, b) { self.equiv_3(a, b) } else { self.equiv_q(a, b) },
            ),
            equiv_3_is_equiv_0: self.check(|a, b| self.equiv_3(a, b), |a, b| self.equiv_0(a, b)),
            union_from_implication: (1..=5)
                .map(|i| self.check(|a, b| self.union_via_implication(i, a, b), |a, b| self.join(a, b)))
                .collect(),
        }
    }
}
