//! Formulas grouped by their value tables.
//!
//! Whether a formula is valid in a lattice depends only on the values it takes
//! under every assignment. Stacking those tables for a fixed list of lattices
//! gives the formula's *signature*, and the signature of `¬A` or `A∨B` is
//! computed pointwise from those of `A` and `B`. Sweeping "every formula up
//! to depth d" therefore only has to visit each distinct signature once,
//! which keeps exhaustive sweeps small while remaining exact.

use std::collections::HashMap;

use crate::formula::{Connective, Formula};
use crate::lattice::{Elem, FiniteOrthoLattice};

/// Connectives used to grow formulas level by level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generators {
    /// `¬` and `∨` only; depth is primitive depth.
    Primitive,
    /// `¬`, `∨` and every derived connective, each counting one level.
    AllConnectives,
}

/// The stacked value tables of a list of lattices over `vars` variables.
pub struct SignatureSpace {
    lattices: Vec<FiniteOrthoLattice>,
    vars: usize,
    /// Start of each lattice's block in a signature.
    offsets: Vec<usize>,
    len: usize,
    var_sigs: Vec<Vec<Elem>>,
}

/// How a class representative is built from earlier classes.
#[derive(Clone, Copy, Debug)]
enum Step {
    Var(u32),
    Not(usize),
    Or(usize, usize),
    Sugar(Connective, usize, usize),
}

/// One distinct signature together with the shallowest formula found for
/// it and that formula's depth.
#[derive(Clone, Debug)]
pub struct SigClass {
    pub signature: Vec<Elem>,
    pub depth: usize,
    step: Step,
}

/// Distinct signatures of all formulas up to a depth, in discovery order.
pub struct SigClasses {
    pub classes: Vec<SigClass>,
}

impl SigClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// A formula of minimal depth with the class's signature.
    pub fn representative(&self, index: usize) -> Formula {
        match self.classes[index].step {
            Step::Var(i) => Formula::var(i),
            Step::Not(a) => Formula::neg(self.representative(a)),
            Step::Or(a, b) => Formula::or(self.representative(a), self.representative(b)),
            Step::Sugar(c, a, b) => Formula::sugar(c, self.representative(a), self.representative(b)),
        }
    }
}

impl SignatureSpace {
    pub fn new(lattices: Vec<FiniteOrthoLattice>, vars: usize) -> Self {
        let mut offsets = Vec::with_capacity(lattices.len());
        let mut len = 0;
        for l in &lattices {
            offsets.push(len);
            len += l.size().pow(vars as u32);
        }
        let mut var_sigs = vec![Vec::with_capacity(len); vars];
        for l in &lattices {
            let n = l.size();
            for point in 0..n.pow(vars as u32) {
                // first variable is the most significant digit
                let mut rest = point;
                for v in (0..vars).rev() {
                    var_sigs[v].push(Elem::from(rest % n));
                    rest /= n;
                }
            }
        }
        SignatureSpace { lattices, vars, offsets, len, var_sigs }
    }

    pub fn lattices(&self) -> &[FiniteOrthoLattice] {
        &self.lattices
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn signature_len(&self) -> usize {
        self.len
    }

    pub fn var(&self, i: usize) -> &[Elem] {
        &self.var_sigs[i]
    }

    fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        let end = self.offsets.get(i + 1).copied().unwrap_or(self.len);
        self.offsets[i]..end
    }

    /// The part of a signature belonging to lattice `i`.
    pub fn block<'s>(&self, sig: &'s [Elem], i: usize) -> &'s [Elem] {
        &sig[self.block_range(i)]
    }

    pub fn neg(&self, a: &[Elem]) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.len);
        for (i, l) in self.lattices.iter().enumerate() {
            out.extend(a[self.block_range(i)].iter().map(|&x| l.comp(x)));
        }
        out
    }

    pub fn or(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.len);
        for (i, l) in self.lattices.iter().enumerate() {
            let r = self.block_range(i);
            out.extend(a[r.clone()].iter().zip(&b[r]).map(|(&x, &y)| l.join(x, y)));
        }
        out
    }

    /// Pointwise value of a derived connective, through its lattice polynomial.
    pub fn sugar(&self, c: Connective, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.len);
        for (i, l) in self.lattices.iter().enumerate() {
            let r = self.block_range(i);
            out.extend(a[r.clone()].iter().zip(&b[r]).map(|(&x, &y)| match c {
                Connective::Conj => l.meet(x, y),
                Connective::EquivQ => l.equiv_q(x, y),
                Connective::Equiv0 => l.equiv_0(x, y),
                _ => l.imp(c.implication_index().expect("implication"), x, y),
            }));
        }
        out
    }

    /// Signature of an arbitrary formula over the first `vars` variables.
    pub fn signature(&self, f: &Formula) -> Vec<Elem> {
        match f {
            Formula::Var(i) => self.var_sigs[*i as usize].clone(),
            Formula::Not(a) => self.neg(&self.signature(a)),
            Formula::Or(a, b) => self.or(&self.signature(a), &self.signature(b)),
            Formula::Sugar(..) => self.signature(&f.expand()),
        }
    }

    /// Whether the block of lattice `i` is constantly that lattice's 1.
    pub fn valid_in(&self, sig: &[Elem], i: usize) -> bool {
        let one = self.lattices[i].one();
        self.block(sig, i).iter().all(|&x| x == one)
    }

    /// Distinct signatures of every formula over `p0 … p(vars-1)` of depth
    /// at most `depth`. A class first seen at depth `d` is represented by a
    /// formula of depth exactly `d`.
    pub fn classes(&self, depth: usize, generators: Generators) -> SigClasses {
        let mut classes: Vec<SigClass> = Vec::new();
        let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
        let mut push = |classes: &mut Vec<SigClass>, sig: Vec<Elem>, depth: usize, step: Step| {
            if !index.contains_key(&sig) {
                index.insert(sig.clone(), classes.len());
                classes.push(SigClass { signature: sig, depth, step });
            }
        };
        for v in 0..self.vars {
            push(&mut classes, self.var_sigs[v].clone(), 0, Step::Var(v as u32));
        }
        let mut previous_end = 0;
        for d in 1..=depth {
            let end = classes.len();
            for a in 0..end {
                if a >= previous_end {
                    let s = self.neg(&classes[a].signature);
                    push(&mut classes, s, d, Step::Not(a));
                }
            }
            // at least one operand must be new at the previous level
            for a in 0..end {
                for b in 0..end {
                    if a < previous_end && b < previous_end {
                        continue;
                    }
                    let (sa, sb) = (&classes[a].signature, &classes[b].signature);
                    let s = self.or(sa, sb);
                    push(&mut classes, s, d, Step::Or(a, b));
                    if generators == Generators::AllConnectives {
                        for c in Connective::ALL {
                            let (sa, sb) = (&classes[a].signature, &classes[b].signature);
                            let s = self.sugar(c, sa, sb);
                            push(&mut classes, s, d, Step::Sugar(c, a, b));
                        }
                    }
                }
            }
            previous_end = end;
        }
        SigClasses { classes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{o6, two};

    #[test]
    fn distinct_function_counts_in_hexagon() {
        let space = SignatureSpace::new(vec![o6()], 3);
        let counts: Vec<usize> = (1..=3).map(|d| space.classes(d, Generators::Primitive).len()).collect();
        assert_eq!(counts, vec![9, 26, 71]);
    }

    #[test]
    fn representatives_have_their_signatures() {
        let space = SignatureSpace::new(vec![o6(), two()], 2);
        let classes = space.classes(3, Generators::AllConnectives);
        for (i, c) in classes.classes.iter().enumerate() {
            let rep = classes.representative(i);
            assert_eq!(space.signature(&rep), c.signature, "{rep}");
            assert_eq!(rep.depth(), c.depth);
        }
    }

    #[test]
    fn sugar_signature_matches_expansion() {
        let space = SignatureSpace::new(vec![o6()], 2);
        let (a, b) = (space.var(0).to_vec(), space.var(1).to_vec());
        for c in Connective::ALL {
            let f = Formula::sugar(c, Formula::var(0), Formula::var(1));
            assert_eq!(space.sugar(c, &a, &b), space.signature(&f), "{c}");
        }
    }
}
