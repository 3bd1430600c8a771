//! All ortholattices up to ten elements, one per isomorphism class.
//!
//! An ortholattice with more than one element has an even carrier: `0` and
//! `1` are complements, and every other element pairs with a distinct
//! complement that is incomparable to it. Candidates therefore fix the
//! layout `0, a, a', b, b', …, 1` and only choose the order among the middle
//! elements. Because `'` is antitone, deciding `a ? b` also decides
//! `b' ? a'`, so the free choices are orbits of pairs under `{a,b} ↦
//! {a',b'}`, each taking one of three states (incomparable, `<`, `>`).
//! Partial assignments that break transitivity are pruned; complete ones are
//! kept if they form a lattice with `a∪a' = 1`, which makes them
//! ortholattices.
//!
//! Isomorphisms of ortholattices fix `0`, `1` and map complementary pairs to
//! complementary pairs, so the canonical form is the minimum bit encoding of
//! the middle order over all pair permutations and in-pair swaps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::{ClassFlags, FiniteOrthoLattice, RawLattice};

/// Largest size [`enumerate`] accepts.
pub const MAX_ENUMERATION_SIZE: usize = 10;
/// Default enumeration bound.
pub const DEFAULT_MAX_SIZE: usize = 8;
/// Largest size [`canonical_key`] can encode.
pub const MAX_KEY_SIZE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("size bound {0} is outside 2..={MAX_ENUMERATION_SIZE}")]
    BoundExceeded(usize),
}

/// A catalog lattice with its class memberships and isomorphism key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    #[serde(skip)]
    pub lattice: FiniteOrthoLattice,
    pub flags: ClassFlags,
    pub canonical_key: String,
}

impl CatalogEntry {
    pub fn new(lattice: FiniteOrthoLattice) -> Self {
        let canonical_key = canonical_key(&lattice).unwrap_or_else(|| format!("n{}-uncanonical", lattice.size()));
        let flags = lattice.classify();
        CatalogEntry { lattice, flags, canonical_key }
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }
}

/// Middle elements listed as complementary pairs, each pair ordered by id.
fn middle_pairs(l: &FiniteOrthoLattice) -> Vec<(usize, usize)> {
    l.elements()
        .filter(|&a| a != l.zero() && a != l.one() && a < l.comp(a))
        .map(|a| (a.index(), l.comp(a).index()))
        .collect()
}

fn hex_width(n: usize) -> usize {
    let m = n.saturating_sub(2);
    (m * m.saturating_sub(1)).div_ceil(4).max(1)
}

fn format_key(n: usize, code: u128) -> String {
    format!("n{}-{:0width$x}", n, code, width = hex_width(n))
}

/// Every arrangement of `pairs` into a middle order: pair order permuted,
/// each pair optionally swapped.
fn arrangements(pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let p = pairs.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..p).collect();
    permutations(&mut perm, 0, &mut |perm| {
        for swaps in 0..(1u32 << p) {
            let mut order = Vec::with_capacity(2 * p);
            for (slot, &k) in perm.iter().enumerate() {
                let (a, b) = pairs[k];
                if swaps >> slot & 1 == 1 {
                    order.extend([b, a]);
                } else {
                    order.extend([a, b]);
                }
            }
            out.push(order);
        }
    });
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn encode(order: &[usize], le: &dyn Fn(usize, usize) -> bool) -> u128 {
    let mut code = 0u128;
    for (u, &a) in order.iter().enumerate() {
        for (v, &b) in order.iter().enumerate() {
            if u != v {
                code = code << 1 | u128::from(le(a, b));
            }
        }
    }
    code
}

fn min_arrangement(
    pairs: &[(usize, usize)],
    arrangements: &[Vec<usize>],
    le: &dyn Fn(usize, usize) -> bool,
) -> (u128, usize) {
    debug_assert!(pairs.len() * 2 <= MAX_KEY_SIZE - 2);
    arrangements.iter().enumerate().map(|(i, order)| (encode(order, le), i)).min().expect("at least one arrangement")
}

/// Isomorphism-invariant key, or `None` above [`MAX_KEY_SIZE`] elements.
pub fn canonical_key(l: &FiniteOrthoLattice) -> Option<String> {
    if l.size() > MAX_KEY_SIZE {
        return None;
    }
    let pairs = middle_pairs(l);
    let arr = arrangements(&pairs);
    let le = |a: usize, b: usize| l.le(a.into(), b.into());
    Some(format_key(l.size(), min_arrangement(&pairs, &arr, &le).0))
}

fn pair_names(p: usize) -> Vec<String> {
    let mut names = vec!["0".to_string()];
    for k in 0..p {
        let letter = char::from(b'a' + k as u8);
        names.push(letter.to_string());
        names.push(format!("{letter}'"));
    }
    names.push("1".to_string());
    names
}

/// The lattice relabelled to its canonical arrangement with names
/// `0, a, a', b, b', …, 1`.
pub fn canonical_form(l: &FiniteOrthoLattice) -> Option<FiniteOrthoLattice> {
    if l.size() > MAX_KEY_SIZE {
        return None;
    }
    let pairs = middle_pairs(l);
    let arr = arrangements(&pairs);
    let le = |a: usize, b: usize| l.le(a.into(), b.into());
    let (_, best) = min_arrangement(&pairs, &arr, &le);
    let mut layout = vec![l.zero().index()];
    layout.extend(&arr[best]);
    layout.push(l.one().index());
    let mut perm = vec![0; l.size()];
    for (new, &old) in layout.iter().enumerate() {
        perm[old] = new;
    }
    let relabelled = l.permuted(&perm).ok()?;
    relabelled.renamed(pair_names(pairs.len())).ok()
}

/// Order candidates for one carrier size under the fixed layout.
struct Search {
    n: usize,
    /// `rel[i][j]`: 0 undecided, 1 `i<j`, 2 `i>j`, 3 incomparable.
    rel: Vec<Vec<u8>>,
    orbits: Vec<(usize, usize)>,
    leaves: Vec<Vec<Vec<bool>>>,
}

const UNDECIDED: u8 = 0;
const LESS: u8 = 1;
const GREATER: u8 = 2;
const INCOMPARABLE: u8 = 3;

fn flip(state: u8) -> u8 {
    match state {
        LESS => GREATER,
        GREATER => LESS,
        s => s,
    }
}

impl Search {
    fn new(n: usize) -> Self {
        let comp = |i: usize| if i % 2 == 1 { i + 1 } else { i - 1 };
        let mut rel = vec![vec![UNDECIDED; n]; n];
        for i in 1..n - 1 {
            rel[0][i] = LESS;
            rel[i][0] = GREATER;
            rel[i][n - 1] = LESS;
            rel[n - 1][i] = GREATER;
            rel[i][comp(i)] = INCOMPARABLE;
        }
        rel[0][n - 1] = LESS;
        rel[n - 1][0] = GREATER;
        let mut orbits = Vec::new();
        let mut seen = vec![vec![false; n]; n];
        for i in 1..n - 1 {
            for j in i + 1..n - 1 {
                if j == comp(i) || seen[i][j] {
                    continue;
                }
                let (ci, cj) = (comp(i), comp(j));
                seen[i][j] = true;
                seen[ci.min(cj)][ci.max(cj)] = true;
                orbits.push((i, j));
            }
        }
        Search { n, rel, orbits, leaves: Vec::new() }
    }

    fn comp(&self, i: usize) -> usize {
        if i == 0 {
            self.n - 1
        } else if i == self.n - 1 {
            0
        } else if i % 2 == 1 {
            i + 1
        } else {
            i - 1
        }
    }

    fn set(&mut self, i: usize, j: usize, state: u8) {
        self.rel[i][j] = state;
        self.rel[j][i] = flip(state);
    }

    fn less(&self, i: usize, j: usize) -> bool {
        self.rel[i][j] == LESS
    }

    /// Transitivity among decided pairs involving `i` or `j`.
    fn consistent_at(&self, i: usize, j: usize) -> bool {
        for &x in &[i, j] {
            for y in 0..self.n {
                for z in 0..self.n {
                    // x<y<z, y<x<z and y<z<x patterns, each needing the outer pair
                    for (a, b, c) in [(x, y, z), (y, x, z), (y, z, x)] {
                        if a == c || !self.less(a, b) || !self.less(b, c) {
                            continue;
                        }
                        let r = self.rel[a][c];
                        if r != UNDECIDED && r != LESS {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if k == self.orbits.len() {
            self.leaves.push(self.le_matrix());
            return;
        }
        let (i, j) = self.orbits[k];
        let (ci, cj) = (self.comp(i), self.comp(j));
        for state in [INCOMPARABLE, LESS, GREATER] {
            self.set(i, j, state);
            // i<j ⟺ j'<i'
            self.set(cj, ci, state);
            if self.consistent_at(i, j) && self.consistent_at(ci, cj) {
                self.run(k + 1);
            }
        }
        self.set(i, j, UNDECIDED);
        self.set(cj, ci, UNDECIDED);
    }

    fn le_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n).map(|i| (0..self.n).map(|j| i == j || self.rel[i][j] == LESS).collect()).collect()
    }
}

/// Whether a candidate order is a lattice in which `a∪a' = 1`.
fn is_ortholattice_order(le: &[Vec<bool>], comp: &dyn Fn(usize) -> usize) -> bool {
    let n = le.len();
    for i in 0..n {
        for j in 0..n {
            if !le[i][j] {
                continue;
            }
            for k in 0..n {
                if le[j][k] && !le[i][k] {
                    return false;
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let ub: Vec<usize> = (0..n).filter(|&c| le[a][c] && le[b][c]).collect();
            let Some(&lub) = ub.iter().find(|&&c| ub.iter().all(|&d| le[c][d])) else {
                return false;
            };
            if b == comp(a) && lub != n - 1 {
                return false;
            }
        }
    }
    true
}

/// Canonical codes of all ortholattices with exactly `n` elements.
fn codes_of_size(n: usize) -> BTreeMap<u128, Vec<Vec<bool>>> {
    if n == 2 {
        return BTreeMap::from([(0, vec![vec![true, true], vec![false, true]])]);
    }
    let mut search = Search::new(n);
    search.run(0);
    let comp = |i: usize| search.comp(i);
    let pairs: Vec<(usize, usize)> = (1..n - 1).step_by(2).map(|i| (i, i + 1)).collect();
    let arr = arrangements(&pairs);
    let found: Vec<(u128, Vec<Vec<bool>>)> = search
        .leaves
        .par_iter()
        .filter(|le| is_ortholattice_order(le, &comp))
        .map(|le| {
            let f = |a: usize, b: usize| le[a][b];
            (min_arrangement(&pairs, &arr, &f).0, le.clone())
        })
        .collect();
    let mut out = BTreeMap::new();
    for (code, le) in found {
        out.entry(code).or_insert(le);
    }
    out
}

/// Every ortholattice with 2 to `max_size` elements, up to isomorphism,
/// ordered by `(size, canonical_key)`. The one-element lattice is left out.
pub fn enumerate(max_size: usize) -> Result<Vec<CatalogEntry>, CatalogError> {
    if !(2..=MAX_ENUMERATION_SIZE).contains(&max_size) {
        return Err(CatalogError::BoundExceeded(max_size));
    }
    let mut lattices = Vec::new();
    for n in (2..=max_size).step_by(2) {
        let names = pair_names((n - 2) / 2);
        let comp: Vec<usize> = (0..n)
            .map(|i| match i {
                0 => n - 1,
                i if i == n - 1 => 0,
                i if i % 2 == 1 => i + 1,
                i => i - 1,
            })
            .collect();
        for (_, le) in codes_of_size(n) {
            let raw = RawLattice { names: names.clone(), le, comp: comp.clone() };
            let l = FiniteOrthoLattice::new(raw).expect("enumerated orders are ortholattices");
            lattices.push(canonical_form(&l).expect("catalog sizes are canonicalizable"));
        }
    }
    let mut entries: Vec<CatalogEntry> = lattices.into_par_iter().map(CatalogEntry::new).collect();
    entries.sort_by(|a, b| (a.size(), &a.canonical_key).cmp(&(b.size(), &b.canonical_key)));
    Ok(entries)
}

/// The class predicates a pattern can constrain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassName {
    Ol,
    Woml,
    Wdol,
    Oml,
    Boolean,
}

impl ClassName {
    pub fn of(self, flags: &ClassFlags) -> bool {
        match self {
            ClassName::Ol => flags.is_ol,
            ClassName::Woml => flags.is_woml,
            ClassName::Wdol => flags.is_wdol,
            ClassName::Oml => flags.is_oml,
            ClassName::Boolean => flags.is_boolean,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ClassName::Ol => "ol",
            ClassName::Woml => "woml",
            ClassName::Wdol => "wdol",
            ClassName::Oml => "oml",
            ClassName::Boolean => "ba",
        }
    }
}

/// A conjunction of required class memberships and non-memberships, written
/// e.g. `woml,!oml` (`&` and whitespace also separate, `~` also negates).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassPattern {
    pub constraints: Vec<(ClassName, bool)>,
}

impl ClassPattern {
    pub fn require(mut self, class: ClassName, member: bool) -> Self {
        self.constraints.push((class, member));
        self
    }

    pub fn matches(&self, flags: &ClassFlags) -> bool {
        self.constraints.iter().all(|&(c, want)| c.of(flags) == want)
    }
}

impl fmt::Display for ClassPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.constraints.iter().map(|&(c, want)| format!("{}{}", if want { "" } else { "!" }, c.label())).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown class {0:?} in pattern; expected ol, woml, wdol, oml or ba")]
pub struct PatternError(pub String);

impl FromStr for ClassPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut pattern = ClassPattern::default();
        for token in s.split(|c: char| c == ',' || c == '&' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let (want, name) = match token.strip_prefix(['!', '~', '¬']) {
                Some(rest) => (false, rest),
                None => (true, token),
            };
            let class = match name.to_ascii_lowercase().as_str() {
                "ol" => ClassName::Ol,
                "woml" => ClassName::Woml,
                "wdol" => ClassName::Wdol,
                "oml" => ClassName::Oml,
                "ba" | "boolean" => ClassName::Boolean,
                _ => return Err(PatternError(token.to_string())),
            };
            pattern.constraints.push((class, want));
        }
        Ok(pattern)
    }
}

/// First entry, in catalog order, whose flags match.
pub fn witness_search<'a>(entries: &'a [CatalogEntry], pattern: &ClassPattern) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| pattern.matches(&e.flags))
}
