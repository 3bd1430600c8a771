//! Plain-text lattice files.
//!
//! ```text
//! # the hexagon
//! elements: 0 x y y' x' 1
//! comp: 0->1 x->x' y->y'
//! le: 0 x
//! le: x y
//! ```
//!
//! The order is the reflexive-transitive closure of the `le` pairs, so
//! covering pairs suffice. Complement pairs may be given in one direction
//! only; `→` is accepted in place of `->`.

use std::fmt::Write as _;

use super::{FiniteOrthoLattice, LatticeError, RawLattice};

fn format_err(line: usize, message: impl Into<String>) -> LatticeError {
    LatticeError::Format { line, message: message.into() }
}

impl FiniteOrthoLattice {
    pub fn parse_text(text: &str) -> Result<Self, LatticeError> {
        let mut names: Option<Vec<String>> = None;
        let mut comp: Vec<Option<usize>> = Vec::new();
        let mut pairs = Vec::new();
        let lookup = |names: &[String], line: usize, name: &str| {
            names.iter().position(|n| n == name).ok_or_else(|| format_err(line, format!("unknown element {name:?}")))
        };

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) =
                content.split_once(':').ok_or_else(|| format_err(line, "expected `elements:`, `comp:` or `le:`"))?;
            match key.trim() {
                "elements" => {
                    if names.is_some() {
                        return Err(format_err(line, "`elements:` given twice"));
                    }
                    let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if list.is_empty() {
                        return Err(format_err(line, "no elements listed"));
                    }
                    comp = vec![None; list.len()];
                    names = Some(list);
                }
                "comp" => {
                    let names = names.as_deref().ok_or_else(|| format_err(line, "`comp:` before `elements:`"))?;
                    for item in rest.split_whitespace() {
                        let (a, b) = item
                            .split_once("->")
                            .or_else(|| item.split_once('→'))
                            .ok_or_else(|| format_err(line, format!("expected `a->b`, got {item:?}")))?;
                        let a = lookup(names, line, a)?;
                        let b = lookup(names, line, b)?;
                        for (x, y) in [(a, b), (b, a)] {
                            match comp[x] {
                                Some(prev) if prev != y => {
                                    return Err(format_err(line, format!("conflicting complement for {:?}", names[x])))
                                }
                                _ => comp[x] = Some(y),
                            }
                        }
                    }
                }
                "le" => {
                    let names = names.as_deref().ok_or_else(|| format_err(line, "`le:` before `elements:`"))?;
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let [a, b] = parts[..] else {
                        return Err(format_err(line, "expected `le: x y`"));
                    };
                    pairs.push((lookup(names, line, a)?, lookup(names, line, b)?));
                }
                other => return Err(format_err(line, format!("unknown key {other:?}"))),
            }
        }

        let names = names.ok_or_else(|| format_err(0, "missing `elements:` line"))?;
        let comp = comp
            .iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| format_err(0, format!("no complement for {:?}", names[i]))))
            .collect::<Result<Vec<_>, _>>()?;
        FiniteOrthoLattice::new(RawLattice::from_pairs(names, comp, &pairs))
    }

    /// Canonical text: complement pairs listed once, order given by covers.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.elements().map(|e| self.name(e)).collect();
        let _ = writeln!(out, "elements: {}", names.join(" "));
        let comps: Vec<String> = self
            .elements()
            .filter(|&a| a <= self.comp(a))
            .map(|a| format!("{}->{}", self.name(a), self.name(self.comp(a))))
            .collect();
        let _ = writeln!(out, "comp: {}", comps.join(" "));
        for (a, b) in self.covers() {
            let _ = writeln!(out, "le: {} {}", self.name(a), self.name(b));
        }
        out
    }
}
