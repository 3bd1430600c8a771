//! Proof-script files.
//!
//! ```text
//! logic: QL
//! gamma: p0
//! gamma: p0 -3> p1
//! claim: p1
//! 1. p0 ; hyp 0
//! 2. p0 -3> p1 ; hyp 1
//! 3. p1 ; mp 1 2
//! ```
//!
//! Axiom steps read `k. <formula> ; axiom A2 A=<f> B=<f> C=<f>`. The letters
//! `A`, `B`, `C` never occur in formulas, so each `X=` marks where the next
//! substitution starts. `claim:` is optional; `#` starts a comment.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::formula::{parse, Formula};
use crate::Logic;

use super::{Justification, ProofScript, ProofStep, METAVARIABLES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScriptParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ScriptParseError {
    ScriptParseError { line, message: message.into() }
}

fn formula(line: usize, text: &str) -> Result<Formula, ScriptParseError> {
    parse(text.trim()).map_err(|e| err(line, format!("{e} in {:?}", text.trim())))
}

fn substitutions(line: usize, text: &str) -> Result<Vec<Formula>, ScriptParseError> {
    let mut marks: Vec<(usize, usize)> = Vec::new();
    for (pos, c) in text.char_indices() {
        if let Some(slot) = METAVARIABLES.iter().position(|&m| m == c) {
            if text[pos + 1..].starts_with('=') {
                marks.push((slot, pos));
            } else {
                return Err(err(line, format!("stray {c:?} in substitution list")));
            }
        }
    }
    let mut subst: Vec<Option<Formula>> = vec![None; METAVARIABLES.len()];
    for (i, &(slot, pos)) in marks.iter().enumerate() {
        let end = marks.get(i + 1).map_or(text.len(), |&(_, p)| p);
        if subst[slot].is_some() {
            return Err(err(line, format!("{} given twice", METAVARIABLES[slot])));
        }
        subst[slot] = Some(formula(line, &text[pos + 2..end])?);
    }
    if !text[..marks.first().map_or(text.len(), |&(_, p)| p)].trim().is_empty() {
        return Err(err(line, "expected `A=…` after the axiom id"));
    }
    let given = subst.iter().take_while(|s| s.is_some()).count();
    if subst[given..].iter().any(Option::is_some) {
        return Err(err(line, "substitutions must be given for a prefix of A, B, C"));
    }
    Ok(subst.into_iter().flatten().collect())
}

fn index(line: usize, s: Option<&str>) -> Result<usize, ScriptParseError> {
    s.and_then(|t| t.parse().ok()).ok_or_else(|| err(line, "expected a step or hypothesis number"))
}

impl FromStr for ProofScript {
    type Err = ScriptParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut logic = None;
        let mut gamma = Vec::new();
        let mut claim = None;
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("logic:") {
                logic = Some(Logic::from_str(rest).map_err(|e| err(line, e.to_string()))?);
            } else if let Some(rest) = content.strip_prefix("gamma:") {
                gamma.push(formula(line, rest)?);
            } else if let Some(rest) = content.strip_prefix("claim:") {
                claim = Some(formula(line, rest)?);
            } else {
                let (number, rest) =
                    content.split_once('.').ok_or_else(|| err(line, "expected `k. <formula> ; <justification>`"))?;
                let k: usize = number.trim().parse().map_err(|_| err(line, format!("bad step number {number:?}")))?;
                if k != steps.len() + 1 {
                    return Err(err(line, format!("expected step {}, found {k}", steps.len() + 1)));
                }
                let (f, just) =
                    rest.split_once(';').ok_or_else(|| err(line, "missing `;` before the justification"))?;
                let f = formula(line, f)?;
                let just = just.trim();
                let (kind, args) = just.split_once(char::is_whitespace).unwrap_or((just, ""));
                let justification = match kind {
                    "axiom" => {
                        let args = args.trim_start();
                        let (id, subst) = args.split_once(char::is_whitespace).unwrap_or((args, ""));
                        if id.is_empty() {
                            return Err(err(line, "missing axiom id"));
                        }
                        Justification::Axiom { id: id.to_string(), subst: substitutions(line, subst)? }
                    }
                    "hyp" => Justification::Hypothesis(index(line, Some(args.trim()))?),
                    "mp" => {
                        let mut parts = args.split_whitespace();
                        let minor = index(line, parts.next())?;
                        let major = index(line, parts.next())?;
                        if parts.next().is_some() {
                            return Err(err(line, "`mp` takes two step numbers"));
                        }
                        Justification::ModusPonens(minor, major)
                    }
                    other => return Err(err(line, format!("unknown justification {other:?}"))),
                };
                steps.push(ProofStep { formula: f, justification });
            }
        }
        let logic = logic.ok_or_else(|| err(0, "missing `logic:` header"))?;
        for step in &mut steps {
            if let Justification::Axiom { id, .. } = &mut step.justification {
                if let Some(s) = super::schema(logic, id) {
                    id.clone_from(&s.id);
                }
            }
        }
        Ok(ProofScript { logic, gamma, steps, claim })
    }
}

impl ProofScript {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "logic: {}", self.logic);
        for g in &self.gamma {
            let _ = writeln!(out, "gamma: {g}");
        }
        if let Some(c) = &self.claim {
            let _ = writeln!(out, "claim: {c}");
        }
        for (i, step) in self.steps.iter().enumerate() {
            let just = match &step.justification {
                Justification::Axiom { id, subst } => {
                    let short = id.split_once('.').map_or(id.as_str(), |(_, s)| s);
                    let mut s = format!("axiom {short}");
                    for (m, f) in METAVARIABLES.iter().zip(subst) {
                        let _ = write!(s, " {m}={f}");
                    }
                    s
                }
                Justification::Hypothesis(h) => format!("hyp {h}"),
                Justification::ModusPonens(a, b) => format!("mp {a} {b}"),
            };
            let _ = writeln!(out, "{}. {} ; {}", i + 1, step.formula, just);
        }
        out
    }
}
