use std::fmt::Write as _;

use orthologic::{Counterexample, FiniteOrthoLattice};
use serde_json::{json, Value};

/// What a command produced: an exit code of 0 or 1 and both renderings.
pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn new(affirmative: bool, text: String, json: Value) -> Self {
        Outcome { code: if affirmative { 0 } else { 1 }, text, json }
    }
}

/// Usage or input problem; exits with 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl Failure {
    pub fn new(message: impl Into<String>) -> Self {
        Failure(message.into())
    }
}

pub type CmdResult = Result<Outcome, Failure>;

pub fn counterexample_json(l: &FiniteOrthoLattice, cx: &Counterexample) -> Value {
    let assignment: Vec<Value> =
        cx.assignment.iter().map(|&(v, e)| json!({ "var": format!("p{v}"), "element": l.name(e) })).collect();
    json!({ "assignment": assignment, "value": l.name(cx.value) })
}

/// `p0=x` lines followed by the value the formula took.
pub fn counterexample_text(out: &mut String, l: &FiniteOrthoLattice, cx: &Counterexample) {
    for line in cx.describe(l) {
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "value: {}", l.name(cx.value));
}

pub fn bit(b: bool) -> u8 {
    u8::from(b)
}
