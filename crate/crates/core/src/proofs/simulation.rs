//! Simulating equational proofs by equivalences.
//!
//! Each step `t = s` of an equational proof is mapped to `t ≡ s` (for
//! orthomodular lattices) or `t ≡₀ s` (for Boolean algebras). The mapped
//! formulas are checked for validity in every weakly orthomodular
//! (respectively weakly distributive) catalog lattice, and the hexagon is
//! used to show that validity of the mapped formula does not give back the
//! original equation.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::formula::{parse, Connective, Formula};
use crate::semantics::{self, equation_counterexample, is_valid};

use super::ScriptParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TargetClass {
    #[serde(rename = "OML")]
    Oml,
    #[serde(rename = "BA")]
    Ba,
}

impl TargetClass {
    pub fn name(self) -> &'static str {
        match self {
            TargetClass::Oml => "OML",
            TargetClass::Ba => "BA",
        }
    }

    /// `t ≡ s` or `t ≡₀ s`.
    pub fn map(self, lhs: &Formula, rhs: &Formula) -> Formula {
        let c = match self {
            TargetClass::Oml => Connective::EquivQ,
            TargetClass::Ba => Connective::Equiv0,
        };
        Formula::sugar(c, lhs.clone(), rhs.clone())
    }

    /// The weak class whose members must validate the mapped equations.
    pub fn model_class(self) -> &'static str {
        match self {
            TargetClass::Oml => "WOML",
            TargetClass::Ba => "WDOL",
        }
    }

    fn admits(self, entry: &CatalogEntry) -> bool {
        match self {
            TargetClass::Oml => entry.flags.is_woml,
            TargetClass::Ba => entry.flags.is_wdol,
        }
    }
}

impl FromStr for TargetClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "OML" => Ok(TargetClass::Oml),
            "BA" => Ok(TargetClass::Ba),
            other => Err(format!("unknown target class {other:?}; expected OML or BA")),
        }
    }
}

/// One equation `lhs = rhs` of an equational proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationalStep {
    pub lhs: Formula,
    pub rhs: Formula,
    pub justification: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationalProof {
    pub target: TargetClass,
    pub steps: Vec<EquationalStep>,
}

/// Lattice terms use only variables, `~`, `v` and `^`.
fn is_term(f: &Formula) -> bool {
    match f {
        Formula::Var(_) => true,
        Formula::Not(a) => is_term(a),
        Formula::Or(a, b) | Formula::Sugar(Connective::Conj, a, b) => is_term(a) && is_term(b),
        Formula::Sugar(..) => false,
    }
}

/// Parses `target: OML|BA` followed by lines `<term> == <term> [; why]`.
pub fn parse_equational(text: &str) -> Result<EquationalProof, ScriptParseError> {
    let err = |line: usize, message: String| ScriptParseError { line, message };
    let mut target = None;
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("target:") {
            target = Some(TargetClass::from_str(rest).map_err(|m| err(line, m))?);
            continue;
        }
        let (equation, justification) = content.split_once(';').unwrap_or((content, ""));
        let (lhs, rhs) = equation.split_once("==").ok_or_else(|| err(line, "expected `<term> == <term>`".into()))?;
        let term = |s: &str| -> Result<Formula, ScriptParseError> {
            let f = parse(s.trim()).map_err(|e| err(line, e.to_string()))?;
            if is_term(&f) {
                Ok(f)
            } else {
                Err(err(line, format!("{f} is not a lattice term (only ~, v, ^ allowed)")))
            }
        };
        steps.push(EquationalStep {
            lhs: term(lhs)?,
            rhs: term(rhs)?,
            justification: justification.trim().to_string(),
        });
    }
    let target = target.ok_or_else(|| err(0, "missing `target:` header".into()))?;
    Ok(EquationalProof { target, steps })
}

impl EquationalProof {
    pub fn to_text(&self) -> String {
        let mut out = format!("target: {}\n", self.target.name());
        for s in &self.steps {
            let _ = write!(out, "{} == {}", s.lhs, s.rhs);
            if !s.justification.is_empty() {
                let _ = write!(out, " ; {}", s.justification);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationStep {
    pub equation: String,
    pub mapped: Formula,
    /// Keys of model-class entries in which the mapped formula is not valid.
    pub failing_models: Vec<String>,
    pub hexagon_mapped_valid: bool,
    /// First hexagon assignment separating the two sides, as `p0=x` items.
    pub hexagon_equation_counterexample: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub target: TargetClass,
    pub models_checked: usize,
    pub steps: Vec<SimulationStep>,
}

impl SimulationReport {
    /// Every mapped formula holds in every model-class entry.
    pub fn mapped_valid_everywhere(&self) -> bool {
        self.steps.iter().all(|s| s.failing_models.is_empty())
    }

    /// The hexagon validates every mapped formula but refutes at least one
    /// of the original equations.
    pub fn hexagon_separates(&self) -> bool {
        self.steps.iter().all(|s| s.hexagon_mapped_valid)
            && self.steps.iter().any(|s| s.hexagon_equation_counterexample.is_some())
    }
}

pub fn simulate_equational(proof: &EquationalProof, catalog: &[CatalogEntry]) -> SimulationReport {
    let target = proof.target;
    let models: Vec<&CatalogEntry> = catalog.iter().filter(|e| target.admits(e)).collect();
    let hexagon = semantics::o6();
    let steps = proof
        .steps
        .iter()
        .map(|step| {
            let mapped = target.map(&step.lhs, &step.rhs);
            let failing_models = models
                .iter()
                .filter(|e| !is_valid(&e.lattice, &mapped).valid)
                .map(|e| e.canonical_key.clone())
                .collect();
            SimulationStep {
                equation: format!("{} == {}", step.lhs, step.rhs),
                hexagon_mapped_valid: is_valid(hexagon, &mapped).valid,
                hexagon_equation_counterexample: equation_counterexample(hexagon, &step.lhs, &step.rhs)
                    .map(|cx| cx.describe(hexagon)),
                mapped,
                failing_models,
            }
        })
        .collect();
    SimulationReport { target, models_checked: models.len(), steps }
}
