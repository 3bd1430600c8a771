//! Finite ortholattice models and Hilbert-style proof checking for quantum
//! logic (QL) and classical logic (CL).
//!
//! The crate is organised bottom-up:
//!
//! - [`formula`]: the wff language over `¬`, `∨` with sugared connectives.
//! - [`lattice`]: validated finite ortholattices and the WOML / WDOL / OML /
//!   Boolean class predicates.
//! - [`catalog`]: enumeration of all ortholattices up to ten elements modulo
//!   isomorphism.
//! - [`semantics`]: valuations, validity, consequence and soundness sweeps.
//! - [`proofs`]: axiom schemata, proof scripts, and the equational-proof
//!   simulation.
//! - [`lindenbaum`]: bounded Lindenbaum quotients under the refined
//!   (O6-conjoined) and standard congruences.

pub mod catalog;
pub mod formula;
pub mod lattice;
pub mod lindenbaum;
pub mod proofs;
pub mod semantics;
pub mod sigspace;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use catalog::{CatalogEntry, ClassPattern};
pub use formula::{Connective, Formula, ParseError};
pub use lattice::{ClassFlags, Elem, FiniteOrthoLattice, LatticeError};
pub use semantics::{Counterexample, Valuation, Verdict};

/// The two deductive systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Logic {
    /// Kalmbach's quantum logic, A1–A15 with R1 over `→₃`.
    #[serde(rename = "QL")]
    Quantum,
    /// The Principia system, A1–A4 with R1 over `→₀`.
    #[serde(rename = "CL")]
    Classical,
}

impl Logic {
    pub fn name(self) -> &'static str {
        match self {
            Logic::Quantum => "QL",
            Logic::Classical => "CL",
        }
    }

    /// The implication Modus Ponens detaches along.
    pub fn detachment(self) -> Connective {
        match self {
            Logic::Quantum => Connective::Imp3,
            Logic::Classical => Connective::Imp0,
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown logic {0:?}; expected QL or CL")]
pub struct UnknownLogic(pub String);

impl FromStr for Logic {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "QL" => Ok(Logic::Quantum),
            "CL" => Ok(Logic::Classical),
            _ => Err(UnknownLogic(s.to_string())),
        }
    }
}
