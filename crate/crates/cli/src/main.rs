//! `orthologic`: finite ortholattice models, validity checking, proof
//! checking and bounded Lindenbaum quotients from the command line.
//!
//! Exit codes: 0 for an affirmative answer, 1 for a counterexample or a
//! rejected proof, 2 for usage and input errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orthologic::catalog::{ClassPattern, DEFAULT_MAX_SIZE};
use orthologic::lindenbaum::Kind;
use orthologic::Logic;

#[derive(Parser, Debug)]
#[command(
    name = "orthologic",
    version,
    about = "Ortholattice models and proof checking for quantum and classical logic"
)]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and show its forms and measurements.
    Parse(FormulaArg),
    /// Validate a lattice description against the ortholattice laws.
    CheckLattice(LatticeSource),
    /// Print class membership: `ol=1 woml=1 wdol=1 oml=0 ba=0`.
    Classify(ClassifyArgs),
    /// Enumerate ortholattices or search them for a class pattern.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Check that a formula (optionally given premises) is valid in a lattice.
    Validate(ValidateArgs),
    /// Check that premises entail a formula in a lattice.
    Consequence(ConsequenceArgs),
    /// Check classical validity over the two-element algebra.
    Tautology(FormulaArg),
    /// Check validity in every orthomodular lattice (at most two variables).
    OmlValid(FormulaArg),
    /// Check every axiom instance and R1 across the catalog.
    Soundness(SoundnessArgs),
    /// Check a proof script.
    ProveCheck(ProveCheckArgs),
    /// Map an equational proof to equivalences and check them on the catalog.
    Simulate(SimulateArgs),
    /// Build a bounded Lindenbaum quotient and check lattice laws on it.
    Lindenbaum(LindenbaumArgs),
    /// Print the Hasse diagram of a lattice in DOT.
    Hasse(LatticeSource),
}

#[derive(Args, Debug)]
pub struct FormulaArg {
    /// Formula, e.g. "p0 -3> p1" or "(p0 v p1) = (p1 v p0)".
    #[arg(long, short)]
    pub formula: String,
}

/// Where a lattice comes from. `--lattice` tries a file first and falls
/// back to a builtin name.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct LatticeSource {
    /// Lattice file, or a builtin name when no such file exists.
    #[arg(long, short)]
    pub lattice: Option<String>,
    /// Builtin lattice: two, O6, MO2, boolean-N, or A*B for a product.
    #[arg(long, short)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: LatticeSource,
    /// Also check the derived identities.
    #[arg(long)]
    pub identities: bool,
    /// Show the witnesses behind each negative answer.
    #[arg(long)]
    pub details: bool,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// List every ortholattice up to isomorphism, with class flags.
    Enumerate {
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Write one lattice file per entry and an `index.tsv` here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First catalog entry matching a pattern such as `woml,!oml`.
    Witness {
        #[arg(long)]
        pattern: ClassPattern,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
    },
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub source: LatticeSource,
    #[arg(long, short)]
    pub formula: String,
    /// File of premises, one formula per line.
    #[arg(long)]
    pub gamma: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConsequenceArgs {
    #[command(flatten)]
    pub source: LatticeSource,
    /// A premise; repeat for several.
    #[arg(long = "premise", short)]
    pub premises: Vec<String>,
    /// File of premises, one formula per line.
    #[arg(long)]
    pub gamma: Option<PathBuf>,
    #[arg(long, short)]
    pub formula: String,
}

#[derive(Args, Debug)]
pub struct SoundnessArgs {
    #[arg(long)]
    pub logic: Logic,
    #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
    pub max_size: usize,
}

#[derive(Args, Debug)]
pub struct ProveCheckArgs {
    /// Proof script file.
    pub file: PathBuf,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Equational proof file.
    pub file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
    pub max_size: usize,
}

#[derive(Args, Debug)]
pub struct LindenbaumArgs {
    #[arg(long)]
    pub logic: Logic,
    #[arg(long, default_value = "refined")]
    pub kind: Kind,
    #[arg(long, default_value_t = 2)]
    pub vars: usize,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Write the JSON-lines report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() && std::env::args().any(|a| a == "--json") {
                let rendered = e.to_string();
                let first = rendered.lines().next().unwrap_or_default();
                let message = first.strip_prefix("error: ").unwrap_or(first);
                println!("{}", serde_json::json!({ "error": message }));
            }
            e.exit()
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.0 }));
            }
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}
