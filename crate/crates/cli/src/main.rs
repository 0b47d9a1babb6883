mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{RunReport, Verdict};

/// Exact checks for non-spreading witnesses in permutation groups.
#[derive(Debug, Parser)]
#[command(name = "diagspread", version)]
pub struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Override every enumeration cap (elements, set orbits, automorphism search).
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a catalog group.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Character tables.
    #[command(subcommand)]
    Chartab(ChartabCmd),
    /// Witness construction and verification.
    #[command(subcommand)]
    Spreading(SpreadingCmd),
    /// Orbit counts on cosets.
    #[command(subcommand)]
    Orbits(OrbitsCmd),
    /// Two-point stabilizers.
    #[command(subcommand)]
    Basesize(BasesizeCmd),
}

/// Where the group comes from.
#[derive(Debug, Clone, Args)]
pub struct GroupArg {
    /// Catalog name, e.g. A5, PSL(2,7), M11.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub group: Option<String>,
    /// Group-spec JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

/// A subgroup `A` and a normal subgroup `B` of `A`, by name or as inline
/// JSON generator lists.
#[derive(Debug, Clone, Args)]
pub struct PairArg {
    #[arg(long = "A", value_name = "SUBGROUP")]
    pub a: String,
    #[arg(long = "B", value_name = "SUBGROUP")]
    pub b: String,
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Degree, order and named subgroups.
    Info(GroupArg),
    /// Conjugacy classes with their labels.
    Classes(GroupArg),
    /// The automorphism group.
    Aut(GroupArg),
}

#[derive(Debug, Subcommand)]
pub enum ChartabCmd {
    /// Irreducible characters, with orthogonality and class-algebra checks.
    Compute(GroupArg),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    #[value(name = "T")]
    T,
    #[value(name = "Aut")]
    Aut,
}

#[derive(Debug, Subcommand)]
pub enum SpreadingCmd {
    /// Verify a pair (X, J) by enumerating the orbit of X.
    VerifyWitness {
        #[command(flatten)]
        group: GroupArg,
        /// Witness JSON file with "set" and "multiset".
        #[arg(long, conflicts_with_all = ["set", "multiset"])]
        witness: Option<PathBuf>,
        /// Point set X as a JSON list.
        #[arg(long, requires = "multiset")]
        set: Option<String>,
        /// Multiset J as a JSON object {"point": multiplicity}.
        #[arg(long, requires = "set")]
        multiset: Option<String>,
        /// Check on the diagonal group W(T), points being elements of T.
        #[arg(long)]
        diagonal: bool,
    },
    /// Run the block construction for B ⊴ A ≤ G in the given action.
    AbCheck {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        pair: PairArg,
        /// The point omega1.
        #[arg(long, default_value_t = 0)]
        omega1: usize,
        /// Point set X as a JSON list.
        #[arg(long)]
        set: String,
    },
    /// The block construction on W(T) with X = A.
    DiagonalWitness {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        pair: PairArg,
    },
    /// Check A = B (A ∩ A^tau) for tau in T or in Aut(T).
    Supplement {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        pair: PairArg,
        #[arg(long, value_enum, default_value = "T")]
        scope: ScopeArg,
    },
    /// Test classes (r, s1, s2) with characters and verify the witness on W(T).
    CharWitness {
        #[command(flatten)]
        group: GroupArg,
        /// Class label of r, e.g. 3A.
        #[arg(long)]
        r: String,
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
    /// List all class triples passing the character test.
    CharSearch(GroupArg),
}

#[derive(Debug, Subcommand)]
pub enum OrbitsCmd {
    /// Orbit counts of A and B on the cosets of A; verified when they agree.
    Count {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        pair: PairArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum BasesizeCmd {
    /// Find t with A ∩ A^t = 1.
    TwoCheck {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "A", value_name = "SUBGROUP")]
        a: String,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = commands::run(&cli);
    let report = RunReport::new(argv[1..].to_vec(), outcome, start.elapsed());
    report.print(cli.json);
    ExitCode::from(match report.verdict {
        Verdict::Verified => 0,
        Verdict::Refuted => 1,
        Verdict::Error => 2,
    })
}
