use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use sring_core::harness::{StatementId, Variant};
use sring_core::lattice::DEFAULT_IDEAL_CAP;

#[derive(Debug, Parser)]
#[command(
    name = "sring",
    version,
    about = "Finite commutative rings with a multiplicative set"
)]
pub struct Cli {
    /// Largest ring that may be built from an input file.
    #[arg(long, global = true, default_value_t = 4096)]
    pub size_cap: usize,
    /// Largest ideal lattice that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_IDEAL_CAP)]
    pub ideal_cap: usize,
    /// Record wall-clock times (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Indent single-document output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one predicate on a ring file.
    Check {
        property: Property,
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List the S-prime ideals with their witnesses.
    Spectrum { input: PathBuf },
    /// Compute the localization at S.
    Localize { input: PathBuf },
    /// Summarize a ring file.
    Describe { input: PathBuf },
    /// Run catalog statements over a corpus.
    #[command(group(ArgGroup::new("which").required(true).args(["all", "statement"])))]
    Verify {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        statement: Vec<StatementId>,
        /// Directory of ring files to use instead of the built-in corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random instances appended to the curated ones.
        #[arg(long, default_value_t = 30)]
        count: usize,
        #[arg(long, default_value_t = 64)]
        max_size: usize,
        #[arg(long, default_value = "full")]
        variant: Variant,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        /// Write JSON lines here; the summary table then goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for instances violating a statement and shrink the smallest.
    Search {
        #[arg(long)]
        statement: StatementId,
        #[arg(long, default_value = "drop-hypothesis")]
        variant: Variant,
        #[arg(long, default_value_t = 64)]
        max_size: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Fresh random instances scanned after the corpus.
        #[arg(long, default_value_t = 100)]
        fresh: usize,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Reduced,
    #[value(name = "s-reduced")]
    SReduced,
    #[value(name = "u-s-reduced")]
    USReduced,
    #[value(name = "s-integral-domain")]
    SIntegralDomain,
    #[value(name = "s-pf")]
    SPf,
    #[value(name = "s-strongly-hopfian")]
    SStronglyHopfian,
    #[value(name = "u-s-armendariz")]
    USArmendariz,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Reduced => "reduced",
            Property::SReduced => "s-reduced",
            Property::USReduced => "u-s-reduced",
            Property::SIntegralDomain => "s-integral-domain",
            Property::SPf => "s-pf",
            Property::SStronglyHopfian => "s-strongly-hopfian",
            Property::USArmendariz => "u-s-armendariz",
        }
    }
}

/// Only used by `u-s-armendariz`.
#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Force sampled search even when exhaustive search fits the budget.
    #[arg(long)]
    pub sampled: bool,
}
