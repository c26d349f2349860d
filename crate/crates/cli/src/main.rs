//! `khseq`: generate hybrid Kronecker-Halton point sets over `F_p` and run
//! the distribution experiments.
//!
//! Exit codes: 0 pass, 1 experiment failed, 2 invalid configuration,
//! 3 precision or size cap exhausted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Seed used by the Monte Carlo experiments unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser, Debug)]
#[command(name = "khseq", version, about = "Low-discrepancy sequences over prime fields")]
pub struct Cli {
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the first N points of a hybrid sequence as CSV.
    Gen(GenArgs),
    /// Print the certified continued fraction of a series.
    Cf(CfArgs),
    /// Run one of the distribution experiments.
    Verify(VerifyArgs),
    /// Exact star discrepancy of a CSV dump or of an inline sequence.
    Disc(DiscArgs),
}

/// Sequence selection shared by `gen`, `disc` and some experiments.
#[derive(Args, Debug, Clone)]
pub struct SeqArgs {
    /// Field characteristic.
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Kronecker coordinate series (repeatable): gap2, random:<seed>,
    /// rational:<P>/<Q> or cf:<A1>,<A2>,...
    #[arg(long = "kronecker")]
    pub kronecker: Vec<String>,
    /// Halton base polynomial (repeatable), e.g. X or X^2+X+1.
    #[arg(long = "halton")]
    pub halton: Vec<String>,
    /// Digits per coordinate (default: ceil(log_p N) + 20).
    #[arg(long)]
    pub prec: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Number of points.
    #[arg(long)]
    pub n: u64,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CfArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    #[arg(long)]
    pub series: String,
    /// Quotients to certify (default: the whole expansion for rational
    /// series, 10 otherwise).
    #[arg(long)]
    pub terms: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Thm1,
    Thm2,
    Thm3,
    Prop1,
    Prop2,
    Lemma3,
    Lemma4,
    Lemma56,
    Example2,
    Nets,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub target: Target,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Kronecker series.
    #[arg(long, default_value = "gap2")]
    pub series: String,
    /// Halton bases (repeatable, default X).
    #[arg(long = "halton")]
    pub halton: Vec<String>,
    /// Multiplier polynomial for prop1, base for lemma4.
    #[arg(long = "B", default_value = "X")]
    pub b: String,
    /// Witness level for thm3 (1..=3).
    #[arg(long, default_value_t = 2)]
    pub level: u32,
    /// Largest m for prop1, example2, nets and lemma5.
    #[arg(long, default_value_t = 12)]
    pub mmax: usize,
    /// N for prop2.
    #[arg(long, default_value_t = 1024)]
    pub n: u64,
    /// Comma-separated N list for thm2.
    #[arg(long, value_delimiter = ',', default_values_t = [16u64, 32, 64, 128, 256, 512, 1024, 2048, 4096])]
    pub nlist: Vec<u64>,
    /// Cylinder quotients for lemma3, comma-separated.
    #[arg(long, default_value = "X,X")]
    pub cyl: String,
    /// Maximal resolution for thm1.
    #[arg(long, default_value_t = 3)]
    pub dmax: u32,
    /// Maximal Halton level for thm1.
    #[arg(long, default_value_t = 2)]
    pub lmax: u32,
    /// Residue blocks per interval for thm1.
    #[arg(long, default_value_t = 4)]
    pub blocks: u64,
    /// Sample count (default 100000 for lemma3 and lemma4, 200 for lemma56).
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Leading-coefficient positions tested by lemma4.
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    /// Coefficient budget per sample for lemma3.
    #[arg(long, default_value_t = 32)]
    pub budget: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalize {
    Sqrtlog,
}

#[derive(Args, Debug)]
pub struct DiscArgs {
    /// CSV dump written by `gen`.
    #[arg(long = "in", conflicts_with_all = ["kronecker", "halton"])]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Prefix sizes, comma-separated (default: all points of the dump).
    #[arg(long, value_delimiter = ',')]
    pub nlist: Vec<u64>,
    /// Add the column N D*_N / (sqrt(N) max(ln N, 1)^{t+1}).
    #[arg(long)]
    pub normalize: Option<Normalize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
    }
}
