use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "opalg", version, about = "Operator algebra toolkit: factorization, ideals, C*-segments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// JSON document of named entries; repeat to merge several files.
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,

    /// Entries to operate on, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub names: Vec<String>,

    /// Residual tolerance for matrix commands, tail/gap tolerance for
    /// sequence commands. Overrides OPALG_TOL.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Truncation depth for sequence inputs.
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    /// Write the command's output entries to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Coefficient entries for seg-reduce / seg-replay.
    #[arg(long, global = true, value_delimiter = ',')]
    pub coeffs: Vec<String>,

    /// Name of the program entry for seg-replay.
    #[arg(long, global = true, default_value = "program")]
    pub program: String,

    /// Generators of the first *-subalgebra (ideal-intersect).
    #[arg(long, global = true, value_delimiter = ',')]
    pub r1: Vec<String>,

    /// Generators of the second *-subalgebra (ideal-intersect).
    #[arg(long, global = true, value_delimiter = ',')]
    pub r2: Vec<String>,

    /// Output size n of the matrix range W_n(T).
    #[arg(long, global = true)]
    pub dim: Option<usize>,

    /// Number of Kraus operators per sample.
    #[arg(long, global = true)]
    pub kraus: Option<usize>,

    /// Number of samples, or number of generators for ideal-countable.
    #[arg(long, global = true)]
    pub count: Option<usize>,

    /// Number m of diagonal blocks (diag-blocks).
    #[arg(long, global = true)]
    pub block_count: Option<usize>,

    /// Block size n (diag-blocks).
    #[arg(long, global = true)]
    pub block_size: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Factor A = C·B when ker B ⊆ ker A.
    Factor,
    /// Partial-isometry factor for A*A = B*B.
    FactorIsometric,
    /// Smallest λ with A*A ≤ λ²·B*B.
    Lambda,
    /// Polar decomposition A = V·P.
    Polar,
    /// Whether the left ideal generated by A lies in the one generated by B.
    IdealContains,
    /// Positive generator of the sum of principal left ideals.
    IdealGen,
    /// Truncated generator of a countably generated left ideal.
    IdealCountable,
    /// Compare (R1 ∩ R2)A with R1A ∩ R2 and R1A ∩ R2A.
    IdealIntersect,
    /// Isolated-zero test for a matrix or a sequence.
    WoClosed,
    /// Quotient h with f = h·g on the convergent sequence.
    SeqDfp,
    /// Weak polar factor of f, or the quotient route through polar factors of f and g.
    SeqWpdp,
    /// Reduce a three-term partition of unity to nested two-term ones.
    SeqReduce,
    /// Rewrite a C*-convex combination as a two-term segment program.
    SegReduce,
    /// Evaluate a segment program.
    SegReplay,
    /// Sample the matrix range W_n(T).
    RangeSample,
    /// Certify diagonal blocks of a normal matrix as C*-convex combinations.
    DiagBlocks,
    /// Rank statistics of the segment joining diag(1, 0) and 0 in M_2.
    SegmentDemo,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Factor => "factor",
            Command::FactorIsometric => "factor-isometric",
            Command::Lambda => "lambda",
            Command::Polar => "polar",
            Command::IdealContains => "ideal-contains",
            Command::IdealGen => "ideal-gen",
            Command::IdealCountable => "ideal-countable",
            Command::IdealIntersect => "ideal-intersect",
            Command::WoClosed => "wo-closed",
            Command::SeqDfp => "seq-dfp",
            Command::SeqWpdp => "seq-wpdp",
            Command::SeqReduce => "seq-reduce",
            Command::SegReduce => "seg-reduce",
            Command::SegReplay => "seg-replay",
            Command::RangeSample => "range-sample",
            Command::DiagBlocks => "diag-blocks",
            Command::SegmentDemo => "segment-demo",
        }
    }
}
