//! `allperm`: universality checks, LCP tooling, reductions and generators.
//!
//! Exit status is 0 for a positive answer, 1 for a negative one and 2 for
//! any error. Reports go to stdout, diagnostics to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use allperm_core::Limits;
use clap::{Args, Parser, Subcommand};

mod commands;

/// Version string with the tag of the file formats this build reads and writes.
const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (formats: word-1 lcp-1 dimacs-3cnf match-1 layout-1)"
);

#[derive(Parser, Debug)]
#[command(name = "allperm", version = VERSION, about = "Permutation universality of words")]
struct Cli {
    /// Print only the verdict token (or nothing for commands without one).
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(flatten)]
    caps: Caps,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Caps {
    /// Largest alphabet for the exact universality decider.
    #[arg(long, global = true, default_value_t = Limits::default().frontier_max_n)]
    frontier_max_n: usize,
    /// Largest n for n!-enumeration oracles.
    #[arg(long, global = true, default_value_t = Limits::default().oracle_max_n)]
    oracle_max_n: usize,
    /// Largest alphabet for the shortest-universal-word search.
    #[arg(long, global = true, default_value_t = Limits::default().search_max_n)]
    search_max_n: usize,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            frontier_max_n: self.frontier_max_n,
            oracle_max_n: self.oracle_max_n,
            search_max_n: self.search_max_n,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether every permutation of 1..n is a subsequence of the word.
    Check { word: PathBuf },
    /// Like `check`, and name a permutation that is missing.
    Witness { word: PathBuf },
    /// Decide whether every word of length k over 1..n is a subsequence.
    Kcheck {
        #[arg(long)]
        k: usize,
        word: PathBuf,
    },
    /// Length of the shortest universal word over 1..n, with the lexicographically first example.
    Minsearch {
        #[arg(long)]
        n: usize,
        /// Give up above this length.
        #[arg(long)]
        budget: usize,
        /// Worker threads; the result does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Locally Constrained Permutation instances.
    #[command(subcommand)]
    Lcp(LcpCommand),
    /// Reductions from 3-SAT and between permutation problems.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Partially non-crossing perfect matchings.
    #[command(subcommand)]
    Match(MatchCommand),
    /// Seeded random instances.
    ///
    /// The generator is SplitMix64 seeded with the given 64-bit seed. Bounded
    /// draws are `(x * b) >> 64`; shuffles are Fisher-Yates from the last
    /// index down.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand, Debug)]
enum LcpCommand {
    /// Find a solution, or report that none exists.
    Solve { instance: PathBuf },
    /// Check a permutation against the constraints.
    Check {
        instance: PathBuf,
        /// Space-separated values π_1 … π_n.
        #[arg(long)]
        perm: String,
    },
    /// Close every free gap with a dummy position and value.
    Complete {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The word whose non-subsequence permutations are exactly the solutions.
    ToWord {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceCommand {
    /// 3-CNF (DIMACS) to LCP; also writes `<output>.layout`.
    Sat2lcp {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 3-CNF to a word; also writes `<output>.lcp` and `<output>.layout`.
    Sat2word {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// 3-CNF to a prefix-increasing instance, written in LCP format; also
    /// writes `<output>.layout`.
    PipNormal {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Prefix-increasing instance (LCP format) to a matching instance.
    Pip2match {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn a satisfying assignment into a solution, using a layout file.
    Embed {
        layout: PathBuf,
        /// Space-separated 0/1 values for x1 … xm.
        #[arg(long)]
        assignment: String,
    },
    /// Read a satisfying assignment off a solution.
    Extract {
        instance: PathBuf,
        layout: PathBuf,
        #[arg(long)]
        perm: String,
    },
}

#[derive(Subcommand, Debug)]
enum MatchCommand {
    /// Find a matching, or report that none exists.
    Solve { instance: PathBuf },
    /// Check a matching given as `pair i j` lines.
    Verify { instance: PathBuf, matching: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Symbols uniform in 1..n.
    Word {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Each value in each allowed set with probability 1/2; each gap free,
    /// the integer order or a shuffled order with probability 1/3 each.
    Lcp {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Each literal has a uniform variable and is negated with probability 1/2.
    Cnf {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Each edge present with probability 1/2; restricted set of uniform
    /// size 0..=n, drawn as a prefix of a shuffle.
    Match {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Args, Debug)]
struct GenOut {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(answer) => ExitCode::from(answer as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
