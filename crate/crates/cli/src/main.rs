//! `thue`: build graphs, run the path and tree constructions, verify
//! colorings, search for optimal ones, and analyze words.
//!
//! Exit codes: 0 success or verified, 1 witness found (or no sequence),
//! 2 malformed input, 3 search budget exhausted.

mod commands;
mod error;
mod graph_spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thue_core::graphs::InnerKind;

use commands::{Construction, GenKind, Mode, SeqAction, SolveArgs, VerifyArgs};
use error::CliError;

#[derive(Parser)]
#[command(name = "thue", version, about = "Nonrepetitive graph coloring toolkit")]
struct Cli {
    /// Node budget for searches.
    #[arg(long, global = true, env = "THUE_NODE_BUDGET", default_value_t = 100_000_000)]
    max_nodes: u64,

    /// Worker threads for path verification.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Inner {
    Empty,
    Complete,
}

impl From<Inner> for InnerKind {
    fn from(i: Inner) -> Self {
        match i {
            Inner::Empty => InnerKind::Empty,
            Inner::Complete => InnerKind::Complete,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph as JSON (and optionally DOT).
    Gen {
        #[command(subcommand)]
        kind: GenCmd,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, global = true)]
        dot: Option<PathBuf>,
    },
    /// Write one of the explicit colorings as JSON.
    Color {
        #[command(subcommand)]
        construction: ColorCmd,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a coloring for repetitively colored paths.
    Verify {
        /// Graph JSON file or graph spec such as `path:6`.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        coloring: PathBuf,
        /// Largest path order to check.
        #[arg(long, conflicts_with = "exact")]
        bound: Option<usize>,
        /// Check every path of the graph.
        #[arg(long)]
        exact: bool,
        /// Also require every product layer to be rainbow.
        #[arg(long)]
        rainbow: bool,
        /// Also check non-boring walks up to this many vertices.
        #[arg(long)]
        walks: Option<usize>,
        /// Witness report file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact search for Thue numbers and feasibility.
    Solve {
        /// `path:N`, `cycle:N`, `complete:N`, `tree:a,b,d`, `g0` or a JSON file.
        graph: String,
        #[arg(long, value_enum, default_value = "thue")]
        mode: ModeArg,
        #[arg(long, value_enum)]
        inner: Option<Inner>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        /// Decide feasibility for this palette instead of optimizing.
        #[arg(long)]
        q: Option<usize>,
        /// Wall-clock budget in seconds.
        #[arg(long, default_value_t = 600.0)]
        time_limit: f64,
        #[arg(long, default_value_t = 64)]
        palette_cap: usize,
    },
    /// Square-free word tools.
    Seq {
        #[command(subcommand)]
        action: SeqCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Thue,
    Rainbow,
    Tuple,
}

#[derive(Subcommand)]
enum GenCmd {
    Path {
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Rooted tree: root children, children of other internal vertices, leaf depth.
    Tree {
        #[arg(long)]
        root_children: usize,
        #[arg(long)]
        children: usize,
        #[arg(long)]
        depth: usize,
    },
    G0,
    Product {
        #[arg(long)]
        base: String,
        #[arg(long, value_enum)]
        inner: Inner,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum ColorCmd {
    PathEmpty {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    PathRainbow {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    PathComplete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    TreeComplete {
        /// `root_children,children,depth`
        #[arg(long)]
        tree: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 12)]
        check_bound: usize,
    },
    C7Fractional,
}

#[derive(Subcommand)]
enum SeqCmd {
    Gen {
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        palindrome_free: bool,
        #[arg(long)]
        json: bool,
    },
    Check {
        /// Letters `A..Z`, or a sequence JSON file.
        word: String,
        #[arg(long)]
        sigma: Option<usize>,
    },
    Gaps {
        word: String,
        #[arg(long)]
        sigma: Option<usize>,
    },
    Enumerate {
        #[arg(long)]
        len: usize,
        #[arg(long)]
        maxrep: usize,
        #[arg(long, default_value_t = 3)]
        sigma: usize,
    },
    Kozik {
        #[arg(long)]
        len: usize,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let budget = cli.max_nodes;
    match cli.command {
        Command::Gen { kind, out, dot } => {
            let kind = match kind {
                GenCmd::Path { n } => GenKind::Path(n),
                GenCmd::Cycle { n } => GenKind::Cycle(n),
                GenCmd::Tree { root_children, children, depth } => {
                    GenKind::Tree(format!("{root_children},{children},{depth}"))
                }
                GenCmd::G0 => GenKind::G0,
                GenCmd::Product { base, inner, k } => GenKind::Product { base, inner: inner.into(), k },
            };
            commands::gen(kind, out.as_ref(), dot.as_ref())
        }
        Command::Color { construction, out } => {
            let what = match construction {
                ColorCmd::PathEmpty { n, k } => Construction::PathEmpty { n, k },
                ColorCmd::PathRainbow { n, k } => Construction::PathRainbow { n, k },
                ColorCmd::PathComplete { n, k } => Construction::PathComplete { n, k },
                ColorCmd::TreeComplete { tree, k, check_bound } => Construction::TreeComplete {
                    tree,
                    k,
                    check_bound,
                    limits: commands::solve_limits(budget, 600.0, 64)?,
                },
                ColorCmd::C7Fractional => Construction::C7Fractional,
            };
            commands::color(what, out.as_ref())
        }
        Command::Verify { graph, coloring, bound, exact, rainbow, walks, out } => commands::verify(VerifyArgs {
            graph,
            coloring,
            bound,
            exact,
            rainbow,
            walks,
            out,
            node_budget: budget,
        }),
        Command::Solve { graph, mode, inner, k, p, q, time_limit, palette_cap } => {
            let mode = match mode {
                ModeArg::Thue => Mode::Thue,
                ModeArg::Rainbow => Mode::Rainbow,
                ModeArg::Tuple => Mode::Tuple,
            };
            commands::solve(SolveArgs {
                graph,
                mode,
                inner: inner.map(Into::into),
                k,
                p,
                q,
                limits: commands::solve_limits(budget, time_limit, palette_cap)?,
            })
        }
        Command::Seq { action } => {
            let action = match action {
                SeqCmd::Gen { sigma, len, palindrome_free, json } => {
                    SeqAction::Gen { sigma, len, palindrome_free, json }
                }
                SeqCmd::Check { word, sigma } => SeqAction::Check { word, sigma },
                SeqCmd::Gaps { word, sigma } => SeqAction::Gaps { word, sigma },
                SeqCmd::Enumerate { len, maxrep, sigma } => SeqAction::Enumerate { sigma, len, maxrep },
                SeqCmd::Kozik { len } => SeqAction::Kozik { len },
            };
            commands::seq(action, budget)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
