use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

use commands::Failure;

/// Trace-free character slices, ghost characters and branched-cover
/// presentations of knots given as braid closures.
#[derive(Parser, Debug)]
#[command(name = "ghostchar", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Braid word, `m: s1 s2 ...` (negative letters are inverse generators)
    /// or `torus p q`.
    #[arg(long)]
    pub braid: String,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(clap::Args, Debug, Clone)]
pub struct SliceArgs {
    /// Keep all pair variables instead of identifying closure-symmetric ones.
    #[arg(long)]
    pub no_symmetry: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arcs, crossings and Wirtinger relators of the braid closure.
    Diagram {
        #[command(flatten)]
        common: Common,
    },
    /// Defining equations of F2 in pair variables over the left-edge arcs.
    F2 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        slice: SliceArgs,
    },
    /// Points of F2.
    Solve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        slice: SliceArgs,
    },
    /// Classify every point of F2 and report ghost characters.
    #[command(alias = "find")]
    Ghosts {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        slice: SliceArgs,
        /// Check every 4-subset of arcs, not only rectangles on arcs 1, 2, a, b.
        #[arg(long)]
        all_rectangles: bool,
    },
    /// Presentation of the fundamental group of the 2-fold branched cover.
    Cover {
        #[command(flatten)]
        common: Common,
        /// Drop the relator of the crossing creating this arc instead of the last one.
        #[arg(long)]
        drop: Option<usize>,
    },
    /// Verify an SL2(C) representation of the cover group and map its traces into F2.
    Repcheck {
        #[command(flatten)]
        common: Common,
        /// Representation JSON: {"generators": {"x": [[re, im], x4 row-major], ...}}.
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        rep: Option<PathBuf>,
        /// Built-in representation of the (4,5) torus knot cover:
        /// alpha0, alpha1, diag0..diag4, beta++, beta+-, beta-+, beta--.
        #[arg(long)]
        builtin: Option<String>,
        /// Residual and snapping tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Evaluate with this many fractional bits instead of double precision.
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Cover character coordinates of each point of F2.
    Phihat {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        slice: SliceArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Diagram { common } => commands::diagram(&common),
        Command::F2 { common, slice } => commands::f2(&common, &slice),
        Command::Solve { common, slice } => commands::solve(&common, &slice),
        Command::Ghosts { common, slice, all_rectangles } => commands::ghosts(&common, &slice, all_rectangles),
        Command::Cover { common, drop } => commands::cover(&common, drop),
        Command::Repcheck { common, rep, builtin, tolerance, precision } => {
            commands::repcheck(&common, rep.as_deref(), builtin.as_deref(), tolerance, precision)
        }
        Command::Phihat { common, slice } => commands::phihat(&common, &slice),
    };
    match result {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Math { report, error }) => {
            if let Some(r) = report {
                emit(&r);
            }
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}

/// Prints to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}
