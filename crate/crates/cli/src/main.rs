//! `flatfold`: validate, construct and draw flat-folding crease patterns.
//!
//! Every subcommand prints a report (JSON by default, `--format text` for
//! one line per check). Exit status is 0 when all checks pass, 1 on a
//! semantic failure and 2 on unreadable or malformed input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::{Failure, Format};

#[derive(Parser)]
#[command(name = "flatfold", version, about = "Flat-folding crease patterns as plane graphs")]
#[command(after_help = "Examples:
  flatfold fixtures tree-counterexample > tc.json
  flatfold validate tc.json --global
  flatfold fold-tree tree.json --output out/
  flatfold fold-square random --seed 4 --format text
  flatfold render out/pattern.json --wedges --output star.svg")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for `random` inputs.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Largest sheet the exhaustive layer-order search will accept.
    #[arg(long, default_value_t = flatfold_core::layers::DEFAULT_FACE_LIMIT, global = true)]
    limit_faces: usize,
    /// Output directory (fold commands, fixtures) or file (render).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Local checks and connectivity of a pattern or outer pattern.
    ///
    /// Example: flatfold validate star.json --format text
    Validate {
        /// Pattern file, or `-` for stdin.
        input: PathBuf,
        /// Also search for a layer order (sheets up to --limit-faces faces).
        #[arg(long)]
        global: bool,
    },
    /// Realize a plane tree whose internal nodes have even degree >= 4.
    ///
    /// Example: flatfold fold-tree tree.json --output out/
    FoldTree { input: PathBuf },
    /// Plan the folding of a disk with non-crossing chords.
    ///
    /// Example: flatfold fold-disk random --seed 3
    FoldDisk {
        /// Outer-pattern file, `-`, or `random`.
        input: String,
    },
    /// Plan the folding of a square: an outer pattern, or a tree to draw on it.
    ///
    /// Example: flatfold fold-square spider.json
    FoldSquare {
        /// Outer-pattern or tree file, `-`, or `random`.
        input: String,
    },
    /// Realize a dual orthotree by repeated wheel replacement.
    ///
    /// Example: flatfold orthotree spec.json --output out/
    Orthotree { input: PathBuf },
    /// Draw a pattern or outer pattern as SVG.
    ///
    /// Example: flatfold render pattern.json --layering plan.json --output p.svg
    Render {
        input: PathBuf,
        /// Shade gaps wider than the narrowest gap at each vertex.
        #[arg(long)]
        wedges: bool,
        /// Layering or plan file whose stack order labels each face.
        #[arg(long)]
        layering: Option<PathBuf>,
    },
    /// Write a reconstructed example and its expected verdicts.
    ///
    /// Without a name, lists the fixtures. Example: flatfold fixtures no-safe-crease --output fx/
    Fixtures { name: Option<String> },
    /// Vertex and edge connectivity of a pattern's folding graph.
    ///
    /// Example: flatfold connectivity pattern.json
    Connectivity { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            for line in f.message().lines() {
                eprintln!("{line}");
            }
            ExitCode::from(f.code())
        }
    }
}

pub(crate) fn fail_input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}
