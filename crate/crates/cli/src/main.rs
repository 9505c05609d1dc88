//! Command-line front end for the e8trig library.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "e8trig", version, about = "E8 lattices, del Pezzo surfaces and trigonal curves, exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Seed for every randomised choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads for batch inputs.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the 240 roots and report subsystem counts.
    Roots {
        /// Include every root vector.
        #[arg(long)]
        list: bool,
    },
    /// Regularity and discriminant of a character.
    RssCheck {
        /// JSON file, `-` for standard input, or inline JSON.
        input: String,
    },
    /// `Ω ≅ Y/ZΦ∨` for a simply laced type such as `E7`.
    FundamentalGroup { r#type: String },
    /// Move a point (comma-separated coweight coordinates) into the alcove.
    AlcoveNormalize { r#type: String, point: String },
    /// Kac coordinates of the classes of order dividing `m`.
    KacClasses { r#type: String, m: u64 },
    /// Structure checks on the Chevalley basis of e8 and its involution.
    LieVerify {
        #[arg(long, value_enum, default_value = "full")]
        jacobi: JacobiArg,
        /// Number of random triples in sampled mode.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Character to marked trigonal curve; accepts one input or an array.
    Construct {
        /// Pipeline input, or an array of them.
        input: String,
    },
    /// Ramification type of a fiber (default: the marked one).
    Classify {
        /// Curve record as written by `construct`.
        input: String,
        /// `s0,t0`.
        #[arg(long)]
        fiber: Option<String>,
    },
    /// The quadric cone and cubic cutting out the curve in P³.
    CanonicalModel {
        /// Curve record as written by `construct`.
        input: String,
    },
    /// Invariant signature of the ramification form.
    Signature {
        /// Curve record as written by `construct`.
        input: String,
    },
    /// Compare a pipeline run with the run on a Weyl-translated character.
    EquivarianceTest {
        /// Pipeline input.
        input: String,
        /// Simple reflections, 1-based, rightmost applied first, e.g. `3,1,8`.
        #[arg(long)]
        word: Option<String>,
        /// Length of the random word used when `--word` is absent.
        #[arg(long, default_value_t = 3)]
        length: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum JacobiArg {
    Full,
    Sampled,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match commands::run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code);
        }
    };
    let text = match cli.format {
        Format::Json => match serde_json::to_string_pretty(&report.json) {
            Ok(s) => s + "\n",
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        Format::Text => report.text,
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
