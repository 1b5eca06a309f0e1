use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pauli_line::{proj_line, Modulus};
use pauli_line_cli::verify::{self, DRange};
use pauli_line_cli::{dot, parse_vector, points, report, CliError, EXIT_USAGE, EXIT_VERIFICATION};

/// Commutation structure of the single-qudit Pauli group via the projective
/// line over Z_d.
#[derive(Parser)]
#[command(name = "pauli-line", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factorization, line size, degree layers and optional per-vector counts.
    Analyze {
        d: u64,
        /// Query vector `b,c` (reduced mod d).
        #[arg(long, value_parser = parse_vector)]
        vector: Option<(u64, u64)>,
        #[arg(long)]
        json: bool,
        /// Emit the layer diagram instead of the report.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Cap on enumerated points (listing) or nodes (with --dot).
        #[arg(long)]
        budget: Option<u128>,
    },
    /// List the points of P1(Z_d) by canonical generator.
    Points {
        d: u64,
        #[arg(long)]
        json: bool,
        /// Cap on the number of points.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Check every closed form against enumeration for d in a range like 2..60.
    Verify {
        range: DRange,
        /// Include the dense-matrix identity sweep (d <= 16).
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        json: bool,
        /// Cap on d² for the largest d in the range.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Graphviz diagram of the degree layers and the points through them.
    LayersDot {
        d: u64,
        /// Cap on the number of nodes (d²).
        #[arg(long)]
        budget: Option<u128>,
    },
}

struct Output {
    stdout: String,
    failure: Option<String>,
}

impl From<String> for Output {
    fn from(stdout: String) -> Self {
        Output {
            stdout,
            failure: None,
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn execute(command: Command) -> Result<Output, CliError> {
    match command {
        Command::Analyze {
            d,
            vector,
            json: as_json,
            dot: as_dot,
            budget,
        } => {
            let m = Modulus::new(d)?;
            if as_dot {
                return Ok(dot::layers_dot(&m, budget.unwrap_or(dot::DEFAULT_NODE_BUDGET))?.into());
            }
            let r = report::analyze(&m, vector, budget.unwrap_or(report::DEFAULT_LISTING_BUDGET))?;
            Ok(if as_json { json(&r)? } else { report::render_text(&r) }.into())
        }
        Command::Points {
            d,
            json: as_json,
            budget,
        } => {
            let m = Modulus::new(d)?;
            let l = points::list(&m, budget.unwrap_or(proj_line::POINT_ENUMERATION_CAP))?;
            Ok(if as_json { json(&l)? } else { points::render_text(&l) }.into())
        }
        Command::Verify {
            range,
            matrix,
            json: as_json,
            budget,
        } => {
            let s = verify::run(range, matrix, budget.unwrap_or(verify::DEFAULT_SWEEP_BUDGET))?;
            let stdout = if as_json { json(&s)? } else { verify::render_text(&s) };
            Ok(Output {
                stdout,
                failure: s.first_failure,
            })
        }
        Command::LayersDot { d, budget } => {
            let m = Modulus::new(d)?;
            Ok(dot::layers_dot(&m, budget.unwrap_or(dot::DEFAULT_NODE_BUDGET))?.into())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            match out.failure {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("counterexample: {msg}");
                    ExitCode::from(EXIT_VERIFICATION)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
