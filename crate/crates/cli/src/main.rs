//! `gfan`: g-vector fans, finite type and witnesses from the command line.

mod human;
mod input;

use std::fs;
use std::io::Write;
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gfan_core::json::*;
use gfan_core::svg::render_rank2;
use gfan_core::{
    build_fan, decide_finite_type, find_witness, verify_witness, Error, Rank2Params,
    SeedEnumerator, DEFAULT_CLASS_BUDGET, DEFAULT_SEED_BUDGET,
};
use serde_json::{json, Value};

use crate::input::{read_source, MatrixInput};

#[derive(Parser)]
#[command(
    name = "gfan",
    version,
    about = "Exact g-vector fans of skew-symmetrizable matrices"
)]
struct Cli {
    /// Print tables instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    /// Write the result to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate an exchange matrix (n x n) or extended matrix (2n x n).
    Mutate {
        /// Matrix as inline JSON, @file.json, or - for standard input.
        matrix: Option<String>,
        /// Mutation directions, 1-based, applied left to right.
        #[arg(long, short, value_delimiter = ',', required = true)]
        k: Vec<usize>,
    },
    /// Decide finite type by searching the mutation class.
    Classify {
        matrix: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CLASS_BUDGET)]
        budget: usize,
    },
    /// Enumerate g-vector seeds breadth-first.
    Enumerate {
        matrix: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED_BUDGET)]
        budget: usize,
        /// Stop at this mutation distance from the initial seed.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Build the fan of a seed set produced by `enumerate`.
    Fan { seeds: Option<String> },
    /// Test a fan for completeness by facet pairing.
    CheckComplete { fan: Option<String> },
    /// Test whether every lattice point of [-R, R]^n lies in the fan.
    LatticeCover {
        fan: Option<String>,
        #[arg(long, default_value_t = 6)]
        radius: u32,
    },
    /// Produce a lattice point outside the fan, with certificate.
    Witness {
        matrix: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CLASS_BUDGET)]
        budget: usize,
    },
    /// Recheck a certificate produced by `witness`.
    Verify {
        certificate: Option<String>,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Draw the fan of B_{b,c} = [[0, c], [-b, 0]] as SVG.
    PlotRank2 {
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        /// Rays per side for infinite type.
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

/// A failed run: exit code plus message.
pub struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            kind: "invalid_input",
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            kind: "invariant_violation",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure {
                code: 2,
                kind: "budget_exceeded",
                message: e.to_string(),
            },
            other => Failure::invalid(other.to_string()),
        }
    }
}

/// Output of a subcommand: the JSON document, its human rendering, and an
/// exit code for results that are valid but negative.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            code: 0,
        }
    }
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Mutate { matrix, k } => {
            let path = one_based(&k)?;
            match MatrixInput::parse(&read_source(matrix.as_deref())?)? {
                MatrixInput::Exchange(b) => {
                    let m = b.mutate_along(&path)?;
                    Ok(Output::new(
                        exchange_matrix_to_json(&m),
                        human::matrix(m.matrix()),
                    ))
                }
                MatrixInput::Extended(c) => {
                    let m = path.iter().try_fold(c, |m, &k| m.mutate(k))?;
                    Ok(Output::new(
                        extended_matrix_to_json(&m),
                        human::matrix(m.matrix()),
                    ))
                }
            }
        }
        Command::Classify { matrix, budget } => {
            let b = MatrixInput::exchange(matrix.as_deref())?;
            let verdict = decide_finite_type(&b, budget)?;
            if !verdict.replays_on(&b) {
                return Err(Failure::invariant("infinite verdict does not replay"));
            }
            Ok(Output::new(
                verdict_to_json(&verdict),
                human::verdict(&b, &verdict),
            ))
        }
        Command::Enumerate {
            matrix,
            budget,
            depth,
        } => {
            let b = MatrixInput::exchange(matrix.as_deref())?;
            let mut enumerator = SeedEnumerator::new(&b).budget(budget);
            if let Some(d) = depth {
                enumerator = enumerator.max_depth(d);
            }
            let graph = enumerator.run()?;
            if let Some(bad) = graph
                .seeds()
                .iter()
                .position(|s| !s.is_unimodular() || !s.is_sign_coherent())
            {
                return Err(Failure::invariant(format!(
                    "seed {bad} fails unimodularity or sign-coherence"
                )));
            }
            Ok(Output::new(
                seed_graph_to_json(&graph),
                human::seed_graph(&graph),
            ))
        }
        Command::Fan { seeds } => {
            let graph = seed_graph_from_json(&input::json(seeds.as_deref())?)?;
            let fan = build_fan(&graph)?;
            Ok(Output::new(fan_to_json(&fan), human::fan(&fan)))
        }
        Command::CheckComplete { fan } => {
            let fan = fan_from_json(&input::json(fan.as_deref())?)?;
            let report = fan.check_complete();
            Ok(Output::new(
                completeness_to_json(&report, &fan),
                human::completeness(&report, &fan),
            ))
        }
        Command::LatticeCover { fan, radius } => {
            let fan = fan_from_json(&input::json(fan.as_deref())?)?;
            let cover = fan.lattice_cover(radius);
            Ok(Output::new(
                lattice_cover_to_json(&cover, radius),
                human::lattice_cover(&cover, fan.dim(), radius),
            ))
        }
        Command::Witness { matrix, budget } => {
            let b = MatrixInput::exchange(matrix.as_deref())?;
            let outcome = find_witness(&b, budget)?;
            Ok(Output::new(
                witness_outcome_to_json(&outcome),
                human::witness(&outcome),
            ))
        }
        Command::Verify { certificate, depth } => {
            let cert = certificate_from_json(&input::json(certificate.as_deref())?)?;
            let report = verify_witness(&cert, depth)?;
            let mut out = Output::new(report_to_json(&report), format!("{report}\n"));
            if !report.passed() {
                out.code = 1;
            }
            Ok(out)
        }
        Command::PlotRank2 { b, c, depth } => {
            let svg = render_rank2(&Rank2Params::new(b, c)?, depth)?;
            Ok(Output {
                json: Value::String(svg.clone()),
                text: svg,
                code: 0,
            })
        }
    }
}

fn one_based(k: &[usize]) -> Result<Vec<usize>, Failure> {
    k.iter()
        .map(|&k| {
            k.checked_sub(1)
                .ok_or_else(|| Failure::invalid("mutation directions are 1-based"))
        })
        .collect()
}

fn emit(cli_out: Option<&PathBuf>, body: &str) -> Result<(), Failure> {
    match cli_out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::invalid(format!("cannot write output: {e}")))
        }
    }
}

fn fail(f: Failure) -> ExitCode {
    let payload = json!({ "error": { "code": f.code, "kind": f.kind, "message": f.message } });
    eprintln!("{payload}");
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(Failure::invalid(e.render().to_string().trim_end())),
    };
    let plot = matches!(cli.command, Command::PlotRank2 { .. });
    panic::set_hook(Box::new(|_| {}));
    let result =
        panic::catch_unwind(panic::AssertUnwindSafe(|| run(cli.command))).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal error".into());
            Err(Failure::invariant(msg))
        });
    let output = match result {
        Ok(o) => o,
        Err(f) => return fail(f),
    };
    let body = if cli.human || plot {
        output.text
    } else {
        format!("{}\n", output.json)
    };
    if let Err(f) = emit(cli.out.as_ref(), &body) {
        return fail(f);
    }
    ExitCode::from(output.code)
}
