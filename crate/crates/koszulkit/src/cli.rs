//! Argument parsing and dispatch. Exit codes: 0 success, 1 a reported check
//! failed, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::commands::{self, AlgebraAction, CommandError, DgAction, Outcome};
use crate::format::emit_json;
use crate::selftest;

#[derive(Parser, Debug)]
#[command(
    name = "koszulkit",
    version,
    about = "Affine Weyl combinatorics, linear Koszul duality and Koszulity tests"
)]
struct Cli {
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extended affine Weyl group tables.
    Weyl {
        action: WeylCmd,
        #[arg(long = "type")]
        cartan: String,
        /// Defaults to h + 1.
        #[arg(long)]
        p: Option<i64>,
    },
    /// Relations of the affine braid group in the truncated Demazure-Lusztig module.
    Braid {
        action: BraidCmd,
        #[arg(long = "type")]
        cartan: String,
        #[arg(long, default_value_t = 4)]
        radius: i64,
    },
    /// Koszul duality functors and cohomology of dg-modules.
    Dg {
        action: DgCmd,
        #[arg(long = "in")]
        input: PathBuf,
        /// i0:i1,j0:j1 (inclusive)
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Koszulity tests for finite-dimensional graded algebras.
    Algebra {
        action: AlgebraCmd,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Run the acceptance suite and the golden-table check.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        /// Compare against this golden file instead of the built-in one.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Print the current golden tables and exit.
        #[arg(long)]
        emit_golden: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WeylCmd {
    #[value(name = "w0-table")]
    W0Table,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BraidCmd {
    #[value(name = "verify-relations")]
    VerifyRelations,
    #[value(name = "affine-conjugation")]
    AffineConjugation,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DgCmd {
    #[value(name = "apply-A")]
    ApplyA,
    #[value(name = "apply-B")]
    ApplyB,
    #[value(name = "cohomology")]
    Cohomology,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AlgebraCmd {
    #[value(name = "is-koszul")]
    IsKoszul,
    #[value(name = "ext-dual")]
    ExtDual,
    #[value(name = "check-criterion")]
    CheckCriterion,
}

fn read(path: &PathBuf) -> Result<String, CommandError> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn execute(cmd: Command) -> Result<Outcome, CommandError> {
    let ok = |json: Value| Outcome { json, ok: true };
    match cmd {
        Command::Weyl {
            action: WeylCmd::W0Table,
            cartan,
            p,
        } => Ok(ok(commands::w0_table(&cartan, p)?)),
        Command::Braid {
            action,
            cartan,
            radius,
        } => match action {
            BraidCmd::VerifyRelations => commands::verify_relations(&cartan, radius),
            BraidCmd::AffineConjugation => commands::affine_conjugation(&cartan, radius),
        },
        Command::Dg {
            action,
            input,
            window,
        } => {
            let action = match action {
                DgCmd::ApplyA => DgAction::ApplyA,
                DgCmd::ApplyB => DgAction::ApplyB,
                DgCmd::Cohomology => DgAction::Cohomology,
            };
            Ok(ok(commands::dg(action, &read(&input)?, window.as_deref())?))
        }
        Command::Algebra {
            action,
            input,
            nmax,
        } => {
            let action = match action {
                AlgebraCmd::IsKoszul => AlgebraAction::IsKoszul,
                AlgebraCmd::ExtDual => AlgebraAction::ExtDual,
                AlgebraCmd::CheckCriterion => AlgebraAction::CheckCriterion,
            };
            commands::algebra(action, &read(&input)?, nmax)
        }
        Command::Selftest {
            seed,
            golden,
            emit_golden,
        } => {
            if emit_golden {
                return Ok(ok(
                    serde_json::to_value(selftest::golden_snapshot()).expect("plain data")
                ));
            }
            let tables = match golden {
                Some(path) => serde_json::from_str(&read(&path)?)
                    .map_err(|e| CommandError::Usage(format!("{}: {e}", path.display())))?,
                None => selftest::embedded_golden(),
            };
            let report = selftest::run_all(seed, &tables);
            Ok(Outcome {
                ok: report.pass,
                json: serde_json::to_value(&report).expect("plain data"),
            })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let target = cli.out.clone();
    match execute(cli.command) {
        Ok(outcome) => {
            let text = emit_json(&outcome.json);
            let written = match target {
                Some(path) => std::fs::write(&path, &text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if outcome.ok {
                0
            } else {
                let _ = writeln!(err, "verification failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
