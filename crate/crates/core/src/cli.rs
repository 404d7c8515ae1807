//! Command-line entry point.
//!
//! Exit codes: 0 success or all checks hold, 1 a violation was found,
//! 2 bad input or usage.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::difference::{ConstraintMatrix, DifferenceMatrix};
use crate::error::{Error, Result};
use crate::io::{load_puzzle, load_regions, matrix_dump, render_tableau, PuzzleDocument};
use crate::permutation::Permutation;
use crate::problem::{verify_solution, ProblemSpec};
use crate::sign::{check_necessary, Assignment, NecessityReport};
use crate::solver::{brute_force, solve, SolveOptions, SolveOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const DEFAULT_CAP: usize = 100;

#[derive(Parser, Debug)]
#[command(name = "gensudoku", about = "Generalized Sudoku constraint engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a puzzle by backtracking
    Solve {
        file: PathBuf,
        /// Stop after this many solutions
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Skip re-checking emitted solutions
        #[arg(long)]
        no_selfcheck: bool,
        /// Search top-level branches on a thread pool
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a solution against the puzzle's defining system
    Verify { file: PathBuf, solution: PathBuf },
    /// Report the reconstruction identity for every constraint
    Check {
        file: PathBuf,
        solution: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate all fill-ins of the empty cells
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dump A(n), or A_pi for one of the canonical permutations or a region file
    Matrix {
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        pi: Option<u8>,
        #[arg(long)]
        regions: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Runs the command line `args` (program name first), writing data to `out`
/// and diagnostics to `err`. Returns the process exit code.
pub fn run_cli<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Solve {
            file,
            cap,
            no_selfcheck,
            parallel,
            format,
        } => {
            let (_, problem) = load_problem(&file)?;
            let opts = SolveOptions {
                cap: Some(cap),
                selfcheck: !no_selfcheck,
                parallel,
            };
            let outcome = solve(&problem, opts)?;
            emit_outcome(&outcome, format, out, err)
        }
        Command::Oracle { file, format } => {
            let (_, problem) = load_problem(&file)?;
            let outcome = brute_force(&problem)?;
            emit_outcome(&outcome, format, out, err)
        }
        Command::Verify { file, solution } => {
            let (doc, problem) = load_problem(&file)?;
            let x = load_solution(&solution, &doc)?;
            match verify_solution(&problem, &x) {
                Ok(()) => {
                    writeln!(out, "VALID")?;
                    Ok(EXIT_OK)
                }
                Err(v) => {
                    writeln!(out, "INVALID: {v}")?;
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Command::Check {
            file,
            solution,
            format,
        } => {
            let (doc, problem) = load_problem(&file)?;
            let x = load_solution(&solution, &doc)?;
            let reports = check_necessary(&problem, &x)?;
            match format {
                Format::Json => writeln!(out, "{}", to_json(&reports)?)?,
                Format::Text => {
                    for r in &reports {
                        writeln!(out, "{}", report_line(r))?;
                    }
                }
            }
            Ok(if reports.iter().all(|r| r.holds) {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Matrix { n, pi, regions } => {
            let text = match (pi, regions) {
                (None, None) => {
                    matrix_dump(&format!("A({n})"), &DifferenceMatrix::new(n)?.to_dense())
                }
                (pi, regions) => {
                    let perm = match (pi, regions) {
                        (Some(1), None) => Permutation::identity(n),
                        (Some(2), None) => Permutation::transpose(n),
                        (Some(3), None) => Permutation::block(n)?,
                        (None | Some(3), Some(path)) => load_regions(&path, n)?.to_permutation(),
                        (Some(r), Some(_)) => {
                            return Err(Error::InvalidArgument(format!(
                                "--regions defines the third permutation, not --pi {r}"
                            )))
                        }
                        _ => unreachable!("--pi is range-checked"),
                    };
                    let c = ConstraintMatrix::new(n, perm)?;
                    matrix_dump(&format!("A_pi {n}"), &c.to_dense())
                }
            };
            write!(out, "{text}")?;
            Ok(EXIT_OK)
        }
    }
}

fn load_problem(path: &Path) -> Result<(PuzzleDocument, ProblemSpec)> {
    let (doc, regions) = load_puzzle(path)?;
    let problem = doc.problem(regions.as_ref())?;
    Ok((doc, problem))
}

fn load_solution(path: &Path, puzzle: &PuzzleDocument) -> Result<Assignment> {
    let (doc, _) = load_puzzle(path)?;
    if doc.n != puzzle.n {
        return Err(Error::InvalidArgument(format!(
            "solution has n = {}, puzzle has n = {}",
            doc.n, puzzle.n
        )));
    }
    Ok(doc.to_assignment())
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))
}

pub fn report_line(r: &NecessityReport) -> String {
    let id = r.constraint_id;
    if let Some(&row) = r.zero_rows.first() {
        format!("constraint {id}: NOT-APPLICABLE (zero difference at row {row})")
    } else if let Some(v) = r.first_violation {
        format!(
            "constraint {id}: FAILS at cell {} (expected {}, got {})",
            v.index, v.expected, v.actual
        )
    } else if let Some(cell) = r.parity_cell {
        format!("constraint {id}: FAILS (odd reconstruction component at cell {cell})")
    } else {
        format!("constraint {id}: HOLDS")
    }
}

fn emit_outcome(
    o: &SolveOutcome,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    if let Some(d) = &o.diagnostic {
        writeln!(err, "{d}")?;
    }
    match format {
        Format::Json => writeln!(out, "{}", to_json(o)?)?,
        Format::Text => {
            for (i, x) in o.solutions.iter().enumerate() {
                writeln!(out, "solution {}", i + 1)?;
                write!(out, "{}", render_tableau(x))?;
                writeln!(out)?;
            }
            writeln!(
                out,
                "solutions: {}, nodes_explored: {}, exhausted: {}",
                o.solutions.len(),
                o.nodes_explored,
                o.exhausted
            )?;
        }
    }
    Ok(if o.solutions.is_empty() {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}
