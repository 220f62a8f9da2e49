//! Argument parsing and subcommand dispatch for the `braidwalk` binary.

use std::io::Write;
use std::path::PathBuf;

use braidwalk::braid::BraidWord;
use braidwalk::closed_forms::{ClosedFormKnot, Variant};
use braidwalk::engine::{self, EngineOptions};
use braidwalk::torus::{self, Family};
use braidwalk::walks::{self, EnumOptions};
use braidwalk::{bracket, minimizer};
use clap::{Parser, Subcommand};

use crate::{load_csv, run_batch, write_results_to, CliError, Format, Task, JOBS_ENV};

#[derive(Debug, Parser)]
#[command(name = "braidwalk", version, about = "Simple walks and colored Jones polynomials of braid closures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the simple walks of a braid word, e.g. "[1,-2,1,-2]".
    Walks {
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Also count the walks of the reflected word.
        #[arg(long)]
        semi: bool,
        /// Print every walk with its weight.
        #[arg(long)]
        dump: bool,
        #[arg(long, default_value_t = walks::DEFAULT_MAX_LENGTH)]
        max_length: usize,
    },
    /// Colored Jones polynomial by the walk model.
    Jones {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, short = 'N')]
        color: u32,
        /// Also evaluate at q = exp(2πi/N).
        #[arg(long)]
        eval_root: bool,
        #[arg(long, default_value_t = engine::DEFAULT_WORK_CEILING)]
        work_ceiling: u64,
    },
    /// Jones polynomial (N = 2) by the Kauffman bracket state sum.
    OracleJones {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = bracket::DEFAULT_MAX_CROSSINGS)]
        max_crossings: usize,
    },
    /// Closed-form colored Jones polynomial of 5_2, 6_1 or 7_2.
    ClosedForm {
        knot: ClosedFormKnot,
        #[arg(long, short = 'N')]
        color: u32,
        /// Use the formula as published, without corrections.
        #[arg(long)]
        verbatim: bool,
    },
    /// Search reflections, rotations, reversals and shifts for the fewest walks.
    Minimize {
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Instead, look for a walk-preserving rewrite that starts with σ₁.
        #[arg(long)]
        normalize_leading: bool,
    },
    /// Walk counts on (2,n) or (3,n) torus braids against the closed forms.
    Torus {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3))]
        family: u32,
        #[arg(long)]
        max: u32,
        /// Use the positive (3,n) braid.
        #[arg(long)]
        mirror: bool,
    },
    /// Run a task over every row of a `name,braid` CSV file.
    Batch {
        /// walks, minimize, jones or jones:N.
        #[arg(long)]
        task: Task,
        /// Color for `--task jones`; overrides a `jones:N` suffix.
        #[arg(long, short = 'N')]
        color: Option<u32>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        /// Worker threads; 0 means one per core.
        #[arg(long, env = JOBS_ENV, default_value_t = 0)]
        jobs: usize,
        /// Output format; defaults to JSON for a .json path, CSV otherwise.
        #[arg(long, value_parser = ["csv", "json"])]
        format: Option<String>,
    },
}

fn word(text: &str) -> Result<BraidWord, CliError> {
    Ok(text.parse::<BraidWord>()?)
}

/// Parses `argv` and runs the command. Returns the process exit code.
pub fn main_with(argv: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

pub fn run(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Walks {
            word: text,
            semi,
            dump,
            max_length,
        } => {
            let b = word(&text)?;
            let opts = EnumOptions { max_length };
            let census = walks::enumerate_simple_walks_with(&b, &opts)?;
            if semi {
                let mirror = walks::enumerate_simple_walks_with(&b.reflect(), &opts)?;
                emit(out, format!("simple\t{}", census.count()))?;
                emit(out, format!("reflected\t{}", mirror.count()))?;
                emit(out, format!("semi-simple\t{}", census.count() + mirror.count()))?;
                if dump {
                    out.write_all(census.dump().as_bytes()).ok();
                    emit(out, "# reflected")?;
                    out.write_all(mirror.dump().as_bytes()).ok();
                }
            } else {
                emit(out, census.count())?;
                if dump {
                    out.write_all(census.dump().as_bytes()).ok();
                }
            }
        }
        Command::Jones {
            word: text,
            color,
            eval_root,
            work_ceiling,
        } => {
            let b = word(&text)?;
            let opts = EngineOptions {
                work_ceiling,
                ..EngineOptions::default()
            };
            let report = engine::colored_jones_with(&b, color, &opts)?;
            emit(out, &report.poly)?;
            if eval_root {
                let z = num_root(color);
                let v = report.poly.eval_complex(z)?;
                emit(out, format!("J(exp(2πi/{color})) = {:.12} {:+.12}i", v.re, v.im))?;
                emit(out, format!("log|J|/N = {:.12}", v.norm().ln() / color as f64))?;
            }
        }
        Command::OracleJones {
            word: text,
            max_crossings,
        } => emit(out, bracket::jones_via_bracket_with(&word(&text)?, max_crossings)?)?,
        Command::ClosedForm { knot, color, verbatim } => {
            let variant = if verbatim { Variant::Verbatim } else { Variant::Corrected };
            emit(out, knot.eval(color, variant)?)?;
        }
        Command::Minimize {
            word: text,
            normalize_leading,
        } => {
            let b = word(&text)?;
            if normalize_leading {
                let n = minimizer::normalize_leading(&b);
                if !n.found {
                    let _ = writeln!(err, "warning: no walk-preserving rewrite of {b} starts with σ₁");
                }
                emit(out, format!("{}\t{}", n.word, minimizer::describe(&n.transform)))?;
            } else {
                let best = minimizer::minimize_walks(&b)?;
                let count = best.sw_count.expect("minimum is counted");
                emit(
                    out,
                    format!("{}\t{}\t{}\t{}", best.word, count, minimizer::describe(&best.transform), best.mirror),
                )?;
            }
        }
        Command::Torus { family, max, mirror } => {
            let fam = match (family, mirror) {
                (3, true) => Family::ThreeMirror,
                (f, _) => Family::from_width(f)?,
            };
            let (report, failure) = match torus::count_series(fam, max) {
                Ok(r) => (r, None),
                Err(p) => (p.report, Some(p.error)),
            };
            emit(out, "n\tcount\tclosed_form")?;
            for &(n, c) in &report.counts {
                let cf = fam.closed_form(n).map(|v| v.to_string()).unwrap_or_else(|_| "-".into());
                emit(out, format!("{n}\t{c}\t{cf}"))?;
            }
            emit(out, format!("recurrence\t{}", ok(report.recurrence_ok)))?;
            emit(out, format!("closed form\t{}", ok(report.closedform_ok)))?;
            if let Some(e) = failure {
                return Err(e.into());
            }
        }
        Command::Batch {
            task,
            color,
            input,
            output,
            jobs,
            format,
        } => {
            let task = match (task, color) {
                (Task::Jones(_), Some(n)) if n >= 2 => Task::Jones(n),
                (Task::Jones(_), Some(n)) => {
                    return Err(CliError::Usage(format!("color N = {n} must be at least 2")))
                }
                (t, _) => t,
            };
            let loaded = load_csv(&input)?;
            for e in &loaded.errors {
                let _ = writeln!(err, "{}: skipped {e}", input.display());
            }
            let results = run_batch(&loaded.records, task, jobs)?;
            let format = match format.as_deref() {
                Some("json") => Format::Json,
                Some(_) => Format::Csv,
                None => Format::from_path(&output),
            };
            write_results_to(&output, &results, format)?;
            let failed = results.iter().filter(|r| r.error.is_some()).count();
            let _ = writeln!(err, "{} rows written, {failed} failed", results.len());
        }
    }
    Ok(())
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "mismatch"
    }
}

fn num_root(n: u32) -> num_complex::Complex64 {
    num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64)
}
