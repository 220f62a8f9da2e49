//! Batch driver and command-line front end for [`braidwalk`].
//!
//! Input is a CSV table with a `name,braid` header (extra columns are
//! ignored); output is one [`ResultRecord`] per valid row, written as CSV or
//! as a JSON array with the same fields. Output order is input order, so the
//! result file does not depend on the number of worker threads.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use braidwalk::braid::BraidWord;
use braidwalk::{engine, minimizer, walks};
use rayon::prelude::*;
use serde::Serialize;

pub mod cli;

/// Environment variable holding the default worker count for `batch`.
pub const JOBS_ENV: &str = "BRAIDWALK_JOBS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
    #[error("no valid rows in input ({} rejected)", .0.len())]
    NoValidRows(Vec<RowError>),
    #[error(transparent)]
    Core(#[from] braidwalk::Error),
}

impl CliError {
    /// 1 for usage and parse problems, 2 for domain errors, 3 for resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(braidwalk::Error::Domain(_)) => 2,
            CliError::Core(braidwalk::Error::Resource { .. }) => 3,
            _ => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub word: BraidWord,
}

/// A rejected input row. `line` is 1-based and counts the header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub line: u64,
    pub message: String,
}

impl std::fmt::Display for RowError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Loaded {
    pub records: Vec<KnotRecord>,
    pub errors: Vec<RowError>,
}

pub fn load_csv(path: &Path) -> Result<Loaded, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    read_csv(file)
}

/// Parses a `name,braid` table. Bad rows are collected in
/// [`Loaded::errors`]; it is an error only if no row survives.
pub fn read_csv<R: Read>(input: R) -> Result<Loaded, CliError> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(input);
    let headers = reader.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Usage(format!("input header lacks a {name:?} column")))
    };
    let (name_col, braid_col) = (column("name")?, column("braid")?);
    let mut out = Loaded::default();
    for row in reader.records() {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                out.errors.push(RowError {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = row.position().map_or(0, |p| p.line());
        let reject = |message: String| RowError { line, message };
        let name = row.get(name_col).unwrap_or("");
        let braid = row.get(braid_col);
        match (name.is_empty(), braid) {
            (true, _) => out.errors.push(reject("empty name".into())),
            (_, None) => out.errors.push(reject("missing braid field".into())),
            (false, Some(text)) => match text.parse::<BraidWord>() {
                Ok(word) => out.records.push(KnotRecord {
                    name: name.to_string(),
                    word,
                }),
                Err(e) => out.errors.push(reject(e.to_string())),
            },
        }
    }
    if out.records.is_empty() {
        return Err(CliError::NoValidRows(out.errors));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    /// Count the simple walks of the word as given.
    Walks,
    /// Search the symmetry orbit for the fewest walks.
    Minimize,
    /// Colored Jones polynomial at the given color.
    Jones(u32),
}

impl FromStr for Task {
    type Err = CliError;

    /// `walks`, `minimize`, `jones` (color 2) or `jones:N`.
    fn from_str(s: &str) -> Result<Task, CliError> {
        match s {
            "walks" => Ok(Task::Walks),
            "minimize" => Ok(Task::Minimize),
            "jones" => Ok(Task::Jones(2)),
            _ => match s.strip_prefix("jones:").map(str::parse::<u32>) {
                Some(Ok(n)) if n >= 2 => Ok(Task::Jones(n)),
                _ => Err(CliError::Usage(format!(
                    "unknown task {s:?}; expected walks, minimize, jones or jones:N with N >= 2"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultRecord {
    pub name: String,
    pub input_word: String,
    pub minimal_word: String,
    pub sw_count: Option<u64>,
    pub transform: String,
    pub mirror_flag: bool,
    pub jones_color: Option<u32>,
    pub jones: Option<String>,
    pub error: Option<String>,
}

impl ResultRecord {
    fn new(rec: &KnotRecord) -> ResultRecord {
        ResultRecord {
            name: rec.name.clone(),
            input_word: rec.word.to_string(),
            minimal_word: rec.word.to_string(),
            sw_count: None,
            transform: minimizer::describe(&[]),
            mirror_flag: false,
            jones_color: None,
            jones: None,
            error: None,
        }
    }
}

fn run_one(rec: &KnotRecord, task: Task) -> ResultRecord {
    let mut out = ResultRecord::new(rec);
    let outcome = match task {
        Task::Walks => walks::count_simple_walks(&rec.word).map(|c| out.sw_count = Some(c)),
        Task::Minimize => minimizer::minimize_walks(&rec.word).map(|best| {
            out.minimal_word = best.word.to_string();
            out.sw_count = best.sw_count;
            out.transform = minimizer::describe(&best.transform);
            out.mirror_flag = best.mirror;
        }),
        Task::Jones(n) => {
            out.jones_color = Some(n);
            walks::count_simple_walks(&rec.word).and_then(|c| {
                out.sw_count = Some(c);
                engine::colored_jones(&rec.word, n).map(|p| out.jones = Some(p.to_string()))
            })
        }
    };
    if let Err(e) = outcome {
        out.error = Some(e.to_string());
    }
    out
}

/// Runs `task` on every record with `jobs` worker threads (0 = rayon's
/// default). Failures are recorded per row.
pub fn run_batch(records: &[KnotRecord], task: Task, jobs: usize) -> Result<Vec<ResultRecord>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(|| records.par_iter().map(|r| run_one(r, task)).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// JSON for a `.json` extension, CSV otherwise.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

pub fn write_results<W: Write>(out: W, results: &[ResultRecord], format: Format) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in results {
                w.serialize(r)?;
            }
            w.flush().map_err(io_err(Path::new("<output>")))?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, results).map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(out).map_err(io_err(Path::new("<output>")))?;
        }
    }
    Ok(())
}

pub fn write_results_to(path: &Path, results: &[ResultRecord], format: Format) -> Result<(), CliError> {
    let file = File::create(path).map_err(io_err(path))?;
    write_results(io::BufWriter::new(file), results, format)
}
