//! Persisted result files: a self-describing tabular format.
//!
//! Every file starts with a header block of `# `-prefixed lines
//!
//! ```text
//! # niching v<artifact version>
//! # schema <name>/<version>
//! # master_seed <u64>
//! # <key> <value>          (optional extras, e.g. grid=small)
//! ```
//!
//! followed by a CSV table whose column order is fixed per schema:
//!
//! * `run_records/1` — one row per run:
//!   `mechanism,window,distance,n,mu,fitness,budget_generations,master_seed,
//!   run_index,trace_policy,outcome,generations_used,evaluations_used,
//!   init_evaluations,best_fitness,best_normalized_fitness,found_zero_opt,
//!   found_one_opt,config_digest`
//! * `sweeps/1` — one row per grid point:
//!   `mechanism,window,distance,n,mu,fitness,runs,successes,
//!   mean_generations_on_success` (last column empty when no run succeeded)
//! * `bounds/1` — one row per bound report:
//!   `name,analytic_value,empirical_value,sample_count,verdict`
//! * `fig1/1` — one row per problem size (plot-ready boxplot statistics):
//!   `n,min,whisker_low,q1,median,q3,whisker_high,max,outliers`
//!   (outliers `;`-joined)
//! * `fig2/1` — success counts, one row per population size, one column per
//!   window size: `mu,w1,w2,...`
//!
//! Floats are written in shortest round-trip form, so loading a file
//! reproduces the original values bit for bit, and identical inputs always
//! serialize to identical bytes.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::experiments::{FitnessStudy, Outcome, RunConfig, RunRecord, RunResult, SweepSummary};
use crate::genome::{Fitness, FitnessFn};
use crate::mechanisms::{DistanceMetric, MechanismSpec};
use crate::oracle::{BoundReport, Verdict};

/// Version stamp written into every results file.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const SCHEMA_RUN_RECORDS: &str = "run_records/1";
pub const SCHEMA_SWEEPS: &str = "sweeps/1";
pub const SCHEMA_BOUNDS: &str = "bounds/1";
pub const SCHEMA_FIG1: &str = "fig1/1";
pub const SCHEMA_FIG2: &str = "fig2/1";

#[derive(Debug, Error)]
pub enum ResultsError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed results header: {0}")]
    MalformedHeader(String),
    #[error("schema mismatch: expected {expected}, found {found}")]
    SchemaMismatch { expected: String, found: String },
    #[error("parse error at record {record}: {message}")]
    Parse { record: usize, message: String },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

/// Parsed header block of a results file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FileHeader {
    pub artifact_version: String,
    pub schema: String,
    pub master_seed: u64,
    pub extra: Vec<(String, String)>,
}

fn write_header<W: Write>(
    out: &mut W,
    schema: &str,
    master_seed: u64,
    extra: &[(&str, &str)],
) -> std::io::Result<()> {
    writeln!(out, "# niching v{}", ARTIFACT_VERSION)?;
    writeln!(out, "# schema {}", schema)?;
    writeln!(out, "# master_seed {}", master_seed)?;
    for (key, value) in extra {
        writeln!(out, "# {} {}", key, value)?;
    }
    Ok(())
}

/// Splits the `# ` header block off the input and validates the schema.
/// Returns the header and the remaining CSV text.
fn read_header(input: &str, expected_schema: &str) -> Result<(FileHeader, String), ResultsError> {
    let mut lines = input.lines().peekable();
    let first = lines
        .next()
        .ok_or_else(|| ResultsError::MalformedHeader("empty file".into()))?;
    let artifact_version = first
        .strip_prefix("# niching v")
        .ok_or_else(|| ResultsError::MalformedHeader(format!("bad first line {:?}", first)))?
        .to_string();
    let second = lines
        .next()
        .ok_or_else(|| ResultsError::MalformedHeader("missing schema line".into()))?;
    let schema = second
        .strip_prefix("# schema ")
        .ok_or_else(|| ResultsError::MalformedHeader(format!("bad schema line {:?}", second)))?
        .to_string();
    if schema != expected_schema {
        return Err(ResultsError::SchemaMismatch {
            expected: expected_schema.to_string(),
            found: schema,
        });
    }
    let third = lines
        .next()
        .ok_or_else(|| ResultsError::MalformedHeader("missing master_seed line".into()))?;
    let master_seed = third
        .strip_prefix("# master_seed ")
        .and_then(|s| s.parse::<u64>().ok())
        .ok_or_else(|| ResultsError::MalformedHeader(format!("bad master_seed line {:?}", third)))?;
    let mut extra = Vec::new();
    let mut body = String::new();
    let mut in_header = true;
    for line in input.lines().skip(3) {
        if in_header {
            if let Some(rest) = line.strip_prefix("# ") {
                let (key, value) = rest.split_once(' ').unwrap_or((rest, ""));
                extra.push((key.to_string(), value.to_string()));
                continue;
            }
            in_header = false;
        }
        body.push_str(line);
        body.push('\n');
    }
    Ok((
        FileHeader {
            artifact_version,
            schema,
            master_seed,
            extra,
        },
        body,
    ))
}

fn read_to_string<R: Read>(mut input: R) -> Result<String, ResultsError> {
    let mut buf = String::new();
    input
        .read_to_string(&mut buf)
        .map_err(|source| ResultsError::Io {
            path: PathBuf::from("<reader>"),
            source,
        })?;
    Ok(buf)
}

fn parse_err<T: std::fmt::Display>(record: usize) -> impl FnOnce(T) -> ResultsError {
    move |message| ResultsError::Parse {
        record,
        message: message.to_string(),
    }
}

fn mechanism_columns(m: MechanismSpec) -> (String, String, String) {
    (
        m.label().to_string(),
        m.window().map_or(String::new(), |w| w.to_string()),
        m.distance().map_or(String::new(), |d| d.label().to_string()),
    )
}

fn parse_mechanism(
    label: &str,
    window: &str,
    distance: &str,
    record: usize,
) -> Result<MechanismSpec, ResultsError> {
    match label {
        "rts" => {
            let w: usize = window.parse().map_err(parse_err(record))?;
            let d = match distance {
                "genotypic" => DistanceMetric::Genotypic,
                "phenotypic" => DistanceMetric::Phenotypic,
                other => {
                    return Err(ResultsError::Parse {
                        record,
                        message: format!("unknown distance {:?}", other),
                    })
                }
            };
            Ok(MechanismSpec::RestrictedTournament {
                window: w,
                distance: d,
            })
        }
        "pc" | "dc" | "plain" => {
            if !window.is_empty() || !distance.is_empty() {
                return Err(ResultsError::Parse {
                    record,
                    message: format!("mechanism {} carries window/distance", label),
                });
            }
            Ok(match label {
                "pc" => MechanismSpec::ProbabilisticCrowding,
                "dc" => MechanismSpec::DeterministicCrowding,
                _ => MechanismSpec::PlainReplaceWorst,
            })
        }
        other => Err(ResultsError::Parse {
            record,
            message: format!("unknown mechanism {:?}", other),
        }),
    }
}

const RUN_RECORD_COLUMNS: [&str; 19] = [
    "mechanism",
    "window",
    "distance",
    "n",
    "mu",
    "fitness",
    "budget_generations",
    "master_seed",
    "run_index",
    "trace_policy",
    "outcome",
    "generations_used",
    "evaluations_used",
    "init_evaluations",
    "best_fitness",
    "best_normalized_fitness",
    "found_zero_opt",
    "found_one_opt",
    "config_digest",
];

/// Writes run records with their header block to `out`.
pub fn write_run_records<W: Write>(
    mut out: W,
    master_seed: u64,
    extra: &[(&str, &str)],
    records: &[RunRecord],
) -> Result<(), ResultsError> {
    write_header(&mut out, SCHEMA_RUN_RECORDS, master_seed, extra).map_err(|source| {
        ResultsError::Io {
            path: PathBuf::from("<writer>"),
            source,
        }
    })?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(RUN_RECORD_COLUMNS)?;
    for r in records {
        let (mech, window, distance) = mechanism_columns(r.config.mechanism());
        csv.write_record([
            mech,
            window,
            distance,
            r.config.n().to_string(),
            r.config.mu().to_string(),
            r.config.fitness().label().to_string(),
            r.config.budget_generations().to_string(),
            r.config.master_seed().to_string(),
            r.config.run_index().to_string(),
            r.config.trace_policy().label().to_string(),
            r.result.outcome.label().to_string(),
            r.result.generations_used.to_string(),
            r.result.evaluations_used.to_string(),
            r.result.init_evaluations.to_string(),
            r.result.best_fitness.value().to_string(),
            r.result.best_normalized_fitness.to_string(),
            r.result.found_zero_opt.to_string(),
            r.result.found_one_opt.to_string(),
            r.result.config_digest.clone(),
        ])?;
    }
    csv.flush().map_err(|source| ResultsError::Io {
        path: PathBuf::from("<writer>"),
        source,
    })?;
    Ok(())
}

/// Reads run records back; the inverse of [`write_run_records`].
pub fn read_run_records<R: Read>(input: R) -> Result<(FileHeader, Vec<RunRecord>), ResultsError> {
    let text = read_to_string(input)?;
    let (header, body) = read_header(&text, SCHEMA_RUN_RECORDS)?;
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    expect_columns(&mut reader, &RUN_RECORD_COLUMNS)?;
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let field = |j: usize| row.get(j).unwrap_or("");
        let mechanism = parse_mechanism(field(0), field(1), field(2), i)?;
        let n: usize = field(3).parse().map_err(parse_err(i))?;
        let mu: usize = field(4).parse().map_err(parse_err(i))?;
        let fitness: FitnessFn = field(5).parse().map_err(parse_err(i))?;
        let budget: u64 = field(6).parse().map_err(parse_err(i))?;
        let master_seed: u64 = field(7).parse().map_err(parse_err(i))?;
        let run_index: u64 = field(8).parse().map_err(parse_err(i))?;
        let trace_policy = field(9).parse().map_err(parse_err(i))?;
        let config = RunConfig::new(n, mu, mechanism, fitness, master_seed)
            .map_err(parse_err(i))?
            .with_budget(budget)
            .map_err(parse_err(i))?
            .with_run_index(run_index)
            .with_trace_policy(trace_policy);
        let result = RunResult {
            outcome: field(10).parse::<Outcome>().map_err(parse_err(i))?,
            generations_used: field(11).parse().map_err(parse_err(i))?,
            evaluations_used: field(12).parse().map_err(parse_err(i))?,
            init_evaluations: field(13).parse().map_err(parse_err(i))?,
            best_fitness: Fitness::new(field(14).parse().map_err(parse_err(i))?),
            best_normalized_fitness: field(15).parse().map_err(parse_err(i))?,
            found_zero_opt: field(16).parse().map_err(parse_err(i))?,
            found_one_opt: field(17).parse().map_err(parse_err(i))?,
            config_digest: field(18).to_string(),
        };
        records.push(RunRecord { config, result });
    }
    Ok((header, records))
}

const SWEEP_COLUMNS: [&str; 9] = [
    "mechanism",
    "window",
    "distance",
    "n",
    "mu",
    "fitness",
    "runs",
    "successes",
    "mean_generations_on_success",
];

pub fn write_sweep_summaries<W: Write>(
    mut out: W,
    master_seed: u64,
    extra: &[(&str, &str)],
    summaries: &[SweepSummary],
) -> Result<(), ResultsError> {
    write_header(&mut out, SCHEMA_SWEEPS, master_seed, extra).map_err(|source| {
        ResultsError::Io {
            path: PathBuf::from("<writer>"),
            source,
        }
    })?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(SWEEP_COLUMNS)?;
    for s in summaries {
        let (mech, window, distance) = mechanism_columns(s.mechanism);
        csv.write_record([
            mech,
            window,
            distance,
            s.n.to_string(),
            s.mu.to_string(),
            s.fitness.label().to_string(),
            s.runs.to_string(),
            s.successes.to_string(),
            s.mean_generations_on_success
                .map_or(String::new(), |m| m.to_string()),
        ])?;
    }
    csv.flush().map_err(|source| ResultsError::Io {
        path: PathBuf::from("<writer>"),
        source,
    })?;
    Ok(())
}

pub fn read_sweep_summaries<R: Read>(
    input: R,
) -> Result<(FileHeader, Vec<SweepSummary>), ResultsError> {
    let text = read_to_string(input)?;
    let (header, body) = read_header(&text, SCHEMA_SWEEPS)?;
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    expect_columns(&mut reader, &SWEEP_COLUMNS)?;
    let mut summaries = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let field = |j: usize| row.get(j).unwrap_or("");
        let mechanism = parse_mechanism(field(0), field(1), field(2), i)?;
        summaries.push(SweepSummary {
            mechanism,
            n: field(3).parse().map_err(parse_err(i))?,
            mu: field(4).parse().map_err(parse_err(i))?,
            fitness: field(5).parse::<FitnessFn>().map_err(parse_err(i))?,
            runs: field(6).parse().map_err(parse_err(i))?,
            successes: field(7).parse().map_err(parse_err(i))?,
            mean_generations_on_success: if field(8).is_empty() {
                None
            } else {
                Some(field(8).parse().map_err(parse_err(i))?)
            },
        });
    }
    Ok((header, summaries))
}

const BOUND_COLUMNS: [&str; 5] = [
    "name",
    "analytic_value",
    "empirical_value",
    "sample_count",
    "verdict",
];

pub fn write_bound_reports<W: Write>(
    mut out: W,
    master_seed: u64,
    extra: &[(&str, &str)],
    reports: &[BoundReport],
) -> Result<(), ResultsError> {
    write_header(&mut out, SCHEMA_BOUNDS, master_seed, extra).map_err(|source| {
        ResultsError::Io {
            path: PathBuf::from("<writer>"),
            source,
        }
    })?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(BOUND_COLUMNS)?;
    for r in reports {
        csv.write_record([
            r.name.clone(),
            r.analytic_value.to_string(),
            r.empirical_value.to_string(),
            r.sample_count.to_string(),
            r.verdict.to_string(),
        ])?;
    }
    csv.flush().map_err(|source| ResultsError::Io {
        path: PathBuf::from("<writer>"),
        source,
    })?;
    Ok(())
}

pub fn read_bound_reports<R: Read>(
    input: R,
) -> Result<(FileHeader, Vec<BoundReport>), ResultsError> {
    let text = read_to_string(input)?;
    let (header, body) = read_header(&text, SCHEMA_BOUNDS)?;
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    expect_columns(&mut reader, &BOUND_COLUMNS)?;
    let mut reports = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let field = |j: usize| row.get(j).unwrap_or("");
        reports.push(BoundReport {
            name: field(0).to_string(),
            analytic_value: field(1).parse().map_err(parse_err(i))?,
            empirical_value: field(2).parse().map_err(parse_err(i))?,
            sample_count: field(3).parse().map_err(parse_err(i))?,
            verdict: field(4).parse::<Verdict>().map_err(parse_err(i))?,
        });
    }
    Ok((header, reports))
}

/// Plot-ready fitness-concentration table: one row of boxplot statistics per
/// problem size.
pub fn write_fig1_table<W: Write>(
    mut out: W,
    master_seed: u64,
    extra: &[(&str, &str)],
    studies: &[FitnessStudy],
) -> Result<(), ResultsError> {
    write_header(&mut out, SCHEMA_FIG1, master_seed, extra).map_err(|source| {
        ResultsError::Io {
            path: PathBuf::from("<writer>"),
            source,
        }
    })?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record([
        "n",
        "min",
        "whisker_low",
        "q1",
        "median",
        "q3",
        "whisker_high",
        "max",
        "outliers",
    ])?;
    for s in studies {
        let outliers = s
            .stats
            .outliers
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(";");
        csv.write_record([
            s.n.to_string(),
            s.stats.min.to_string(),
            s.stats.whisker_low.to_string(),
            s.stats.q1.to_string(),
            s.stats.median.to_string(),
            s.stats.q3.to_string(),
            s.stats.whisker_high.to_string(),
            s.stats.max.to_string(),
            outliers,
        ])?;
    }
    csv.flush().map_err(|source| ResultsError::Io {
        path: PathBuf::from("<writer>"),
        source,
    })?;
    Ok(())
}

/// Plot-ready success-count table: one row per population size, one success
/// count column per window size.
pub fn write_fig2_table<W: Write>(
    mut out: W,
    master_seed: u64,
    extra: &[(&str, &str)],
    mu_grid: &[usize],
    w_grid: &[usize],
    successes: &BTreeMap<(usize, usize), u32>,
) -> Result<(), ResultsError> {
    write_header(&mut out, SCHEMA_FIG2, master_seed, extra).map_err(|source| {
        ResultsError::Io {
            path: PathBuf::from("<writer>"),
            source,
        }
    })?;
    let mut csv = csv::Writer::from_writer(out);
    let mut columns = vec!["mu".to_string()];
    columns.extend(w_grid.iter().map(|w| format!("w{}", w)));
    csv.write_record(&columns)?;
    for &mu in mu_grid {
        let mut row = vec![mu.to_string()];
        for &w in w_grid {
            let count = successes
                .get(&(mu, w))
                .unwrap_or_else(|| panic!("missing sweep cell mu={} w={}", mu, w));
            row.push(count.to_string());
        }
        csv.write_record(&row)?;
    }
    csv.flush().map_err(|source| ResultsError::Io {
        path: PathBuf::from("<writer>"),
        source,
    })?;
    Ok(())
}

fn expect_columns<R: Read>(
    reader: &mut csv::Reader<R>,
    expected: &[&str],
) -> Result<(), ResultsError> {
    let headers = reader.headers()?;
    let found: Vec<&str> = headers.iter().collect();
    if found != expected {
        return Err(ResultsError::MalformedHeader(format!(
            "unexpected columns {:?}",
            found
        )));
    }
    Ok(())
}

fn file_io(path: &Path) -> impl FnOnce(std::io::Error) -> ResultsError + '_ {
    move |source| ResultsError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn save_run_records(
    path: &Path,
    master_seed: u64,
    extra: &[(&str, &str)],
    records: &[RunRecord],
) -> Result<(), ResultsError> {
    let file = File::create(path).map_err(file_io(path))?;
    write_run_records(BufWriter::new(file), master_seed, extra, records)
}

pub fn load_run_records(path: &Path) -> Result<(FileHeader, Vec<RunRecord>), ResultsError> {
    let file = File::open(path).map_err(file_io(path))?;
    read_run_records(BufReader::new(file))
}

pub fn save_sweep_summaries(
    path: &Path,
    master_seed: u64,
    extra: &[(&str, &str)],
    summaries: &[SweepSummary],
) -> Result<(), ResultsError> {
    let file = File::create(path).map_err(file_io(path))?;
    write_sweep_summaries(BufWriter::new(file), master_seed, extra, summaries)
}

pub fn load_sweep_summaries(path: &Path) -> Result<(FileHeader, Vec<SweepSummary>), ResultsError> {
    let file = File::open(path).map_err(file_io(path))?;
    read_sweep_summaries(BufReader::new(file))
}

pub fn save_bound_reports(
    path: &Path,
    master_seed: u64,
    extra: &[(&str, &str)],
    reports: &[BoundReport],
) -> Result<(), ResultsError> {
    let file = File::create(path).map_err(file_io(path))?;
    write_bound_reports(BufWriter::new(file), master_seed, extra, reports)
}

pub fn load_bound_reports(path: &Path) -> Result<(FileHeader, Vec<BoundReport>), ResultsError> {
    let file = File::open(path).map_err(file_io(path))?;
    read_bound_reports(BufReader::new(file))
}

pub fn save_fig1_table(
    path: &Path,
    master_seed: u64,
    extra: &[(&str, &str)],
    studies: &[FitnessStudy],
) -> Result<(), ResultsError> {
    let file = File::create(path).map_err(file_io(path))?;
    write_fig1_table(BufWriter::new(file), master_seed, extra, studies)
}

#[allow(clippy::too_many_arguments)]
pub fn save_fig2_table(
    path: &Path,
    master_seed: u64,
    extra: &[(&str, &str)],
    mu_grid: &[usize],
    w_grid: &[usize],
    successes: &BTreeMap<(usize, usize), u32>,
) -> Result<(), ResultsError> {
    let file = File::create(path).map_err(file_io(path))?;
    write_fig2_table(
        BufWriter::new(file),
        master_seed,
        extra,
        mu_grid,
        w_grid,
        successes,
    )
}
