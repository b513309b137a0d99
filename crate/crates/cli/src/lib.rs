//! Command-line front end: argument parsing, sweeps over instances, output
//! formats and verification orchestration.

pub mod cache;

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confspace::cells::enumerate_cells_capped;
use confspace::filtration::{verify_e1_collapse_in, verify_filtration, verify_pushforward, verify_stratum_isomorphism};
use confspace::homology::{betti_capped, build_complex_capped};
use confspace::predict::{compare_table, predicted_table};
use confspace::symchains::verify_basis_in;
use confspace::{enumerate_basis_chains, BettiTable, Instance, Report, Surface, DEFAULT_CELL_CAP};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cache::Cache;

/// Inclusive integer range given as `a` or `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u32,
    pub hi: u32,
}

impl Span {
    pub fn single(v: u32) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn values(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    fn is_single(&self) -> bool {
        self.lo == self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| format!("invalid number {t:?}: {e}"))
        };
        let span = match s.split_once("..") {
            Some((a, b)) => Span {
                lo: parse(a)?,
                hi: parse(b.strip_prefix('=').unwrap_or(b))?,
            },
            None => Span::single(parse(s)?),
        };
        if span.lo > span.hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(span)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Verification suites selectable with `--checks`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum CheckKind {
    #[value(name = "d-squared")]
    DSquared,
    Cycles,
    Basis,
    Stratum,
    Collapse,
    Compare,
    Pushforward,
}

impl CheckKind {
    const DEFAULT: [CheckKind; 5] = [
        CheckKind::DSquared,
        CheckKind::Cycles,
        CheckKind::Basis,
        CheckKind::Compare,
        CheckKind::Pushforward,
    ];
    const FILTRATION: [CheckKind; 2] = [CheckKind::Stratum, CheckKind::Collapse];
}

#[derive(Debug, Parser)]
#[command(
    name = "confspace",
    version,
    about = "Mod-2 homology of configuration spaces of surfaces with boundary"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the cells of C_m(Σ)^∞.
    Cells {
        #[command(flatten)]
        common: Common,
        /// Only cells of this dimension.
        #[arg(long)]
        dim: Option<u32>,
    },
    /// Compute Betti numbers from the cellular chain complex.
    Betti(Common),
    /// Count monomials predicting the Betti numbers.
    Predict(Common),
    /// Compare computed Betti numbers with the monomial count.
    Compare(Common),
    /// Sweep computed and predicted Betti numbers over ranges.
    Table(Common),
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suites [default: d-squared,cycles,basis,compare,pushforward].
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckKind>,
        /// Also run the stratum and collapse suites.
        #[arg(long)]
        filtration: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Genus, a value or an inclusive range a..b.
    #[arg(short = 'g', long = "genus", default_value = "0")]
    pub genus: Span,
    /// Number of boundary curves, a value or range.
    #[arg(short = 'n', long = "boundaries", default_value = "1")]
    pub boundaries: Span,
    /// Number of points, a value or range.
    #[arg(short = 'm', long = "points")]
    pub points: Span,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(short = 'o', long = "out")]
    pub out: Option<PathBuf>,
    /// Maximum number of cells per instance.
    #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
    pub cap: u64,
    /// Worker threads for sweeps [default: available parallelism].
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Neither read nor write the Betti table cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Cells,
    Betti,
    Predict,
    Compare,
    Table,
    Verify,
}

/// Everything one invocation needs.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub subcommand: Action,
    pub genus: Span,
    pub boundaries: Span,
    pub points: Span,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub cap: u64,
    pub jobs: usize,
    pub checks: BTreeSet<CheckKind>,
    pub dim: Option<u32>,
    pub cache: Cache,
}

impl JobConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (subcommand, common, checks, dim) = match cli.command {
            Command::Cells { common, dim } => (Action::Cells, common, BTreeSet::new(), dim),
            Command::Betti(c) => (Action::Betti, c, BTreeSet::new(), None),
            Command::Predict(c) => (Action::Predict, c, BTreeSet::new(), None),
            Command::Compare(c) => (Action::Compare, c, BTreeSet::new(), None),
            Command::Table(c) => (Action::Table, c, BTreeSet::new(), None),
            Command::Verify {
                common,
                checks,
                filtration,
            } => {
                let mut set: BTreeSet<CheckKind> = if checks.is_empty() {
                    CheckKind::DEFAULT.into_iter().collect()
                } else {
                    checks.into_iter().collect()
                };
                if filtration {
                    set.extend(CheckKind::FILTRATION);
                }
                (Action::Verify, common, set, None)
            }
        };
        if common.cap < 1 {
            return Err(CliError::Usage("--cap must be at least 1".into()));
        }
        if common.boundaries.lo == 0 {
            return Err(CliError::Usage(
                "boundary count must be at least 1 (closed surfaces are not supported)".into(),
            ));
        }
        if subcommand == Action::Cells
            && !(common.genus.is_single() && common.boundaries.is_single() && common.points.is_single())
        {
            return Err(CliError::Usage("cells takes single values for -g, -n and -m".into()));
        }
        let default_format = match subcommand {
            Action::Table => Format::Csv,
            Action::Betti | Action::Predict => Format::Json,
            _ => Format::Text,
        };
        let jobs = common
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1);
        let cache = if common.no_cache {
            Cache::disabled()
        } else {
            Cache::from_env()
        };
        Ok(Self {
            subcommand,
            genus: common.genus,
            boundaries: common.boundaries,
            points: common.points,
            format: common.format.unwrap_or(default_format),
            out: common.out,
            cap: common.cap,
            jobs,
            checks,
            dim,
            cache,
        })
    }

    /// Instances sorted by `(g, n, m)`.
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for genus in self.genus.values() {
            for boundaries in self.boundaries.values() {
                for points in self.points.values() {
                    out.push(Instance {
                        genus,
                        boundaries,
                        points,
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    TooLarge(confspace::Error),
    #[error("verification failed: {0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Core(confspace::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::TooLarge(_) => 3,
            CliError::Failed(_) | CliError::Io(_) | CliError::Core(_) => 1,
        }
    }
}

impl From<confspace::Error> for CliError {
    fn from(e: confspace::Error) -> Self {
        match e {
            confspace::Error::TooManyCells { .. } => CliError::TooLarge(e),
            other => CliError::Core(other),
        }
    }
}

fn surface_of(inst: &Instance) -> Result<Surface, CliError> {
    Surface::new(inst.genus, inst.boundaries).map_err(|e| CliError::Usage(e.to_string()))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Io(io::Error::other(e)))
}

/// Computes (or loads) the Betti table of every instance, in instance order.
fn betti_tables(config: &JobConfig) -> Result<Vec<BettiTable>, CliError> {
    let instances = config.instances();
    let results: Vec<Result<BettiTable, CliError>> = pool(config.jobs)?.install(|| {
        instances
            .par_iter()
            .map(|inst| {
                if let Some(t) = config.cache.load(inst) {
                    return Ok(t);
                }
                let t = betti_capped(&surface_of(inst)?, inst.points, config.cap)?;
                config.cache.store(&t);
                Ok(t)
            })
            .collect()
    });
    results.into_iter().collect()
}

/// Runs one invocation, writing primary output to `out`.
pub fn run(config: &JobConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match config.subcommand {
        Action::Cells => run_cells(config, out),
        Action::Betti => {
            let tables = betti_tables(config)?;
            write_tables(&tables, config.format, "betti", out)
        }
        Action::Predict => {
            let tables: Vec<BettiTable> = config
                .instances()
                .iter()
                .map(|i| Ok(predicted_table(&surface_of(i)?, i.points)))
                .collect::<Result<_, CliError>>()?;
            write_tables(&tables, config.format, "predicted", out)
        }
        Action::Compare => {
            let tables = betti_tables(config)?;
            let reports: Vec<(Instance, Report)> = tables.iter().map(|t| (t.instance(), compare_table(t))).collect();
            write_reports(&reports, config.format, out)
        }
        Action::Table => run_table(config, out),
        Action::Verify => run_verify(config, out),
    }
}

fn run_cells(config: &JobConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = config.instances()[0];
    let surface = surface_of(&inst)?;
    let index = enumerate_cells_capped(&surface, inst.points, config.cap)?;
    let cells: Vec<_> = index
        .iter()
        .filter(|c| config.dim.is_none_or(|d| c.dimension() == d))
        .collect();
    match config.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                l: usize,
                x: &'a [u32],
                s: &'a [u32],
                dim: u32,
                norm: u32,
            }
            let rows: Vec<Row> = cells
                .iter()
                .map(|c| Row {
                    l: c.lines(),
                    x: &c.x,
                    s: &c.s,
                    dim: c.dimension(),
                    norm: c.norm(),
                })
                .collect();
            serde_json::to_writer(&mut *out, &rows).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "dim,l,x,s")?;
            for c in cells {
                let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                writeln!(out, "{},{},{},{}", c.dimension(), c.lines(), join(&c.x), join(&c.s))?;
            }
        }
        Format::Text => {
            for c in cells {
                writeln!(out, "{c}")?;
            }
        }
    }
    Ok(())
}

fn write_tables(tables: &[BettiTable], format: Format, column: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for t in tables {
                serde_json::to_writer(&mut *out, t).map_err(io::Error::from)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            writeln!(out, "g,n,m,q,{column}")?;
            for t in tables {
                for (q, b) in t.betti_open.iter().enumerate() {
                    writeln!(out, "{},{},{},{q},{b}", t.genus, t.boundaries, t.points)?;
                }
            }
        }
        Format::Text => {
            for t in tables {
                writeln!(
                    out,
                    "# g={} n={} m={} euler={}",
                    t.genus, t.boundaries, t.points, t.euler
                )?;
                for (q, b) in t.betti_open.iter().enumerate() {
                    writeln!(out, "(degree, weight) = ({q}, {}): {b}", t.points)?;
                }
            }
        }
    }
    Ok(())
}

fn run_table(config: &JobConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let tables = betti_tables(config)?;
    #[derive(Serialize)]
    struct Row {
        genus: u32,
        boundaries: u32,
        points: u32,
        betti_open: Vec<u64>,
        predicted_open: Vec<u64>,
        #[serde(rename = "match")]
        matches: bool,
    }
    let rows: Vec<Row> = tables
        .iter()
        .map(|t| {
            let predicted = predicted_table(&t.surface(), t.points).betti_open;
            Row {
                genus: t.genus,
                boundaries: t.boundaries,
                points: t.points,
                matches: predicted == t.betti_open,
                betti_open: t.betti_open.clone(),
                predicted_open: predicted,
            }
        })
        .collect();
    match config.format {
        Format::Csv => {
            writeln!(out, "g,n,m,q,betti,predicted,match")?;
            for r in &rows {
                for (q, (b, p)) in r.betti_open.iter().zip(&r.predicted_open).enumerate() {
                    writeln!(out, "{},{},{},{q},{b},{p},{}", r.genus, r.boundaries, r.points, b == p)?;
                }
            }
        }
        Format::Json => {
            for r in &rows {
                serde_json::to_writer(&mut *out, r).map_err(io::Error::from)?;
                writeln!(out)?;
            }
        }
        Format::Text => {
            for r in &rows {
                let mark = if r.matches { "ok" } else { "MISMATCH" };
                writeln!(
                    out,
                    "g={} n={} m={} betti={:?} predicted={:?} {mark}",
                    r.genus, r.boundaries, r.points, r.betti_open, r.predicted_open
                )?;
            }
        }
    }
    Ok(())
}

/// Runs the selected suites on one instance.
pub fn verify_instance(inst: &Instance, checks: &BTreeSet<CheckKind>, cap: u64) -> Result<Report, CliError> {
    let surface = surface_of(inst)?;
    let m = inst.points;
    let complex = build_complex_capped(&surface, m, cap)?;
    let mut report = Report::new();
    for kind in checks {
        match kind {
            CheckKind::DSquared => report.extend(complex.verify_d_squared()),
            CheckKind::Cycles | CheckKind::Basis => {
                // Both suites share one pass; keep only the requested lines.
                if *kind == CheckKind::Basis && checks.contains(&CheckKind::Cycles) {
                    continue;
                }
                let full = verify_basis_in(&complex, &enumerate_basis_chains(&surface, m));
                let keep = |k: &str| match k {
                    "cycle" => checks.contains(&CheckKind::Cycles),
                    _ => checks.contains(&CheckKind::Basis),
                };
                report.checks.extend(full.checks.into_iter().filter(|c| keep(c.kind)));
            }
            CheckKind::Stratum => {
                report.extend(verify_filtration(&surface, m)?);
                for p in 0..=m {
                    report.extend(verify_stratum_isomorphism(&surface, m, p)?);
                }
            }
            CheckKind::Collapse => report.extend(verify_e1_collapse_in(&complex)?),
            CheckKind::Compare => report.extend(compare_table(&complex.betti())),
            CheckKind::Pushforward => report.extend(verify_pushforward(&surface, m)?),
        }
    }
    Ok(report)
}

fn run_verify(config: &JobConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let instances = config.instances();
    let results: Vec<Result<Report, CliError>> = pool(config.jobs)?.install(|| {
        instances
            .par_iter()
            .map(|inst| verify_instance(inst, &config.checks, config.cap))
            .collect()
    });
    let mut reports = Vec::with_capacity(instances.len());
    for (inst, r) in instances.into_iter().zip(results) {
        reports.push((inst, r?));
    }
    write_reports(&reports, config.format, out)
}

fn write_reports(reports: &[(Instance, Report)], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for (_, r) in reports {
                for c in &r.checks {
                    serde_json::to_writer(&mut *out, c).map_err(io::Error::from)?;
                    writeln!(out)?;
                }
            }
        }
        Format::Text | Format::Csv => {
            for (inst, r) in reports {
                writeln!(out, "# {inst}")?;
                write!(out, "{r}")?;
            }
        }
    }
    out.flush()?;
    if let Some(first) = reports.iter().find_map(|(_, r)| r.first_failure()) {
        return Err(CliError::Failed(first.to_string()));
    }
    Ok(())
}
