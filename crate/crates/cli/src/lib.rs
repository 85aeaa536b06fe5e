//! Front end for the `qudit` binary: parameter sweeps of the witnesses,
//! the negative-volume table, and Wigner / tomogram grid exports.

pub mod sweep;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qudit_core::phase_space::{fmt_num, tomogram_grid, write_tomogram_csv};
use qudit_core::witnesses::{evaluate, DEFAULT_HOA_ORDER, DEFAULT_HOS_ORDER, DEFAULT_HOSPS_ORDER};
use qudit_core::{
    add_photons, ngbs, nonclassical_volume, subtract_photons, wigner_grid, NgbsParams, PhaseSpaceGrid,
    QuadratureReport, QuditState, WitnessKind,
};
use rayon::prelude::*;
use serde::Serialize;

pub use sweep::Sweep;

/// Base state of the volume table.
pub const TABLE_M: u32 = 10;
pub const TABLE_P: f64 = 0.8;
pub const TABLE_Q: f64 = -0.01;
pub const TABLE_COUNTS: [u32; 3] = [1, 3, 5];
/// Published volumes for `r` added / `t` subtracted photons at `TABLE_COUNTS`.
pub const TABLE_PUBLISHED_ADD: [f64; 3] = [0.255922, 0.31384, 0.363856];
pub const TABLE_PUBLISHED_SUB: [f64; 3] = [0.260153, 0.353625, 0.482082];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] qudit_core::Error),
    #[error("{0}")]
    Config(String),
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Config(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

fn io_err(path: &str) -> impl Fn(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_string(), source }
}

#[derive(Debug, Parser)]
#[command(name = "qudit", version, about = "Nonclassicality of photon-added and photon-subtracted qudit states")]
pub struct Cli {
    /// Worker threads for sweeps and grids (default: all cores).
    #[arg(long, global = true, env = "QUDIT_WORKERS")]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the amplitudes of a (photon-added or -subtracted) generalized binomial state.
    State(StateCmd),
    /// Sweep a witness over p and write `p,value,nonclassical`.
    Witness(WitnessCmd),
    /// Negative Wigner volume for 1, 3, 5 added and subtracted photons at M = 10, p = 0.8, q = -0.01.
    Table1(Table1Cmd),
    /// Wigner function on a square grid.
    Wigner(WignerCmd),
    /// Optical tomogram on an (X, theta) grid.
    Tomogram(TomogramCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessName {
    Hoa,
    Hos,
    Hosps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Literal,
    Definition,
}

/// Parameters of the base state and the ladder operation.
#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Number of binomial trials (highest Fock index of the base state).
    #[arg(long = "M", default_value_t = 10)]
    pub m: u32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub q: f64,
    /// Photons added.
    #[arg(long = "add", default_value_t = 0)]
    pub add: u32,
    /// Photons subtracted.
    #[arg(long = "sub", default_value_t = 0)]
    pub sub: u32,
}

impl StateArgs {
    pub fn build(&self, p: f64) -> Result<QuditState, CliError> {
        if self.add > 0 && self.sub > 0 {
            return Err(CliError::Config("--add and --sub cannot both be nonzero".into()));
        }
        let base = ngbs(&NgbsParams::new(self.m, p, self.q))?;
        Ok(if self.sub > 0 { subtract_photons(&base, self.sub)? } else { add_photons(&base, self.add) })
    }
}

#[derive(Debug, Args)]
pub struct StateCmd {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long)]
    pub p: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WitnessCmd {
    #[arg(value_enum)]
    pub kind: WitnessName,
    #[command(flatten)]
    pub state: StateArgs,
    /// `start:stop:step` or a single value.
    #[arg(long, default_value = "0.05:0.95:0.01")]
    pub p: Sweep,
    /// Witness order (defaults: hoa 3, hos 2, hosps 4).
    #[arg(long)]
    pub l: Option<u32>,
    /// Sign convention for hosps.
    #[arg(long, value_enum, default_value_t = Convention::Definition)]
    pub convention: Convention,
    /// Drop sweep points outside the state's parameter domain instead of failing.
    #[arg(long)]
    pub skip_invalid: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Table1Cmd {
    #[arg(long, default_value_t = 1e-5)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WignerCmd {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long)]
    pub p: f64,
    /// Nodes per axis.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Half-width of the square `[-extent, extent]²`.
    #[arg(long, default_value_t = 5.0)]
    pub extent: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value = "wigner.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TomogramCmd {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long)]
    pub p: f64,
    #[arg(long = "X", default_value = "-5:5:0.1", allow_hyphen_values = true)]
    pub x: Sweep,
    #[arg(long, default_value = "0:3.141592653589793:0.19634954084936207")]
    pub theta: Sweep,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value = "tomogram.csv")]
    pub out: PathBuf,
}

/// Runs `cli` on a dedicated pool; `stdout` receives data when no `--out`
/// is given and the summary lines otherwise.
pub fn run(cli: Cli, stdout: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(CliError::Config("--workers must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::State(c) => cmd_state(&c, stdout),
        Command::Witness(c) => cmd_witness(&c, stdout),
        Command::Table1(c) => cmd_table1(&c, stdout),
        Command::Wigner(c) => cmd_wigner(&c, stdout),
        Command::Tomogram(c) => cmd_tomogram(&c, stdout),
    })
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, body: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, body),
        None => stdout.write_all(body).map_err(io_err("<stdout>")),
    }
}

fn write_file(path: &Path, body: &[u8]) -> Result<(), CliError> {
    let name = path.display().to_string();
    let file = File::create(path).map_err(io_err(&name))?;
    let mut w = BufWriter::new(file);
    w.write_all(body).and_then(|_| w.flush()).map_err(io_err(&name))
}

fn json_line<T: Serialize>(value: &T) -> Vec<u8> {
    let mut body = serde_json::to_vec(value).expect("plain data serializes");
    body.push(b'\n');
    body
}

pub fn cmd_state(c: &StateCmd, stdout: &mut dyn Write) -> Result<(), CliError> {
    let state = c.state.build(c.p)?;
    let body = match c.format {
        Format::Json => json_line(&state.to_record()),
        Format::Csv => {
            let mut s = String::from("n,re,im\n");
            for (n, a) in state.iter() {
                s.push_str(&format!("{n},{},{}\n", fmt_num(a.re), fmt_num(a.im)));
            }
            s.into_bytes()
        }
    };
    emit(c.out.as_deref(), stdout, &body)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessRow {
    pub p: f64,
    pub value: f64,
    pub nonclassical: bool,
}

impl WitnessCmd {
    pub fn witness_kind(&self) -> WitnessKind {
        match (self.kind, self.convention) {
            (WitnessName::Hoa, _) => WitnessKind::Hoa,
            (WitnessName::Hos, _) => WitnessKind::HosHillery,
            (WitnessName::Hosps, Convention::Literal) => WitnessKind::HospsLiteral,
            (WitnessName::Hosps, Convention::Definition) => WitnessKind::HospsDefinition,
        }
    }

    pub fn order(&self) -> u32 {
        self.l.unwrap_or(match self.kind {
            WitnessName::Hoa => DEFAULT_HOA_ORDER,
            WitnessName::Hos => DEFAULT_HOS_ORDER,
            WitnessName::Hosps => DEFAULT_HOSPS_ORDER,
        })
    }

    pub fn rows(&self) -> Result<Vec<WitnessRow>, CliError> {
        let kind = self.witness_kind();
        let order = self.order();
        if order == 0 {
            return Err(CliError::Config("--l must be at least 1".into()));
        }
        let results: Vec<Result<WitnessRow, CliError>> = self
            .p
            .points()
            .par_iter()
            .map(|&p| {
                let r = evaluate(kind, &self.state.build(p)?, order);
                Ok(WitnessRow { p, value: r.value, nonclassical: r.nonclassical })
            })
            .collect();
        let mut rows = Vec::with_capacity(results.len());
        for r in results {
            match r {
                Ok(row) => rows.push(row),
                Err(CliError::Domain(e)) if self.skip_invalid => eprintln!("skipped: {e}"),
                Err(e) => return Err(e),
            }
        }
        Ok(rows)
    }
}

pub fn cmd_witness(c: &WitnessCmd, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = c.rows()?;
    let body = match c.format {
        Format::Json => json_line(&rows),
        Format::Csv => {
            let mut s = String::from("p,value,nonclassical\n");
            for r in &rows {
                s.push_str(&format!("{},{},{}\n", fmt_num(r.p), fmt_num(r.value), r.nonclassical));
            }
            s.into_bytes()
        }
    };
    emit(c.out.as_deref(), stdout, &body)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table1Row {
    pub operation: &'static str,
    pub count: u32,
    pub published: f64,
    pub computed: f64,
    pub abs_diff: f64,
    pub error_estimate: f64,
    pub nodes_per_axis: usize,
    pub converged: bool,
    /// Whether subtraction beats addition at this photon count.
    pub sub_exceeds_add: bool,
}

pub fn table1_rows(tolerance: f64) -> Result<Vec<Table1Row>, CliError> {
    if !(tolerance > 0.0) {
        return Err(CliError::Config("--tolerance must be positive".into()));
    }
    let base = ngbs(&NgbsParams::new(TABLE_M, TABLE_P, TABLE_Q))?;
    let mut jobs = Vec::new();
    for &r in &TABLE_COUNTS {
        jobs.push(add_photons(&base, r));
    }
    for &t in &TABLE_COUNTS {
        jobs.push(subtract_photons(&base, t)?);
    }
    let reports: Vec<QuadratureReport> = jobs.iter().map(|s| nonclassical_volume(s, tolerance)).collect();
    let (add, sub) = reports.split_at(TABLE_COUNTS.len());
    let mut rows = Vec::new();
    for (operation, reps, published) in [("add", add, TABLE_PUBLISHED_ADD), ("sub", sub, TABLE_PUBLISHED_SUB)] {
        for (i, rep) in reps.iter().enumerate() {
            rows.push(Table1Row {
                operation,
                count: TABLE_COUNTS[i],
                published: published[i],
                computed: rep.value,
                abs_diff: (rep.value - published[i]).abs(),
                error_estimate: rep.error_estimate,
                nodes_per_axis: rep.nodes_per_axis,
                converged: rep.converged,
                sub_exceeds_add: sub[i].value > add[i].value,
            });
        }
    }
    Ok(rows)
}

pub fn cmd_table1(c: &Table1Cmd, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = table1_rows(c.tolerance)?;
    let body = match c.format {
        Format::Json => json_line(&rows),
        Format::Csv => {
            let mut s = String::from(
                "operation,count,published,computed,abs_diff,error_estimate,nodes_per_axis,converged,sub_exceeds_add\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.operation,
                    r.count,
                    fmt_num(r.published),
                    fmt_num(r.computed),
                    fmt_num(r.abs_diff),
                    fmt_num(r.error_estimate),
                    r.nodes_per_axis,
                    r.converged,
                    r.sub_exceeds_add
                ));
            }
            s.into_bytes()
        }
    };
    emit(c.out.as_deref(), stdout, &body)?;
    let stalled: Vec<String> = rows
        .iter()
        .filter(|r| !r.converged)
        .map(|r| format!("{} {} (estimate {:.1e})", r.operation, r.count, r.error_estimate))
        .collect();
    if stalled.is_empty() {
        Ok(())
    } else {
        Err(CliError::NonConvergence(stalled.join(", ")))
    }
}

#[derive(Serialize)]
struct WignerNode {
    x: f64,
    p: f64,
    #[serde(rename = "W")]
    w: f64,
}

pub fn cmd_wigner(c: &WignerCmd, stdout: &mut dyn Write) -> Result<(), CliError> {
    let state = c.state.build(c.p)?;
    let grid = PhaseSpaceGrid::square(c.extent, c.grid)?;
    let field = wigner_grid(&state, &grid)?;
    let name = c.out.display().to_string();
    let body = match c.format {
        Format::Csv => {
            let mut buf = Vec::new();
            field.write_csv(&mut buf).map_err(io_err(&name))?;
            buf
        }
        Format::Json => {
            let mut nodes = Vec::with_capacity(field.values.len());
            for i in 0..grid.nx {
                for j in 0..grid.np {
                    nodes.push(WignerNode { x: grid.x(i), p: grid.p(j), w: field.at(i, j) });
                }
            }
            json_line(&nodes)
        }
    };
    write_file(&c.out, &body)?;
    writeln!(stdout, "min {}", fmt_num(field.min())).map_err(io_err("<stdout>"))?;
    writeln!(stdout, "negative_nodes {}", field.negative_count()).map_err(io_err("<stdout>"))
}

pub fn cmd_tomogram(c: &TomogramCmd, stdout: &mut dyn Write) -> Result<(), CliError> {
    let state = c.state.build(c.p)?;
    let samples = tomogram_grid(&state, &c.x.points(), &c.theta.points());
    let name = c.out.display().to_string();
    let body = match c.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_tomogram_csv(&samples, &mut buf).map_err(io_err(&name))?;
            buf
        }
        Format::Json => json_line(&samples),
    };
    write_file(&c.out, &body)?;
    let min = samples.iter().map(|s| s.w).fold(f64::INFINITY, f64::min);
    let negative = samples.iter().filter(|s| s.w < 0.0).count();
    writeln!(stdout, "min {}", fmt_num(min)).map_err(io_err("<stdout>"))?;
    writeln!(stdout, "negative_nodes {negative}").map_err(io_err("<stdout>"))
}
