//! Configuration-driven benchmark harness: sweeps methods over truncation
//! sizes and seeds, aggregates per `(method, n)`, and emits CSV or JSON.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::SystemTime;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::frame::{make_frame, FrameFamily, FrameKind, KADEC_BOUND};
use crate::gram::gram;
use crate::index::IndexSet;
use crate::linalg::gram_lambda_min;
use crate::reconstruct::{reconstruct, Method, ReconstructionResult, SolverOptions};
use crate::solvers::{estimate_frame_bounds, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::theory::{choose_m, SelectionParams, SelectionRule};

/// How the sampling half-width `m` is derived from `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MRuleConfig {
    /// `m = ceil(factor * n)`.
    Factor { factor: f64 },
    /// One of the invertibility-driven selection rules; the frame lower
    /// bound is estimated numerically and `lambda_min` of the relevant
    /// truncated Gram is computed per `(n, seed)`.
    Rule {
        rule: SelectionRule,
        #[serde(default = "default_c")]
        c: f64,
        #[serde(default = "default_s")]
        s: f64,
        #[serde(default = "default_t")]
        t: f64,
        #[serde(default = "default_alpha")]
        alpha: f64,
        #[serde(default)]
        probe: Option<usize>,
    },
}

fn default_c() -> f64 {
    crate::frame::CROSS_DECAY_C1_UNNORMALIZED
}
fn default_s() -> f64 {
    crate::frame::CROSS_DECAY_S
}
fn default_t() -> f64 {
    1.0
}
fn default_alpha() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub panels: usize,
    pub order: usize,
}

/// Full benchmark configuration. Everything that influences the numbers is
/// covered by the semantic hash; output paths and format are excluded.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchConfig {
    pub function: String,
    pub n_list: Vec<usize>,
    pub m_rule: MRuleConfig,
    pub methods: Vec<Method>,
    pub seeds: Vec<u64>,
    #[serde(default = "default_jitter")]
    pub jitter: f64,
    #[serde(default)]
    pub quadrature: Option<QuadSpec>,
    #[serde(default = "default_tol")]
    pub cg_tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_grid")]
    pub grid_size: usize,
}

fn default_jitter() -> f64 {
    KADEC_BOUND
}
fn default_tol() -> f64 {
    DEFAULT_TOL
}
fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}
fn default_grid() -> usize {
    1024
}

impl BenchConfig {
    /// Preset reproducing one of the three stock experiments.
    ///
    /// 1. gaussian, `m = ceil(1.4 n)`.
    /// 2. cospoly with fewer samples, `m = ceil(1.2 n)`.
    /// 3. bump6, `m = ceil(1.4 n)`; the solver tolerance is tightened to
    ///    1e-10 so the solve error stays below the smooth-target error floor
    ///    (~1e-9 at the largest size).
    pub fn example(number: u8) -> Result<BenchConfig> {
        let (function, factor, cg_tol) = match number {
            1 => ("gaussian", 1.4, DEFAULT_TOL),
            2 => ("cospoly", 1.2, DEFAULT_TOL),
            3 => ("bump6", 1.4, 1e-10),
            other => {
                return Err(Error::Config(format!(
                    "unknown example {other}; valid: 1, 2, 3"
                )))
            }
        };
        Ok(BenchConfig {
            function: function.to_string(),
            n_list: vec![16, 32, 64, 128, 256],
            m_rule: MRuleConfig::Factor { factor },
            methods: vec![Method::New, Method::Cc, Method::Fourier],
            seeds: vec![1, 2, 3, 4, 5],
            jitter: KADEC_BOUND,
            quadrature: None,
            cg_tol,
            max_iter: DEFAULT_MAX_ITER,
            grid_size: 1024,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() || self.n_list.iter().any(|&n| n == 0) {
            return Err(Error::Config("n list must be nonempty and positive".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("seed list must be nonempty".into()));
        }
        if !(self.cg_tol > 0.0) {
            return Err(Error::Config(format!(
                "tolerance {} must be positive",
                self.cg_tol
            )));
        }
        if let MRuleConfig::Factor { factor } = self.m_rule {
            if !(factor >= 1.0) {
                return Err(Error::Config(format!(
                    "m factor {factor} must be at least 1"
                )));
            }
        }
        crate::target::test_function(&self.function)?;
        if !(0.0..=KADEC_BOUND).contains(&self.jitter) {
            return Err(Error::Config(format!(
                "jitter {} outside [0, 1/4]",
                self.jitter
            )));
        }
        Ok(())
    }

    /// SHA-256 over the canonical JSON of the semantic fields.
    pub fn semantic_hash(&self) -> String {
        let doc = serde_json::json!({
            "function": self.function,
            "n_list": self.n_list,
            "m_rule": self.m_rule,
            "methods": self.methods,
            "seeds": self.seeds,
            "jitter": self.jitter,
            "quadrature": self.quadrature,
            "cg_tol": self.cg_tol,
            "max_iter": self.max_iter,
            "grid_size": self.grid_size,
        });
        let bytes = serde_json::to_vec(&doc).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        hex_string(&hasher.finalize())
    }
}

fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

/// One raw sweep row; failures keep their slot so partial runs still report.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub method: Method,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub outcome: std::result::Result<ReconstructionResult, String>,
}

/// Median-over-seeds aggregate for one `(method, n)` cell.
#[derive(Debug, Clone, Serialize)]
pub struct Aggregate {
    pub method: Method,
    pub n: usize,
    pub m: usize,
    pub seeds: usize,
    pub l2_error_median: f64,
    pub l2_error_min: f64,
    pub l2_error_max: f64,
    pub max_pointwise_error_median: f64,
    pub iterations_median: f64,
    pub condition_number_median: f64,
    pub wall_time_ms_median: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub crate_version: String,
    pub created_unix_s: u64,
    pub config_hash: String,
}

pub struct BenchTable {
    pub config: BenchConfig,
    pub rows: Vec<BenchRow>,
    pub aggregates: Vec<Aggregate>,
    pub provenance: Provenance,
}

impl BenchTable {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }
}

fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn sampling_half_width(config: &BenchConfig, method: Method, n: usize, seed: u64) -> Result<usize> {
    if method == Method::Fourier {
        return Ok(n);
    }
    match config.m_rule {
        MRuleConfig::Factor { factor } => Ok((factor * n as f64).ceil() as usize),
        MRuleConfig::Rule {
            rule,
            c,
            s,
            t,
            alpha,
            probe,
        } => {
            let max_n = *config.n_list.iter().max().expect("validated nonempty");
            let probe = probe.unwrap_or(4 * max_n).max(64);
            let frame = make_frame(FrameKind::JitteredFourier, probe, config.jitter, seed)?;
            let bounds = estimate_frame_bounds(&frame, probe)?;
            let lambda_min = match rule {
                SelectionRule::Cc => {
                    let idx = IndexSet::new(n);
                    let psi_self = gram(&frame, &frame, idx, idx)?;
                    gram_lambda_min(psi_self.matrix())?
                }
                // The admissible family is the orthonormal harmonic basis.
                _ => 1.0,
            };
            let params = SelectionParams {
                frame_lower_bound: bounds.lower,
                cross_decay_c: c,
                cross_decay_s: s,
                lambda_min,
                alpha,
                admissible_decay_t: t,
            };
            let m = choose_m(rule, n, &params)?;
            Ok(m.max(n))
        }
    }
}

/// Executes the full `(method, n, seed)` cross product.
///
/// Rows run in parallel over a bounded worker pool; results are collected in
/// the deterministic sweep order, so the output is independent of the pool
/// size. Row failures are recorded in place and the run completes.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchTable> {
    config.validate()?;
    let f = crate::target::test_function(&config.function)?;

    struct RowSpec {
        method: Method,
        n: usize,
        m: usize,
        seed: u64,
    }

    let mut specs = Vec::new();
    for &method in &config.methods {
        for &n in &config.n_list {
            for &seed in &config.seeds {
                let m = sampling_half_width(config, method, n, seed)?;
                specs.push(RowSpec { method, n, m, seed });
            }
        }
    }

    let opts = SolverOptions {
        tol: config.cg_tol,
        max_iter: config.max_iter,
        quadrature: config.quadrature.map(|q| (q.panels, q.order)),
        grid_size: config.grid_size,
    };

    let run_row = |spec: &RowSpec| -> BenchRow {
        let frame: Result<FrameFamily> = if spec.method == Method::Fourier {
            make_frame(FrameKind::IntegerFourier, spec.n, 0.0, spec.seed)
        } else {
            make_frame(FrameKind::JitteredFourier, spec.m, config.jitter, spec.seed)
        };
        let outcome = frame
            .and_then(|frame| reconstruct(spec.method, &f, &frame, spec.n, spec.m, &opts))
            .map_err(|e| e.to_string());
        BenchRow {
            method: spec.method,
            n: spec.n,
            m: spec.m,
            seed: spec.seed,
            outcome,
        }
    };

    let rows: Vec<BenchRow> = if specs.len() > 1 {
        specs.par_iter().map(run_row).collect()
    } else {
        specs.iter().map(run_row).collect()
    };

    let mut aggregates = Vec::new();
    for &method in &config.methods {
        for &n in &config.n_list {
            let cell: Vec<&ReconstructionResult> = rows
                .iter()
                .filter(|r| r.method == method && r.n == n)
                .filter_map(|r| r.outcome.as_ref().ok())
                .collect();
            if cell.is_empty() {
                continue;
            }
            let stat = |f: &dyn Fn(&ReconstructionResult) -> f64| -> f64 {
                median(&mut cell.iter().map(|r| f(r)).collect::<Vec<f64>>())
            };
            let l2s: Vec<f64> = cell.iter().map(|r| r.l2_error).collect();
            aggregates.push(Aggregate {
                method,
                n,
                m: cell[0].m,
                seeds: cell.len(),
                l2_error_median: stat(&|r| r.l2_error),
                l2_error_min: l2s.iter().cloned().fold(f64::INFINITY, f64::min),
                l2_error_max: l2s.iter().cloned().fold(0.0, f64::max),
                max_pointwise_error_median: stat(&|r| r.max_pointwise_error),
                iterations_median: stat(&|r| r.iterations as f64),
                condition_number_median: stat(&|r| r.condition_number),
                wall_time_ms_median: stat(&|r| r.wall_time.as_secs_f64() * 1e3),
            });
        }
    }

    Ok(BenchTable {
        config: config.clone(),
        rows,
        aggregates,
        provenance: Provenance {
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            created_unix_s: SystemTime::now()
                .duration_since(SystemTime::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            config_hash: config.semantic_hash(),
        },
    })
}

pub const CSV_HEADER: &str =
    "method,n,m,seed,l2_error,max_pointwise_error,iterations,condition_number,wall_time_ms";

const AGG_HEADER: &str = "method,n,m,seeds,l2_error_median,l2_error_min,l2_error_max,\
max_pointwise_error_median,iterations_median,condition_number_median,wall_time_ms_median";

fn write_file(path: &Path, contents: &str) -> Result<()> {
    let io_err = |source: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(io_err)?;
        }
    }
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    file.write_all(contents.as_bytes()).map_err(io_err)
}

fn raw_csv(table: &BenchTable) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        match &row.outcome {
            Ok(r) => {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    row.method,
                    row.n,
                    row.m,
                    row.seed,
                    r.l2_error,
                    r.max_pointwise_error,
                    r.iterations,
                    r.condition_number,
                    r.wall_time.as_secs_f64() * 1e3,
                ));
            }
            Err(_) => {
                out.push_str(&format!(
                    "{},{},{},{},NaN,NaN,0,NaN,NaN\n",
                    row.method, row.n, row.m, row.seed
                ));
            }
        }
    }
    out
}

fn agg_csv(table: &BenchTable) -> String {
    let mut out = String::from(AGG_HEADER);
    out.push('\n');
    for a in &table.aggregates {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            a.method,
            a.n,
            a.m,
            a.seeds,
            a.l2_error_median,
            a.l2_error_min,
            a.l2_error_max,
            a.max_pointwise_error_median,
            a.iterations_median,
            a.condition_number_median,
            a.wall_time_ms_median,
        ));
    }
    out
}

/// Pointwise-error dump for one `(method, n)` cell: the median-error seed's
/// profile as `x,abs_error` lines.
fn pointwise_csv(rows: &[&ReconstructionResult], grid_size: usize) -> Option<String> {
    if rows.is_empty() {
        return None;
    }
    let mut sorted: Vec<&&ReconstructionResult> = rows.iter().collect();
    sorted.sort_by(|a, b| {
        a.l2_error
            .partial_cmp(&b.l2_error)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.seed.cmp(&b.seed))
    });
    let chosen = sorted[sorted.len() / 2];
    let grid = crate::reconstruct::uniform_grid(grid_size.max(2));
    let mut out = String::from("x,abs_error\n");
    for (x, e) in grid.iter().zip(chosen.pointwise.iter()) {
        out.push_str(&format!("{x},{e}\n"));
    }
    Some(out)
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "table".into());
    path.with_file_name(format!("{stem}{suffix}"))
}

#[derive(Serialize)]
struct JsonRow<'a> {
    method: Method,
    n: usize,
    m: usize,
    seed: u64,
    l2_error: Option<f64>,
    max_pointwise_error: Option<f64>,
    iterations: Option<usize>,
    condition_number: Option<f64>,
    wall_time_ms: Option<f64>,
    converged: Option<bool>,
    error: Option<&'a str>,
}

/// Writes the table.
///
/// CSV: the raw rows at `path`, aggregates in a sibling `<stem>.agg.csv`, and
/// one `<stem>.pointwise.<method>.n<n>.csv` per cell. JSON: a single document
/// with config, provenance, rows, and aggregates at `path`.
pub fn emit(table: &BenchTable, format: OutputFormat, path: &Path) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            write_file(path, &raw_csv(table))?;
            write_file(&sibling(path, ".agg.csv"), &agg_csv(table))?;
            for a in &table.aggregates {
                let cell: Vec<&ReconstructionResult> = table
                    .rows
                    .iter()
                    .filter(|r| r.method == a.method && r.n == a.n)
                    .filter_map(|r| r.outcome.as_ref().ok())
                    .collect();
                if let Some(body) = pointwise_csv(&cell, table.config.grid_size) {
                    let name = format!(".pointwise.{}.n{}.csv", a.method, a.n);
                    write_file(&sibling(path, &name), &body)?;
                }
            }
            Ok(())
        }
        OutputFormat::Json => {
            let rows: Vec<JsonRow> = table
                .rows
                .iter()
                .map(|row| match &row.outcome {
                    Ok(r) => JsonRow {
                        method: row.method,
                        n: row.n,
                        m: row.m,
                        seed: row.seed,
                        l2_error: Some(r.l2_error),
                        max_pointwise_error: Some(r.max_pointwise_error),
                        iterations: Some(r.iterations),
                        condition_number: Some(r.condition_number),
                        wall_time_ms: Some(r.wall_time.as_secs_f64() * 1e3),
                        converged: Some(r.converged),
                        error: None,
                    },
                    Err(e) => JsonRow {
                        method: row.method,
                        n: row.n,
                        m: row.m,
                        seed: row.seed,
                        l2_error: None,
                        max_pointwise_error: None,
                        iterations: None,
                        condition_number: None,
                        wall_time_ms: None,
                        converged: None,
                        error: Some(e),
                    },
                })
                .collect();
            let doc = serde_json::json!({
                "config": table.config,
                "provenance": table.provenance,
                "rows": rows,
                "aggregates": table.aggregates,
            });
            let body = serde_json::to_string_pretty(&doc).map_err(|e| {
                Error::Config(format!("serializing results: {e}"))
            })?;
            write_file(path, &body)
        }
    }
}
