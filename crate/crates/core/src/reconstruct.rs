//! End-to-end reconstruction pipelines and error metrics.
//!
//! Four routes recover a function on `[-1, 1]` from `2m+1` frame coefficients
//! `<f, psi_j>`, `|j| <= m`:
//!
//! * `new` — project the truncated frame-operator image onto the harmonic
//!   span of `2n+1` modes and invert the compressed operator with conjugate
//!   gradients; the solution is a harmonic expansion.
//! * `cc` — compress onto the span of the first `2n+1` sampling-frame
//!   elements instead (Casazza-Christensen), solving the sampling-frame
//!   moment system; the solution expands against the jittered family.
//! * `finite-section` — direct solve of the truncated basis-moment system on
//!   the same data; coincides with `new` up to the solver when the admissible
//!   family is the harmonic basis.
//! * `fourier` — plain harmonic partial sum with `m = n` (the zero-jitter
//!   degenerate case, where the frame operator is the identity).

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coef::CoefVector;
use crate::error::{Error, Result};
use crate::frame::{make_frame, FrameFamily, FrameKind};
use crate::gram::gram;
use crate::index::IndexSet;
use crate::linalg::{real_mat_tr_mul_complex, C64};
use crate::operators::{assemble_v, assemble_w, finite_section, finite_section_matrix, LinearMap, MapLabel};
use crate::quadrature::{build_quadrature, QuadratureRule};
use crate::sampling::{default_quadrature, frame_coefficients, required_nodes};
use crate::solvers::{cg_solve, condition_number, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::target::TargetFunction;

/// Reconstruction route identifiers; the strings are part of the CSV schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    New,
    Cc,
    FiniteSection,
    Fourier,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "new" => Ok(Method::New),
            "cc" => Ok(Method::Cc),
            "finite-section" => Ok(Method::FiniteSection),
            "fourier" => Ok(Method::Fourier),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::New => "new",
            Method::Cc => "cc",
            Method::FiniteSection => "finite-section",
            Method::Fourier => "fourier",
        })
    }
}

/// Per-run solver and discretization options.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Relative-residual tolerance of the conjugate-gradient solve.
    pub tol: f64,
    pub max_iter: usize,
    /// Override for the coefficient quadrature `(panels, order)`.
    pub quadrature: Option<(usize, usize)>,
    /// Uniform evaluation grid size for pointwise errors.
    pub grid_size: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            quadrature: None,
            grid_size: 1024,
        }
    }
}

/// One reconstruction outcome with its diagnostics.
#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub method: Method,
    pub n: usize,
    pub m: usize,
    pub coefficients: CoefVector,
    pub l2_error: f64,
    pub max_pointwise_error: f64,
    /// `|f - recon|` on the uniform evaluation grid.
    pub pointwise: Vec<f64>,
    pub iterations: usize,
    pub condition_number: f64,
    pub converged: bool,
    pub seed: u64,
    pub wall_time: Duration,
}

/// Uniform grid of `len` points covering `[-1, 1]` inclusive.
pub fn uniform_grid(len: usize) -> Vec<f64> {
    if len == 1 {
        return vec![0.0];
    }
    (0..len)
        .map(|i| -1.0 + 2.0 * i as f64 / (len - 1) as f64)
        .collect()
}

/// Evaluates `sum_j coef_j e^{-i pi lambda_j x}` on a grid.
pub fn evaluate_expansion(
    coef: &CoefVector,
    frame: &FrameFamily,
    grid: &[f64],
) -> Result<Vec<C64>> {
    if coef.frame_id() != frame.id() {
        return Err(Error::FrameMismatch {
            coef: coef.frame_id().to_string(),
            frame: frame.id(),
        });
    }
    if !coef.index_set().is_subset_of(&frame.index_set()) {
        return Err(Error::IndexOutOfRange {
            index: coef.index_set().half_width() as i64,
            half_width: frame.index_set().half_width(),
        });
    }
    let freqs: Vec<f64> = coef.index_set().iter().map(|j| frame.frequency(j)).collect();
    let values = coef.values();
    Ok(grid
        .iter()
        .map(|&x| {
            let mut acc = C64::new(0.0, 0.0);
            for (p, &lambda) in freqs.iter().enumerate() {
                let theta = -std::f64::consts::PI * lambda * x;
                let (sin, cos) = theta.sin_cos();
                acc += values[p] * C64::new(cos, sin);
            }
            acc
        })
        .collect())
}

/// L2 and pointwise reconstruction errors.
///
/// The L2 error is `sqrt((1/2) integral |f - recon|^2)` under the normalized
/// inner product, evaluated with `q`; pointwise errors are `|f(x) - recon(x)|`
/// on the grid with the complex residual counted in full.
pub fn error_metrics(
    f: &TargetFunction,
    coef: &CoefVector,
    frame: &FrameFamily,
    q: &QuadratureRule,
    grid: &[f64],
) -> Result<(f64, f64, Vec<f64>)> {
    let got = q.panels() * q.order();
    let required = required_nodes(coef.index_set().half_width());
    if got < required {
        return Err(Error::UnderResolvedQuadrature {
            got,
            required,
            half_width: coef.index_set().half_width(),
        });
    }
    let recon_at_nodes = evaluate_expansion(coef, frame, q.nodes())?;
    let mut acc = 0.0f64;
    for (k, rv) in recon_at_nodes.iter().enumerate() {
        let x = q.nodes()[k];
        let d = C64::new(f.eval(x), 0.0) - rv;
        acc += q.weights()[k] * d.norm_sqr();
    }
    let l2 = (0.5 * acc).max(0.0).sqrt();

    let recon_at_grid = evaluate_expansion(coef, frame, grid)?;
    let pointwise: Vec<f64> = grid
        .iter()
        .zip(recon_at_grid.iter())
        .map(|(&x, rv)| (C64::new(f.eval(x), 0.0) - rv).norm())
        .collect();
    let max_pointwise = pointwise.iter().fold(0.0f64, |a, &v| a.max(v));
    Ok((l2, max_pointwise, pointwise))
}

fn quadrature_for(opts: &SolverOptions, half_width: usize) -> Result<QuadratureRule> {
    match opts.quadrature {
        Some((panels, order)) => build_quadrature(panels, order),
        None => Ok(default_quadrature(half_width)),
    }
}

/// Runs one reconstruction.
///
/// `frame` is the sampling family; it must cover `|j| <= m`. The `fourier`
/// route ignores it, forces `m = n`, and reports a unit condition number.
pub fn reconstruct(
    method: Method,
    f: &TargetFunction,
    frame: &FrameFamily,
    n: usize,
    m: usize,
    opts: &SolverOptions,
) -> Result<ReconstructionResult> {
    let start = Instant::now();
    let idx_n = IndexSet::new(n);
    let grid = uniform_grid(opts.grid_size.max(2));

    if method != Method::Fourier {
        if m < n {
            return Err(Error::ParamDomain(format!(
                "need m >= n, got m = {m}, n = {n}"
            )));
        }
        if frame.index_set().half_width() < m {
            return Err(Error::IndexOutOfRange {
                index: m as i64,
                half_width: frame.index_set().half_width(),
            });
        }
    }

    let (coefficients, iterations, cond, converged, m_eff) = match method {
        Method::Fourier => {
            let basis = make_frame(FrameKind::IntegerFourier, n, 0.0, 0)?;
            let q = quadrature_for(opts, n)?;
            let coef = frame_coefficients(f, &basis, idx_n, &q)?;
            (coef, 0usize, 1.0f64, true, n)
        }
        Method::New => {
            let idx_m = IndexSet::new(m);
            let q = quadrature_for(opts, m)?;
            let f_hat = frame_coefficients(f, frame, idx_m, &q)?;
            let basis = make_frame(FrameKind::IntegerFourier, n, 0.0, 0)?;
            let omega = gram(frame, &basis, idx_m, idx_n)?;
            let phi_self = gram(&basis, &basis, idx_n, idx_n)?;
            let map = assemble_w(&omega, &phi_self)?;
            // Moments of the truncated frame-operator image against the basis.
            let rhs_values = real_mat_tr_mul_complex(omega.matrix(), f_hat.values());
            let rhs = map.gram_solve(&rhs_values);
            let rhs = CoefVector::new(idx_n, rhs, basis.id())?;
            let report = cg_solve(&map, &rhs, opts.tol, opts.max_iter)?;
            let cond = condition_number(&map);
            (report.solution, report.iterations, cond, report.converged, m)
        }
        Method::Cc => {
            let idx_m = IndexSet::new(m);
            let q = quadrature_for(opts, m)?;
            let f_hat = frame_coefficients(f, frame, idx_m, &q)?;
            let rect = gram(frame, frame, idx_m, idx_n)?;
            let psi_self = gram(frame, frame, idx_n, idx_n)?;
            let v = assemble_v(&rect, &psi_self)?;
            // Sampling-frame moments of the truncated frame-operator image;
            // the subspace Gram cancels between the two sides, so conjugate
            // gradients runs on the Hermitian moment system itself.
            let rhs_values = real_mat_tr_mul_complex(rect.matrix(), f_hat.values());
            let rhs = CoefVector::new(idx_n, rhs_values, frame.id())?;
            let system = v.moment_system()?;
            let report = cg_solve(&system, &rhs, opts.tol, opts.max_iter)?;
            let cond = condition_number(&v);
            (report.solution, report.iterations, cond, report.converged, m)
        }
        Method::FiniteSection => {
            let idx_m = IndexSet::new(m);
            let q = quadrature_for(opts, m)?;
            let f_hat = frame_coefficients(f, frame, idx_m, &q)?;
            let basis = make_frame(FrameKind::IntegerFourier, n, 0.0, 0)?;
            let omega = gram(frame, &basis, idx_m, idx_n)?;
            let moments = real_mat_tr_mul_complex(omega.matrix(), f_hat.values());
            let moments = CoefVector::new(idx_n, moments, basis.id())?;
            let coef = finite_section(&omega, &moments, m)?;
            let fs = finite_section_matrix(&omega, m)?;
            let map = LinearMap::from_moment(MapLabel::FiniteSection, fs, idx_n, basis.id())?;
            let cond = condition_number(&map);
            (coef, 0usize, cond, true, m)
        }
    };

    // Expansion frame for evaluation: the jittered family for `cc`, the
    // harmonic basis otherwise.
    let eval_frame = match method {
        Method::Cc => frame.clone(),
        _ => make_frame(FrameKind::IntegerFourier, n, 0.0, 0)?,
    };
    let err_q = match opts.quadrature {
        Some((panels, order)) => build_quadrature(panels, order)?,
        None => default_quadrature(n),
    };
    let (l2_error, max_pointwise_error, pointwise) =
        error_metrics(f, &coefficients, &eval_frame, &err_q, &grid)?;

    Ok(ReconstructionResult {
        method,
        n,
        m: m_eff,
        coefficients,
        l2_error,
        max_pointwise_error,
        pointwise,
        iterations,
        condition_number: cond,
        converged,
        seed: frame.seed(),
        wall_time: start.elapsed(),
    })
}
