//! Iterative and direct solvers for the Hermitian moment systems, numeric
//! frame-bound estimation, and conditioning diagnostics.

use nalgebra::{Complex, DVector};

use crate::coef::CoefVector;
use crate::error::{Error, Result};
use crate::frame::{make_frame, FrameFamily, FrameKind};
use crate::gram::{gram, CrossGram};
use crate::index::IndexSet;
use crate::linalg::{sym_eigenvalues, sym_extremes, C64};
use crate::operators::LinearMap;

/// Default relative-residual stopping tolerance of the iterative solvers.
pub const DEFAULT_TOL: f64 = 1e-5;
/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 500;

const CURVATURE_BREAKDOWN: f64 = 1e-300;

/// Outcome of an iterative solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: CoefVector,
    pub iterations: usize,
    pub final_relative_residual: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsMethod {
    EigenNumeric,
    UserSupplied,
}

/// Frame bounds `0 < A <= B`, either estimated numerically or supplied.
#[derive(Debug, Clone, Copy)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub method: BoundsMethod,
}

impl FrameBounds {
    pub fn estimated(lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0 && lower <= upper) {
            return Err(Error::ParamDomain(format!(
                "frame bounds need 0 < A <= B, got A = {lower}, B = {upper}"
            )));
        }
        Ok(Self {
            lower,
            upper,
            method: BoundsMethod::EigenNumeric,
        })
    }

    /// User-supplied bounds for relaxation experiments. Only positivity and
    /// `B >= A/2` are required so the effective spectrum envelope
    /// `[A/2, B]` stays ordered.
    pub fn supplied(lower: f64, upper: f64) -> Result<Self> {
        if !(lower > 0.0 && upper > 0.0 && upper >= 0.5 * lower) {
            return Err(Error::ParamDomain(format!(
                "supplied bounds need A, B > 0 and B >= A/2, got A = {lower}, B = {upper}"
            )));
        }
        Ok(Self {
            lower,
            upper,
            method: BoundsMethod::UserSupplied,
        })
    }
}

/// Conjugate-gradient acceleration for the compressed frame operator.
///
/// Three-term recurrence on the search directions:
///
/// ```text
/// x_0 = 0,  r_0 = p_0 = rhs,  p_{-1} = 0
/// alpha_j  = <r_j, p_j> / <p_j, W p_j>
/// x_{j+1}  = x_j + alpha_j p_j
/// r_{j+1}  = r_j - alpha_j W p_j
/// p_{j+1}  = W p_j - (<W p_j, W p_j>/<p_j, W p_j>) p_j
///                  - (<W p_j, W p_{j-1}>/<p_{j-1}, W p_{j-1}>) p_{j-1}
/// ```
///
/// with the last term dropped while `p_{j-1} = 0`. All inner products are the
/// subspace inner products carried by the map (Euclidean when the working
/// frame is orthonormal). Stops once `||r_j|| / ||rhs|| <= tol`.
pub fn cg_solve(
    map: &LinearMap,
    rhs: &CoefVector,
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport> {
    if !(tol > 0.0) {
        return Err(Error::ParamDomain(format!("tolerance {tol} must be positive")));
    }
    if rhs.len() != map.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "rhs length {} vs operator dimension {}",
            rhs.len(),
            map.dimension()
        )));
    }

    let b = rhs.values();
    let rhs_norm = map.norm(b);
    let mut x = DVector::<C64>::zeros(b.len());
    if rhs_norm == 0.0 {
        return Ok(SolveReport {
            solution: CoefVector::new(rhs.index_set(), x, map.frame_id().to_string())?,
            iterations: 0,
            final_relative_residual: 0.0,
            converged: true,
        });
    }

    let mut r = b.clone();
    let mut p = b.clone();
    let mut p_prev: Option<DVector<C64>> = None;
    let mut wp_prev: Option<DVector<C64>> = None;
    let mut pwp_prev = C64::new(0.0, 0.0);

    let mut iterations = 0usize;
    let mut rel = 1.0f64;
    let mut converged = false;

    for iter in 1..=max_iter {
        let wp = map.apply(&p);
        let pwp = map.inner(&p, &wp);
        if pwp.norm() <= CURVATURE_BREAKDOWN {
            return Err(Error::CgBreakdown(iter));
        }
        let alpha = map.inner(&r, &p) / pwp;
        x.axpy(alpha, &p, C64::new(1.0, 0.0));
        r.axpy(-alpha, &wp, C64::new(1.0, 0.0));
        iterations = iter;
        rel = map.norm(&r) / rhs_norm;
        if rel <= tol {
            converged = true;
            break;
        }

        let beta = map.inner(&wp, &wp) / pwp;
        let mut p_next = wp.clone();
        p_next.axpy(-beta, &p, C64::new(1.0, 0.0));
        if let (Some(pp), Some(wpp)) = (&p_prev, &wp_prev) {
            if pwp_prev.norm() > CURVATURE_BREAKDOWN {
                let gamma = map.inner(&wp, wpp) / pwp_prev;
                p_next.axpy(-gamma, pp, C64::new(1.0, 0.0));
            }
        }
        p_prev = Some(p);
        wp_prev = Some(wp);
        pwp_prev = pwp;
        p = p_next;
    }

    Ok(SolveReport {
        solution: CoefVector::new(rhs.index_set(), x, map.frame_id().to_string())?,
        iterations,
        final_relative_residual: rel,
        converged,
    })
}

/// Diagnostic twin of [`cg_solve`]: runs the same recurrence and reports the
/// first iteration whose iterate is within `tol` (relative, in the map norm)
/// of a reference solution. Used to compare residual-based iteration counts
/// with error-based ones.
pub fn cg_iterations_to_reference(
    map: &LinearMap,
    rhs: &CoefVector,
    reference: &CoefVector,
    tol: f64,
    max_iter: usize,
) -> Result<Option<usize>> {
    let b = rhs.values();
    let ref_norm = map.norm(reference.values()).max(f64::MIN_POSITIVE);
    let mut x = DVector::<C64>::zeros(b.len());
    let mut r = b.clone();
    let mut p = b.clone();
    let mut p_prev: Option<DVector<C64>> = None;
    let mut wp_prev: Option<DVector<C64>> = None;
    let mut pwp_prev = C64::new(0.0, 0.0);

    for iter in 1..=max_iter {
        let wp = map.apply(&p);
        let pwp = map.inner(&p, &wp);
        if pwp.norm() <= CURVATURE_BREAKDOWN {
            return Err(Error::CgBreakdown(iter));
        }
        let alpha = map.inner(&r, &p) / pwp;
        x.axpy(alpha, &p, C64::new(1.0, 0.0));
        r.axpy(-alpha, &wp, C64::new(1.0, 0.0));
        let err = map.norm(&(&x - reference.values())) / ref_norm;
        if err <= tol {
            return Ok(Some(iter));
        }
        let beta = map.inner(&wp, &wp) / pwp;
        let mut p_next = wp.clone();
        p_next.axpy(-beta, &p, C64::new(1.0, 0.0));
        if let (Some(pp), Some(wpp)) = (&p_prev, &wp_prev) {
            if pwp_prev.norm() > CURVATURE_BREAKDOWN {
                let gamma = map.inner(&wp, wpp) / pwp_prev;
                p_next.axpy(-gamma, pp, C64::new(1.0, 0.0));
            }
        }
        p_prev = Some(p);
        wp_prev = Some(wp);
        pwp_prev = pwp;
        p = p_next;
    }
    Ok(None)
}

/// Relaxed Richardson iteration
/// `x_j = x_{j-1} + 2/(A/2 + B) (rhs - W x_{j-1})`.
///
/// The effective lower bound `A/2` reflects the sampling-size rule under
/// which the compressed operator keeps at least half the frame's lower bound.
/// Divergence (residual growth over 10 consecutive steps) is reported as an
/// error.
pub fn richardson_solve(
    map: &LinearMap,
    rhs: &CoefVector,
    bounds: &FrameBounds,
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport> {
    if !(tol > 0.0) {
        return Err(Error::ParamDomain(format!("tolerance {tol} must be positive")));
    }
    if rhs.len() != map.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "rhs length {} vs operator dimension {}",
            rhs.len(),
            map.dimension()
        )));
    }
    let relax = 2.0 / (0.5 * bounds.lower + bounds.upper);

    let b = rhs.values();
    let rhs_norm = map.norm(b);
    let mut x = DVector::<C64>::zeros(b.len());
    if rhs_norm == 0.0 {
        return Ok(SolveReport {
            solution: CoefVector::new(rhs.index_set(), x, map.frame_id().to_string())?,
            iterations: 0,
            final_relative_residual: 0.0,
            converged: true,
        });
    }

    let mut r = b.clone();
    let mut rel_prev = f64::INFINITY;
    let mut growth = 0usize;
    let mut iterations = 0usize;
    let mut rel = 1.0f64;
    let mut converged = false;
    let relax_c = C64::new(relax, 0.0);

    for iter in 1..=max_iter {
        let wr = map.apply(&r);
        x.axpy(relax_c, &r, C64::new(1.0, 0.0));
        r.axpy(-relax_c, &wr, C64::new(1.0, 0.0));
        iterations = iter;
        rel = map.norm(&r) / rhs_norm;
        if rel <= tol {
            converged = true;
            break;
        }
        if rel > rel_prev {
            growth += 1;
            if growth >= 10 {
                return Err(Error::Diverged(10));
            }
        } else {
            growth = 0;
        }
        rel_prev = rel;
    }

    Ok(SolveReport {
        solution: CoefVector::new(rhs.index_set(), x, map.frame_id().to_string())?,
        iterations,
        final_relative_residual: rel,
        converged,
    })
}

/// Least squares `min_a || Omega a - f_hat ||` by column-pivoted QR.
///
/// `omega` holds `<psi_j, phi_l>` (rows are the data index); the minimizer is
/// the coefficient vector of the best admissible-span fit to the sampled
/// data in the frame-coefficient sense.
pub fn direct_ls(omega: &CrossGram, f_hat: &CoefVector) -> Result<CoefVector> {
    if f_hat.index_set() != omega.rows() {
        return Err(Error::DimensionMismatch(format!(
            "data covers half-width {}, cross-Gram rows {}",
            f_hat.index_set().half_width(),
            omega.rows().half_width()
        )));
    }
    solve_ls(omega.matrix(), f_hat.values(), omega.cols(), omega.col_frame_id())
}

pub(crate) fn solve_ls(
    a: &nalgebra::DMatrix<f64>,
    b: &DVector<C64>,
    cols: IndexSet,
    frame_id: &str,
) -> Result<CoefVector> {
    let ncols = a.ncols();
    let qr = a.clone().col_piv_qr();
    let r = qr.r();
    let rank = (0..ncols)
        .take_while(|&i| r[(i, i)].abs() > 1e-12 * r[(0, 0)].abs().max(f64::MIN_POSITIVE))
        .count();
    if rank < ncols {
        return Err(Error::RankDeficient { rank, cols: ncols });
    }
    let q = qr.q();
    let solve_part = |v: DVector<f64>| -> Option<DVector<f64>> {
        let y = q.tr_mul(&v);
        let mut z = y;
        if !r.solve_upper_triangular_mut(&mut z) {
            return None;
        }
        qr.p().inv_permute_rows(&mut z);
        Some(z)
    };
    let re = solve_part(b.map(|z| z.re));
    let im = solve_part(b.map(|z| z.im));
    match (re, im) {
        (Some(re), Some(im)) => {
            let values = DVector::from_fn(ncols, |i, _| Complex::new(re[i], im[i]));
            CoefVector::new(cols, values, frame_id)
        }
        _ => Err(Error::RankDeficient { rank, cols: ncols }),
    }
}

/// Numeric surrogate for the frame bounds of an exponential family.
///
/// Extreme eigenvalues of the moment matrix of the family against the
/// harmonic basis over bandlimited probes of the given half-width, with the
/// data index extended to twice the probe so the truncated frame sum
/// captures the tail. Larger probes explore more of the space and can only
/// shrink the lower estimate.
pub fn estimate_frame_bounds(frame: &FrameFamily, probe_half_width: usize) -> Result<FrameBounds> {
    if probe_half_width < 8 {
        return Err(Error::ProbeTooSmall {
            got: probe_half_width,
            required: 8,
        });
    }
    let rows_half_width = 2 * probe_half_width;
    let extended = frame.extend(rows_half_width);
    let probe_basis = make_frame(FrameKind::IntegerFourier, probe_half_width, 0.0, 0)?;
    let omega = gram(
        &extended,
        &probe_basis,
        IndexSet::new(rows_half_width),
        IndexSet::new(probe_half_width),
    )?;
    let mut n = omega.matrix().transpose() * omega.matrix();
    crate::linalg::symmetrize(&mut n);
    let (lmin, lmax) = sym_extremes(&n);
    if !(lmin > 0.0) {
        return Err(Error::SingularSystem {
            cond: if lmin == 0.0 { f64::INFINITY } else { lmax / lmin },
        });
    }
    FrameBounds::estimated(lmin, lmax)
}

/// Two-norm condition number of the map's moment matrix (ratio of extreme
/// singular values); infinite when the smallest singular value vanishes.
pub fn condition_number(map: &LinearMap) -> f64 {
    let ev = sym_eigenvalues(map.moment_matrix());
    let mut smin = f64::INFINITY;
    let mut smax = 0.0f64;
    for &l in ev.iter() {
        let s = l.abs();
        smin = smin.min(s);
        smax = smax.max(s);
    }
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}
