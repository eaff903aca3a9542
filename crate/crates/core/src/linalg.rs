//! Internal dense linear-algebra helpers shared by the operator and solver
//! modules: symmetric eigenvalue wrappers, a diagonally pivoted Cholesky for
//! the invertible-principal-submatrix fallback, and real-matrix application to
//! complex vectors.

use nalgebra::{Cholesky, Complex, DMatrix, DVector, Dyn};

use crate::error::{Error, Result};

pub(crate) type C64 = Complex<f64>;

/// Relative eigenvalue threshold below which a Gram matrix is treated as
/// singular and the principal-submatrix fallback kicks in.
pub(crate) const SINGULAR_REL_TOL: f64 = 1e-10;

pub(crate) fn sym_eigenvalues(m: &DMatrix<f64>) -> DVector<f64> {
    m.clone().symmetric_eigen().eigenvalues
}

/// Smallest and largest eigenvalue of a symmetric matrix.
pub(crate) fn sym_extremes(m: &DMatrix<f64>) -> (f64, f64) {
    let ev = sym_eigenvalues(m);
    (ev.min(), ev.max())
}

/// Smallest eigenvalue to be used as a divisor in the theory constants.
///
/// When the matrix is numerically singular (lambda_min <= 1e-10 lambda_max)
/// the value is taken from the largest well-conditioned principal submatrix
/// selected by pivoted Cholesky.
pub(crate) fn gram_lambda_min(m: &DMatrix<f64>) -> Result<f64> {
    let (min, max) = sym_extremes(m);
    if max <= 0.0 {
        return Err(Error::SingularSystem { cond: f64::INFINITY });
    }
    if min > SINGULAR_REL_TOL * max {
        return Ok(min);
    }
    let piv = pivoted_cholesky(m, SINGULAR_REL_TOL);
    if piv.rank == 0 {
        return Err(Error::SingularSystem { cond: f64::INFINITY });
    }
    let sub = select_principal(m, &piv.perm[..piv.rank]);
    Ok(sym_extremes(&sub).0)
}

fn select_principal(m: &DMatrix<f64>, keep: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(keep.len(), keep.len(), |r, c| m[(keep[r], keep[c])])
}

pub(crate) struct PivotedCholesky {
    /// Pivot order; the first `rank` entries index the selected submatrix.
    pub perm: Vec<usize>,
    /// Lower-triangular factor of the permuted matrix, valid on `rank` columns.
    pub l: DMatrix<f64>,
    pub rank: usize,
}

/// Cholesky with diagonal pivoting on a symmetric PSD matrix.
///
/// Stops once the largest remaining pivot drops below `rel_tol` times the
/// largest initial diagonal entry, so the selected leading block is
/// well-conditioned in the diagonal sense.
pub(crate) fn pivoted_cholesky(a: &DMatrix<f64>, rel_tol: f64) -> PivotedCholesky {
    let n = a.nrows();
    let mut work = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let max_diag = (0..n).map(|i| a[(i, i)]).fold(0.0f64, f64::max);
    let threshold = rel_tol * max_diag;
    let mut rank = 0usize;

    for k in 0..n {
        // Choose the largest remaining diagonal as next pivot.
        let (pivot_idx, pivot_val) = (k..n)
            .map(|i| (i, work[(i, i)]))
            .fold((k, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pivot_val <= threshold || pivot_val <= 0.0 {
            break;
        }
        work.swap_rows(k, pivot_idx);
        work.swap_columns(k, pivot_idx);
        perm.swap(k, pivot_idx);

        let d = pivot_val.sqrt();
        work[(k, k)] = d;
        for i in (k + 1)..n {
            work[(i, k)] /= d;
        }
        for j in (k + 1)..n {
            let ljk = work[(j, k)];
            for i in j..n {
                work[(i, j)] -= work[(i, k)] * ljk;
            }
        }
        rank = k + 1;
    }

    for c in 0..n {
        for r in 0..c.min(n) {
            work[(r, c)] = 0.0;
        }
    }
    PivotedCholesky { perm, l: work, rank }
}

/// Symmetric positive-definite solver with the principal-submatrix fallback.
///
/// Solves against complex right-hand sides by factoring the real matrix once
/// and back-substituting real and imaginary parts.
pub(crate) enum GramSolver {
    Identity,
    Chol(Cholesky<f64, Dyn>),
    Pivoted { piv: PivotedCholesky, dim: usize },
}

impl GramSolver {
    pub(crate) fn new(g: &DMatrix<f64>) -> Result<Self> {
        if g.nrows() != g.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "Gram matrix must be square, got {}x{}",
                g.nrows(),
                g.ncols()
            )));
        }
        if g.is_identity(0.0) {
            return Ok(GramSolver::Identity);
        }
        if let Some(chol) = Cholesky::new(g.clone()) {
            // Diagonal of L gives a cheap condition estimate; fall back when
            // the matrix is numerically singular.
            let diag: Vec<f64> = (0..g.nrows()).map(|i| chol.l_dirty()[(i, i)]).collect();
            let dmax = diag.iter().fold(0.0f64, |a, &x| a.max(x));
            let dmin = diag.iter().fold(f64::INFINITY, |a, &x| a.min(x));
            if dmin * dmin > SINGULAR_REL_TOL * dmax * dmax {
                return Ok(GramSolver::Chol(chol));
            }
        }
        let piv = pivoted_cholesky(g, SINGULAR_REL_TOL);
        if piv.rank == 0 {
            return Err(Error::SingularSystem { cond: f64::INFINITY });
        }
        Ok(GramSolver::Pivoted { piv, dim: g.nrows() })
    }

    pub(crate) fn solve_real(&self, rhs: &DVector<f64>) -> DVector<f64> {
        match self {
            GramSolver::Identity => rhs.clone(),
            GramSolver::Chol(c) => c.solve(rhs),
            GramSolver::Pivoted { piv, dim } => {
                // Solve on the selected principal submatrix, zero elsewhere.
                let r = piv.rank;
                let mut b = DVector::zeros(r);
                for i in 0..r {
                    b[i] = rhs[piv.perm[i]];
                }
                let lsub = piv.l.view((0, 0), (r, r));
                let mut y = b;
                lsub.solve_lower_triangular_mut(&mut y);
                lsub.transpose().solve_upper_triangular_mut(&mut y);
                let mut x = DVector::zeros(*dim);
                for i in 0..r {
                    x[piv.perm[i]] = y[i];
                }
                x
            }
        }
    }

    pub(crate) fn solve_complex(&self, rhs: &DVector<C64>) -> DVector<C64> {
        if matches!(self, GramSolver::Identity) {
            return rhs.clone();
        }
        let re = self.solve_real(&rhs.map(|z| z.re));
        let im = self.solve_real(&rhs.map(|z| z.im));
        DVector::from_fn(rhs.len(), |i, _| C64::new(re[i], im[i]))
    }
}

/// `m * v` for a real matrix and a complex vector.
pub(crate) fn real_mat_mul_complex(m: &DMatrix<f64>, v: &DVector<C64>) -> DVector<C64> {
    debug_assert_eq!(m.ncols(), v.len());
    let re = m * v.map(|z| z.re);
    let im = m * v.map(|z| z.im);
    DVector::from_fn(m.nrows(), |i, _| C64::new(re[i], im[i]))
}

/// `m^T * v` for a real matrix and a complex vector.
pub(crate) fn real_mat_tr_mul_complex(m: &DMatrix<f64>, v: &DVector<C64>) -> DVector<C64> {
    debug_assert_eq!(m.nrows(), v.len());
    let re = m.tr_mul(&v.map(|z| z.re));
    let im = m.tr_mul(&v.map(|z| z.im));
    DVector::from_fn(m.ncols(), |i, _| C64::new(re[i], im[i]))
}

/// Euclidean inner product `<u, v> = sum u_i conj(v_i)`.
pub(crate) fn cdot(u: &DVector<C64>, v: &DVector<C64>) -> C64 {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v.iter()).map(|(a, b)| a * b.conj()).sum()
}

/// Forces exact symmetry on an algebraically symmetric product.
pub(crate) fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for r in 0..n {
        for c in (r + 1)..n {
            let v = 0.5 * (m[(r, c)] + m[(c, r)]);
            m[(r, c)] = v;
            m[(c, r)] = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spd(n: usize) -> DMatrix<f64> {
        // Diagonally dominant symmetric matrix.
        DMatrix::from_fn(n, n, |r, c| {
            if r == c {
                2.5 + r as f64 * 0.1
            } else {
                1.0 / (1.0 + (r as f64 - c as f64).abs()).powi(2)
            }
        })
    }

    #[test]
    fn gram_solver_matches_direct_solve() {
        let a = spd(12);
        let solver = GramSolver::new(&a).unwrap();
        let b = DVector::from_fn(12, |i, _| C64::new(i as f64 - 3.0, 0.5 * i as f64));
        let x = solver.solve_complex(&b);
        let residual = real_mat_mul_complex(&a, &x) - b;
        assert!(residual.iter().all(|z| z.norm() < 1e-10));
    }

    #[test]
    fn pivoted_cholesky_handles_rank_deficiency() {
        // Rank-2 PSD matrix with an exactly repeated direction.
        let v1 = DVector::from_vec(vec![1.0, 2.0, 3.0, 4.0]);
        let v2 = DVector::from_vec(vec![0.0, 1.0, -1.0, 0.5]);
        let a = &v1 * v1.transpose() + &v2 * v2.transpose();
        let piv = pivoted_cholesky(&a, 1e-10);
        assert_eq!(piv.rank, 2);

        let solver = GramSolver::new(&a).unwrap();
        // A right-hand side in the range of the matrix is solved consistently.
        let b_real = &a * DVector::from_vec(vec![1.0, -1.0, 0.0, 2.0]);
        let b = b_real.map(|x| C64::new(x, 0.0));
        let x = solver.solve_complex(&b);
        let residual = real_mat_mul_complex(&a, &x) - b;
        assert!(residual.iter().all(|z| z.norm() < 1e-8));
    }

    #[test]
    fn lambda_min_falls_back_on_singular_grams() {
        let v1 = DVector::from_vec(vec![1.0, 0.0, 1.0]);
        let a = &v1 * v1.transpose() + DMatrix::identity(3, 3) * 1e-18;
        let lmin = gram_lambda_min(&a).unwrap();
        assert!(lmin > 0.1, "expected the submatrix eigenvalue, got {lmin}");
    }

    #[test]
    fn complex_products_match_componentwise() {
        let m = spd(5);
        let v = DVector::from_fn(5, |i, _| C64::new(0.3 * i as f64, 1.0 - i as f64));
        let mv = real_mat_mul_complex(&m, &v);
        for i in 0..5 {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..5 {
                acc += C64::new(m[(i, j)], 0.0) * v[j];
            }
            assert_abs_diff_eq!(mv[i].re, acc.re, epsilon = 1e-12);
            assert_abs_diff_eq!(mv[i].im, acc.im, epsilon = 1e-12);
        }
    }
}
