//! Coefficient-space realizations of the truncated frame operators.
//!
//! Everything here works on the moment matrices of the compressed operators:
//! for sampling data restricted to `|j| <= m` and a reconstruction subspace
//! spanned by `2n+1` elements, the operator compressed by the subspace
//! projection becomes `solve(Gram, Moment * a)` on coefficient vectors, where
//! the moment matrix is the normal matrix of the relevant cross-Gram. The
//! moment matrix is what iterative solvers see and what condition numbers are
//! reported on.

use nalgebra::{Complex, DMatrix, DVector};

use crate::coef::CoefVector;
use crate::error::{Error, Result};
use crate::gram::CrossGram;
use crate::index::IndexSet;
use crate::linalg::{
    real_mat_mul_complex, symmetrize, GramSolver, C64,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapLabel {
    /// Admissible-frame compression of the truncated frame operator.
    W,
    /// Sampling-frame compression of the truncated frame operator.
    V,
    /// Truncated basis-moment system.
    FiniteSection,
}

/// A Hermitian positive semidefinite operator on coefficient vectors, stored
/// as a `(moment, gram)` pair.
///
/// `apply` realizes `gram^{-1} (moment * x)`; with an orthonormal working
/// frame the Gram is the identity and `apply(x) == moment * x`. Inner
/// products are the subspace inner products induced by the Gram, so `apply`
/// is self-adjoint in the geometry [`inner`](Self::inner) defines.
pub struct LinearMap {
    label: MapLabel,
    moment: DMatrix<f64>,
    gram: Option<(DMatrix<f64>, GramSolver)>,
    index_set: IndexSet,
    frame_id: String,
}

impl LinearMap {
    pub(crate) fn from_parts(
        label: MapLabel,
        moment: DMatrix<f64>,
        gram: Option<DMatrix<f64>>,
        index_set: IndexSet,
        frame_id: String,
    ) -> Result<Self> {
        if moment.nrows() != moment.ncols() || moment.nrows() != index_set.len() {
            return Err(Error::DimensionMismatch(format!(
                "moment matrix {}x{} does not match index set cardinality {}",
                moment.nrows(),
                moment.ncols(),
                index_set.len()
            )));
        }
        let gram = match gram {
            None => None,
            Some(g) if g.is_identity(0.0) => None,
            Some(g) => {
                if g.nrows() != moment.nrows() {
                    return Err(Error::DimensionMismatch(format!(
                        "Gram {}x{} does not match moment dimension {}",
                        g.nrows(),
                        g.ncols(),
                        moment.nrows()
                    )));
                }
                let solver = GramSolver::new(&g)?;
                Some((g, solver))
            }
        };
        Ok(Self {
            label,
            moment,
            gram,
            index_set,
            frame_id,
        })
    }

    /// Map with the identity Gram (Euclidean geometry).
    pub fn from_moment(
        label: MapLabel,
        moment: DMatrix<f64>,
        index_set: IndexSet,
        frame_id: impl Into<String>,
    ) -> Result<Self> {
        Self::from_parts(label, moment, None, index_set, frame_id.into())
    }

    pub fn label(&self) -> MapLabel {
        self.label
    }

    pub fn dimension(&self) -> usize {
        self.moment.nrows()
    }

    pub fn index_set(&self) -> IndexSet {
        self.index_set
    }

    /// Provenance of the coefficient frame solutions expand against.
    pub fn frame_id(&self) -> &str {
        &self.frame_id
    }

    /// The Hermitian moment matrix the solver-facing system is built from.
    pub fn moment_matrix(&self) -> &DMatrix<f64> {
        &self.moment
    }

    pub fn subspace_gram(&self) -> Option<&DMatrix<f64>> {
        self.gram.as_ref().map(|(g, _)| g)
    }

    /// Full operator application `gram^{-1} (moment * x)`.
    pub fn apply(&self, x: &DVector<C64>) -> DVector<C64> {
        let mx = real_mat_mul_complex(&self.moment, x);
        match &self.gram {
            None => mx,
            Some((_, solver)) => solver.solve_complex(&mx),
        }
    }

    /// Moment-matrix product without the Gram back-substitution.
    pub fn apply_moment(&self, x: &DVector<C64>) -> DVector<C64> {
        real_mat_mul_complex(&self.moment, x)
    }

    /// Solves `gram * y = x`; identity when the working frame is orthonormal.
    pub fn gram_solve(&self, x: &DVector<C64>) -> DVector<C64> {
        match &self.gram {
            None => x.clone(),
            Some((_, solver)) => solver.solve_complex(x),
        }
    }

    /// Subspace inner product `<u, v>` induced by the Gram.
    pub fn inner(&self, u: &DVector<C64>, v: &DVector<C64>) -> C64 {
        match &self.gram {
            None => crate::linalg::cdot(u, v),
            Some((g, _)) => crate::linalg::cdot(&real_mat_mul_complex(g, u), v),
        }
    }

    /// Norm induced by [`inner`](Self::inner).
    pub fn norm(&self, u: &DVector<C64>) -> f64 {
        self.inner(u, u).re.max(0.0).sqrt()
    }

    /// Euclidean view of the same moment matrix, dropping the Gram pair.
    pub fn moment_system(&self) -> Result<LinearMap> {
        LinearMap::from_moment(
            self.label,
            self.moment.clone(),
            self.index_set,
            self.frame_id.clone(),
        )
    }
}

fn normal_matrix(rect: &DMatrix<f64>) -> DMatrix<f64> {
    let mut n = rect.transpose() * rect;
    symmetrize(&mut n);
    n
}

/// Assembles the admissible-frame compression.
///
/// `omega` is the cross-Gram with sampling-frame rows (`2m+1`) and
/// admissible-frame columns (`2n+1`); `phi_self` is the admissible self-Gram.
/// The moment matrix is `N[k,l] = sum_j <phi_l, psi_j><psi_j, phi_k>`, the
/// normal matrix of `omega`; with an orthonormal admissible family the
/// operator reduces to `a -> N a`.
pub fn assemble_w(omega: &CrossGram, phi_self: &CrossGram) -> Result<LinearMap> {
    if omega.rows().half_width() < omega.cols().half_width() {
        return Err(Error::DimensionMismatch(format!(
            "sampling rows (half-width {}) must cover the admissible columns (half-width {})",
            omega.rows().half_width(),
            omega.cols().half_width()
        )));
    }
    if !phi_self.is_self_gram() || phi_self.cols() != omega.cols() {
        return Err(Error::DimensionMismatch(
            "phi_self must be the admissible self-Gram over omega's column set".into(),
        ));
    }
    if phi_self.col_frame_id() != omega.col_frame_id() {
        return Err(Error::FrameMismatch {
            coef: omega.col_frame_id().to_string(),
            frame: phi_self.col_frame_id().to_string(),
        });
    }
    LinearMap::from_parts(
        MapLabel::W,
        normal_matrix(omega.matrix()),
        Some(phi_self.matrix().clone()),
        omega.cols(),
        omega.col_frame_id().to_string(),
    )
}

/// Assembles the sampling-frame compression.
///
/// `psi_rect` is the `(2m+1) x (2n+1)` self-cross block of the sampling frame
/// and `psi_self` its `(2n+1)^2` self-Gram. The solver-facing Hermitian
/// system is the pair `(G, Psi_n)` with
/// `G[k,l] = sum_j <psi_l, psi_j><psi_j, psi_k>`; conditioning is reported on
/// the moment matrix `G`.
pub fn assemble_v(psi_rect: &CrossGram, psi_self: &CrossGram) -> Result<LinearMap> {
    if psi_rect.rows().half_width() < psi_rect.cols().half_width() {
        return Err(Error::DimensionMismatch(format!(
            "rectangular block rows (half-width {}) must cover its columns (half-width {})",
            psi_rect.rows().half_width(),
            psi_rect.cols().half_width()
        )));
    }
    if psi_rect.row_frame_id() != psi_rect.col_frame_id() {
        return Err(Error::FrameMismatch {
            coef: psi_rect.row_frame_id().to_string(),
            frame: psi_rect.col_frame_id().to_string(),
        });
    }
    if !psi_self.is_self_gram()
        || psi_self.cols() != psi_rect.cols()
        || psi_self.col_frame_id() != psi_rect.col_frame_id()
    {
        return Err(Error::DimensionMismatch(
            "psi_self must be the sampling self-Gram over the block's column set".into(),
        ));
    }
    LinearMap::from_parts(
        MapLabel::V,
        normal_matrix(psi_rect.matrix()),
        Some(psi_self.matrix().clone()),
        psi_rect.cols(),
        psi_rect.col_frame_id().to_string(),
    )
}

/// Orthogonal projection in coefficient form: solves `gram_self * a = moments`.
///
/// Realizes the projections onto the sampling and admissible spans as well as
/// the inverse of the finite frame operator on the subspace; they are the same
/// linear system in the coefficient representation.
pub fn project(gram_self: &CrossGram, moments: &CoefVector) -> Result<CoefVector> {
    if !gram_self.is_self_gram() {
        return Err(Error::DimensionMismatch(
            "projection needs a self-Gram".into(),
        ));
    }
    if gram_self.cols() != moments.index_set() {
        return Err(Error::DimensionMismatch(format!(
            "Gram covers half-width {}, moments half-width {}",
            gram_self.cols().half_width(),
            moments.index_set().half_width()
        )));
    }
    let solver = GramSolver::new(gram_self.matrix())?;
    let a = solver.solve_complex(moments.values());
    CoefVector::new(moments.index_set(), a, gram_self.col_frame_id())
}

/// Truncated-system solve for the inverse frame operator applied to an
/// element given by its basis moments.
///
/// `psi_to_phi` holds `<psi_k, phi_l>` with rows covering at least `|k| <= m`;
/// `f_hat_basis` holds the basis moments of the element to invert. The system
/// `sum_i g_i <S phi_i, phi_j> = f_hat_j` is formed with the frame-operator
/// sum truncated at `|k| <= m` and solved directly for the basis coefficients
/// of the approximate preimage.
pub fn finite_section(
    psi_to_phi: &CrossGram,
    f_hat_basis: &CoefVector,
    m: usize,
) -> Result<CoefVector> {
    let fs = finite_section_matrix(psi_to_phi, m)?;
    if f_hat_basis.index_set() != psi_to_phi.cols() {
        return Err(Error::DimensionMismatch(format!(
            "basis moments cover half-width {}, cross-Gram columns {}",
            f_hat_basis.index_set().half_width(),
            psi_to_phi.cols().half_width()
        )));
    }
    match nalgebra::Cholesky::new(fs.clone()) {
        Some(chol) => {
            let re = chol.solve(&f_hat_basis.values().map(|z| z.re));
            let im = chol.solve(&f_hat_basis.values().map(|z| z.im));
            let values = DVector::from_fn(re.len(), |i, _| Complex::new(re[i], im[i]));
            CoefVector::new(psi_to_phi.cols(), values, psi_to_phi.col_frame_id())
        }
        None => {
            let (lmin, lmax) = crate::linalg::sym_extremes(&fs);
            let cond = if lmin.abs() == 0.0 {
                f64::INFINITY
            } else {
                lmax.abs() / lmin.abs()
            };
            Err(Error::SingularSystem { cond })
        }
    }
}

/// The truncated moment matrix the finite-section solve runs on.
pub fn finite_section_matrix(psi_to_phi: &CrossGram, m: usize) -> Result<DMatrix<f64>> {
    if psi_to_phi.rows().half_width() < m {
        return Err(Error::DimensionMismatch(format!(
            "cross-Gram rows cover half-width {}, need at least m = {m}",
            psi_to_phi.rows().half_width()
        )));
    }
    let full = psi_to_phi.matrix();
    let offset = psi_to_phi.rows().half_width() - m;
    let rows = 2 * m + 1;
    let block = full.view((offset, 0), (rows, full.ncols()));
    let mut fs = block.transpose() * block;
    symmetrize(&mut fs);
    Ok(fs)
}
