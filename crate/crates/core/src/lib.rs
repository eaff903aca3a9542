//! Reconstruction of functions on `[-1, 1]` from finitely many non-uniform
//! Fourier frame coefficients.
//!
//! The sampling model is a jittered exponential family
//! `psi_j(x) = e^{-i pi lambda_j x}`, `lambda_j = j + xi_j` with
//! `|xi_j| <= 1/4`, which is a frame for `L^2[-1, 1]` by Kadec's 1/4 theorem.
//! Given the `2m+1` coefficients `<f, psi_j>`, the crate approximates the
//! inverse frame operator by compressing it onto a well-localized admissible
//! span (here the harmonic basis) and reconstructs `f` as a `2n+1`-term
//! expansion. The Casazza-Christensen compression onto the sampling span,
//! the finite-section solve, and the plain harmonic partial sum are provided
//! for comparison, along with localization diagnostics, frame-bound
//! estimates, and a benchmark harness behind the `framerecon` CLI.
//!
//! Conventions: inner products carry the normalization
//! `<f, g> = (1/2) integral_{-1}^{1} f conj(g) dx`, so the harmonic family is
//! orthonormal; index sets are symmetric, `n` meaning `{-n, ..., n}` with
//! `2n+1` members.

pub mod bench;
pub mod coef;
pub mod error;
pub mod frame;
pub mod gram;
pub mod index;
mod linalg;
pub mod operators;
pub mod quadrature;
pub mod reconstruct;
pub mod sampling;
pub mod solvers;
pub mod target;
pub mod theory;

pub use coef::CoefVector;
pub use error::{Error, Result};
pub use frame::{
    exp_inner_product, make_frame, FrameFamily, FrameKind, CROSS_DECAY_C1,
    CROSS_DECAY_C1_UNNORMALIZED, CROSS_DECAY_S, KADEC_BOUND,
};
pub use gram::{estimate_localization, gram, CrossGram, LocalizationFit};
pub use index::IndexSet;
pub use operators::{
    assemble_v, assemble_w, finite_section, finite_section_matrix, project, LinearMap, MapLabel,
};
pub use quadrature::{build_quadrature, QuadratureRule};
pub use reconstruct::{
    error_metrics, evaluate_expansion, reconstruct, uniform_grid, Method, ReconstructionResult,
    SolverOptions,
};
pub use sampling::{default_quadrature, frame_coefficients};
pub use solvers::{
    cg_iterations_to_reference, cg_solve, condition_number, direct_ls, estimate_frame_bounds,
    richardson_solve, BoundsMethod, FrameBounds, SolveReport,
};
pub use target::{test_function, TargetFunction};
pub use theory::{choose_m, theory_constants, SelectionParams, SelectionRule, TheoryConstants};
