//! Exponential frame families on `[-1, 1]`.
//!
//! Two kinds are supported: the harmonic basis `e^{-i pi j x}` and jittered
//! families `e^{-i pi lambda_j x}` with `lambda_j = j + xi_j`, `|xi_j| <= delta`.
//! For `delta <= 1/4` the jittered family is a frame by Kadec's 1/4 theorem.
//!
//! Inner products are normalized as `<f, g> = (1/2) integral_{-1}^{1} f conj(g) dx`
//! so the harmonic family is exactly orthonormal. Under this convention the
//! inner product of two exponentials is the real number `sinc(pi (lambda - mu))`.

use nalgebra::Complex;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::IndexSet;

/// Largest admissible jitter bound (Kadec's 1/4 theorem).
pub const KADEC_BOUND: f64 = 0.25;

/// Entrywise decay constant of the jittered-vs-harmonic cross Gram under the
/// normalized inner product: `|<psi_j, phi_l>| <= (4/pi) (1 + |j-l|)^{-1}`.
pub const CROSS_DECAY_C1: f64 = 4.0 / std::f64::consts::PI;

/// The same constant under the unnormalized integral over `[-1, 1]`, as it is
/// usually quoted alongside the Kadec separation argument.
pub const CROSS_DECAY_C1_UNNORMALIZED: f64 = 8.0 / std::f64::consts::PI;

/// Cross-Gram decay exponent of a jittered family against the harmonic basis.
pub const CROSS_DECAY_S: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrameKind {
    JitteredFourier,
    IntegerFourier,
}

/// A finite slice of a countable exponential family, identified by its
/// frequency sequence.
///
/// Frequencies are a pure function of `(kind, seed, jitter_bound, index)`:
/// index `j` draws one 64-bit word from ChaCha8 stream `j` seeded with `seed`
/// and maps it onto `[-delta, delta]` by scaling. Extending a family to a
/// wider index set therefore never changes existing frequencies.
#[derive(Debug, Clone)]
pub struct FrameFamily {
    kind: FrameKind,
    index_set: IndexSet,
    frequencies: Vec<f64>,
    jitter_bound: f64,
    seed: u64,
}

impl FrameFamily {
    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn index_set(&self) -> IndexSet {
        self.index_set
    }

    pub fn jitter_bound(&self) -> f64 {
        self.jitter_bound
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Frequency `lambda_j`. The index must lie in the family's index set.
    pub fn frequency(&self, j: i64) -> f64 {
        self.frequencies[self.index_set.position(j)]
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    /// Provenance tag used to match coefficient vectors to their frame.
    pub fn id(&self) -> String {
        match self.kind {
            FrameKind::IntegerFourier => format!("integer(k={})", self.index_set.half_width()),
            FrameKind::JitteredFourier => format!(
                "jittered(k={},delta={},seed={})",
                self.index_set.half_width(),
                self.jitter_bound,
                self.seed
            ),
        }
    }

    /// Same family over a wider (or narrower) index set; shared indices keep
    /// their frequencies bit for bit.
    pub fn extend(&self, half_width: usize) -> FrameFamily {
        make_frame(self.kind, half_width, self.jitter_bound, self.seed)
            .expect("parameters were validated when the family was built")
    }
}

fn jitter(seed: u64, delta: f64, j: i64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(j as u64);
    // 53-bit uniform in [0, 1), scaled onto [-delta, delta].
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
    delta * (2.0 * u - 1.0)
}

/// Builds a frame family.
///
/// `delta` must lie in `[0, 1/4]`; the integer kind ignores `delta` and `seed`
/// and takes `lambda_j = j` exactly.
pub fn make_frame(kind: FrameKind, half_width: usize, delta: f64, seed: u64) -> Result<FrameFamily> {
    let index_set = IndexSet::new(half_width);
    match kind {
        FrameKind::IntegerFourier => Ok(FrameFamily {
            kind,
            index_set,
            frequencies: index_set.iter().map(|j| j as f64).collect(),
            jitter_bound: 0.0,
            seed: 0,
        }),
        FrameKind::JitteredFourier => {
            if !(0.0..=KADEC_BOUND).contains(&delta) || !delta.is_finite() {
                return Err(Error::JitterBound(delta));
            }
            let frequencies = index_set
                .iter()
                .map(|j| j as f64 + jitter(seed, delta, j))
                .collect();
            Ok(FrameFamily {
                kind,
                index_set,
                frequencies,
                jitter_bound: delta,
                seed,
            })
        }
    }
}

/// `sin(pi d) / (pi d)` with the removable singularity filled in and exact
/// zeros at nonzero integer separations.
pub(crate) fn sinc_pi(d: f64) -> f64 {
    if d == 0.0 {
        return 1.0;
    }
    if d == d.round() {
        return 0.0;
    }
    let t = std::f64::consts::PI * d;
    if t.abs() < 1e-4 {
        let t2 = t * t;
        1.0 - t2 / 6.0 + t2 * t2 / 120.0
    } else {
        t.sin() / t
    }
}

/// Normalized inner product of `e^{-i pi lambda x}` and `e^{-i pi mu x}` over
/// `[-1, 1]`.
///
/// The value is always real here but typed complex for uniformity with
/// coefficient data.
pub fn exp_inner_product(lambda: f64, mu: f64) -> Complex<f64> {
    Complex::new(sinc_pi(lambda - mu), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn integer_frame_has_exact_integer_frequencies() {
        let f = make_frame(FrameKind::IntegerFourier, 2, 0.0, 0).unwrap();
        assert_eq!(f.frequencies(), &[-2.0, -1.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn jittered_frame_is_deterministic() {
        let a = make_frame(FrameKind::JitteredFourier, 64, 0.25, 7).unwrap();
        let b = make_frame(FrameKind::JitteredFourier, 64, 0.25, 7).unwrap();
        assert_eq!(a.frequencies(), b.frequencies());
        let c = make_frame(FrameKind::JitteredFourier, 64, 0.25, 8).unwrap();
        assert_ne!(a.frequencies(), c.frequencies());
    }

    #[test]
    fn extension_preserves_frequencies() {
        let small = make_frame(FrameKind::JitteredFourier, 16, 0.25, 7).unwrap();
        let big = small.extend(160);
        for j in small.index_set().iter() {
            assert_eq!(small.frequency(j), big.frequency(j));
        }
    }

    #[test]
    fn jitter_stays_in_bound_and_is_centered() {
        let k = 64usize;
        let delta = 0.25;
        let f = make_frame(FrameKind::JitteredFourier, k, delta, 7).unwrap();
        let offsets: Vec<f64> = f
            .index_set()
            .iter()
            .map(|j| f.frequency(j) - j as f64)
            .collect();
        let max = offsets.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        assert!(max <= delta, "max offset {max} exceeds bound {delta}");
        // Mean of 2k+1 iid U[-delta, delta] draws; 3 sigma band.
        let mean = offsets.iter().sum::<f64>() / offsets.len() as f64;
        let sigma = delta / (3.0 * offsets.len() as f64).sqrt();
        assert!(
            mean.abs() <= 3.0 * sigma,
            "mean {mean} outside 3 sigma = {}",
            3.0 * sigma
        );
    }

    #[test]
    fn kadec_bound_violations_are_rejected() {
        assert!(make_frame(FrameKind::JitteredFourier, 4, 0.26, 1).is_err());
        assert!(make_frame(FrameKind::JitteredFourier, 4, -0.1, 1).is_err());
        assert!(make_frame(FrameKind::JitteredFourier, 4, f64::NAN, 1).is_err());
        assert!(make_frame(FrameKind::JitteredFourier, 4, 0.25, 1).is_ok());
    }

    #[test]
    fn inner_product_removable_singularity() {
        assert_eq!(exp_inner_product(3.7, 3.7), Complex::new(1.0, 0.0));
    }

    #[test]
    fn inner_product_integer_separation_is_exactly_zero() {
        assert_eq!(exp_inner_product(5.0, 3.0).re, 0.0);
        assert_eq!(exp_inner_product(-1.0, 2.0).re, 0.0);
    }

    #[test]
    fn inner_product_quarter_separation() {
        // sin(pi/4) / (pi/4) = 2 sqrt(2) / pi
        assert_abs_diff_eq!(
            exp_inner_product(0.25, 0.0).re,
            0.9003163162,
            epsilon = 1e-9
        );
    }

    #[test]
    fn sinc_series_matches_direct_formula_near_zero() {
        for &d in &[1e-5, -2e-5, 3.1e-5] {
            let t = std::f64::consts::PI * d;
            assert_abs_diff_eq!(sinc_pi(d), t.sin() / t, epsilon = 1e-15);
        }
    }
}
