//! Frame-bound constants of the truncated operators and the rules that pick
//! the sampling half-width `m` for a given reconstruction half-width `n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gram::CrossGram;
use crate::linalg::gram_lambda_min;

/// Constants controlling invertibility of the truncated operators.
///
/// `a_mn` bounds the frame-sum loss of the sampling-frame compression;
/// `b_mn_*` bound the loss of the admissible-frame compression. `b_mn_exact`
/// is the directly summed tail, truncated at the extended row range of the
/// cross-Gram it was computed from, and `b_mn_tail_bound` is the analytic
/// bound on the discarded remainder.
#[derive(Debug, Clone, Copy)]
pub struct TheoryConstants {
    pub a_mn: f64,
    pub b_mn_bound: f64,
    pub b_mn_exact: f64,
    pub b_mn_tail_bound: f64,
    pub lambda_min_psi: f64,
    pub lambda_min_phi: f64,
}

/// Computes [`TheoryConstants`] for truncation sizes `m > n`.
///
/// * `psi_self` — self-Gram of the sampling frame covering `|j| <= n`.
/// * `phi_self` — self-Gram of the admissible frame covering `|l| <= n`.
/// * `cross_ext` — cross-Gram with sampling-frame rows extended well past `m`
///   (rows half-width is the tail truncation point) and admissible columns
///   covering `|l| <= n`.
/// * `c0`, `c1`, `s` — localization constants; `s > 1/2` is required.
pub fn theory_constants(
    psi_self: &CrossGram,
    phi_self: &CrossGram,
    cross_ext: &CrossGram,
    c0: f64,
    c1: f64,
    s: f64,
    m: usize,
    n: usize,
) -> Result<TheoryConstants> {
    if s <= 0.5 {
        return Err(Error::ParamDomain(format!("decay exponent s = {s} must exceed 1/2")));
    }
    if m <= n {
        return Err(Error::ParamDomain(format!("need m > n, got m = {m}, n = {n}")));
    }
    for (g, name) in [(psi_self, "psi_self"), (phi_self, "phi_self")] {
        if !g.is_self_gram() || g.rows().half_width() < n {
            return Err(Error::DimensionMismatch(format!(
                "{name} must be a self-Gram covering half-width {n}"
            )));
        }
    }
    let j_max = cross_ext.rows().half_width();
    if j_max <= m || cross_ext.cols().half_width() < n {
        return Err(Error::DimensionMismatch(format!(
            "cross_ext must extend rows past m = {m} (got {j_max}) and cover {n} columns"
        )));
    }

    let lambda_min_psi = gram_lambda_min(psi_self.matrix())?;
    let lambda_min_phi = gram_lambda_min(phi_self.matrix())?;

    let nf = n as f64;
    let gap = (m - n) as f64;
    let expo = 2.0 * s - 1.0;
    let a_mn = c0 * c0 / (expo * lambda_min_psi) * nf * gap.powf(-expo);
    let b_mn_bound = c1 * c1 / (expo * lambda_min_phi) * nf * gap.powf(-expo);

    let mut tail = 0.0f64;
    for j in cross_ext.rows().iter() {
        if j.unsigned_abs() as usize <= m {
            continue;
        }
        for l in -(n as i64)..=(n as i64) {
            let v = cross_ext.entry(j, l).re;
            tail += v * v;
        }
    }
    let b_mn_exact = tail / lambda_min_phi;
    let b_mn_tail_bound = c1 * c1 * nf * ((j_max - n) as f64).powf(-expo) / expo;

    Ok(TheoryConstants {
        a_mn,
        b_mn_bound,
        b_mn_exact,
        b_mn_tail_bound,
        lambda_min_psi,
        lambda_min_phi,
    })
}

/// Rules for choosing the sampling half-width `m` from `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionRule {
    /// Keeps the compressed sampling-frame operator uniformly invertible.
    Cc,
    /// Optimal-rate choice for approximating the inverse frame operator.
    Inverse,
    /// Keeps the admissible-frame compression uniformly invertible; the
    /// practical choice for function reconstruction.
    Reconstruction,
    /// Closed form of the reconstruction rule for the jittered-vs-harmonic
    /// pair, `m = (A pi^2 + 128) / (A pi^2) n`.
    Fourier,
}

impl std::str::FromStr for SelectionRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cc" => Ok(SelectionRule::Cc),
            "inverse" => Ok(SelectionRule::Inverse),
            "reconstruction" => Ok(SelectionRule::Reconstruction),
            "fourier" => Ok(SelectionRule::Fourier),
            other => Err(Error::UnknownRule(other.to_string())),
        }
    }
}

impl std::fmt::Display for SelectionRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SelectionRule::Cc => "cc",
            SelectionRule::Inverse => "inverse",
            SelectionRule::Reconstruction => "reconstruction",
            SelectionRule::Fourier => "fourier",
        })
    }
}

/// Parameters consumed by [`choose_m`]; each rule reads the subset it needs.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SelectionParams {
    /// Lower frame bound `A` of the sampling frame.
    pub frame_lower_bound: f64,
    /// Cross-localization prefactor `c`.
    pub cross_decay_c: f64,
    /// Cross-localization exponent `s`.
    pub cross_decay_s: f64,
    /// Smallest eigenvalue of the relevant truncated Gram.
    pub lambda_min: f64,
    /// Free multiplier of the `inverse` rule.
    pub alpha: f64,
    /// Self-localization exponent `t` of the admissible frame (`inverse` rule).
    pub admissible_decay_t: f64,
}

impl Default for SelectionParams {
    fn default() -> Self {
        Self {
            frame_lower_bound: 1.0,
            cross_decay_c: crate::frame::CROSS_DECAY_C1_UNNORMALIZED,
            cross_decay_s: crate::frame::CROSS_DECAY_S,
            lambda_min: 1.0,
            alpha: 1.0,
            admissible_decay_t: 1.0,
        }
    }
}

/// Picks the sampling half-width `m` for a reconstruction half-width `n`.
///
/// Non-integer values round up: extra samples never weaken the frame bounds.
pub fn choose_m(rule: SelectionRule, n: usize, p: &SelectionParams) -> Result<usize> {
    if n == 0 {
        return Err(Error::ParamDomain("n must be at least 1".into()));
    }
    let a = p.frame_lower_bound;
    if !(a > 0.0) {
        return Err(Error::ParamDomain(format!("frame lower bound A = {a} must be positive")));
    }
    let nf = n as f64;
    let value = match rule {
        SelectionRule::Fourier => {
            let api2 = a * std::f64::consts::PI * std::f64::consts::PI;
            (api2 + 128.0) / api2 * nf
        }
        SelectionRule::Cc => {
            let (s, lmin) = require_s_lambda(p)?;
            let e = 2.0 * s - 1.0;
            nf + (2.0 * nf / (a * e * lmin)).powf(1.0 / e)
        }
        SelectionRule::Reconstruction => {
            let (s, lmin) = require_s_lambda(p)?;
            require_c(p)?;
            let e = 2.0 * s - 1.0;
            let c = p.cross_decay_c;
            nf + (2.0 * c * c * nf / (a * e * lmin)).powf(1.0 / e)
        }
        SelectionRule::Inverse => {
            let (s, lmin) = require_s_lambda(p)?;
            require_c(p)?;
            if !(p.alpha > 0.0) {
                return Err(Error::ParamDomain(format!("alpha = {} must be positive", p.alpha)));
            }
            let e = 2.0 * s - 1.0;
            let c = p.cross_decay_c;
            let t = p.admissible_decay_t;
            nf + p.alpha * (2.0 * c * c / (a * e * lmin)).powf(1.0 / e) * nf.powf((t + 0.5) / e)
        }
    };
    if !value.is_finite() {
        return Err(Error::ParamDomain("m-selection formula overflowed".into()));
    }
    Ok(value.ceil() as usize)
}

fn require_s_lambda(p: &SelectionParams) -> Result<(f64, f64)> {
    if p.cross_decay_s <= 0.5 {
        return Err(Error::ParamDomain(format!(
            "decay exponent s = {} must exceed 1/2",
            p.cross_decay_s
        )));
    }
    if !(p.lambda_min > 0.0) {
        return Err(Error::ParamDomain(format!(
            "lambda_min = {} must be positive",
            p.lambda_min
        )));
    }
    Ok((p.cross_decay_s, p.lambda_min))
}

fn require_c(p: &SelectionParams) -> Result<()> {
    if !(p.cross_decay_c > 0.0) {
        return Err(Error::ParamDomain(format!(
            "decay prefactor c = {} must be positive",
            p.cross_decay_c
        )));
    }
    Ok(())
}
