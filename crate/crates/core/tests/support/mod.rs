//! Shared test support: an adaptive-Simpson quadrature oracle independent of
//! the library's Gauss-Legendre path, plus small statistics helpers.

// Each test binary pulls in the subset it needs.
#![allow(dead_code)]

use nalgebra::Complex;

pub type C64 = Complex<f64>;

/// Adaptive Simpson integration of a complex integrand over `[a, b]`.
///
/// The interval is pre-split into `base` panels so oscillatory integrands
/// cannot fool the first error estimate, then each panel is refined until the
/// local Richardson error estimate drops below its share of `tol`.
pub fn adaptive_simpson_complex<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, tol: f64, base: usize) -> C64 {
    let base = base.max(4);
    let h = (b - a) / base as f64;
    let mut total = C64::new(0.0, 0.0);
    for i in 0..base {
        let lo = a + i as f64 * h;
        let hi = lo + h;
        let mid = 0.5 * (lo + hi);
        let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
        let whole = simpson(flo, fmid, fhi, hi - lo);
        total += adapt(f, lo, hi, flo, fmid, fhi, whole, tol / base as f64, 48);
    }
    total
}

pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, base: usize) -> f64 {
    adaptive_simpson_complex(&|x| C64::new(f(x), 0.0), a, b, tol, base).re
}

fn simpson(fa: C64, fm: C64, fb: C64, h: f64) -> C64 {
    (fa + fm * 4.0 + fb) * (h / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    fa: C64,
    fm: C64,
    fb: C64,
    whole: C64,
    tol: f64,
    depth: usize,
) -> C64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Median of a sample (not in place).
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub fn rel_err(got: f64, expected: f64) -> f64 {
    (got - expected).abs() / expected.abs().max(f64::MIN_POSITIVE)
}
