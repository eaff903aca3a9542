//! Gram and cross-Gram matrices of exponential families, plus the
//! localization-decay diagnostic.

use nalgebra::{Complex, DMatrix};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frame::{sinc_pi, FrameFamily};
use crate::index::IndexSet;

/// Matrix of inner products between two frame families.
///
/// `entry(j, l)` is the inner product of row-family element `j` with
/// column-family element `l`. On the symmetric interval these inner products
/// are real (`sinc` of the frequency difference), so entries are stored as
/// `f64`; [`CrossGram::entry`] exposes them as complex scalars for uniformity
/// with coefficient data.
#[derive(Debug, Clone)]
pub struct CrossGram {
    rows: IndexSet,
    cols: IndexSet,
    entries: DMatrix<f64>,
    row_frame_id: String,
    col_frame_id: String,
}

impl CrossGram {
    pub fn rows(&self) -> IndexSet {
        self.rows
    }

    pub fn cols(&self) -> IndexSet {
        self.cols
    }

    pub fn entry(&self, j: i64, l: i64) -> Complex<f64> {
        Complex::new(self.entries[(self.rows.position(j), self.cols.position(l))], 0.0)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn row_frame_id(&self) -> &str {
        &self.row_frame_id
    }

    pub fn col_frame_id(&self) -> &str {
        &self.col_frame_id
    }

    pub fn is_self_gram(&self) -> bool {
        self.row_frame_id == self.col_frame_id && self.rows == self.cols
    }

    /// Raw constructor for synthetic matrices (planted-decay diagnostics and
    /// tests); [`gram`] is the assembly path for real frames.
    pub fn from_parts(
        rows: IndexSet,
        cols: IndexSet,
        entries: DMatrix<f64>,
        row_frame_id: String,
        col_frame_id: String,
    ) -> Self {
        Self {
            rows,
            cols,
            entries,
            row_frame_id,
            col_frame_id,
        }
    }
}

/// Assembles the cross-Gram of two families over the given index sets.
///
/// A self-Gram (same family, same index set) is returned exactly symmetric:
/// the strict upper triangle is computed and mirrored.
pub fn gram(
    row_frame: &FrameFamily,
    col_frame: &FrameFamily,
    rows: IndexSet,
    cols: IndexSet,
) -> Result<CrossGram> {
    if !rows.is_subset_of(&row_frame.index_set()) {
        return Err(Error::IndexOutOfRange {
            index: rows.half_width() as i64,
            half_width: row_frame.index_set().half_width(),
        });
    }
    if !cols.is_subset_of(&col_frame.index_set()) {
        return Err(Error::IndexOutOfRange {
            index: cols.half_width() as i64,
            half_width: col_frame.index_set().half_width(),
        });
    }

    let row_freq: Vec<f64> = rows.iter().map(|j| row_frame.frequency(j)).collect();
    let col_freq: Vec<f64> = cols.iter().map(|l| col_frame.frequency(l)).collect();
    let (nr, nc) = (rows.len(), cols.len());

    let self_gram = row_frame.id() == col_frame.id() && rows == cols;
    let mut data = vec![0.0f64; nr * nc];
    let fill_row = |r: usize, out: &mut [f64]| {
        let lr = row_freq[r];
        if self_gram {
            for (c, lc) in col_freq.iter().enumerate().skip(r) {
                out[c] = sinc_pi(lr - lc);
            }
        } else {
            for (c, lc) in col_freq.iter().enumerate() {
                out[c] = sinc_pi(lr - lc);
            }
        }
    };
    if nr * nc >= 16_384 {
        data.par_chunks_mut(nc)
            .enumerate()
            .for_each(|(r, chunk)| fill_row(r, chunk));
    } else {
        for (r, chunk) in data.chunks_mut(nc).enumerate() {
            fill_row(r, chunk);
        }
    }
    let mut entries = DMatrix::from_row_slice(nr, nc, &data);
    if self_gram {
        for r in 0..nr {
            for c in (r + 1)..nc {
                entries[(c, r)] = entries[(r, c)];
            }
        }
    }

    Ok(CrossGram {
        rows,
        cols,
        entries,
        row_frame_id: row_frame.id(),
        col_frame_id: col_frame.id(),
    })
}

/// Power-law fit of the off-diagonal decay of a (cross-)Gram:
/// `max_{|j-l|=k} |entry| ~ c (1+k)^{-s}`.
#[derive(Debug, Clone, Copy)]
pub struct LocalizationFit {
    pub c: f64,
    pub s: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    /// Set when every off-diagonal band is numerically zero (below 1e-13);
    /// `s` is then reported as `f64::INFINITY` and `c` is unused.
    pub saturated: bool,
}

const SATURATION_THRESHOLD: f64 = 1e-13;

/// Fits the localization decay exponent of `g`.
///
/// Band maxima `d_k` are computed for every offset `k = |j - l|`; the fit uses
/// offsets in `[4, k_max/2]` to stay clear of near-diagonal transients and of
/// the sparsely populated corner bands.
pub fn estimate_localization(g: &CrossGram) -> Result<LocalizationFit> {
    let k_max = g.rows().half_width() + g.cols().half_width();
    if k_max < 8 {
        return Err(Error::TooSmallForFit {
            got: k_max,
            required: 8,
        });
    }

    let m = g.matrix();
    let mut band_max = vec![0.0f64; k_max + 1];
    for r in 0..m.nrows() {
        let j = g.rows().index_at(r);
        for c in 0..m.ncols() {
            let l = g.cols().index_at(c);
            let k = (j - l).unsigned_abs() as usize;
            let v = m[(r, c)].abs();
            if v > band_max[k] {
                band_max[k] = v;
            }
        }
    }

    if band_max[1..].iter().all(|&d| d < SATURATION_THRESHOLD) {
        return Ok(LocalizationFit {
            c: 0.0,
            s: f64::INFINITY,
            residual: 0.0,
            saturated: true,
        });
    }

    let lo = 4usize;
    let hi = k_max / 2;
    let points: Vec<(f64, f64)> = (lo..=hi)
        .filter(|&k| band_max[k] > SATURATION_THRESHOLD)
        .map(|k| ((1.0 + k as f64).ln(), band_max[k].ln()))
        .collect();
    if points.len() < 2 {
        return Err(Error::TooSmallForFit {
            got: points.len(),
            required: 2,
        });
    }

    // Least squares for y = a - s x in log-log coordinates.
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let residual = (points
        .iter()
        .map(|&(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum::<f64>()
        / n)
        .sqrt();

    Ok(LocalizationFit {
        c: intercept.exp(),
        s: -slope,
        residual,
        saturated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{make_frame, FrameKind, CROSS_DECAY_C1};
    use approx::assert_abs_diff_eq;

    fn jittered(k: usize, seed: u64) -> FrameFamily {
        make_frame(FrameKind::JitteredFourier, k, 0.25, seed).unwrap()
    }

    fn integer(k: usize) -> FrameFamily {
        make_frame(FrameKind::IntegerFourier, k, 0.0, 0).unwrap()
    }

    #[test]
    fn integer_self_gram_is_identity() {
        for k in [0usize, 1, 5, 16] {
            let f = integer(k);
            let g = gram(&f, &f, f.index_set(), f.index_set()).unwrap();
            assert!(g.matrix().is_identity(0.0), "k = {k}");
        }
    }

    #[test]
    fn jittered_self_gram_is_symmetric_with_unit_diagonal() {
        let f = jittered(16, 7);
        let g = gram(&f, &f, f.index_set(), f.index_set()).unwrap();
        let m = g.matrix();
        assert!(g.is_self_gram());
        for r in 0..m.nrows() {
            assert_eq!(m[(r, r)], 1.0);
            for c in 0..m.ncols() {
                assert_eq!(m[(r, c)], m[(c, r)]);
            }
        }
    }

    #[test]
    fn cross_gram_peaks_on_the_diagonal() {
        let psi = jittered(16, 7);
        let phi = integer(16);
        let g = gram(&psi, &phi, psi.index_set(), phi.index_set()).unwrap();
        let m = g.matrix();
        for c in 0..m.ncols() {
            let l = g.cols().index_at(c);
            let peak = g.rows().position(l);
            for r in 0..m.nrows() {
                if r != peak {
                    assert!(
                        m[(r, c)].abs() < m[(peak, c)].abs(),
                        "column {l}: row {r} not dominated by row {peak}"
                    );
                }
            }
        }
    }

    #[test]
    fn kadec_separation_bounds_cross_entries() {
        let psi = jittered(32, 3);
        let phi = integer(32);
        let g = gram(&psi, &phi, psi.index_set(), phi.index_set()).unwrap();
        for j in g.rows().iter() {
            for l in g.cols().iter() {
                if j != l {
                    let sep = (psi.frequency(j) - l as f64).abs();
                    assert!(sep >= (1.0 + (j - l).abs() as f64) / 4.0);
                }
                let bound = CROSS_DECAY_C1 / (1.0 + (j - l).abs() as f64);
                assert!(g.entry(j, l).re.abs() <= bound);
            }
        }
    }

    #[test]
    fn localization_saturates_on_identity() {
        let f = integer(16);
        let g = gram(&f, &f, f.index_set(), f.index_set()).unwrap();
        let fit = estimate_localization(&g).unwrap();
        assert!(fit.saturated);
        assert!(fit.s.is_infinite());
    }

    #[test]
    fn localization_recovers_planted_exponent() {
        let rows = IndexSet::new(64);
        let cols = IndexSet::new(64);
        let entries = DMatrix::from_fn(rows.len(), cols.len(), |r, c| {
            let j = rows.index_at(r);
            let l = cols.index_at(c);
            (1.0 + (j - l).abs() as f64).powi(-2)
        });
        let g = CrossGram::from_parts(rows, cols, entries, "a".into(), "b".into());
        let fit = estimate_localization(&g).unwrap();
        assert_abs_diff_eq!(fit.s, 2.0, epsilon = 0.01);
        assert_abs_diff_eq!(fit.c, 1.0, epsilon = 0.01);
        assert!(!fit.saturated);
    }

    #[test]
    fn localization_rejects_tiny_matrices() {
        let f = jittered(3, 1);
        let g = gram(&f, &f, f.index_set(), f.index_set()).unwrap();
        assert!(estimate_localization(&g).is_err());
    }

    #[test]
    fn gram_rejects_out_of_range_index_sets() {
        let f = jittered(8, 1);
        let wide = IndexSet::new(9);
        assert!(gram(&f, &f, wide, f.index_set()).is_err());
        assert!(gram(&f, &f, f.index_set(), wide).is_err());
    }
}
