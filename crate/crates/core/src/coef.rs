use nalgebra::{Complex, DVector};

use crate::error::{Error, Result};
use crate::index::IndexSet;

/// Complex coefficients indexed by a symmetric index set, tagged with the
/// frame they expand against.
#[derive(Debug, Clone)]
pub struct CoefVector {
    index_set: IndexSet,
    values: DVector<Complex<f64>>,
    frame_id: String,
}

impl CoefVector {
    pub fn new(
        index_set: IndexSet,
        values: DVector<Complex<f64>>,
        frame_id: impl Into<String>,
    ) -> Result<Self> {
        if values.len() != index_set.len() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient vector has {} entries for an index set of cardinality {}",
                values.len(),
                index_set.len()
            )));
        }
        Ok(Self {
            index_set,
            values,
            frame_id: frame_id.into(),
        })
    }

    pub fn zeros(index_set: IndexSet, frame_id: impl Into<String>) -> Self {
        Self {
            index_set,
            values: DVector::zeros(index_set.len()),
            frame_id: frame_id.into(),
        }
    }

    pub fn index_set(&self) -> IndexSet {
        self.index_set
    }

    pub fn values(&self) -> &DVector<Complex<f64>> {
        &self.values
    }

    pub fn value(&self, j: i64) -> Complex<f64> {
        self.values[self.index_set.position(j)]
    }

    pub fn frame_id(&self) -> &str {
        &self.frame_id
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.values.norm()
    }

    /// Restriction to a narrower symmetric index set.
    pub fn restrict(&self, idx: IndexSet) -> Result<Self> {
        if !idx.is_subset_of(&self.index_set) {
            return Err(Error::IndexOutOfRange {
                index: idx.half_width() as i64,
                half_width: self.index_set.half_width(),
            });
        }
        let values = DVector::from_fn(idx.len(), |p, _| self.value(idx.index_at(p)));
        Ok(Self {
            index_set: idx,
            values,
            frame_id: self.frame_id.clone(),
        })
    }
}
