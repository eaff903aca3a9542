use serde::{Deserialize, Serialize};

/// Symmetric index set `{-k, ..., k}` with a linear storage layout.
///
/// All coefficient vectors and Gram matrices in this crate are indexed by such
/// sets; position 0 holds index `-k` and position `2k` holds index `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet {
    half_width: usize,
}

impl IndexSet {
    pub fn new(half_width: usize) -> Self {
        Self { half_width }
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Cardinality `2k + 1`.
    pub fn len(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, j: i64) -> bool {
        j.unsigned_abs() as usize <= self.half_width
    }

    /// Linear storage position of index `j`.
    ///
    /// Panics when `j` lies outside the set; callers validate ranges first.
    pub fn position(&self, j: i64) -> usize {
        debug_assert!(self.contains(j), "index {j} outside half-width {}", self.half_width);
        (j + self.half_width as i64) as usize
    }

    /// Inverse of [`position`](Self::position).
    pub fn index_at(&self, pos: usize) -> i64 {
        debug_assert!(pos < self.len());
        pos as i64 - self.half_width as i64
    }

    /// Indices in storage order, `-k ..= k`.
    pub fn iter(&self) -> impl Iterator<Item = i64> + Clone {
        let k = self.half_width as i64;
        -k..=k
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.half_width <= other.half_width
    }
}
