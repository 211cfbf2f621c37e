//! Lexicographic pair indexing: (0,1), (0,2), ..., (0,m-1), (1,2), ..., (m-2,m-1).

use crate::error::{Error, Result};

/// Number of unordered leaf pairs, `m(m-1)/2`.
#[inline]
pub fn pair_count(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Inverts [`pair_count`]; fails unless `e = m(m-1)/2` with `m >= 3`.
pub fn leaf_count(e: usize) -> Result<usize> {
    // m = (1 + sqrt(1 + 8e)) / 2
    let approx = ((1.0 + (1.0 + 8.0 * e as f64).sqrt()) / 2.0).round() as usize;
    for m in approx.saturating_sub(1)..=approx + 1 {
        if m >= 3 && pair_count(m) == e {
            return Ok(m);
        }
    }
    Err(Error::NotTriangular(e))
}

/// Position of pair `(i, j)`, `i != j`, zero-based leaves.
#[inline]
pub fn pair_index(i: usize, j: usize, m: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(j < m && i != j);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

/// All pairs in storage order.
pub fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
}
