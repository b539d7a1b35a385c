//! Sorted pair sweep shared by the chain-distance and MST computations.
//!
//! Weights are nonnegative finite, so the IEEE bit pattern orders them like
//! the values themselves; packing `(weight, i, j)` into one `u128` turns the
//! ascending sweep with lexicographic tie-breaking into a plain integer sort.

use crate::matrix::SquareMatrix;

#[inline]
pub(crate) fn pack(w: f64, i: u32, j: u32) -> u128 {
    debug_assert!(w >= 0.0);
    ((w.to_bits() as u128) << 64) | ((i as u128) << 32) | j as u128
}

#[inline]
pub(crate) fn unpack(key: u128) -> (f64, usize, usize) {
    (
        f64::from_bits((key >> 64) as u64),
        ((key >> 32) & 0xffff_ffff) as usize,
        (key & 0xffff_ffff) as usize,
    )
}

/// All pairs `i < j` ascending by `(weight, i, j)`.
pub(crate) fn sorted_pairs(m: &SquareMatrix) -> Vec<u128> {
    let n = m.n();
    let mut keys = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        let row = m.row(i);
        for (j, &w) in row.iter().enumerate().skip(i + 1) {
            keys.push(pack(w, i as u32, j as u32));
        }
    }
    keys.sort_unstable();
    keys
}
