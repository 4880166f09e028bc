//! Grow-only memo tables shared by the recurrences.

use std::sync::Mutex;

use num_bigint::BigUint;

/// Rows of a triangle (or a plain sequence, one value per row), built bottom-up.
///
/// Row `n` is computed from rows `0..n` by the builder passed to [`RowCache::with_rows`].
/// The builder must not call back into the same cache.
pub(crate) struct RowCache {
    rows: Mutex<Vec<Vec<BigUint>>>,
}

impl RowCache {
    pub(crate) const fn new() -> Self {
        RowCache {
            rows: Mutex::new(Vec::new()),
        }
    }

    pub(crate) fn with_rows<R>(
        &self,
        upto: usize,
        build: impl Fn(usize, &[Vec<BigUint>]) -> Vec<BigUint>,
        read: impl FnOnce(&[Vec<BigUint>]) -> R,
    ) -> R {
        let mut rows = self.rows.lock().unwrap_or_else(|e| e.into_inner());
        while rows.len() <= upto {
            let n = rows.len();
            let row = build(n, &rows);
            rows.push(row);
        }
        read(&rows)
    }
}
