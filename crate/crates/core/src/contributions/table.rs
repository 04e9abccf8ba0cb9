//! Bottom-up evaluation of min/max-stripping recursions over every subset of
//! the odd numbers `{1, 3, …, 2m-1}`.
//!
//! `F` and `G` only ever strip the minimum or the maximum of a chain, so every
//! subproblem of a chain is a contiguous sub-chain and hence another subset.
//! Filling the table layer by layer (by cardinality) computes each value once
//! and lets the layers run in parallel.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

/// Values indexed by subset bitmask; bit `i` stands for the odd number `2i+1`.
#[derive(Debug)]
pub struct SubsetTable<V> {
    width: usize,
    values: Vec<Option<V>>,
}

impl<V: Clone + Send + Sync> SubsetTable<V> {
    /// `base(i)` gives the value on `{2i+1}`; `step(lo, hi, without_hi,
    /// without_lo)` combines the two stripped sub-chains of a chain whose
    /// extreme bits are `lo < hi`.
    pub fn build<B, S>(width: usize, base: B, step: S) -> Self
    where
        B: Fn(usize) -> V + Sync,
        S: Fn(usize, usize, &V, &V) -> V + Sync,
    {
        assert!(width < 32, "subset table too wide");
        let size = 1usize << width;
        let mut values: Vec<Option<V>> = vec![None; size];
        for i in 0..width {
            values[1 << i] = Some(base(i));
        }
        for card in 2..=width {
            let layer: Vec<(usize, V)> = (1..size)
                .into_par_iter()
                .filter(|m| m.count_ones() as usize == card)
                .map(|mask| {
                    let lo = mask.trailing_zeros() as usize;
                    let hi = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
                    let without_hi = values[mask ^ (1 << hi)].as_ref().expect("lower layer");
                    let without_lo = values[mask ^ (1 << lo)].as_ref().expect("lower layer");
                    (mask, step(lo, hi, without_hi, without_lo))
                })
                .collect();
            for (mask, v) in layer {
                values[mask] = Some(v);
            }
        }
        SubsetTable { width, values }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Value on a nonempty subset; `None` for the empty set or out-of-range masks.
    pub fn get(&self, mask: u64) -> Option<&V> {
        self.values.get(usize::try_from(mask).ok()?)?.as_ref()
    }
}

/// Environment variable capping the widest table kept in the shared cache.
pub const CACHE_WIDTH_ENV: &str = "CSTRINGY_CACHE_WIDTH";
const DEFAULT_CACHE_WIDTH: usize = 16;

fn cache_width_limit() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(CACHE_WIDTH_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_CACHE_WIDTH)
    })
}

/// Process-wide cache holding the widest table built so far for each key.
/// A table of width `w` answers every query of width ≤ `w`, and entries for
/// a key are always the same values, so racing builders are harmless.
pub struct TableCache<K, V> {
    tables: Mutex<HashMap<K, Arc<SubsetTable<V>>>>,
}

impl<K: std::hash::Hash + Eq + Clone, V: Clone + Send + Sync> TableCache<K, V> {
    pub fn new() -> Self {
        TableCache { tables: Mutex::new(HashMap::new()) }
    }

    pub fn get_or_build(
        &self,
        key: K,
        width: usize,
        build: impl FnOnce(usize) -> SubsetTable<V>,
    ) -> Arc<SubsetTable<V>> {
        if let Some(t) = self.tables.lock().unwrap().get(&key) {
            if t.width() >= width {
                return Arc::clone(t);
            }
        }
        let table = Arc::new(build(width));
        if width <= cache_width_limit() {
            let mut guard = self.tables.lock().unwrap();
            let keep = guard.get(&key).is_none_or(|t| t.width() < width);
            if keep {
                guard.insert(key, Arc::clone(&table));
            }
        }
        table
    }
}

impl<K: std::hash::Hash + Eq + Clone, V: Clone + Send + Sync> Default for TableCache<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_nonempty_subset_filled() {
        // Count the maximal min/max stripping paths: 2^(|T|-1).
        let t = SubsetTable::build(5, |_| 1u64, |_, _, a, b| a + b);
        for mask in 1u64..32 {
            assert_eq!(*t.get(mask).unwrap(), 1 << (mask.count_ones() - 1));
        }
        assert!(t.get(0).is_none());
        assert!(t.get(32).is_none());
    }

    #[test]
    fn cache_serves_narrower_requests() {
        let cache: TableCache<u8, u64> = TableCache::new();
        let wide = cache.get_or_build(0, 6, |w| SubsetTable::build(w, |_| 1, |_, _, a, b| a + b));
        let narrow = cache.get_or_build(0, 3, |_| panic!("should reuse the cached table"));
        assert!(Arc::ptr_eq(&wide, &narrow));
    }
}
