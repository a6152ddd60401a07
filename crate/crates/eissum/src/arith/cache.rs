//! Shared memo tables for the expensive exact quantities.
//!
//! All cached functions are pure, so a hit is bitwise identical to a
//! recomputation; the table only saves time. A single process-wide instance
//! behind mutexes serves all threads.

use super::Rational;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Memo tables keyed by integer arguments.
#[derive(Default)]
pub struct ArithCache {
    pub(crate) hurwitz: Mutex<HashMap<u64, Rational>>,
    pub(crate) class_number: Mutex<HashMap<i64, u64>>,
    /// L(χ_d, m) keyed by (d, m); m = 1 entries come from the class number
    /// formula, m ≥ 2 from the series evaluator.
    pub(crate) l_values: Mutex<HashMap<(i64, u32), f64>>,
}

impl ArithCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Generic lookup-or-compute helper.
    pub(crate) fn memo<K, V, F>(table: &Mutex<HashMap<K, V>>, key: K, compute: F) -> V
    where
        K: std::hash::Hash + Eq + Copy,
        V: Copy,
        F: FnOnce() -> V,
    {
        if let Some(v) = table.lock().unwrap().get(&key) {
            return *v;
        }
        // Compute outside the lock; duplicate work on a race is harmless
        // because the function is pure.
        let v = compute();
        table.lock().unwrap().insert(key, v);
        v
    }
}

/// Process-wide cache instance.
pub(crate) static GLOBAL: Lazy<ArithCache> = Lazy::new(ArithCache::new);
