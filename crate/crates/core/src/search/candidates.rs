use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::polyring::factorize;
use crate::tilingset::IntegerSet;

use super::bound_2d_pow;

/// `(2·diam(A))^d`, `d` the number of distinct primes of `|A|`, saturating at
/// `u64::MAX`. Equals 1 for a singleton.
pub fn proof_cap(a: &IntegerSet) -> u64 {
    let d = factorize(a.len() as u64).distinct();
    bound_2d_pow(a.diameter(), d)
        .and_then(|b| u64::try_from(b).ok())
        .unwrap_or(u64::MAX)
}

/// Multiples of `size` whose prime set equals that of `size`, ascending, up
/// to `cap`. Streams from a min-heap of `size · ∏ p^{e_p}`.
pub fn restricted_candidates(size: u64, cap: u64) -> impl Iterator<Item = u64> {
    let primes = factorize(size).primes();
    let mut heap = BinaryHeap::new();
    let mut seen = HashSet::new();
    if size <= cap {
        heap.push(Reverse(size));
        seen.insert(size);
    }
    std::iter::from_fn(move || {
        let Reverse(x) = heap.pop()?;
        for &p in &primes {
            if let Some(y) = x.checked_mul(p) {
                if y <= cap && seen.insert(y) {
                    heap.push(Reverse(y));
                }
            }
        }
        Some(x)
    })
}

/// Every multiple of `size` up to `cap`.
pub fn unrestricted_candidates(size: u64, cap: u64) -> impl Iterator<Item = u64> {
    (1..)
        .map_while(move |k: u64| k.checked_mul(size))
        .take_while(move |&m| m <= cap)
}
