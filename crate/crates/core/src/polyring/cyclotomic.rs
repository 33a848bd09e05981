//! Cyclotomic polynomials and cyclotomic divisibility.
//!
//! `Φ_s` is built by the inductive identity `X^s - 1 = ∏_{d|s} Φ_d`: start
//! from `X^s - 1` and exact-divide by every `Φ_d` with `d | s`, `d < s`.
//! Results are memoized in a process-wide write-once map.
//!
//! Divisibility `Φ_s | f` is decided without materializing `Φ_s`. Over `C`
//! the roots of `X^s - 1` are simple, and `∏_{p|s} (1 - X^{s/p})` vanishes at
//! `ζ_s^j` exactly when `gcd(j, s) > 1`. Hence for integer `f`,
//!
//! ```text
//! Φ_s | f   ⇔   f · ∏_{p|s} (1 - X^{s/p}) ≡ 0   (mod X^s - 1)
//! ```
//!
//! which costs `O(s · ω(s))` after folding `f` modulo `X^s - 1`, instead of a
//! long division by a polynomial of degree `φ(s)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::arith::factorize;
use super::IntPolynomial;

type Cache = RwLock<HashMap<u64, Arc<IntPolynomial>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `s`-th cyclotomic polynomial.
///
/// # Panics
///
/// Panics if `s == 0`.
pub fn cyclotomic(s: u64) -> Arc<IntPolynomial> {
    assert!(s >= 1, "cyclotomic index must be positive");
    if let Some(hit) = cache().read().expect("cyclotomic cache poisoned").get(&s) {
        return Arc::clone(hit);
    }
    let degree = usize::try_from(s).expect("cyclotomic index exceeds usize");
    let mut phi = IntPolynomial::x_pow_minus_one(degree);
    for d in factorize(s).divisors() {
        if d < s {
            phi = phi
                .exact_divide(&cyclotomic(d))
                .expect("X^s - 1 is divisible by every Φ_d with d | s");
        }
    }
    let mut map = cache().write().expect("cyclotomic cache poisoned");
    // Concurrent fills compute the same polynomial; keep whichever landed first.
    Arc::clone(map.entry(s).or_insert_with(|| Arc::new(phi)))
}

/// Whether `Φ_s` divides `f` in `Z[X]`.
pub fn cyclotomic_divides(s: u64, f: &IntPolynomial) -> bool {
    let terms = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u64, c));
    divides_folded(s, terms)
}

/// Whether `Φ_s` divides the mask polynomial `∑ X^e` of the given exponents.
/// Repeated exponents count with multiplicity.
pub fn cyclotomic_divides_mask(s: u64, exponents: &[u64]) -> bool {
    assert!(s >= 1, "cyclotomic index must be positive");
    let n = to_len(s);
    let mut folded = vec![0i128; n];
    for &e in exponents {
        folded[(e % s) as usize] += 1;
    }
    annihilated(s, folded)
}

/// Whether `Φ_s` divides `∑ counts[i] X^i`.
pub fn cyclotomic_divides_counts(s: u64, counts: &[u64]) -> bool {
    assert!(s >= 1, "cyclotomic index must be positive");
    let n = to_len(s);
    let mut folded = vec![0i128; n];
    for chunk in counts.chunks(n) {
        for (slot, &c) in folded.iter_mut().zip(chunk) {
            *slot += c as i128;
        }
    }
    annihilated(s, folded)
}

fn divides_folded<'a, I>(s: u64, terms: I) -> bool
where
    I: Iterator<Item = (u64, &'a BigInt)> + Clone,
{
    assert!(s >= 1, "cyclotomic index must be positive");
    let n = to_len(s);
    let mut folded = vec![0i128; n];
    let small = terms.clone().all(|(e, c)| match c.to_i128() {
        Some(c) => match folded[(e % s) as usize].checked_add(c) {
            Some(v) => {
                folded[(e % s) as usize] = v;
                true
            }
            None => false,
        },
        None => false,
    });
    if small {
        annihilated(s, folded)
    } else {
        let mut big = vec![BigInt::zero(); n];
        for (e, c) in terms {
            big[(e % s) as usize] += c;
        }
        annihilated_big(s, &factorize(s).primes(), big)
    }
}

fn to_len(s: u64) -> usize {
    usize::try_from(s).expect("cyclotomic index exceeds usize")
}

fn annihilated(s: u64, mut g: Vec<i128>) -> bool {
    let n = g.len();
    let primes = factorize(s).primes();
    for (idx, &p) in primes.iter().enumerate() {
        let shift = (s / p) as usize;
        let mut next = Vec::with_capacity(n);
        for j in 0..n {
            match g[j].checked_sub(g[(j + n - shift) % n]) {
                Some(v) => next.push(v),
                None => {
                    let big = g.into_iter().map(BigInt::from).collect();
                    return annihilated_big(s, &primes[idx..], big);
                }
            }
        }
        g = next;
    }
    g.iter().all(|&c| c == 0)
}

/// Multiplies by `(1 - X^{s/p})` for each listed prime, then tests for zero.
fn annihilated_big(s: u64, primes: &[u64], mut g: Vec<BigInt>) -> bool {
    let n = g.len();
    for &p in primes {
        let shift = (s / p) as usize;
        g = (0..n).map(|j| &g[j] - &g[(j + n - shift) % n]).collect();
    }
    g.iter().all(Zero::is_zero)
}
