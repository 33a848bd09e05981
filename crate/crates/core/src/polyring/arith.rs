//! Small-integer number theory: trial-division factorization, totients,
//! divisor lists.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

/// Prime factorization `∏ p^e`, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, _)| p).collect()
    }

    pub fn prime_set(&self) -> BTreeSet<u64> {
        self.factors.iter().map(|&(p, _)| p).collect()
    }

    /// Number of distinct primes.
    pub fn distinct(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Prime powers `p^e` exactly dividing the value, in prime order.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.factors.first().map(|&(p, _)| p)
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// All divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let base = divs.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                divs.extend(base.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Exact factorization by trial division. `factorize(1)` is empty.
///
/// # Panics
///
/// Panics on `n == 0`.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize: n must be positive");
    let mut n = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut n);
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        p += 2;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { factors }
}

pub fn euler_phi(s: u64) -> u64 {
    factorize(s).euler_phi()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).factors == [(n, 1)]
}

pub fn divisors(n: u64) -> Vec<u64> {
    factorize(n).divisors()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
