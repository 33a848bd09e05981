//! Explicit tilings and counterexamples.
//!
//! * [`theorem2_generate`]: a tiling `A ⊕ B = Z_M`, `M = (p1 p2 p3)^n`, whose
//!   translation set has least period exactly `M` while `M` has no prime
//!   outside `|A| = p1 p2 p3`. `A` is a box in CRT coordinates, `B_0` the
//!   lattice complement, and `B` is `B_0` with one column shifted in each of
//!   the three directions.
//! * [`section4_counterexample`]: `A(X) = Φ_{p²}(X) Φ_{q²}(X)`, whose diameter
//!   is far below `(p-1)/p · lcm(S_A)`.
//! * [`standard_tile`]: complete residue systems built from prime-power
//!   towers; they satisfy (T1) and (T2).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cmcheck::spectrum;
use crate::polyring::{factorize, is_prime, lcm};
use crate::tilingset::{is_tiling, least_period, IntegerSet, TilingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("shifted complement has coefficient {coefficient} at X^{exponent}")]
    InvalidShift { exponent: u64, coefficient: i64 },
    #[error("modulus overflows u64")]
    Overflow,
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// Exact rational parameter, written `p/q` (or an integer) in text and JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Self(Ratio::new(numer, denom))
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let r: Ratio<i64> = s.trim().parse().map_err(|e| format!("bad rational {s:?}: {e}"))?;
        Ok(Self(r))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Params {
    pub p1: u64,
    pub p2: u64,
    pub p3: u64,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_beta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
}

impl Theorem2Params {
    pub fn new(p1: u64, p2: u64, p3: u64, n: u32) -> Self {
        Self {
            p1,
            p2,
            p3,
            n,
            target_beta: None,
            epsilon: None,
        }
    }

    /// Smallest admissible primes, `n = 2`.
    pub fn desk_default() -> Self {
        Self::new(7, 11, 13, 2)
    }

    pub fn primes(&self) -> [u64; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let bad = |msg: String| Err(ConstructionError::InvalidParams(msg));
        for p in self.primes() {
            if !is_prime(p) {
                return bad(format!("{p} is not prime"));
            }
        }
        if !(self.p1 < self.p2 && self.p2 < self.p3 && self.p3 < 2 * self.p1) {
            return bad(format!(
                "need p1 < p2 < p3 < 2·p1, got ({}, {}, {})",
                self.p1, self.p2, self.p3
            ));
        }
        if self.n < 2 {
            return bad(format!("need n ≥ 2, got {}", self.n));
        }
        if let Some(beta) = self.target_beta {
            if beta.0 <= Ratio::from_integer(0) || beta.0 >= Ratio::new(3, 2) {
                return bad(format!("target beta {beta} must lie in (0, 3/2)"));
            }
        }
        if let Some(eps) = self.epsilon {
            if eps.0 <= Ratio::from_integer(0) {
                return bad(format!("epsilon {eps} must be positive"));
            }
        }
        Ok(())
    }
}

/// Checks run on every generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Validation {
    pub a_b0_tiles: bool,
    pub a_b_tiles: bool,
    pub least_period_b: u64,
    pub least_period_b0: u64,
    /// `B_0` is `M/p_i`-periodic for each `i`.
    pub b0_periodic_mod_each_prime: bool,
    pub b_has_full_period: bool,
    pub prime_sets_match: bool,
    /// Measured diameter equals `∑ (p_i - 1) M / p_i^n`.
    pub diam_matches_formula: bool,
    /// `diam(A) ≤ 3M / p1^{n-1}`.
    pub diam_within_bound: bool,
}

impl Theorem2Validation {
    pub fn all_pass(&self) -> bool {
        self.a_b0_tiles
            && self.a_b_tiles
            && self.b0_periodic_mod_each_prime
            && self.b_has_full_period
            && self.prime_sets_match
            && self.diam_matches_formula
            && self.diam_within_bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Instance {
    pub params: Theorem2Params,
    pub modulus: u64,
    /// `(p3^{n-1} - 1) M / p3^{n-1}`.
    pub a: u64,
    /// `(p2^{n-1} - 1) M / p2^{n-1} + (p1^{n-1} - 1) M / p1^{n-1}`.
    pub b: u64,
    /// How the column-shift display was read.
    pub reading: String,
    pub tile: IntegerSet,
    pub base_complement: IntegerSet,
    pub complement: IntegerSet,
    pub diam: u64,
    /// `log M / log diam(A)`.
    pub log_ratio: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    pub validation: Theorem2Validation,
}

/// Reading of the column-shift display used by [`theorem2_generate`]: the
/// right-hand `B(X)` is the base complement `B_0(X)`, and each shift term
/// acts on the single progression `B_i(X)` as written.
pub const THEOREM2_READING: &str = "literal, base complement B0 on the right-hand side";

fn checked_pow(p: u64, e: u32) -> Result<u64, ConstructionError> {
    p.checked_pow(e).ok_or(ConstructionError::Overflow)
}

/// Builds `A`, `B_0`, `B` and validates them.
pub fn theorem2_generate(params: &Theorem2Params) -> Result<Theorem2Instance, ConstructionError> {
    params.validate()?;
    let n = params.n;
    let primes = params.primes();
    let m = checked_pow(params.p1 * params.p2 * params.p3, n)?;
    // M / p_i^n and M / p_i^{n-1}
    let mut fine = [0u64; 3];
    let mut coarse = [0u64; 3];
    let mut column_len = [0u64; 3];
    for (i, &p) in primes.iter().enumerate() {
        fine[i] = m / checked_pow(p, n)?;
        column_len[i] = checked_pow(p, n - 1)?;
        coarse[i] = m / column_len[i];
    }

    // A(X) = ∏ (1 + X^{M/p_i^n} + … + X^{(p_i-1) M/p_i^n}); the sums are distinct and below M
    let tile = IntegerSet::from_unsorted(sumset(&[
        progression(fine[0], primes[0]),
        progression(fine[1], primes[1]),
        progression(fine[2], primes[2]),
    ]))
    .map_err(|e| ConstructionError::InvalidParams(format!("tile is not a set: {e}")))?;

    // B_i(X) = 1 + X^{M/p_i^{n-1}} + … ; B_0 = ∏ B_i reduced mod M
    let columns: Vec<Vec<u64>> = (0..3).map(|i| progression(coarse[i], column_len[i])).collect();
    let mut counts = vec![0i64; m as usize];
    for e in sumset(&columns) {
        counts[(e % m) as usize] += 1;
    }
    let base_complement = set_from_counts(&counts)?;

    let a = (column_len[2] - 1) * coarse[2];
    let b = (column_len[1] - 1) * coarse[1] + (column_len[0] - 1) * coarse[0];
    // B = B_0 + (X^{M/p1^n} - 1) B_1 + (X^{a + M/p2^n} - X^a) B_2 + (X^{b + M/p3^n} - X^b) B_3
    let shifts = [(0u64, fine[0]), (a, a + fine[1]), (b, b + fine[2])];
    for (i, &(from, to)) in shifts.iter().enumerate() {
        for &e in &columns[i] {
            counts[((from + e) % m) as usize] -= 1;
            counts[((to + e) % m) as usize] += 1;
        }
    }
    let complement = set_from_counts(&counts)?;

    let diam = tile.diameter();
    let validation = validate_theorem2(params, m, &tile, &base_complement, &complement)?;
    let alpha = params.epsilon.map(|eps| theorem2_alpha(eps, n));
    Ok(Theorem2Instance {
        params: params.clone(),
        modulus: m,
        a,
        b,
        reading: THEOREM2_READING.to_owned(),
        tile,
        base_complement,
        complement,
        diam,
        log_ratio: (m as f64).ln() / (diam as f64).ln(),
        alpha,
        validation,
    })
}

fn progression(step: u64, len: u64) -> Vec<u64> {
    (0..len).map(|k| k * step).collect()
}

fn sumset(factors: &[Vec<u64>]) -> Vec<u64> {
    factors.iter().fold(vec![0u64], |acc, f| {
        acc.iter().flat_map(|&x| f.iter().map(move |&y| x + y)).collect()
    })
}

fn set_from_counts(counts: &[i64]) -> Result<IntegerSet, ConstructionError> {
    if let Some((exponent, &coefficient)) = counts.iter().enumerate().find(|(_, &c)| c != 0 && c != 1) {
        return Err(ConstructionError::InvalidShift {
            exponent: exponent as u64,
            coefficient,
        });
    }
    IntegerSet::new(
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(i, _)| i as u64)
            .collect(),
    )
    .map_err(|e| ConstructionError::InvalidParams(format!("empty complement: {e}")))
}

fn validate_theorem2(
    params: &Theorem2Params,
    m: u64,
    tile: &IntegerSet,
    base: &IntegerSet,
    complement: &IntegerSet,
) -> Result<Theorem2Validation, ConstructionError> {
    let primes = params.primes();
    let n = params.n;
    let least_period_b = least_period(complement, m);
    let least_period_b0 = least_period(base, m);
    let diam = tile.diameter();
    let formula: u64 = primes.iter().map(|&p| (p - 1) * (m / p.pow(n))).sum();
    Ok(Theorem2Validation {
        a_b0_tiles: is_tiling(tile, base, m)?.tiles,
        a_b_tiles: is_tiling(tile, complement, m)?.tiles,
        least_period_b,
        least_period_b0,
        b0_periodic_mod_each_prime: primes.iter().all(|&p| (m / p).is_multiple_of(least_period_b0)),
        b_has_full_period: least_period_b == m,
        prime_sets_match: factorize(m).prime_set() == factorize(tile.len() as u64).prime_set(),
        diam_matches_formula: diam == formula,
        diam_within_bound: diam <= theorem2_diam_bound(params, m),
    })
}

/// `3M / p1^{n-1}`, which equals `3 p1 p2^n p3^n`.
fn theorem2_diam_bound(params: &Theorem2Params, m: u64) -> u64 {
    3 * (m / params.p1.pow(params.n - 1))
}

/// `α = (3 - ε) n / (2n + 1)`.
pub fn theorem2_alpha(epsilon: Rational, n: u32) -> Rational {
    let n = Ratio::from_integer(n as i64);
    Rational((Ratio::from_integer(3) - epsilon.0) * n / (n * 2 + 1))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub diam: u64,
    /// `3M / p1^{n-1}`.
    pub diam_bound: u64,
    pub diam_within_bound: bool,
    /// `log M / log diam(A)`.
    pub achieved_exponent: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    /// `β < α < 3/2`, exact.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_below_alpha_below_three_halves: Option<bool>,
    /// `(p1^ε / 2)^n > (3/2)^{3/2}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime_size_condition: Option<bool>,
    /// `M ≥ (3 p1 p2^n p3^n)^β`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus_exceeds_bound_power: Option<bool>,
    /// `M ≥ diam(A)^β`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus_exceeds_diam_power: Option<bool>,
}

pub fn theorem2_exponent_report(inst: &Theorem2Instance) -> ExponentReport {
    let params = &inst.params;
    let m = inst.modulus;
    let diam_bound = theorem2_diam_bound(params, m);
    let ln_m = (m as f64).ln();
    let alpha = params.epsilon.map(|eps| theorem2_alpha(eps, params.n));
    let beta_below_alpha_below_three_halves = match (params.target_beta, alpha) {
        (Some(beta), Some(alpha)) => Some(beta < alpha && alpha.0 < Ratio::new(3, 2)),
        _ => None,
    };
    let prime_size_condition = params
        .epsilon
        .map(|eps| params.n as f64 * (eps.to_f64() * (params.p1 as f64).ln() - 2f64.ln()) > 1.5 * 1.5f64.ln());
    let beta = params.target_beta.map(Rational::to_f64);
    ExponentReport {
        diam: inst.diam,
        diam_bound,
        diam_within_bound: inst.diam <= diam_bound,
        achieved_exponent: ln_m / (inst.diam as f64).ln(),
        alpha,
        beta_below_alpha_below_three_halves,
        prime_size_condition,
        modulus_exceeds_bound_power: beta.map(|b| ln_m >= b * (diam_bound as f64).ln()),
        modulus_exceeds_diam_power: beta.map(|b| ln_m >= b * (inst.diam as f64).ln()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub p: u64,
    pub q: u64,
    pub spectrum: Vec<u64>,
    /// `lcm(S_A)`, computed from the spectrum.
    pub modulus: u64,
    pub modulus_is_p2q2: bool,
    pub diam: u64,
    /// Measured diameter equals `(p-1)p + (q-1)q`.
    pub diam_matches_formula: bool,
    /// `(p-1) M / p`.
    pub eq3_bound: u64,
    /// `diam < (p-1) M / p`.
    pub eq3_fails: bool,
}

/// The set with mask `Φ_{p²}(X) Φ_{q²}(X)`, `p < q < 2p` prime.
pub fn section4_counterexample(p: u64, q: u64) -> Result<(IntegerSet, CounterexampleReport), ConstructionError> {
    if !is_prime(p) || !is_prime(q) {
        return Err(ConstructionError::InvalidParams(format!("{p} and {q} must be prime")));
    }
    if !(p < q && q < 2 * p) {
        return Err(ConstructionError::InvalidParams(format!(
            "need p < q < 2p, got ({p}, {q})"
        )));
    }
    let elements = sumset(&[progression(p, p), progression(q, q)]);
    let a = IntegerSet::from_unsorted(elements)
        .map_err(|e| ConstructionError::InvalidParams(format!("product mask is not 0/1: {e}")))?;
    let spectrum = spectrum(&a);
    let modulus = spectrum.iter().fold(1, |acc, &s| lcm(acc, s));
    let diam = a.diameter();
    let eq3_bound = (p - 1) * (modulus / p);
    let report = CounterexampleReport {
        p,
        q,
        modulus,
        modulus_is_p2q2: modulus == p * p * q * q,
        diam,
        diam_matches_formula: diam == (p - 1) * p + (q - 1) * q,
        eq3_bound,
        eq3_fails: diam < eq3_bound,
        spectrum,
    };
    Ok((a, report))
}

/// Complete residue system mod `N = ∏ p^α` with mask
/// `∏_p ∏_{k=1}^{α} (1 + X^{N/p^k} + … + X^{(p-1) N/p^k})`.
///
/// Entries with the same prime are merged by adding exponents; the tower is
/// ordered by prime, then by `k`.
pub fn standard_tile(prime_powers: &[(u64, u32)]) -> Result<IntegerSet, ConstructionError> {
    let mut merged: BTreeMap<u64, u32> = BTreeMap::new();
    for &(p, e) in prime_powers {
        if !is_prime(p) {
            return Err(ConstructionError::InvalidParams(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(ConstructionError::InvalidParams(format!(
                "exponent of {p} must be positive"
            )));
        }
        *merged.entry(p).or_default() += e;
    }
    let mut modulus = 1u64;
    for (&p, &e) in &merged {
        modulus = modulus
            .checked_mul(checked_pow(p, e)?)
            .ok_or(ConstructionError::Overflow)?;
    }
    let factors: Vec<Vec<u64>> = merged
        .iter()
        .flat_map(|(&p, &e)| (1..=e).map(move |k| progression(modulus / p.pow(k), p)))
        .collect();
    IntegerSet::from_unsorted(sumset(&factors))
        .map_err(|e| ConstructionError::InvalidParams(format!("tower is not a set: {e}")))
}
