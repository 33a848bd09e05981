//! Finite sets of nonnegative integers, their mask polynomials, and tiling
//! verification in `Z_M`.
//!
//! [`is_tiling`] decides `A ⊕ B = Z_M` two independent ways:
//!
//! 1. **direct**: count how often each residue is hit by `a + b mod M`;
//! 2. **cyclotomic**: `|A|·|B| = M` and `Φ_s | A(X)B(X) mod (X^M - 1)` for
//!    every `s | M`, `s ≠ 1`.
//!
//! The two are equivalent, so a disagreement is reported as
//! [`TilingError::InconsistentRoutes`] instead of being resolved silently.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{cyclotomic_divides_counts, cyclotomic_divides_mask, factorize, IntPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("a set must have at least one element")]
    Empty,
    #[error("elements must be strictly increasing (offending value {0})")]
    NotStrictlyIncreasing(u64),
    #[error("duplicate element {0}")]
    Duplicate(u64),
}

/// Finite nonempty set of nonnegative integers, stored strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct IntegerSet(Vec<u64>);

impl IntegerSet {
    pub fn new(elements: Vec<u64>) -> Result<Self, SetError> {
        if elements.is_empty() {
            return Err(SetError::Empty);
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(SetError::NotStrictlyIncreasing(w[1]));
        }
        Ok(Self(elements))
    }

    /// Sorts the input; duplicates are rejected rather than merged.
    pub fn from_unsorted<I: IntoIterator<Item = u64>>(elements: I) -> Result<Self, SetError> {
        let mut v: Vec<u64> = elements.into_iter().collect();
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(SetError::Duplicate(w[0]));
        }
        Self::new(v)
    }

    pub fn singleton(x: u64) -> Self {
        Self(vec![x])
    }

    /// `{0, 1, ..., n-1}`.
    ///
    /// # Panics
    ///
    /// Panics if `n == 0`.
    pub fn interval(n: u64) -> Self {
        assert!(n > 0, "interval must be nonempty");
        Self((0..n).collect())
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> u64 {
        self.0[0]
    }

    pub fn max(&self) -> u64 {
        self.0[self.0.len() - 1]
    }

    pub fn diameter(&self) -> u64 {
        self.max() - self.min()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_normalized(&self) -> bool {
        self.min() == 0
    }

    /// The translate with minimum 0.
    pub fn normalize(&self) -> Self {
        self.normalize_with_shift().0
    }

    /// Normalized set together with the subtracted offset.
    pub fn normalize_with_shift(&self) -> (Self, u64) {
        let shift = self.min();
        (Self(self.0.iter().map(|&x| x - shift).collect()), shift)
    }

    /// Residues mod `m`, in element order (a multiset when not injective).
    pub fn residues(&self, m: u64) -> Vec<u64> {
        self.0.iter().map(|&x| x % m).collect()
    }

    /// Whether distinct elements stay distinct mod `m`.
    pub fn is_injective_mod(&self, m: u64) -> bool {
        if self.diameter() < m {
            return true;
        }
        let mut r = self.residues(m);
        r.sort_unstable();
        r.windows(2).all(|w| w[0] != w[1])
    }

    /// `(A + t) mod m` as a set; requires injectivity mod `m`.
    pub fn translate_mod(&self, t: u64, m: u64) -> Option<Self> {
        Self::from_unsorted(self.0.iter().map(|&x| (x % m + t % m) % m)).ok()
    }

    /// `∑_{a∈A} X^a`.
    pub fn mask_polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_exponents(self.0.iter().map(|&x| to_usize(x)))
    }
}

impl fmt::Debug for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl TryFrom<Vec<u64>> for IntegerSet {
    type Error = SetError;

    fn try_from(v: Vec<u64>) -> Result<Self, SetError> {
        Self::new(v)
    }
}

impl From<IntegerSet> for Vec<u64> {
    fn from(s: IntegerSet) -> Self {
        s.0
    }
}

fn to_usize(x: u64) -> usize {
    usize::try_from(x).expect("value exceeds usize")
}

pub fn normalize(a: &IntegerSet) -> IntegerSet {
    a.normalize()
}

pub fn mask_polynomial(a: &IntegerSet) -> IntPolynomial {
    a.mask_polynomial()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("tiling routes disagree: direct={direct}, cyclotomic={cyclotomic}")]
    InconsistentRoutes { direct: bool, cyclotomic: bool },
    #[error("element {value} is outside [0, {modulus})")]
    OutOfRange { value: u64, modulus: u64 },
    #[error("|A|·|B| = {product} differs from the modulus {modulus}")]
    SizeMismatch { product: u64, modulus: u64 },
    #[error("A ⊕ B ≠ Z_M")]
    NotATiling,
    #[error("modulus must be positive")]
    ZeroModulus,
}

/// Outcome of the residue-counting route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectRoute {
    pub tiles: bool,
    /// Smallest residue hit more than once.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_overcovered: Option<u64>,
    /// Smallest residue never hit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_uncovered: Option<u64>,
}

/// Outcome of the cyclotomic route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclotomicRoute {
    pub tiles: bool,
    pub size_matches: bool,
    /// Smallest `s | M`, `s > 1`, with `Φ_s ∤ A(X)B(X) mod (X^M - 1)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_index: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TilingVerdict {
    pub tiles: bool,
    pub direct: DirectRoute,
    pub cyclotomic: CyclotomicRoute,
}

pub fn direct_route(a: &IntegerSet, b: &IntegerSet, m: u64) -> DirectRoute {
    assert!(m >= 1, "modulus must be positive");
    let mut counts = vec![0u32; to_usize(m)];
    let ra = a.residues(m);
    for rb in b.residues(m) {
        for &x in &ra {
            let k = x + rb;
            let k = if k >= m { k - m } else { k };
            counts[k as usize] += 1;
        }
    }
    let first_overcovered = counts.iter().position(|&c| c > 1).map(|i| i as u64);
    let first_uncovered = counts.iter().position(|&c| c == 0).map(|i| i as u64);
    DirectRoute {
        tiles: first_overcovered.is_none() && first_uncovered.is_none(),
        first_overcovered,
        first_uncovered,
    }
}

pub fn cyclotomic_route(a: &IntegerSet, b: &IntegerSet, m: u64) -> CyclotomicRoute {
    assert!(m >= 1, "modulus must be positive");
    let size_matches = (a.len() as u128) * (b.len() as u128) == m as u128;
    if !size_matches {
        return CyclotomicRoute {
            tiles: false,
            size_matches,
            failing_index: None,
        };
    }
    // A(X)B(X) mod (X^M - 1); coefficients are hit counts, bounded by |A||B|
    let mut product = vec![0u64; to_usize(m)];
    let ra = a.residues(m);
    for rb in b.residues(m) {
        for &x in &ra {
            product[((x + rb) % m) as usize] += 1;
        }
    }
    let failing_index = factorize(m)
        .divisors()
        .into_iter()
        .skip(1)
        .find(|&s| !cyclotomic_divides_counts(s, &product));
    CyclotomicRoute {
        tiles: failing_index.is_none(),
        size_matches,
        failing_index,
    }
}

/// Whether `A ⊕ B = Z_M`, checked by both routes.
pub fn is_tiling(a: &IntegerSet, b: &IntegerSet, m: u64) -> Result<TilingVerdict, TilingError> {
    if m == 0 {
        return Err(TilingError::ZeroModulus);
    }
    let direct = direct_route(a, b, m);
    let cyclotomic = cyclotomic_route(a, b, m);
    if direct.tiles != cyclotomic.tiles {
        return Err(TilingError::InconsistentRoutes {
            direct: direct.tiles,
            cyclotomic: cyclotomic.tiles,
        });
    }
    Ok(TilingVerdict {
        tiles: direct.tiles,
        direct,
        cyclotomic,
    })
}

/// Whether `(B + d) mod M = B`.
pub fn is_periodic(b: &IntegerSet, m: u64, d: u64) -> bool {
    let member = membership(b, m);
    shifted_equal(b, &member, m, d)
}

fn membership(b: &IntegerSet, m: u64) -> Vec<bool> {
    let mut member = vec![false; to_usize(m)];
    for r in b.residues(m) {
        member[r as usize] = true;
    }
    member
}

fn shifted_equal(b: &IntegerSet, member: &[bool], m: u64, d: u64) -> bool {
    b.elements().iter().all(|&x| member[((x % m + d % m) % m) as usize])
}

/// Smallest `d | M` with `(B + d) mod M = B`.
///
/// # Panics
///
/// Panics if `m == 0` or some element of `b` is not below `m`.
pub fn least_period(b: &IntegerSet, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    assert!(b.max() < m, "least_period expects B ⊂ [0, M)");
    let member = membership(b, m);
    factorize(m)
        .divisors()
        .into_iter()
        .find(|&d| shifted_equal(b, &member, m, d))
        .unwrap_or(m)
}

/// All `s ≤ bound` with `Φ_s | A(X)`. Indices with `φ(s) > diam(A)` are
/// skipped without testing.
pub fn cyclotomic_divisors(a: &IntegerSet, bound: u64) -> Vec<u64> {
    let diam = a.diameter();
    let phi = totients_up_to(bound);
    (1..=bound)
        .filter(|&s| phi[s as usize] <= diam)
        .filter(|&s| cyclotomic_divides_mask(s, a.elements()))
        .collect()
}

/// `Φ_s | A(X)` for each candidate index, keeping those that divide.
pub fn cyclotomic_divisors_among<I: IntoIterator<Item = u64>>(a: &IntegerSet, candidates: I) -> Vec<u64> {
    candidates
        .into_iter()
        .filter(|&s| cyclotomic_divides_mask(s, a.elements()))
        .collect()
}

fn totients_up_to(n: u64) -> Vec<u64> {
    let n = to_usize(n);
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

/// A verified factorization `tile ⊕ complement = Z_modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTiling")]
pub struct CyclicTiling {
    tile: IntegerSet,
    complement: IntegerSet,
    modulus: u64,
}

#[derive(Deserialize)]
struct RawTiling {
    tile: IntegerSet,
    complement: IntegerSet,
    modulus: u64,
}

impl TryFrom<RawTiling> for CyclicTiling {
    type Error = TilingError;

    fn try_from(raw: RawTiling) -> Result<Self, TilingError> {
        Self::new(raw.tile, raw.complement, raw.modulus)
    }
}

impl CyclicTiling {
    pub fn new(tile: IntegerSet, complement: IntegerSet, modulus: u64) -> Result<Self, TilingError> {
        if modulus == 0 {
            return Err(TilingError::ZeroModulus);
        }
        for s in [&tile, &complement] {
            if s.max() >= modulus {
                return Err(TilingError::OutOfRange {
                    value: s.max(),
                    modulus,
                });
            }
        }
        let product = tile.len() as u64 * complement.len() as u64;
        if product != modulus {
            return Err(TilingError::SizeMismatch { product, modulus });
        }
        if !is_tiling(&tile, &complement, modulus)?.tiles {
            return Err(TilingError::NotATiling);
        }
        Ok(Self {
            tile,
            complement,
            modulus,
        })
    }

    pub fn tile(&self) -> &IntegerSet {
        &self.tile
    }

    pub fn complement(&self) -> &IntegerSet {
        &self.complement
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Least period of the translation set `complement + M·Z`.
    pub fn least_period(&self) -> u64 {
        least_period(&self.complement, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> IntegerSet {
        IntegerSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(IntegerSet::new(vec![]), Err(SetError::Empty));
        assert_eq!(IntegerSet::new(vec![1, 1]), Err(SetError::NotStrictlyIncreasing(1)));
        assert_eq!(IntegerSet::new(vec![3, 2]), Err(SetError::NotStrictlyIncreasing(2)));
        assert_eq!(IntegerSet::from_unsorted([4, 0, 4]), Err(SetError::Duplicate(4)));
        assert_eq!(IntegerSet::from_unsorted([4, 0, 2]).unwrap(), set(&[0, 2, 4]));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&set(&[5, 7])), set(&[0, 2]));
        assert_eq!(normalize(&set(&[0, 1, 3])), set(&[0, 1, 3]));
        assert_eq!(normalize(&set(&[100])), set(&[0]));
        assert_eq!(set(&[5, 7]).normalize_with_shift().1, 5);
    }

    #[test]
    fn mask_examples() {
        assert_eq!(
            mask_polynomial(&set(&[0, 1, 2, 3])),
            IntPolynomial::from_i64(&[1, 1, 1, 1])
        );
        assert_eq!(mask_polynomial(&set(&[0])), IntPolynomial::one());
        assert_eq!(mask_polynomial(&set(&[0, 2])), IntPolynomial::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn tiling_examples() {
        let v = is_tiling(&set(&[0, 1]), &set(&[0, 2]), 4).unwrap();
        assert!(v.tiles);
        let v = is_tiling(&set(&[0, 1]), &set(&[0, 1]), 4).unwrap();
        assert!(!v.tiles);
        assert_eq!(v.direct.first_overcovered, Some(1));
        assert_eq!(v.direct.first_uncovered, Some(3));
        assert!(v.cyclotomic.size_matches);
        assert!(v.cyclotomic.failing_index.is_some());
    }

    #[test]
    fn size_mismatch_fails_both_routes() {
        let v = is_tiling(&set(&[0, 1]), &set(&[0]), 4).unwrap();
        assert!(!v.tiles);
        assert!(!v.cyclotomic.size_matches);
    }

    #[test]
    fn least_period_examples() {
        assert_eq!(least_period(&set(&[0, 2]), 4), 2);
        assert_eq!(least_period(&set(&[0, 1]), 4), 4);
        assert_eq!(least_period(&set(&[0]), 1), 1);
        assert_eq!(least_period(&set(&[1, 4, 7]), 9), 3);
    }

    #[test]
    fn cyclotomic_divisor_examples() {
        assert_eq!(cyclotomic_divisors(&set(&[0, 1, 2, 3]), 10), vec![2, 4]);
        assert!(cyclotomic_divisors(&set(&[0]), 50).is_empty());
        assert_eq!(cyclotomic_divisors(&set(&[0, 1, 2, 3, 4, 5]), 10), vec![2, 3, 6]);
    }

    #[test]
    fn totient_sieve() {
        let phi = totients_up_to(50);
        for s in 1..=50 {
            assert_eq!(phi[s as usize], crate::polyring::euler_phi(s));
        }
    }

    #[test]
    fn cyclic_tiling_validates() {
        assert!(CyclicTiling::new(set(&[0, 1]), set(&[0, 2]), 4).is_ok());
        assert_eq!(
            CyclicTiling::new(set(&[0, 1]), set(&[0, 1]), 4),
            Err(TilingError::NotATiling)
        );
        assert_eq!(
            CyclicTiling::new(set(&[0, 5]), set(&[0, 2]), 4),
            Err(TilingError::OutOfRange { value: 5, modulus: 4 })
        );
        assert!(matches!(
            CyclicTiling::new(set(&[0, 1]), set(&[0]), 4),
            Err(TilingError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn tiling_json_shape() {
        let t = CyclicTiling::new(set(&[0, 1]), set(&[0, 2]), 4).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"tile":[0,1],"complement":[0,2],"modulus":4}"#);
        let back: CyclicTiling = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<CyclicTiling>(r#"{"tile":[0,1],"complement":[0,1],"modulus":4}"#).is_err());
        assert!(serde_json::from_str::<IntegerSet>("[2,1]").is_err());
        assert!(serde_json::from_str::<IntegerSet>("[]").is_err());
    }
}
