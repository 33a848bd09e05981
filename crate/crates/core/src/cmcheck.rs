//! Coven–Meyerowitz conditions and the diameter inequalities around them.
//!
//! For a finite `A ⊂ Z_{≥0}`, `S_A` is the set of prime powers `p^α` with
//! `Φ_{p^α} | A(X)`.
//!
//! * (T1) `A(1) = ∏_{s ∈ S_A} Φ_s(1)`, and `Φ_{p^α}(1) = p`.
//! * (T2) for prime powers `s_1, …, s_k ∈ S_A` of pairwise distinct primes,
//!   `Φ_{s_1⋯s_k} | A(X)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{cyclotomic_divides_mask, euler_phi, factorize, is_prime, lcm};
use crate::tilingset::IntegerSet;

/// Prime powers `p^α` with `Φ_{p^α} | A(X)`, ascending.
///
/// Only indices with `φ(p^α) ≤ diam(A)` can divide, so the search stops there.
pub fn spectrum(a: &IntegerSet) -> Vec<u64> {
    let diam = a.diameter();
    let mut out = Vec::new();
    // φ(p) = p - 1 ≤ diam bounds the primes
    for p in (2..=diam.saturating_add(1)).filter(|&p| is_prime(p)) {
        let mut pk = p;
        while (pk / p) * (p - 1) <= diam {
            if cyclotomic_divides_mask(pk, a.elements()) {
                out.push(pk);
            }
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
    }
    out.sort_unstable();
    out
}

/// Groups prime powers by their prime.
fn by_prime(spectrum: &[u64]) -> BTreeMap<u64, Vec<u64>> {
    let mut groups: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &s in spectrum {
        let p = factorize(s).primes()[0];
        groups.entry(p).or_default().push(s);
    }
    groups
}

fn spectrum_lcm(spectrum: &[u64]) -> u64 {
    spectrum.iter().fold(1, |acc, &s| lcm(acc, s))
}

fn t1_holds(a: &IntegerSet, spectrum: &[u64]) -> bool {
    let mut product: u128 = 1;
    for &s in spectrum {
        product *= factorize(s).primes()[0] as u128;
        if product > a.len() as u128 {
            return false;
        }
    }
    product == a.len() as u128
}

fn t2_holds(a: &IntegerSet, spectrum: &[u64]) -> bool {
    let diam = a.diameter();
    let groups: Vec<Vec<u64>> = by_prime(spectrum).into_values().collect();

    // Depth-first over the primes: skip a prime, or pick one of its powers.
    fn walk(groups: &[Vec<u64>], idx: usize, index: u64, phi: u64, chosen: usize, a: &IntegerSet, diam: u64) -> bool {
        if idx == groups.len() {
            if chosen < 2 {
                return true;
            }
            // Φ_s of degree above diam(A) cannot divide A(X)
            return phi <= diam && cyclotomic_divides_mask(index, a.elements());
        }
        if !walk(groups, idx + 1, index, phi, chosen, a, diam) {
            return false;
        }
        groups[idx]
            .iter()
            .all(|&s| match (index.checked_mul(s), phi.checked_mul(euler_phi(s))) {
                (Some(i), Some(f)) => walk(groups, idx + 1, i, f, chosen + 1, a, diam),
                _ => false,
            })
    }

    walk(&groups, 0, 1, 1, 0, a, diam)
}

pub fn check_t1(a: &IntegerSet) -> bool {
    t1_holds(a, &spectrum(a))
}

pub fn check_t2(a: &IntegerSet) -> bool {
    t2_holds(a, &spectrum(a))
}

/// Spectrum, (T1)/(T2) and the diameter bounds for one set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmReport {
    pub spectrum: Vec<u64>,
    pub t1: bool,
    pub t2: bool,
    pub lcm_sa: u64,
    /// `Φ_{lcm(S_A)} | A(X)`.
    pub phi_lcm_divides: bool,
    pub diam: u64,
    /// `diam ≥ lcm(S_A)/2`, evaluated only when `phi_lcm_divides`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_bound_holds: Option<bool>,
    /// `diam ≥ (p-1)/p · lcm(S_A)`, `p` the smallest prime factor of `|A|`.
    /// An observation only: it fails for general sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eq3_holds: Option<bool>,
}

pub fn cm_report(a: &IntegerSet) -> CmReport {
    let spectrum = spectrum(a);
    let lcm_sa = spectrum_lcm(&spectrum);
    let diam = a.diameter();
    let phi_lcm_divides = cyclotomic_divides_mask(lcm_sa, a.elements());
    let half_bound_holds = phi_lcm_divides.then(|| 2 * diam as u128 >= lcm_sa as u128);
    let eq3_holds = factorize(a.len() as u64)
        .smallest_prime()
        .map(|p| p as u128 * diam as u128 >= (p as u128 - 1) * lcm_sa as u128);
    CmReport {
        t1: t1_holds(a, &spectrum),
        t2: t2_holds(a, &spectrum),
        spectrum,
        lcm_sa,
        phi_lcm_divides,
        diam,
        half_bound_holds,
        eq3_holds,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("no decomposition into fibers exists")]
    NoDecomposition,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{prime} does not divide the modulus {modulus}")]
    PrimeDoesNotDivide { prime: u64, modulus: u64 },
}

/// `A mod M` written as a union of cosets of the subgroups of order `p` and
/// `q`. A fiber with base `x` is `{x + k·M/p : 0 ≤ k < p}`, `x < M/p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberDecomposition {
    pub modulus: u64,
    pub p: u64,
    pub q: u64,
    pub p_fibers: Vec<u64>,
    pub q_fibers: Vec<u64>,
    /// False when another decomposition exists.
    pub unique: bool,
}

impl FiberDecomposition {
    pub fn single_prime(&self) -> bool {
        self.p == self.q
    }

    /// Every fiber as an explicit residue list, `p`-fibers first.
    pub fn fibers(&self) -> Vec<Vec<u64>> {
        let coset = |base: u64, r: u64| -> Vec<u64> { (0..r).map(|k| base + k * (self.modulus / r)).collect() };
        self.p_fibers
            .iter()
            .map(|&x| coset(x, self.p))
            .chain(self.q_fibers.iter().map(|&x| coset(x, self.q)))
            .collect()
    }

    /// Residue multiplicities of the union of all fibers.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.modulus as usize];
        for f in self.fibers() {
            for r in f {
                counts[r as usize] += 1;
            }
        }
        counts
    }
}

/// Decomposes the multiset `A mod M` into `p`-fibers and `q`-fibers.
///
/// Branches on the smallest residue with positive remaining multiplicity,
/// preferring `p`-fibers. The search is exhaustive, so `NoDecomposition` is a
/// certificate. Passing `p == q` runs single-prime mode. The returned
/// decomposition is the first one in branching order; `unique` records
/// whether the search found a second one.
pub fn fiber_decompose(a: &IntegerSet, m: u64, p: u64, q: u64) -> Result<FiberDecomposition, FiberError> {
    for r in [p, q] {
        if !is_prime(r) {
            return Err(FiberError::NotPrime(r));
        }
        if !m.is_multiple_of(r) {
            return Err(FiberError::PrimeDoesNotDivide { prime: r, modulus: m });
        }
    }
    let mut counts = vec![0u32; m as usize];
    for r in a.residues(m) {
        counts[r as usize] += 1;
    }
    let mut search = FiberSearch {
        counts,
        m,
        primes: if p == q { vec![p] } else { vec![p, q] },
        stack: Vec::new(),
        found: Vec::new(),
    };
    search.run(0);
    let mut found = search.found.into_iter();
    let first = found.next().ok_or(FiberError::NoDecomposition)?;
    let unique = found.next().is_none();
    let (mut p_fibers, mut q_fibers) = (Vec::new(), Vec::new());
    for (base, prime_idx) in first {
        if prime_idx == 0 {
            p_fibers.push(base);
        } else {
            q_fibers.push(base);
        }
    }
    Ok(FiberDecomposition {
        modulus: m,
        p,
        q,
        p_fibers,
        q_fibers,
        unique,
    })
}

struct FiberSearch {
    counts: Vec<u32>,
    m: u64,
    primes: Vec<u64>,
    /// (base, index into `primes`)
    stack: Vec<(u64, usize)>,
    found: Vec<Vec<(u64, usize)>>,
}

impl FiberSearch {
    fn fiber_fits(&self, base: u64, r: u64, copies: u32) -> bool {
        let step = self.m / r;
        if copies == 0 {
            return true;
        }
        // every smaller residue is exhausted, so `base` must be the fiber's least element
        base < step && (0..r).all(|k| self.counts[(base + k * step) as usize] >= copies)
    }

    fn apply(&mut self, base: u64, r: u64, copies: u32, remove: bool) {
        if copies == 0 {
            return;
        }
        let step = self.m / r;
        for k in 0..r {
            let c = &mut self.counts[(base + k * step) as usize];
            if remove {
                *c -= copies;
            } else {
                *c += copies;
            }
        }
    }

    /// Stops once two decompositions are known.
    fn run(&mut self, from: u64) {
        if self.found.len() >= 2 {
            return;
        }
        let Some(x) = (from..self.m).find(|&x| self.counts[x as usize] > 0) else {
            self.found.push(self.stack.clone());
            return;
        };
        let c = self.counts[x as usize];
        if self.primes.len() == 1 {
            let r = self.primes[0];
            if self.fiber_fits(x, r, c) {
                self.place(x, 0, c);
                self.run(x + 1);
                self.unplace(x, 0, c);
            }
            return;
        }
        let (p, q) = (self.primes[0], self.primes[1]);
        // k copies of the p-fiber at x and c - k of the q-fiber, k descending
        for k in (0..=c).rev() {
            if !self.fiber_fits(x, p, k) {
                continue;
            }
            self.place(x, 0, k);
            if self.fiber_fits(x, q, c - k) {
                self.place(x, 1, c - k);
                self.run(x + 1);
                self.unplace(x, 1, c - k);
            }
            self.unplace(x, 0, k);
            if self.found.len() >= 2 {
                return;
            }
        }
    }

    fn place(&mut self, base: u64, idx: usize, copies: u32) {
        let r = self.primes[idx];
        self.apply(base, r, copies, true);
        self.stack.extend(std::iter::repeat_n((base, idx), copies as usize));
    }

    fn unplace(&mut self, base: u64, idx: usize, copies: u32) {
        let r = self.primes[idx];
        self.apply(base, r, copies, false);
        let len = self.stack.len() - copies as usize;
        self.stack.truncate(len);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> IntegerSet {
        IntegerSet::new(v.to_vec()).unwrap()
    }

    /// Mask of Φ_{p²}Φ_{q²} = (1 + X^p + … + X^{(p-1)p})(1 + X^q + … + X^{(q-1)q}).
    fn two_square_set(p: u64, q: u64) -> IntegerSet {
        IntegerSet::from_unsorted((0..p).flat_map(|i| (0..q).map(move |j| i * p + j * q))).unwrap()
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(spectrum(&set(&[0, 1, 2, 3])), vec![2, 4]);
        assert_eq!(spectrum(&set(&[0, 1, 2, 3, 4, 5])), vec![2, 3]);
        assert!(spectrum(&set(&[0])).is_empty());
        assert!(spectrum(&set(&[0, 1, 4])).is_empty());
    }

    #[test]
    fn t1_examples() {
        assert!(check_t1(&set(&[0, 1, 2, 3])));
        assert!(check_t1(&set(&[0, 1, 2, 3, 4, 5])));
        assert!(!check_t1(&set(&[0, 1, 4])));
        assert!(check_t1(&set(&[0])));
    }

    #[test]
    fn t2_examples() {
        assert!(check_t2(&set(&[0, 1, 2, 3])));
        assert!(check_t2(&set(&[0, 1, 2, 3, 4, 5])));
        assert!(check_t2(&set(&[0])));
        let a = two_square_set(7, 11);
        assert_eq!(spectrum(&a), vec![49, 121]);
        assert!(!check_t2(&a));
    }

    #[test]
    fn t2_needs_the_mixed_index() {
        // (1 + X^3)(1 + X^2 + X^4) = Φ_2 Φ_3 Φ_6²
        let a = set(&[0, 2, 3, 4, 5, 7]);
        assert_eq!(spectrum(&a), vec![2, 3]);
        assert!(check_t2(&a));
        // (1 + X)(1 + X^5 + X^10) = Φ_2 Φ_3 Φ_15, no Φ_6
        let b = set(&[0, 1, 5, 6, 10, 11]);
        assert_eq!(spectrum(&b), vec![2, 3]);
        assert!(check_t1(&b));
        assert!(!cyclotomic_divides_mask(6, b.elements()));
        assert!(!check_t2(&b));
    }

    #[test]
    fn report_examples() {
        let r = cm_report(&set(&[0, 1, 2, 3]));
        assert_eq!(r.spectrum, vec![2, 4]);
        assert_eq!(r.lcm_sa, 4);
        assert!(r.t1 && r.t2 && r.phi_lcm_divides);
        assert_eq!(r.half_bound_holds, Some(true));
        assert_eq!(r.eq3_holds, Some(true));

        let r = cm_report(&two_square_set(7, 11));
        assert_eq!(r.lcm_sa, 5929);
        assert_eq!(r.diam, 152);
        assert_eq!(r.eq3_holds, Some(false));

        let r = cm_report(&set(&[0]));
        assert!(r.spectrum.is_empty());
        assert_eq!(r.lcm_sa, 1);
        assert!(r.t1 && r.t2);
        assert!(!r.phi_lcm_divides);
        assert_eq!(r.half_bound_holds, None);
        assert_eq!(r.eq3_holds, None);
    }

    #[test]
    fn report_json_omits_absent_fields() {
        let json = serde_json::to_string(&cm_report(&set(&[0]))).unwrap();
        assert_eq!(
            json,
            r#"{"spectrum":[],"t1":true,"t2":true,"lcm_sa":1,"phi_lcm_divides":false,"diam":0}"#
        );
    }

    #[test]
    fn fiber_single_prime() {
        let d = fiber_decompose(&set(&[0, 2]), 4, 2, 2).unwrap();
        assert!(d.single_prime());
        assert_eq!(d.p_fibers, vec![0]);
        assert!(d.q_fibers.is_empty());
        assert!(d.unique);
    }

    #[test]
    fn fiber_two_primes() {
        let d = fiber_decompose(&set(&[0, 1, 2, 3, 4, 5]), 6, 2, 3).unwrap();
        assert_eq!(d.p_fibers, vec![0, 1, 2]);
        assert!(d.q_fibers.is_empty());
        assert!(!d.unique);
        assert_eq!(d.multiplicities(), vec![1; 6]);
    }

    #[test]
    fn fiber_none() {
        assert_eq!(
            fiber_decompose(&set(&[0, 1, 3]), 6, 2, 3),
            Err(FiberError::NoDecomposition)
        );
    }

    #[test]
    fn fiber_mixed_and_multiset() {
        // {0,6} is a 2-fiber, {1,5,9} a 3-fiber in Z_12
        let d = fiber_decompose(&set(&[0, 1, 5, 6, 9]), 12, 2, 3).unwrap();
        assert_eq!(d.p_fibers, vec![0]);
        assert_eq!(d.q_fibers, vec![1]);
        assert!(d.unique);
        // {0, 3, 6, 9} mod 6 = {0,0,3,3}: two copies of the 2-fiber at 0
        let d = fiber_decompose(&set(&[0, 3, 6, 9]), 6, 2, 3).unwrap();
        assert_eq!(d.p_fibers, vec![0, 0]);
    }

    #[test]
    fn fiber_argument_errors() {
        assert_eq!(fiber_decompose(&set(&[0]), 6, 4, 3), Err(FiberError::NotPrime(4)));
        assert_eq!(
            fiber_decompose(&set(&[0]), 6, 5, 3),
            Err(FiberError::PrimeDoesNotDivide { prime: 5, modulus: 6 })
        );
    }
}
