//! Complement search in `Z_M` and the minimal tiling period.
//!
//! If `A` tiles `Z` at all, it tiles with some period `M` whose prime set is
//! that of `|A|` (and then the least such period is one). For a tiling whose
//! least period is `M = ∏ p_j^{n_j}`, every `p_j^{n_j}` divides some `s | M`
//! with `Φ_s | A(X)`, so `p_j^{n_j} ≤ 2φ(s) ≤ 2·diam(A)` and therefore
//! `M ≤ (2D)^d` with `d` the number of primes of `|A|`. Exhausting the
//! restricted candidates up to that cap is therefore a proof that `A` does
//! not tile.

mod candidates;
mod complement;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{cyclotomic_divides_mask, factorize};
use crate::tilingset::{CyclicTiling, IntegerSet};

pub use candidates::{proof_cap, restricted_candidates, unrestricted_candidates};
pub use complement::{
    cyclotomic_count_consistent, find_complement, find_complement_budgeted, search_complement, ComplementOptions,
    ComplementSearch, ModulusOutcome,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("node budget exhausted after {nodes} nodes")]
    NodeBudgetExceeded { nodes: u64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no witness for {prime}^{exponent}: the top-power lemma is violated")]
    Violation { prime: u64, exponent: u32 },
    #[error("M = {modulus} exceeds (2D)^d = {bound}")]
    BoundViolated { modulus: u64, bound: u128 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateMode {
    /// Only moduli whose prime set equals that of `|A|`.
    #[default]
    Restricted,
    /// Every multiple of `|A|`.
    Unrestricted,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchConfig {
    /// Replaces the proof cap `(2D)^d`. A smaller value turns would-be
    /// `DoesNotTile` answers into `Inconclusive`.
    pub max_modulus_override: Option<u64>,
    pub candidate_mode: CandidateMode,
    /// Worker threads; 0 picks the rayon default, 1 runs inline.
    pub parallelism: usize,
    /// Per-modulus limit on placed translates.
    pub node_budget: Option<u64>,
    pub cyclotomic_prune: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploredModulus {
    pub modulus: u64,
    pub outcome: ModulusOutcome,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodStatus {
    Tiles { period: u64, complement: IntegerSet },
    DoesNotTile,
    Inconclusive { reason: InconclusiveReason },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InconclusiveReason {
    BudgetExhausted,
    /// Every candidate below a user cap smaller than `(2D)^d` was refuted.
    CapBelowProofBound,
}

/// Outcome of [`minimal_tiling_period`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PeriodResultRepr", try_from = "PeriodResultRepr")]
pub struct PeriodResult {
    pub status: PeriodStatus,
    pub explored: Vec<ExploredModulus>,
    pub cap_used: u64,
}

impl PeriodResult {
    pub fn period(&self) -> Option<u64> {
        match self.status {
            PeriodStatus::Tiles { period, .. } => Some(period),
            _ => None,
        }
    }

    pub fn complement(&self) -> Option<&IntegerSet> {
        match &self.status {
            PeriodStatus::Tiles { complement, .. } => Some(complement),
            _ => None,
        }
    }

    pub fn tiles(&self) -> bool {
        self.period().is_some()
    }
}

#[derive(Serialize, Deserialize)]
struct PeriodResultRepr {
    status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complement: Option<IntegerSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reason: Option<InconclusiveReason>,
    cap_used: u64,
    explored: Vec<ExploredModulus>,
}

impl From<PeriodResult> for PeriodResultRepr {
    fn from(r: PeriodResult) -> Self {
        let (status, period, complement, reason) = match r.status {
            PeriodStatus::Tiles { period, complement } => ("Tiles", Some(period), Some(complement), None),
            PeriodStatus::DoesNotTile => ("DoesNotTile", None, None, None),
            PeriodStatus::Inconclusive { reason } => ("Inconclusive", None, None, Some(reason)),
        };
        Self {
            status: status.to_owned(),
            period,
            complement,
            reason,
            cap_used: r.cap_used,
            explored: r.explored,
        }
    }
}

impl TryFrom<PeriodResultRepr> for PeriodResult {
    type Error = String;

    fn try_from(r: PeriodResultRepr) -> Result<Self, String> {
        let status = match (r.status.as_str(), r.period, r.complement, r.reason) {
            ("Tiles", Some(period), Some(complement), None) => PeriodStatus::Tiles { period, complement },
            ("DoesNotTile", None, None, None) => PeriodStatus::DoesNotTile,
            ("Inconclusive", None, None, Some(reason)) => PeriodStatus::Inconclusive { reason },
            (s, ..) => return Err(format!("inconsistent period result with status {s:?}")),
        };
        Ok(Self {
            status,
            explored: r.explored,
            cap_used: r.cap_used,
        })
    }
}

/// The minimal tiling period of `A`, with a complement realizing it.
///
/// Candidates are tried in increasing order; the first modulus admitting a
/// complement is the answer. With the default cap a fully refuted candidate
/// list means `A` does not tile `Z`. `A` is normalized first; the complement
/// works for every translate of `A`.
pub fn minimal_tiling_period(a: &IntegerSet, cfg: &SearchConfig) -> PeriodResult {
    let a = a.normalize();
    let proof = proof_cap(&a);
    let cap = cfg.max_modulus_override.unwrap_or(proof);
    let moduli: Vec<u64> = match cfg.candidate_mode {
        CandidateMode::Restricted => restricted_candidates(a.len() as u64, cap).collect(),
        CandidateMode::Unrestricted => unrestricted_candidates(a.len() as u64, cap).collect(),
    };
    let opts = ComplementOptions {
        node_budget: cfg.node_budget,
        cyclotomic_prune: cfg.cyclotomic_prune,
    };

    let mut explored = Vec::new();
    let mut verdict = None;
    let mut scan = |chunk: Vec<(u64, ComplementSearch)>| {
        for (modulus, res) in chunk {
            explored.push(ExploredModulus {
                modulus,
                outcome: res.outcome,
                nodes: res.nodes,
            });
            match res.outcome {
                ModulusOutcome::ComplementFound => {
                    let complement = res.complement.expect("found outcome carries a complement");
                    verdict = Some(PeriodStatus::Tiles {
                        period: modulus,
                        complement,
                    });
                    return true;
                }
                ModulusOutcome::BudgetExhausted => {
                    verdict = Some(PeriodStatus::Inconclusive {
                        reason: InconclusiveReason::BudgetExhausted,
                    });
                    return true;
                }
                _ => {}
            }
        }
        false
    };

    if cfg.parallelism == 1 {
        for &m in &moduli {
            if scan(vec![(m, search_complement(&a, m, &opts))]) {
                break;
            }
        }
    } else {
        use rayon::prelude::*;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if cfg.parallelism > 0 {
            builder = builder.num_threads(cfg.parallelism);
        }
        let pool = builder.build().expect("thread pool");
        let width = pool.current_num_threads().max(1);
        // A chunk is searched concurrently but reported in modulus order, so a
        // hit is only accepted once every smaller candidate is refuted.
        for chunk in moduli.chunks(width) {
            let results: Vec<(u64, ComplementSearch)> = pool.install(|| {
                chunk
                    .par_iter()
                    .map(|&m| (m, search_complement(&a, m, &opts)))
                    .collect()
            });
            if scan(results) {
                break;
            }
        }
    }

    let status = verdict.unwrap_or(if cap < proof {
        PeriodStatus::Inconclusive {
            reason: InconclusiveReason::CapBelowProofBound,
        }
    } else {
        PeriodStatus::DoesNotTile
    });
    PeriodResult {
        status,
        explored,
        cap_used: cap,
    }
}

/// A divisor `s | M` with `p^n | s` and `Φ_s | A(X)`, for one `p^n ‖ M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopPowerWitness {
    pub prime: u64,
    pub exponent: u32,
    pub witness: u64,
}

/// For each `p^n` exactly dividing the least period `M`, the smallest `s | M`
/// with `p^n | s` and `Φ_s | A(X)`.
pub fn top_power_witnesses(tiling: &CyclicTiling) -> Result<Vec<TopPowerWitness>, SearchError> {
    let m = tiling.modulus();
    let least = tiling.least_period();
    if least != m {
        return Err(SearchError::PreconditionFailed(format!(
            "the complement has period {least} < M = {m}"
        )));
    }
    let fm = factorize(m);
    let divisors = fm.divisors();
    fm.factors()
        .iter()
        .map(|&(prime, exponent)| {
            let top = prime.pow(exponent);
            divisors
                .iter()
                .copied()
                .filter(|s| s % top == 0)
                .find(|&s| cyclotomic_divides_mask(s, tiling.tile().elements()))
                .map(|witness| TopPowerWitness {
                    prime,
                    exponent,
                    witness,
                })
                .ok_or(SearchError::Violation { prime, exponent })
        })
        .collect()
}

/// `M ≤ (2·diam(A))^d`, `d` the number of primes of `M`, for a tiling whose
/// least period is `M` and whose modulus has the prime set of `|A|`.
pub fn theorem1_bound_check(tiling: &CyclicTiling) -> Result<bool, SearchError> {
    let m = tiling.modulus();
    let fm = factorize(m);
    let fa = factorize(tiling.tile().len() as u64);
    if fm.prime_set() != fa.prime_set() {
        return Err(SearchError::PreconditionFailed(format!(
            "prime set of M = {m} differs from that of |A| = {}",
            tiling.tile().len()
        )));
    }
    let least = tiling.least_period();
    if least != m {
        return Err(SearchError::PreconditionFailed(format!(
            "the complement has period {least} < M = {m}"
        )));
    }
    Ok(match bound_2d_pow(tiling.tile().diameter(), fm.distinct()) {
        Some(bound) => (m as u128) <= bound,
        None => true,
    })
}

/// `(2D)^d`, or `None` past `u128`.
pub(crate) fn bound_2d_pow(diam: u64, d: usize) -> Option<u128> {
    (2 * diam as u128).checked_pow(d as u32)
}
