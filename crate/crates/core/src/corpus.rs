//! Exhaustive enumeration of small normalized sets.
//!
//! Every set `A ⊆ {0..max_diameter}` with `0 ∈ A` is analyzed with
//! [`minimal_tiling_period`] and [`cm_report`]. Sets are ordered by the
//! binary number whose bit `i` says `i + 1 ∈ A`, so output order does not
//! depend on how many workers computed it.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cmcheck::{cm_report, CmReport};
use crate::search::{minimal_tiling_period, PeriodResult, SearchConfig};
use crate::tilingset::IntegerSet;

/// Largest `max_diameter` accepted without an explicit override.
pub const SAFETY_LIMIT: u32 = 14;

/// Hard ceiling even with the override: the enumeration has `2^max_diameter` sets.
const HARD_LIMIT: u32 = 40;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("max diameter {requested} exceeds the safety limit {limit}; pass the override to continue")]
    BeyondSafetyLimit { requested: u32, limit: u32 },
    #[error("max diameter {0} is too large to enumerate")]
    TooLarge(u32),
    #[error("failed to build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusOptions {
    pub max_diameter: u32,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
    pub allow_large: bool,
}

impl CorpusOptions {
    pub fn new(max_diameter: u32) -> Self {
        Self {
            max_diameter,
            jobs: 0,
            allow_large: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub set: IntegerSet,
    pub min_period: PeriodResult,
    pub analysis: CmReport,
}

/// The `index`-th normalized set in corpus order.
pub fn corpus_set(index: u64) -> IntegerSet {
    let mut v = vec![0u64];
    v.extend((0..64).filter(|i| index >> i & 1 == 1).map(|i| i + 1));
    IntegerSet::new(v).expect("strictly increasing by construction")
}

/// All normalized sets of diameter at most `max_diameter`, in corpus order.
pub fn corpus_sets(max_diameter: u32) -> impl Iterator<Item = IntegerSet> {
    (0..1u64 << max_diameter).map(corpus_set)
}

pub fn analyze(set: IntegerSet) -> CorpusRecord {
    let cfg = SearchConfig {
        parallelism: 1,
        ..Default::default()
    };
    CorpusRecord {
        min_period: minimal_tiling_period(&set, &cfg),
        analysis: cm_report(&set),
        set,
    }
}

fn check_limits(opts: &CorpusOptions) -> Result<(), CorpusError> {
    if opts.max_diameter > HARD_LIMIT {
        return Err(CorpusError::TooLarge(opts.max_diameter));
    }
    if opts.max_diameter > SAFETY_LIMIT && !opts.allow_large {
        return Err(CorpusError::BeyondSafetyLimit {
            requested: opts.max_diameter,
            limit: SAFETY_LIMIT,
        });
    }
    Ok(())
}

/// Analyzes the whole corpus; records come back in corpus order.
pub fn corpus(opts: &CorpusOptions) -> Result<Vec<CorpusRecord>, CorpusError> {
    check_limits(opts)?;
    let count = 1u64 << opts.max_diameter;
    if opts.jobs == 1 {
        return Ok((0..count).map(|i| analyze(corpus_set(i))).collect());
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if opts.jobs > 0 {
        builder = builder.num_threads(opts.jobs);
    }
    let pool = builder.build().map_err(|e| CorpusError::Pool(e.to_string()))?;
    Ok(pool.install(|| (0..count).into_par_iter().map(|i| analyze(corpus_set(i))).collect()))
}

/// Writes the corpus as JSON lines.
pub fn write_corpus<W: Write>(opts: &CorpusOptions, mut out: W) -> Result<(), CorpusError> {
    for record in corpus(opts)? {
        serde_json::to_writer(&mut out, &record)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}
