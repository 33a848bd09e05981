use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::polyring::{cyclotomic_divides_mask, factorize};
use crate::tilingset::IntegerSet;

/// Per-modulus outcome of the complement search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusOutcome {
    /// `|A|` does not divide `M`.
    SizeMismatch,
    /// Two elements of `A` coincide mod `M`.
    NotInjective,
    /// Rejected by the cyclotomic counting test before searching.
    CyclotomicPruned,
    /// Exhaustive search found nothing.
    NoComplement,
    ComplementFound,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ComplementOptions {
    pub node_budget: Option<u64>,
    /// Reject `M` up front unless `|A| = ∏ p` over the prime powers `p^k | M`
    /// with `Φ_{p^k} | A(X)`, a necessary condition for `A ⊕ B = Z_M`.
    pub cyclotomic_prune: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementSearch {
    pub outcome: ModulusOutcome,
    pub complement: Option<IntegerSet>,
    /// Translates placed during the search.
    pub nodes: u64,
}

/// A complement `B ∋ 0` with `A ⊕ B = Z_M`, or `None` when none exists.
///
/// The search is exhaustive; the returned complement is the first one in
/// branching order.
pub fn find_complement(a: &IntegerSet, m: u64) -> Option<IntegerSet> {
    search_complement(a, m, &ComplementOptions::default()).complement
}

/// [`find_complement`] with a node budget.
pub fn find_complement_budgeted(a: &IntegerSet, m: u64, node_budget: u64) -> Result<Option<IntegerSet>, SearchError> {
    let opts = ComplementOptions {
        node_budget: Some(node_budget),
        ..Default::default()
    };
    let res = search_complement(a, m, &opts);
    match res.outcome {
        ModulusOutcome::BudgetExhausted => Err(SearchError::NodeBudgetExceeded { nodes: res.nodes }),
        _ => Ok(res.complement),
    }
}

/// Whether the prime powers `p^k | M` with `Φ_{p^k} | A` multiply (over `p`)
/// to exactly `|A|`.
pub fn cyclotomic_count_consistent(a: &IntegerSet, m: u64) -> bool {
    let mut product: u128 = 1;
    for (p, e) in factorize(m).factors().iter().copied() {
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            if cyclotomic_divides_mask(pk, a.elements()) {
                product *= p as u128;
            }
        }
    }
    product == a.len() as u128
}

/// Backtracking over `Z_M`.
///
/// `0 ∈ B` is fixed. At each node the smallest uncovered residue `t` must be
/// covered by some `a + b`, so the branches are `b = t - a mod M` for `a ∈ A`,
/// tried in increasing order of `b`. A coverage bitmap that has already been
/// refuted is never expanded twice: what remains to be covered depends only
/// on what is covered.
pub fn search_complement(a: &IntegerSet, m: u64, opts: &ComplementOptions) -> ComplementSearch {
    let done = |outcome| ComplementSearch {
        outcome,
        complement: None,
        nodes: 0,
    };
    if m == 0 || !m.is_multiple_of(a.len() as u64) {
        return done(ModulusOutcome::SizeMismatch);
    }
    if !a.is_injective_mod(m) {
        return done(ModulusOutcome::NotInjective);
    }
    if opts.cyclotomic_prune && !cyclotomic_count_consistent(a, m) {
        return done(ModulusOutcome::CyclotomicPruned);
    }
    let mut residues = a.residues(m);
    residues.sort_unstable();
    Backtrack::new(residues, m, opts.node_budget).run()
}

#[derive(Clone)]
struct Coverage {
    words: Vec<u64>,
    m: u64,
    count: u64,
}

impl Coverage {
    fn new(m: u64) -> Self {
        Self {
            words: vec![0; m.div_ceil(64) as usize],
            m,
            count: 0,
        }
    }

    fn get(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    fn flip(&mut self, i: u64) {
        self.words[(i / 64) as usize] ^= 1 << (i % 64);
    }

    fn first_clear_from(&self, from: u64) -> Option<u64> {
        let mut w = (from / 64) as usize;
        let mut word = !self.words.get(w)? & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                let i = w as u64 * 64 + word.trailing_zeros() as u64;
                return (i < self.m).then_some(i);
            }
            w += 1;
            word = !*self.words.get(w)?;
        }
    }
}

struct Frame {
    candidates: Vec<u64>,
    next: usize,
    placed: Option<u64>,
    t: u64,
    key: Vec<u64>,
}

struct Backtrack {
    residues: Vec<u64>,
    m: u64,
    budget: Option<u64>,
    cover: Coverage,
    refuted: HashSet<Vec<u64>>,
    nodes: u64,
}

impl Backtrack {
    fn new(residues: Vec<u64>, m: u64, budget: Option<u64>) -> Self {
        Self {
            residues,
            m,
            budget,
            cover: Coverage::new(m),
            refuted: HashSet::new(),
            nodes: 0,
        }
    }

    fn shifted(&self, a: u64, b: u64) -> u64 {
        let k = a + b;
        if k >= self.m {
            k - self.m
        } else {
            k
        }
    }

    fn fits(&self, b: u64) -> bool {
        self.residues.iter().all(|&a| !self.cover.get(self.shifted(a, b)))
    }

    fn toggle(&mut self, b: u64, on: bool) {
        for i in 0..self.residues.len() {
            let r = self.shifted(self.residues[i], b);
            self.cover.flip(r);
        }
        let n = self.residues.len() as u64;
        if on {
            self.cover.count += n;
        } else {
            self.cover.count -= n;
        }
    }

    fn candidates(&self, t: u64) -> Vec<u64> {
        let mut c: Vec<u64> = self
            .residues
            .iter()
            .map(|&a| (t + self.m - a) % self.m)
            .filter(|&b| self.fits(b))
            .collect();
        c.sort_unstable();
        c
    }

    fn finish(&self, outcome: ModulusOutcome, complement: Option<IntegerSet>) -> ComplementSearch {
        ComplementSearch {
            outcome,
            complement,
            nodes: self.nodes,
        }
    }

    fn run(mut self) -> ComplementSearch {
        self.toggle(0, true);
        self.nodes = 1;
        let mut frames: Vec<Frame> = Vec::new();
        let mut scan_from = 1;
        loop {
            if self.cover.count == self.m {
                let b = IntegerSet::from_unsorted(std::iter::once(0).chain(frames.iter().filter_map(|f| f.placed)))
                    .expect("placed translates are distinct");
                return self.finish(ModulusOutcome::ComplementFound, Some(b));
            }
            // descend unless this coverage was already refuted
            if !self.refuted.contains(&self.cover.words) {
                let t = self
                    .cover
                    .first_clear_from(scan_from)
                    .expect("uncovered residue exists below M");
                frames.push(Frame {
                    candidates: self.candidates(t),
                    next: 0,
                    placed: None,
                    t,
                    key: self.cover.words.clone(),
                });
            }
            // advance to the next untried branch
            loop {
                let Some(frame) = frames.last_mut() else {
                    return self.finish(ModulusOutcome::NoComplement, None);
                };
                if let Some(b) = frame.placed.take() {
                    self.toggle(b, false);
                }
                let frame = frames.last_mut().expect("frame present");
                if frame.next < frame.candidates.len() {
                    let b = frame.candidates[frame.next];
                    frame.next += 1;
                    frame.placed = Some(b);
                    scan_from = frame.t + 1;
                    self.toggle(b, true);
                    self.nodes += 1;
                    if self.budget.is_some_and(|limit| self.nodes > limit) {
                        return self.finish(ModulusOutcome::BudgetExhausted, None);
                    }
                    break;
                }
                let frame = frames.pop().expect("frame present");
                self.refuted.insert(frame.key);
            }
        }
    }
}
