//! Completion engines.
//!
//! * [`pottier`]: FIFO completion with iterated normal forms; returns a
//!   superset of the Graver basis.
//! * [`sym_pottier`]: the same over orbit representatives.
//! * [`fast`]: norm-ordered completion from the projected generators with a
//!   same-orthant pair filter; returns the Graver basis exactly.
//! * [`sym_fast`]: norm-ordered completion over orbit representatives.
//!
//! Every engine reduces candidates in batches. Batch composition never
//! depends on the thread count and insertions are applied in queue order, so
//! results are identical with and without the `parallel` feature.

pub mod fast;
pub mod pottier;
pub mod sym_fast;
pub mod sym_pottier;

use std::collections::{HashSet, VecDeque};

use crate::index::ReducerIndex;
use crate::symmetry::DEFAULT_ORBIT_CAP;
use crate::vectors::IntVector;

/// The evolving set `G`: insertion-ordered, deduplicated, indexed for
/// reducer lookups.
#[derive(Clone, Debug)]
pub struct GraverSet {
    index: ReducerIndex,
    members: HashSet<IntVector>,
}

impl GraverSet {
    pub fn new(n: usize) -> Self {
        GraverSet {
            index: ReducerIndex::new(n),
            members: HashSet::new(),
        }
    }

    pub fn from_vectors(n: usize, vectors: impl IntoIterator<Item = IntVector>) -> Self {
        let mut g = GraverSet::new(n);
        for v in vectors {
            g.insert(v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.index.n()
    }

    /// Adds `v` unless already present; returns whether it was new.
    pub fn insert(&mut self, v: IntVector) -> bool {
        if self.members.contains(&v) {
            return false;
        }
        self.members.insert(v.clone());
        self.index.insert(v);
        true
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.members.contains(v)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Members in insertion order.
    pub fn vectors(&self) -> &[IntVector] {
        self.index.vectors()
    }

    pub fn index(&self) -> &ReducerIndex {
        &self.index
    }

    pub fn closed_under_negation(&self) -> bool {
        self.vectors()
            .iter()
            .all(|v| self.members.contains(&v.neg()))
    }

    /// Members as a sorted list.
    pub fn sorted(&self) -> Vec<IntVector> {
        let mut v = self.vectors().to_vec();
        v.sort();
        v
    }
}

/// FIFO queue of pending sums that never holds zero and never accepts the
/// same vector twice.
#[derive(Clone, Debug, Default)]
pub struct PairQueue {
    pending: VecDeque<IntVector>,
    seen: HashSet<IntVector>,
}

impl PairQueue {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns whether `v` was enqueued.
    pub fn push(&mut self, v: IntVector) -> bool {
        if v.is_zero() || self.seen.contains(&v) {
            return false;
        }
        self.seen.insert(v.clone());
        self.pending.push_back(v);
        true
    }

    pub fn pop(&mut self) -> Option<IntVector> {
        self.pending.pop_front()
    }

    /// Up to `max` items from the front.
    pub fn pop_batch(&mut self, max: usize) -> Vec<IntVector> {
        let k = max.min(self.pending.len());
        self.pending.drain(..k).collect()
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn total_enqueued(&self) -> usize {
        self.seen.len()
    }
}

#[derive(Clone, Debug)]
pub struct EngineOptions {
    /// Candidates reduced per batch in the FIFO engines.
    pub batch_size: usize,
    pub orbit_cap: usize,
    /// Keep the norm of every selected candidate (norm-ordered engines).
    pub record_norms: bool,
    /// Which orbit the symmetric Pottier engine sums over for a new pair.
    pub pair_side: PairSide,
}

/// For a new representative `f` and a stored representative `g`, the
/// symmetric Pottier engine enqueues either `{f + g' : g' ∈ orb(g)}` or
/// `{f' + g : f' ∈ orb(f)}`; both cover the same orbits of sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairSide {
    /// The smaller orbit, preferring `orb(g)` on ties.
    #[default]
    Smaller,
    OrbitOfG,
    OrbitOfF,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            batch_size: 512,
            orbit_cap: DEFAULT_ORBIT_CAP,
            record_norms: false,
            pair_side: PairSide::Smaller,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EngineStats {
    pub pairs_enqueued: usize,
    pub reductions: usize,
    /// Vectors (or representatives) added after the input set, in order.
    pub added: Vec<IntVector>,
    /// Norms of selected candidates, when requested.
    pub selected_norms: Vec<u64>,
}

/// Output of a symmetric engine.
#[derive(Clone, Debug)]
pub struct SymmetricRun {
    /// `orb(G^sym)`.
    pub graver: GraverSet,
    /// `G^sym`: lexicographically smallest member of each orbit.
    pub representatives: Vec<IntVector>,
    pub stats: EngineStats,
}
