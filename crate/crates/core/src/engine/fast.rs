//! Norm-ordered completion from the projected generators.
//!
//! Starting from lifts of the ⊑-minimal vectors of the projected lattice,
//! sums are only formed between vectors whose projections share a closed
//! orthant, and candidates are processed in order of increasing prefix norm.
//! Under those two rules a candidate with any conforming reducer always
//! reduces to zero, and every vector that is added is a Graver element.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::{EngineOptions, EngineStats, GraverSet};
use crate::error::{GraverError, Result};
use crate::lattice::{InputSetFbar, LatticeBasis};
use crate::par;
use crate::vectors::{prefix_norm_unchecked, same_orthant_unchecked, IntVector};

/// One-shot normal form: zero if anything in `g` conforms to `s`, else `s`.
pub fn fast_normal_form(s: &IntVector, g: &GraverSet) -> IntVector {
    if g.index().find_any(s.entries()).is_some() {
        IntVector::zero(s.len())
    } else {
        s.clone()
    }
}

/// Min-heap of candidates keyed by `(norm, vector)`, never accepting a
/// vector twice.
pub(crate) struct NormQueue {
    heap: BinaryHeap<Reverse<(u64, IntVector)>>,
    seen: HashSet<IntVector>,
}

impl NormQueue {
    pub fn new() -> Self {
        NormQueue {
            heap: BinaryHeap::new(),
            seen: HashSet::new(),
        }
    }

    pub fn push(&mut self, norm: u64, v: IntVector) -> bool {
        if v.is_zero() || self.seen.contains(&v) {
            return false;
        }
        self.seen.insert(v.clone());
        self.heap.push(Reverse((norm, v)));
        true
    }

    /// Puts back an item that was popped but not processed.
    pub fn restore(&mut self, norm: u64, v: IntVector) {
        self.heap.push(Reverse((norm, v)));
    }

    /// Every pending item with the smallest norm, in vector order.
    pub fn pop_level(&mut self) -> Option<(u64, Vec<IntVector>)> {
        let Reverse((norm, first)) = self.heap.pop()?;
        let mut level = vec![first];
        while let Some(Reverse((m, _))) = self.heap.peek() {
            if *m != norm {
                break;
            }
            let Reverse((_, v)) = self.heap.pop().expect("peeked");
            level.push(v);
        }
        Some((norm, level))
    }

    pub fn total_enqueued(&self) -> usize {
        self.seen.len()
    }
}

pub fn fast_graver(fbar: &InputSetFbar, basis: &LatticeBasis) -> Result<GraverSet> {
    fast_graver_with(fbar, basis, &EngineOptions::default()).map(|(g, _)| g)
}

pub fn fast_graver_with(
    fbar: &InputSetFbar,
    basis: &LatticeBasis,
    opts: &EngineOptions,
) -> Result<(GraverSet, EngineStats)> {
    if !basis.is_pivoted() {
        return Err(GraverError::Domain(
            "norm-ordered completion requires a pivoted basis",
        ));
    }
    let n = basis.n();
    let d = basis.d();
    let mut g = GraverSet::new(n);
    if d == 0 {
        return Ok((g, EngineStats::default()));
    }
    for f in &fbar.vectors {
        if f.len() != n {
            return Err(GraverError::Dimension {
                expected: n,
                found: f.len(),
            });
        }
        g.insert(f.clone());
    }

    let mut queue = NormQueue::new();
    let start = g.vectors().to_vec();
    for (j, a) in start.iter().enumerate() {
        enqueue_sums(a, &start[..j], d, &mut queue)?;
    }

    let mut stats = EngineStats::default();
    let mut last_norm = 0;
    while let Some((norm, level)) = queue.pop_level() {
        debug_assert!(norm >= last_norm, "selected norms must not decrease");
        last_norm = norm;
        if opts.record_norms {
            stats
                .selected_norms
                .extend(std::iter::repeat_n(norm, level.len()));
        }
        // Nothing of this norm can reduce another candidate of the same norm,
        // and every new sum has a strictly larger norm, so the level can be
        // tested against the current G all at once.
        let reducible = par::map(&level, |s| g.index().find_any(s.entries()).is_some());
        stats.reductions += level.len();
        for (s, red) in level.into_iter().zip(reducible) {
            if red {
                continue;
            }
            enqueue_sums(&s, g.vectors(), d, &mut queue)?;
            g.insert(s.clone());
            stats.added.push(s);
        }
    }
    stats.pairs_enqueued = queue.total_enqueued();
    Ok((g, stats))
}

fn enqueue_sums(
    f: &IntVector,
    others: &[IntVector],
    d: usize,
    queue: &mut NormQueue,
) -> Result<()> {
    let fnorm = prefix_norm_unchecked(f.entries(), d);
    for h in others {
        if !same_orthant_unchecked(f.entries(), h.entries(), d) {
            continue;
        }
        let s = f.checked_add(h)?;
        let norm = fnorm + prefix_norm_unchecked(h.entries(), d);
        debug_assert_eq!(norm, prefix_norm_unchecked(s.entries(), d));
        queue.push(norm, s);
    }
    Ok(())
}
