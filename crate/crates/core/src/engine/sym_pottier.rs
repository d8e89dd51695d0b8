//! Pottier's completion over orbit representatives.
//!
//! Only one representative per orbit of `G` and of the pending sums is
//! kept. Reduction runs against the materialized union of the
//! representatives' orbits, held in the same reducer index as the plain
//! engine.

use std::collections::HashSet;
use std::collections::VecDeque;

use super::pottier::reduce_in_place;
use super::{EngineOptions, EngineStats, GraverSet, PairSide, SymmetricRun};
use crate::error::{GraverError, Result};
use crate::par;
use crate::symmetry::{Orbiter, PermutationGroup};
use crate::vectors::IntVector;

pub(crate) struct OrbitStore {
    pub graver: GraverSet,
    pub reps: Vec<IntVector>,
    pub orbits: Vec<Vec<IntVector>>,
}

impl OrbitStore {
    pub fn new(n: usize) -> Self {
        OrbitStore {
            graver: GraverSet::new(n),
            reps: Vec::new(),
            orbits: Vec::new(),
        }
    }

    /// Adds the orbit of `rep` (a canonical member).
    pub fn add(&mut self, rep: IntVector, orbiter: &Orbiter) -> Result<()> {
        let members = orbiter.orbit(&rep)?;
        for m in &members {
            self.graver.insert(m.clone());
        }
        self.reps.push(rep);
        self.orbits.push(members);
        Ok(())
    }

    #[cfg(debug_assertions)]
    pub fn check_closed(&self) -> bool {
        self.graver.len() == self.orbits.iter().map(Vec::len).sum::<usize>()
    }
}

pub struct SymQueue {
    pending: VecDeque<IntVector>,
    seen: HashSet<IntVector>,
}

impl SymQueue {
    fn new() -> Self {
        SymQueue {
            pending: VecDeque::new(),
            seen: HashSet::new(),
        }
    }

    fn push(&mut self, canonical: IntVector) {
        if !canonical.is_zero() && !self.seen.contains(&canonical) {
            self.seen.insert(canonical.clone());
            self.pending.push_back(canonical);
        }
    }
}

/// Pair sums for a new representative `f` against every stored
/// representative, summing over whichever orbit is smaller.
fn enqueue_pairs(
    f_index: usize,
    store: &OrbitStore,
    orbiter: &Orbiter,
    side: PairSide,
    queue: &mut SymQueue,
) -> Result<()> {
    let f = &store.reps[f_index];
    let f_orbit = &store.orbits[f_index];
    let mut sums = Vec::new();
    for (g, g_orbit) in store.reps.iter().zip(&store.orbits).take(f_index + 1) {
        let over_f = match side {
            PairSide::Smaller => f_orbit.len() < g_orbit.len(),
            PairSide::OrbitOfG => false,
            PairSide::OrbitOfF => true,
        };
        if over_f {
            for fp in f_orbit.iter().filter(|&fp| fp != g) {
                sums.push(fp.checked_add(g)?);
            }
        } else {
            // f + f is always reducible.
            for gp in g_orbit.iter().filter(|&gp| gp != f) {
                sums.push(f.checked_add(gp)?);
            }
        }
    }
    let canon = par::map(&sums, |s| {
        if s.is_zero() {
            Ok(None)
        } else {
            orbiter.record(s, 0).map(|r| Some(r.canonical))
        }
    });
    for c in canon {
        if let Some(c) = c? {
            queue.push(c);
        }
    }
    Ok(())
}

/// Symmetric Pottier completion. `group` must leave the lattice generated by
/// `f` invariant.
pub fn sym_pottier(f: &[IntVector], group: &PermutationGroup) -> Result<SymmetricRun> {
    sym_pottier_with(f, group, &EngineOptions::default())
}

pub fn sym_pottier_with(
    f: &[IntVector],
    group: &PermutationGroup,
    opts: &EngineOptions,
) -> Result<SymmetricRun> {
    let n = group.degree();
    if let Some(bad) = f.iter().find(|v| v.len() != n) {
        return Err(GraverError::Dimension {
            expected: n,
            found: bad.len(),
        });
    }
    let orbiter = Orbiter::new(group, opts.orbit_cap)?;
    let mut store = OrbitStore::new(n);
    let mut queue = SymQueue::new();

    for v in f.iter().filter(|v| !v.is_zero()) {
        for w in [v.clone(), v.checked_neg()?] {
            if store.graver.contains(&w) {
                continue;
            }
            let rec = orbiter.record(&w, 0)?;
            store.add(rec.canonical, &orbiter)?;
            enqueue_pairs(
                store.reps.len() - 1,
                &store,
                &orbiter,
                opts.pair_side,
                &mut queue,
            )?;
        }
    }

    let mut stats = EngineStats::default();
    while !queue.pending.is_empty() {
        let k = opts.batch_size.max(1).min(queue.pending.len());
        let batch: Vec<IntVector> = queue.pending.drain(..k).collect();
        let start_len = store.graver.len();
        let reduced = par::map(&batch, |s| {
            let mut r = s.clone();
            reduce_in_place(&mut r, &store.graver, None).map(|_| r)
        });
        stats.reductions += batch.len();
        for r in reduced {
            let mut r = r?;
            if store.graver.len() > start_len {
                reduce_in_place(&mut r, &store.graver, None)?;
            }
            if r.is_zero() {
                continue;
            }
            let rec = orbiter.record(&r, 0)?;
            debug_assert!(!store.graver.contains(&rec.canonical));
            stats.added.push(rec.canonical.clone());
            store.add(rec.canonical, &orbiter)?;
            #[cfg(debug_assertions)]
            debug_assert!(store.check_closed());
            enqueue_pairs(
                store.reps.len() - 1,
                &store,
                &orbiter,
                opts.pair_side,
                &mut queue,
            )?;
        }
    }
    stats.pairs_enqueued = queue.seen.len();
    Ok(SymmetricRun {
        graver: store.graver,
        representatives: store.reps,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::pottier::{extract_minimal, pottier_graver};
    use crate::symmetry::Permutation;

    fn iv(x: &[i64]) -> IntVector {
        IntVector::from(x)
    }

    #[test]
    fn trivial_group_matches_plain_engine() {
        let f = [iv(&[1, 2, 0, -1]), iv(&[0, 1, 3, 2])];
        let plain = pottier_graver(&f).unwrap();
        let sym = sym_pottier(&f, &PermutationGroup::trivial(4)).unwrap();
        assert_eq!(plain.vectors(), sym.graver.vectors());
        assert_eq!(
            extract_minimal(&plain).sorted(),
            extract_minimal(&sym.graver).sorted()
        );
        assert_eq!(sym.graver.len(), sym.representatives.len());
    }

    #[test]
    fn fixed_vector_under_swap() {
        let group = PermutationGroup::new(2, vec![Permutation::swap(2, 0, 1)]).unwrap();
        let run = sym_pottier(&[iv(&[1, 1])], &group).unwrap();
        let minimal = extract_minimal(&run.graver);
        assert_eq!(minimal.sorted(), vec![iv(&[-1, -1]), iv(&[1, 1])]);
        // One orbit per sign: (1,1) is fixed by the swap.
        assert_eq!(run.representatives, vec![iv(&[1, 1]), iv(&[-1, -1])]);
    }
}
