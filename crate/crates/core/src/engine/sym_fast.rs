//! Norm-ordered completion over orbit representatives.
//!
//! Candidates are orbits, keyed by the smallest prefix norm over the orbit.
//! There is no orthant filter: the prefix norm is not symmetric, so every
//! sum `f + g'` with `g'` ranging over the materialized orbits is formed.
//! The member of a candidate orbit that attains the orbit norm is the one
//! tested for reducibility.

use super::fast::NormQueue;
use super::sym_pottier::OrbitStore;
use super::{EngineOptions, EngineStats, SymmetricRun};
use crate::error::{GraverError, Result};
use crate::lattice::{InputSetFbar, LatticeBasis};
use crate::par;
use crate::symmetry::{Orbiter, PermutationGroup};
use crate::vectors::IntVector;

/// `group` acts on working coordinates, i.e. it has already been conjugated
/// through the basis' column permutation.
pub fn sym_fast_graver(
    fbar: &InputSetFbar,
    group: &PermutationGroup,
    basis: &LatticeBasis,
) -> Result<SymmetricRun> {
    sym_fast_graver_with(fbar, group, basis, &EngineOptions::default())
}

pub fn sym_fast_graver_with(
    fbar: &InputSetFbar,
    group: &PermutationGroup,
    basis: &LatticeBasis,
    opts: &EngineOptions,
) -> Result<SymmetricRun> {
    if !basis.is_pivoted() {
        return Err(GraverError::Domain(
            "norm-ordered completion requires a pivoted basis",
        ));
    }
    let n = basis.n();
    let d = basis.d();
    if group.degree() != n {
        return Err(GraverError::Dimension {
            expected: n,
            found: group.degree(),
        });
    }
    let orbiter = Orbiter::new(group, opts.orbit_cap)?;
    let mut store = OrbitStore::new(n);
    let mut queue = NormQueue::new();
    let mut stats = EngineStats::default();
    if d == 0 {
        return Ok(SymmetricRun {
            graver: store.graver,
            representatives: store.reps,
            stats,
        });
    }

    for f in &fbar.vectors {
        if f.len() != n {
            return Err(GraverError::Dimension {
                expected: n,
                found: f.len(),
            });
        }
        if store.graver.contains(f) {
            continue;
        }
        let rec = orbiter.record(f, d)?;
        store.add(rec.canonical.clone(), &orbiter)?;
        enqueue_sums(&rec.canonical, &store, &orbiter, d, &mut queue)?;
    }

    while let Some((norm, level)) = queue.pop_level() {
        let reducible = par::map(&level, |c| {
            orbiter
                .min_norm_member(c, d)
                .map(|t| store.graver.index().find_any(t.entries()).is_some())
        });
        let mut processed = 0;
        let mut interrupted = false;
        for (canonical, red) in level.iter().zip(reducible) {
            processed += 1;
            stats.reductions += 1;
            if opts.record_norms {
                stats.selected_norms.push(norm);
            }
            if red? {
                continue;
            }
            // Same-level additions cannot reduce the rest of the level: a
            // proper conforming element has strictly smaller norm.
            stats.added.push(canonical.clone());
            store.add(canonical.clone(), &orbiter)?;
            let lowest = enqueue_sums(canonical, &store, &orbiter, d, &mut queue)?;
            if lowest.is_some_and(|m| m < norm) {
                // A cheaper orbit appeared; it must be selected first.
                interrupted = true;
                break;
            }
        }
        if interrupted {
            for c in level.into_iter().skip(processed) {
                queue.restore(norm, c);
            }
        }
    }
    stats.pairs_enqueued = queue.total_enqueued();
    Ok(SymmetricRun {
        graver: store.graver,
        representatives: store.reps,
        stats,
    })
}

/// Enqueues the orbits of `f + g'` for every materialized `g'`. Returns the
/// smallest orbit norm among newly enqueued orbits.
fn enqueue_sums(
    f: &IntVector,
    store: &OrbitStore,
    orbiter: &Orbiter,
    d: usize,
    queue: &mut NormQueue,
) -> Result<Option<u64>> {
    let sums: Vec<IntVector> = store
        .graver
        .vectors()
        .iter()
        .filter(|&g| g != f)
        .map(|g| f.checked_add(g))
        .collect::<Result<_>>()?;
    let records = par::map(&sums, |s| {
        if s.is_zero() {
            Ok(None)
        } else {
            orbiter.record(s, d).map(Some)
        }
    });
    let mut lowest = None;
    for rec in records {
        let Some(rec) = rec? else { continue };
        let norm = rec.min_prefix_norm.expect("norm requested");
        if queue.push(norm, rec.canonical) {
            lowest = Some(lowest.map_or(norm, |m: u64| m.min(norm)));
        }
    }
    Ok(lowest)
}
