//! Pottier's completion procedure.

use super::{EngineOptions, EngineStats, GraverSet, PairQueue};
use crate::error::{GraverError, Result};
use crate::par;
use crate::vectors::IntVector;

/// Iterated normal form: while some `g ∈ G` conforms to `s`, subtract the
/// earliest inserted such `g`.
pub fn normal_form(s: &IntVector, g: &GraverSet) -> Result<IntVector> {
    check_dim(s, g)?;
    let mut r = s.clone();
    reduce_in_place(&mut r, g, None)?;
    Ok(r)
}

/// [`normal_form`] together with the ids of the subtracted elements.
pub fn normal_form_traced(s: &IntVector, g: &GraverSet) -> Result<(IntVector, Vec<usize>)> {
    check_dim(s, g)?;
    let mut r = s.clone();
    let mut chain = Vec::new();
    reduce_in_place(&mut r, g, Some(&mut chain))?;
    Ok((r, chain))
}

fn check_dim(s: &IntVector, g: &GraverSet) -> Result<()> {
    if s.len() != g.n() {
        return Err(GraverError::Dimension {
            expected: g.n(),
            found: s.len(),
        });
    }
    Ok(())
}

pub(crate) fn reduce_in_place(
    r: &mut IntVector,
    g: &GraverSet,
    mut chain: Option<&mut Vec<usize>>,
) -> Result<()> {
    // Each step strictly lowers the L1 norm of a nonzero r.
    while !r.is_zero() {
        let Some(id) = g.index().find_first(r.entries()) else {
            break;
        };
        r.sub_assign_checked(g.index().get(id))?;
        if let Some(c) = chain.as_deref_mut() {
            c.push(id);
        }
    }
    Ok(())
}

/// `{v ∈ G : no other nonzero u ∈ G has u ⊑ v}`, in insertion order.
pub fn extract_minimal(g: &GraverSet) -> GraverSet {
    let keep = par::map(g.vectors(), |v| {
        !v.is_zero() && g.index().find_proper(v.entries()).is_none()
    });
    GraverSet::from_vectors(
        g.n(),
        g.vectors()
            .iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(v, _)| v.clone()),
    )
}

/// Pottier's algorithm on a generating set `f` of the lattice. The result
/// contains the Graver basis; [`extract_minimal`] recovers it.
pub fn pottier_graver(f: &[IntVector]) -> Result<GraverSet> {
    pottier_graver_with(f, &EngineOptions::default()).map(|(g, _)| g)
}

pub fn pottier_graver_with(
    f: &[IntVector],
    opts: &EngineOptions,
) -> Result<(GraverSet, EngineStats)> {
    let Some(first) = f.first() else {
        return Ok((GraverSet::new(0), EngineStats::default()));
    };
    let n = first.len();
    if let Some(bad) = f.iter().find(|v| v.len() != n) {
        return Err(GraverError::Dimension {
            expected: n,
            found: bad.len(),
        });
    }

    let mut g = GraverSet::new(n);
    for v in f.iter().filter(|v| !v.is_zero()) {
        g.insert(v.clone());
        g.insert(v.checked_neg()?);
    }

    let mut queue = PairQueue::new();
    let vs = g.vectors().to_vec();
    for (j, a) in vs.iter().enumerate() {
        for b in &vs[..j] {
            queue.push(a.checked_add(b)?);
        }
    }

    let mut stats = EngineStats::default();
    while !queue.is_empty() {
        let batch = queue.pop_batch(opts.batch_size.max(1));
        let start_len = g.len();
        let reduced = par::map(&batch, |s| {
            let mut r = s.clone();
            reduce_in_place(&mut r, &g, None).map(|_| r)
        });
        stats.reductions += batch.len();
        for r in reduced {
            let mut r = r?;
            // Continue against anything added earlier in this batch; the
            // earliest-reducer rule makes this the same as reducing serially.
            if g.len() > start_len {
                reduce_in_place(&mut r, &g, None)?;
            }
            if r.is_zero() {
                continue;
            }
            for h in g.vectors() {
                queue.push(r.checked_add(h)?);
            }
            debug_assert!(!g.contains(&r));
            g.insert(r.clone());
            stats.added.push(r);
        }
    }
    stats.pairs_enqueued = queue.total_enqueued();
    Ok((g, stats))
}
