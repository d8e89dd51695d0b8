//! Brute-force certification of Graver elements on tiny instances.
//!
//! Nothing here touches the completion engines. A lattice vector is fixed
//! by its entries in the basis' pivot columns, so both searches walk boxes
//! over those columns only and recover the remaining entries from the
//! basis.

use crate::engine::GraverSet;
use crate::error::{GraverError, Result};
use crate::lattice::{member, LatticeBasis};
use crate::par;
use crate::vectors::IntVector;

pub const DEFAULT_BOX_CAP: u64 = 100_000_000;

/// Is `v` (working coordinates of `basis`) a ⊑-minimal nonzero lattice
/// vector?
pub fn is_graver_element(v: &IntVector, basis: &LatticeBasis) -> Result<bool> {
    is_graver_element_capped(v, basis, DEFAULT_BOX_CAP)
}

pub fn is_graver_element_capped(v: &IntVector, basis: &LatticeBasis, cap: u64) -> Result<bool> {
    if v.len() != basis.n() {
        return Err(GraverError::Dimension {
            expected: basis.n(),
            found: v.len(),
        });
    }
    if v.is_zero() {
        return Err(GraverError::Domain(
            "the zero vector is never a Graver element",
        ));
    }
    if !member(v, basis) {
        return Err(GraverError::Membership);
    }
    let pivots = basis.pivot_columns();
    let bounds: Vec<i64> = pivots.iter().map(|&p| v[p]).collect();
    box_size(&bounds, cap)?;

    // Odometer over u_p between 0 and v_p on every pivot column.
    let mut u = vec![0i64; bounds.len()];
    loop {
        let mut j = 0;
        while j < u.len() {
            if u[j] != bounds[j] {
                u[j] += bounds[j].signum();
                break;
            }
            u[j] = 0;
            j += 1;
        }
        if j == u.len() {
            return Ok(true);
        }
        if u == bounds {
            continue;
        }
        if let Some(w) = basis.from_pivot_values(&u) {
            if below(&w, v) {
                return Ok(false);
            }
        }
    }
}

/// Literal version of [`is_graver_element`] that walks the whole box
/// `{u : u ⊑ v}` and tests each point with `member`.
pub fn is_graver_element_full_box(v: &IntVector, basis: &LatticeBasis, cap: u64) -> Result<bool> {
    if v.is_zero() {
        return Err(GraverError::Domain(
            "the zero vector is never a Graver element",
        ));
    }
    if !member(v, basis) {
        return Err(GraverError::Membership);
    }
    box_size(v.entries(), cap)?;
    let mut u = vec![0i64; v.len()];
    loop {
        let mut j = 0;
        while j < u.len() {
            if u[j] != v[j] {
                u[j] += v[j].signum();
                break;
            }
            u[j] = 0;
            j += 1;
        }
        if j == u.len() {
            return Ok(true);
        }
        if u.as_slice() != v.entries() && member(&IntVector::new(u.clone()), basis) {
            return Ok(false);
        }
    }
}

fn box_size(bounds: &[i64], cap: u64) -> Result<u64> {
    let mut size: u64 = 1;
    for &b in bounds {
        size = size
            .checked_mul(b.unsigned_abs().saturating_add(1))
            .filter(|&s| s <= cap)
            .ok_or(GraverError::Resource {
                what: "oracle box",
                limit: cap,
            })?;
    }
    Ok(size)
}

fn below(u: &IntVector, v: &IntVector) -> bool {
    u.entries()
        .iter()
        .zip(v.entries())
        .all(|(&a, &b)| (a == 0 || (a > 0) == (b > 0)) && a.unsigned_abs() <= b.unsigned_abs())
}

/// Every Graver element with entries bounded by `bound` in absolute value,
/// in working coordinates, sorted.
pub fn brute_force_graver(basis: &LatticeBasis, bound: u64) -> Result<GraverSet> {
    brute_force_graver_capped(basis, bound, DEFAULT_BOX_CAP)
}

pub fn brute_force_graver_capped(basis: &LatticeBasis, bound: u64, cap: u64) -> Result<GraverSet> {
    let d = basis.d();
    let n = basis.n();
    let b = i64::try_from(bound).map_err(|_| GraverError::Resource {
        what: "oracle bound",
        limit: i64::MAX as u64,
    })?;
    if d == 0 || b == 0 {
        return Ok(GraverSet::new(n));
    }
    box_size(&vec![2 * b; d], cap)?;

    let mut candidates = Vec::new();
    let mut w = vec![-b; d];
    loop {
        if let Some(v) = basis.from_pivot_values(&w) {
            if !v.is_zero() && v.max_abs() <= bound {
                candidates.push(v);
            }
        }
        let mut j = 0;
        while j < d && w[j] == b {
            w[j] = -b;
            j += 1;
        }
        if j == d {
            break;
        }
        w[j] += 1;
    }
    let keep = par::map(&candidates, |v| is_graver_element_capped(v, basis, cap));
    let mut out = Vec::new();
    for (v, k) in candidates.into_iter().zip(keep) {
        if k? {
            out.push(v);
        }
    }
    out.sort();
    Ok(GraverSet::from_vectors(n, out))
}
