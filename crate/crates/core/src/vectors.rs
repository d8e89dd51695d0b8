//! Integer vectors and the conformal order.
//!
//! `u ⊑ v` holds when `u` sits in the same closed orthant as `v` and is no
//! larger than `v` in any coordinate. Graver bases are the ⊑-minimal nonzero
//! elements of a lattice.

use std::fmt;
use std::ops::Index;

use crate::error::{GraverError, Result};

/// Dense vector of exact integers.
///
/// Entries are `i64`; every arithmetic operation is checked and overflow is
/// reported as [`GraverError::Overflow`] instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(Vec<i64>);

impl IntVector {
    pub fn new(entries: Vec<i64>) -> Self {
        IntVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        IntVector(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j] = 1;
        IntVector(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Panics on `i64::MIN`; use [`IntVector::checked_neg`] on untrusted input.
    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|&x| -x).collect())
    }

    pub fn checked_neg(&self) -> Result<IntVector> {
        self.0
            .iter()
            .map(|&x| x.checked_neg().ok_or(GraverError::Overflow("negation")))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn checked_add(&self, other: &IntVector) -> Result<IntVector> {
        check_len(self, other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(GraverError::Overflow("addition")))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn checked_sub(&self, other: &IntVector) -> Result<IntVector> {
        check_len(self, other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b).ok_or(GraverError::Overflow("subtraction")))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    pub fn checked_scale(&self, k: i64) -> Result<IntVector> {
        self.0
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(GraverError::Overflow("scaling")))
            .collect::<Result<Vec<_>>>()
            .map(IntVector)
    }

    /// In-place `self -= other`; lengths must already agree.
    pub(crate) fn sub_assign_checked(&mut self, other: &IntVector) -> Result<()> {
        debug_assert_eq!(self.len(), other.len());
        for (a, &b) in self.0.iter_mut().zip(&other.0) {
            *a = a
                .checked_sub(b)
                .ok_or(GraverError::Overflow("subtraction"))?;
        }
        Ok(())
    }

    pub fn max_abs(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).sum()
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl From<&[i64]> for IntVector {
    fn from(v: &[i64]) -> Self {
        IntVector(v.to_vec())
    }
}

impl Index<usize> for IntVector {
    type Output = i64;

    fn index(&self, j: usize) -> &i64 {
        &self.0[j]
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn check_len(u: &IntVector, v: &IntVector) -> Result<()> {
    if u.len() != v.len() {
        return Err(GraverError::Dimension {
            expected: u.len(),
            found: v.len(),
        });
    }
    Ok(())
}

/// `u ⊑ v`.
pub fn conforms(u: &IntVector, v: &IntVector) -> Result<bool> {
    check_len(u, v)?;
    Ok(conforms_unchecked(u.entries(), v.entries()))
}

#[inline]
pub(crate) fn conforms_unchecked(u: &[i64], v: &[i64]) -> bool {
    u.iter().zip(v).all(|(&a, &b)| {
        if a == 0 {
            true
        } else if a > 0 {
            b >= a
        } else {
            b <= a
        }
    })
}

/// Splits `v` into its positive and negative parts, `v = v⁺ − v⁻`.
pub fn pos_neg_split(v: &IntVector) -> (IntVector, IntVector) {
    let pos = v.0.iter().map(|&x| x.max(0)).collect();
    let neg = v.0.iter().map(|&x| (-x).max(0)).collect();
    (IntVector(pos), IntVector(neg))
}

/// L1 norm of the first `d` coordinates.
pub fn prefix_norm(v: &IntVector, d: usize) -> Result<u64> {
    check_prefix(v, d)?;
    Ok(prefix_norm_unchecked(v.entries(), d))
}

#[inline]
pub(crate) fn prefix_norm_unchecked(v: &[i64], d: usize) -> u64 {
    v[..d].iter().map(|x| x.unsigned_abs()).sum()
}

/// No coordinate among the first `d` has strictly opposite signs in `u` and `v`.
pub fn same_orthant_prefix(u: &IntVector, v: &IntVector, d: usize) -> Result<bool> {
    check_len(u, v)?;
    check_prefix(u, d)?;
    Ok(same_orthant_unchecked(u.entries(), v.entries(), d))
}

#[inline]
pub(crate) fn same_orthant_unchecked(u: &[i64], v: &[i64], d: usize) -> bool {
    u[..d]
        .iter()
        .zip(&v[..d])
        .all(|(&a, &b)| a.signum() * b.signum() >= 0)
}

fn check_prefix(v: &IntVector, d: usize) -> Result<()> {
    if d == 0 || d > v.len() {
        return Err(GraverError::Dimension {
            expected: v.len(),
            found: d,
        });
    }
    Ok(())
}
