//! Multi-way tables with zero one-dimensional marginals, and their symmetry
//! groups.
//!
//! Cells are numbered row-major with the last axis fastest.

use crate::error::{GraverError, Result};
use crate::matrix::IntMatrix;
use crate::symmetry::{Permutation, PermutationGroup};

/// Largest number of cells accepted by the generators.
pub const TABLE_CELL_CAP: usize = 1 << 20;

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.len() < 2 {
        return Err(GraverError::Validation(
            "a table needs at least two axes".into(),
        ));
    }
    if let Some(&k) = dims.iter().find(|&&k| k < 2) {
        return Err(GraverError::Validation(format!(
            "table dimension {k} is below 2"
        )));
    }
    let mut n: usize = 1;
    for &k in dims {
        n = n
            .checked_mul(k)
            .filter(|&n| n <= TABLE_CELL_CAP)
            .ok_or(GraverError::Resource {
                what: "table cells",
                limit: TABLE_CELL_CAP as u64,
            })?;
    }
    Ok(n)
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for a in (0..dims.len() - 1).rev() {
        s[a] = s[a + 1] * dims[a + 1];
    }
    s
}

fn cell_index(idx: &[usize], strides: &[usize]) -> usize {
    idx.iter().zip(strides).map(|(i, s)| i * s).sum()
}

/// Every multi-index of the table in cell order.
fn cells(dims: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = dims.iter().product();
    let st = strides(dims);
    (0..n)
        .map(|c| dims.iter().zip(&st).map(|(k, s)| (c / s) % k).collect())
        .collect()
}

/// Constraint matrix of the line sums. Lines with the last axis free come
/// first, then the second to last, and so on; within a block the lines are
/// ordered by their fixed indices.
pub fn table_matrix(dims: &[usize]) -> Result<IntMatrix> {
    let n = check_dims(dims)?;
    let st = strides(dims);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for free in (0..dims.len()).rev() {
        // Fixed multi-indices in cell order, with the free axis at 0.
        for idx in cells(dims).into_iter().filter(|idx| idx[free] == 0) {
            let mut row = vec![0i64; n];
            let mut cur = idx.clone();
            for i in 0..dims[free] {
                cur[free] = i;
                row[cell_index(&cur, &st)] = 1;
            }
            rows.push(row);
        }
    }
    IntMatrix::from_rows(n, &rows)
}

/// Cell permutation induced by relabelling the table indices through `f`.
fn cell_permutation(dims: &[usize], f: impl Fn(&[usize]) -> Vec<usize>) -> Result<Permutation> {
    let st = strides(dims);
    let images = cells(dims)
        .iter()
        .map(|idx| cell_index(&f(idx), &st))
        .collect();
    Permutation::new(images)
}

/// The symmetry group of the table: every axis's labels may be permuted,
/// and axes of equal dimension may be exchanged.
pub fn table_group(dims: &[usize]) -> Result<PermutationGroup> {
    let n = check_dims(dims)?;
    let mut gens = Vec::new();
    for (a, &k) in dims.iter().enumerate() {
        let transposition = cell_permutation(dims, |idx| {
            let mut out = idx.to_vec();
            out[a] = match idx[a] {
                0 => 1,
                1 => 0,
                i => i,
            };
            out
        })?;
        let cycle = cell_permutation(dims, |idx| {
            let mut out = idx.to_vec();
            out[a] = (idx[a] + 1) % k;
            out
        })?;
        gens.push(transposition);
        if k > 2 {
            gens.push(cycle);
        }
    }
    let mut axes: Vec<usize> = (0..dims.len()).collect();
    axes.sort_by_key(|&a| (dims[a], a));
    for w in axes.windows(2) {
        let (a, b) = (w[0], w[1]);
        if dims[a] != dims[b] {
            continue;
        }
        gens.push(cell_permutation(dims, |idx| {
            let mut out = idx.to_vec();
            out.swap(a, b);
            out
        })?);
    }
    PermutationGroup::new(n, gens)
}

/// Closed-form order of [`table_group`].
pub fn table_group_order(dims: &[usize]) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut order: u128 = dims.iter().map(|&k| fact(k)).product();
    let mut sorted = dims.to_vec();
    sorted.sort_unstable();
    for run in sorted.chunk_by(|a, b| a == b) {
        order *= fact(run.len());
    }
    order
}
