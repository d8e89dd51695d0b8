//! Lattice bases, integer kernels, pivoting, projection and lifting.
//!
//! Every basis is kept in row Hermite normal form. The pivot columns of that
//! form are exactly the first linearly independent columns, which is what the
//! pivoting step needs, and the echelon shape makes membership and lifting a
//! forward substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::engine::pottier::{extract_minimal, pottier_graver};
use crate::error::{GraverError, Result};
use crate::matrix::IntMatrix;
use crate::vectors::IntVector;

/// A basis of a sublattice of Z^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    generators: Vec<IntVector>,
    n: usize,
    /// `column_perm[i]` is the original coordinate of working coordinate `i`.
    column_perm: Vec<usize>,
    /// Column of the leading entry of each generator, increasing.
    pivots: Vec<usize>,
    pivoted: bool,
}

/// Lifts of the ⊑-minimal nonzero vectors of the projected lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputSetFbar {
    pub vectors: Vec<IntVector>,
}

impl LatticeBasis {
    /// Builds the lattice spanned by `generators`, which may be linearly
    /// dependent; the stored basis is its Hermite normal form.
    pub fn from_generators(n: usize, generators: &[IntVector]) -> Result<Self> {
        for g in generators {
            if g.len() != n {
                return Err(GraverError::Dimension {
                    expected: n,
                    found: g.len(),
                });
            }
        }
        let rows = generators
            .iter()
            .map(|g| g.entries().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let (hnf, pivots) = row_hnf(rows, n);
        let generators = hnf
            .into_iter()
            .map(|row| big_row_to_vector(&row))
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticeBasis {
            generators,
            n,
            column_perm: (0..n).collect(),
            pivots,
            pivoted: false,
        })
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank.
    pub fn d(&self) -> usize {
        self.generators.len()
    }

    pub fn column_perm(&self) -> &[usize] {
        &self.column_perm
    }

    pub fn is_pivoted(&self) -> bool {
        self.pivoted
    }

    /// Working coordinates to original coordinates.
    pub fn to_original(&self, v: &IntVector) -> IntVector {
        let mut out = vec![0; self.n];
        for (i, &orig) in self.column_perm.iter().enumerate() {
            out[orig] = v[i];
        }
        IntVector::new(out)
    }

    /// Original coordinates to working coordinates.
    pub fn to_working(&self, v: &IntVector) -> IntVector {
        IntVector::new(self.column_perm.iter().map(|&orig| v[orig]).collect())
    }

    /// Leading columns of the generators, in increasing order. A lattice
    /// vector is determined by its entries in these columns.
    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// The lattice vector whose entries in the pivot columns are `values`,
    /// if there is one.
    pub fn from_pivot_values(&self, values: &[i64]) -> Option<IntVector> {
        debug_assert_eq!(values.len(), self.d());
        let mut c: Vec<i128> = Vec::with_capacity(self.d());
        for (i, &p) in self.pivots.iter().enumerate() {
            let mut rhs = values[i] as i128;
            for (k, ck) in c.iter().enumerate() {
                rhs = rhs.checked_sub(ck.checked_mul(self.generators[k][p] as i128)?)?;
            }
            let pivot = self.generators[i][p] as i128;
            if rhs % pivot != 0 {
                return None;
            }
            c.push(rhs / pivot);
        }
        let full = self.combine(&c)?;
        full.into_iter()
            .map(|x| i64::try_from(x).ok())
            .collect::<Option<Vec<_>>>()
            .map(IntVector::new)
    }

    /// Integer coefficients `c` with `c·B = v`, if they exist.
    fn coefficients(&self, v: &[i64]) -> Option<Vec<i128>> {
        let mut c: Vec<i128> = Vec::with_capacity(self.d());
        for (i, &p) in self.pivots.iter().enumerate() {
            let mut rhs = v[p] as i128;
            for (k, ck) in c.iter().enumerate() {
                rhs = rhs.checked_sub(ck.checked_mul(self.generators[k][p] as i128)?)?;
            }
            let pivot = self.generators[i][p] as i128;
            if rhs % pivot != 0 {
                return None;
            }
            c.push(rhs / pivot);
        }
        Some(c)
    }

    fn combine(&self, c: &[i128]) -> Option<Vec<i128>> {
        let mut out = vec![0i128; self.n];
        for (ci, g) in c.iter().zip(&self.generators) {
            if *ci == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(g.entries()) {
                *o = o.checked_add(ci.checked_mul(x as i128)?)?;
            }
        }
        Some(out)
    }
}

/// Is `v` (working coordinates) in the lattice?
pub fn member(v: &IntVector, basis: &LatticeBasis) -> bool {
    if v.len() != basis.n {
        return false;
    }
    let Some(c) = basis.coefficients(v.entries()) else {
        return false;
    };
    match basis.combine(&c) {
        Some(w) => w.iter().zip(v.entries()).all(|(&a, &b)| a == b as i128),
        None => false,
    }
}

/// Saturated integer kernel of `a`, by unimodular column reduction.
pub fn kernel_lattice(a: &IntMatrix) -> Result<LatticeBasis> {
    let n = a.cols();
    let m = a.rows();
    // Columns of [A; I], each stored as a vector of length m + n.
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|c| {
            let mut col: Vec<BigInt> = (0..m).map(|r| BigInt::from(a.get(r, c))).collect();
            col.extend((0..n).map(|r| BigInt::from((r == c) as i64)));
            col
        })
        .collect();

    let mut k = 0;
    for r in 0..m {
        if k == n {
            break;
        }
        loop {
            let best = (k..n)
                .filter(|&c| !cols[c][r].is_zero())
                .min_by_key(|&c| cols[c][r].abs());
            let Some(best) = best else { break };
            cols.swap(k, best);
            let mut done = true;
            for c in k + 1..n {
                if cols[c][r].is_zero() {
                    continue;
                }
                let q = cols[c][r].div_floor(&cols[k][r]);
                let (head, tail) = cols.split_at_mut(c);
                axpy(&mut tail[0], &q, &head[k]);
                if !tail[0][r].is_zero() {
                    done = false;
                }
            }
            if done {
                k += 1;
                break;
            }
        }
    }

    let kernel: Vec<IntVector> = cols[k..]
        .iter()
        .map(|col| big_row_to_vector(&col[m..]))
        .collect::<Result<_>>()?;
    LatticeBasis::from_generators(n, &kernel)
}

/// Moves the first linearly independent columns to the front so that the
/// projection onto the first `d` coordinates is injective on the lattice.
pub fn preprocess(basis: &LatticeBasis) -> Result<LatticeBasis> {
    if basis.pivoted {
        return Ok(basis.clone());
    }
    let n = basis.n;
    // Work relative to original coordinates so repeated calls compose.
    let mut perm: Vec<usize> = basis.pivots.iter().map(|&p| basis.column_perm[p]).collect();
    perm.extend(
        (0..n)
            .filter(|c| !basis.pivots.contains(c))
            .map(|c| basis.column_perm[c]),
    );
    let original: Vec<IntVector> = basis
        .generators
        .iter()
        .map(|g| basis.to_original(g))
        .collect();
    let rows = original
        .iter()
        .map(|g| perm.iter().map(|&o| BigInt::from(g[o])).collect())
        .collect();
    let (hnf, pivots) = row_hnf(rows, n);
    debug_assert_eq!(pivots, (0..basis.d()).collect::<Vec<_>>());
    let generators = hnf
        .into_iter()
        .map(|row| big_row_to_vector(&row))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeBasis {
        generators,
        n,
        column_perm: perm,
        pivots,
        pivoted: true,
    })
}

/// First `d` coordinates.
pub fn project(v: &IntVector, basis: &LatticeBasis) -> IntVector {
    IntVector::from(&v.entries()[..basis.d()])
}

/// The unique lattice vector whose projection is `w`.
pub fn lift(w: &IntVector, basis: &LatticeBasis) -> Result<IntVector> {
    let d = basis.d();
    if !basis.pivoted {
        return Err(GraverError::Domain("lift requires a pivoted basis"));
    }
    if w.len() != d {
        return Err(GraverError::Dimension {
            expected: d,
            found: w.len(),
        });
    }
    let c = basis
        .coefficients(w.entries())
        .ok_or(GraverError::Membership)?;
    let full = basis.combine(&c).ok_or(GraverError::Overflow("lift"))?;
    full.into_iter()
        .map(|x| i64::try_from(x).map_err(|_| GraverError::Overflow("lift")))
        .collect::<Result<Vec<_>>>()
        .map(IntVector::new)
}

/// Computes the input set for the norm-ordered engines: the Graver basis of
/// the projected lattice, lifted back.
pub fn minimal_projected_generators(basis: &LatticeBasis) -> Result<InputSetFbar> {
    if !basis.pivoted {
        return Err(GraverError::Domain(
            "projected generators require a pivoted basis",
        ));
    }
    let projected: Vec<IntVector> = basis.generators.iter().map(|g| project(g, basis)).collect();
    let g = pottier_graver(&projected)?;
    let minimal = extract_minimal(&g);
    let mut vectors = minimal
        .vectors()
        .iter()
        .map(|w| lift(w, basis))
        .collect::<Result<Vec<_>>>()?;
    vectors.sort();
    Ok(InputSetFbar { vectors })
}

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Row Hermite normal form: echelon rows, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped. Returns the rows
/// and their pivot columns.
pub(crate) fn row_hnf(mut rows: Vec<Vec<BigInt>>, n: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].abs());
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &q, &head[r]);
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..r {
                let q = rows[i][c].div_floor(&rows[r][c]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(r);
                    axpy(&mut head[i], &q, &tail[0]);
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

fn big_row_to_vector(row: &[BigInt]) -> Result<IntVector> {
    row.iter()
        .map(|x| {
            x.to_i64()
                .ok_or(GraverError::Overflow("lattice basis entry"))
        })
        .collect::<Result<Vec<_>>>()
        .map(IntVector::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::table_matrix;

    fn iv(x: &[i64]) -> IntVector {
        IntVector::from(x)
    }

    /// Rational rank by fraction-free elimination, independent of `row_hnf`.
    fn rank_oracle(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for i in rank + 1..m.len() {
                let (a, b) = (m[rank][c], m[i][c]);
                let pivot_row = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x = *x * a - y * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
            rank += 1;
        }
        rank
    }

    fn det(m: &[Vec<i64>]) -> i128 {
        // Bareiss.
        let n = m.len();
        let mut a: Vec<Vec<i128>> = m
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    #[test]
    fn kernel_of_3x3_tables_has_rank_4() {
        let a = table_matrix(&[3, 3]).unwrap();
        let rows: Vec<Vec<i64>> = a.row_iter().map(|r| r.to_vec()).collect();
        assert_eq!(rank_oracle(&rows), 5);
        let k = kernel_lattice(&a).unwrap();
        assert_eq!(k.d(), 4);
        for g in k.generators() {
            assert!(a.mul_vec(g).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn kernel_trivial_cases() {
        let k = kernel_lattice(&IntMatrix::identity(4)).unwrap();
        assert_eq!(k.d(), 0);
        let k = kernel_lattice(&IntMatrix::new(1, 2, vec![1, -1]).unwrap()).unwrap();
        assert_eq!(k.generators(), &[iv(&[1, 1])]);
        let k = kernel_lattice(&IntMatrix::zeros(0, 3)).unwrap();
        assert_eq!(k.d(), 3);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y - 6z = 0 has primitive solutions not reachable from the
        // naive rational basis scaled to integers.
        for (rows, n) in [
            (vec![vec![2, 4, -6]], 3),
            (vec![vec![1, 1, 1, 1], vec![2, 0, -2, 4]], 4),
            (vec![vec![3, 5, 7, 0]], 4),
        ] {
            let a = IntMatrix::from_rows(n, &rows).unwrap();
            let k = kernel_lattice(&a).unwrap();
            let mut idx = vec![-3i64; n];
            loop {
                let v = iv(&idx);
                if a.mul_vec(&v).unwrap().iter().all(|&x| x == 0) {
                    assert!(member(&v, &k), "{v:?} missing from kernel basis");
                }
                let mut j = 0;
                while j < n {
                    idx[j] += 1;
                    if idx[j] <= 3 {
                        break;
                    }
                    idx[j] = -3;
                    j += 1;
                }
                if j == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn redundant_generators_are_reduced() {
        let b = LatticeBasis::from_generators(3, &[iv(&[1, 2, 3]), iv(&[2, 4, 6]), iv(&[0, 1, 1])])
            .unwrap();
        assert_eq!(b.d(), 2);
        assert!(member(&iv(&[1, 3, 4]), &b));
        assert!(!member(&iv(&[1, 0, 0]), &b));
    }

    #[test]
    fn member_examples() {
        let b = LatticeBasis::from_generators(3, &[iv(&[1, 2, 0]), iv(&[0, 3, -1])]).unwrap();
        assert!(member(&iv(&[1, 2, 0]), &b));
        assert!(member(&iv(&[1, 5, -1]), &b));
        let b = LatticeBasis::from_generators(2, &[iv(&[2, 0])]).unwrap();
        assert!(!member(&iv(&[1, 0]), &b));
        assert!(member(&iv(&[-4, 0]), &b));
    }

    #[test]
    fn preprocess_examples() {
        let b = LatticeBasis::from_generators(3, &[iv(&[1, 0, 2]), iv(&[0, 1, 5])]).unwrap();
        let p = preprocess(&b).unwrap();
        assert_eq!(p.column_perm(), &[0, 1, 2]);
        assert!(p.is_pivoted());

        let b = LatticeBasis::from_generators(2, &[iv(&[0, 1])]).unwrap();
        let p = preprocess(&b).unwrap();
        assert_eq!(p.column_perm(), &[1, 0]);
        assert_eq!(p.generators(), &[iv(&[1, 0])]);
        assert_eq!(p.to_original(&p.generators()[0]), iv(&[0, 1]));

        let k = kernel_lattice(&table_matrix(&[3, 3]).unwrap()).unwrap();
        let p = preprocess(&k).unwrap();
        let block: Vec<Vec<i64>> = p
            .generators()
            .iter()
            .map(|g| g.entries()[..4].to_vec())
            .collect();
        assert_ne!(det(&block), 0);
        // Same lattice after mapping back.
        let back = LatticeBasis::from_generators(
            9,
            &p.generators()
                .iter()
                .map(|g| p.to_original(g))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        for g in k.generators() {
            assert!(member(g, &back));
        }
        for g in back.generators() {
            assert!(member(g, &k));
        }
    }

    #[test]
    fn project_and_lift() {
        let b = preprocess(&kernel_lattice(&IntMatrix::new(1, 2, vec![1, -1]).unwrap()).unwrap())
            .unwrap();
        assert_eq!(lift(&iv(&[2]), &b).unwrap(), iv(&[2, 2]));
        assert_eq!(lift(&iv(&[0]), &b).unwrap(), iv(&[0, 0]));
        assert_eq!(project(&iv(&[1, 2]), &b), iv(&[1]));

        let k = preprocess(&kernel_lattice(&table_matrix(&[3, 3]).unwrap()).unwrap()).unwrap();
        for g in k.generators() {
            assert_eq!(&lift(&project(g, &k), &k).unwrap(), g);
        }
        let b = preprocess(&LatticeBasis::from_generators(2, &[iv(&[2, 1])]).unwrap()).unwrap();
        assert!(matches!(lift(&iv(&[1]), &b), Err(GraverError::Membership)));
    }

    #[test]
    fn projected_generators_examples() {
        // Unimodular projected block: the unit vectors and their negatives.
        let k = preprocess(&kernel_lattice(&table_matrix(&[3, 3]).unwrap()).unwrap()).unwrap();
        let fbar = minimal_projected_generators(&k).unwrap();
        assert_eq!(fbar.vectors.len(), 8);
        for f in &fbar.vectors {
            assert_eq!(project(f, &k).l1_norm(), 1);
            assert!(member(f, &k));
        }

        let b = preprocess(&LatticeBasis::from_generators(2, &[iv(&[2, 1])]).unwrap()).unwrap();
        let fbar = minimal_projected_generators(&b).unwrap();
        assert_eq!(fbar.vectors, vec![iv(&[-2, -1]), iv(&[2, 1])]);
    }

    #[test]
    fn prefix_norm_vanishes_only_at_zero() {
        let k = preprocess(&kernel_lattice(&table_matrix(&[2, 3]).unwrap()).unwrap()).unwrap();
        let d = k.d();
        for g in k.generators() {
            assert!(crate::vectors::prefix_norm(g, d).unwrap() > 0);
        }
        // A lattice vector with zero projection lifts from the zero vector.
        assert!(lift(&IntVector::zero(d), &k).unwrap().is_zero());
    }
}
