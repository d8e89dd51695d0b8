//! Coordinate permutation groups and their orbits on integer vectors.

use std::collections::{HashSet, VecDeque};

use crate::error::{GraverError, Result};
use crate::lattice::{member, LatticeBasis};
use crate::vectors::{prefix_norm_unchecked, IntVector};

/// Default cap on orbit and group sizes.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// Largest group whose elements are listed explicitly for fast orbit passes.
const ELEMENT_LIST_CAP: usize = 1 << 20;

/// A bijection on `{0..n}`; acts by `σ(v)[j] = v[σ(j)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GraverError::Validation(format!(
                    "not a permutation of 1..{n}: {:?}",
                    images.iter().map(|x| x + 1).collect::<Vec<_>>()
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_one_based(images: &[i64]) -> Result<Self> {
        let zero_based = images
            .iter()
            .map(|&i| {
                usize::try_from(i - 1).map_err(|_| {
                    GraverError::Validation(format!("permutation image {i} out of range"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (j, &i) in self.images.iter().enumerate() {
            inv[i] = j;
        }
        Permutation { images: inv }
    }

    /// The permutation acting as `self` followed by `then`.
    pub fn then(&self, then: &Permutation) -> Permutation {
        // then(self(v))[j] = self(v)[then(j)] = v[self(then(j))]
        Permutation {
            images: then.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &i)| i == j)
    }
}

/// `σ(v)`.
pub fn apply(sigma: &Permutation, v: &IntVector) -> Result<IntVector> {
    if sigma.degree() != v.len() {
        return Err(GraverError::Dimension {
            expected: sigma.degree(),
            found: v.len(),
        });
    }
    Ok(apply_unchecked(&sigma.images, v.entries()))
}

#[inline]
fn apply_unchecked(images: &[usize], v: &[i64]) -> IntVector {
    IntVector::new(images.iter().map(|&i| v[i]).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    n: usize,
    generators: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.degree() != n) {
            return Err(GraverError::Dimension {
                expected: n,
                found: bad.degree(),
            });
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(n)]
        } else {
            generators
        };
        Ok(PermutationGroup { n, generators })
    }

    pub fn trivial(n: usize) -> Self {
        PermutationGroup {
            n,
            generators: vec![Permutation::identity(n)],
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    /// All group elements, found as the orbit of the identity.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let id = Permutation::identity(self.n);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        while let Some(e) = queue.pop_front() {
            for g in &self.generators {
                let next = e.then(g);
                if seen.insert(next.clone()) {
                    if out.len() >= cap {
                        return Err(GraverError::Resource {
                            what: "group order",
                            limit: cap as u64,
                        });
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        self.elements(cap).map(|e| e.len())
    }

    /// The same group acting on permuted coordinates: with `perm[i]` the
    /// original coordinate of working coordinate `i`, returns `p⁻¹ σ p`.
    pub fn conjugate(&self, perm: &[usize]) -> Result<PermutationGroup> {
        let p = Permutation::new(perm.to_vec())?;
        let inv = p.inverse();
        let generators = self
            .generators
            .iter()
            .map(|s| Permutation {
                images: p.images.iter().map(|&o| inv.images[s.images[o]]).collect(),
            })
            .collect();
        PermutationGroup::new(self.n, generators)
    }
}

/// Orbit of `v`: breadth-first closure under the generators, sorted.
pub fn orbit(v: &IntVector, group: &PermutationGroup) -> Result<Vec<IntVector>> {
    orbit_capped(v, group, DEFAULT_ORBIT_CAP)
}

pub fn orbit_capped(v: &IntVector, group: &PermutationGroup, cap: usize) -> Result<Vec<IntVector>> {
    if v.len() != group.n {
        return Err(GraverError::Dimension {
            expected: group.n,
            found: v.len(),
        });
    }
    let mut seen: HashSet<IntVector> = HashSet::from([v.clone()]);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(w) = queue.pop_front() {
        for g in &group.generators {
            let next = apply_unchecked(&g.images, w.entries());
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(GraverError::Resource {
                        what: "orbit size",
                        limit: cap as u64,
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<IntVector> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Canonical form of an orbit, with its size and (optionally) its smallest
/// prefix norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    /// Lexicographically smallest member.
    pub canonical: IntVector,
    pub size: usize,
    pub min_prefix_norm: Option<u64>,
}

pub fn canonical_rep(
    v: &IntVector,
    group: &PermutationGroup,
    d: Option<usize>,
) -> Result<OrbitRecord> {
    if let Some(d) = d {
        if d > v.len() {
            return Err(GraverError::Dimension {
                expected: v.len(),
                found: d,
            });
        }
    }
    let members = orbit(v, group)?;
    let min_prefix_norm = d.map(|d| {
        members
            .iter()
            .map(|m| prefix_norm_unchecked(m.entries(), d))
            .min()
            .unwrap_or(0)
    });
    Ok(OrbitRecord {
        size: members.len(),
        canonical: members.into_iter().next().expect("orbit is nonempty"),
        min_prefix_norm,
    })
}

/// Does every generator map every lattice generator back into the lattice?
/// The group acts on original coordinates.
pub fn verify_invariance(group: &PermutationGroup, basis: &LatticeBasis) -> bool {
    if group.n != basis.n() {
        return false;
    }
    group.generators.iter().all(|sigma| {
        basis.generators().iter().all(|g| {
            let image = apply_unchecked(&sigma.images, basis.to_original(g).entries());
            member(&basis.to_working(&image), basis)
        })
    })
}

/// Orbit machinery for the engines' hot loops.
///
/// Small groups are expanded to an explicit element list once, so a
/// canonical form costs one pass over the elements with no hashing. Larger
/// groups fall back to breadth-first orbits.
#[derive(Clone, Debug)]
pub struct Orbiter {
    n: usize,
    order: Option<usize>,
    /// Element images, `n` per element; empty when the group is too large.
    images: Vec<u32>,
    group: PermutationGroup,
    cap: usize,
}

impl Orbiter {
    pub fn new(group: &PermutationGroup, cap: usize) -> Result<Self> {
        let n = group.n;
        let (order, images) = match group.elements(ELEMENT_LIST_CAP.min(cap)) {
            Ok(elements) => {
                let mut images = Vec::with_capacity(elements.len() * n);
                for e in &elements {
                    images.extend(e.images.iter().map(|&i| i as u32));
                }
                (Some(elements.len()), images)
            }
            Err(GraverError::Resource { .. }) => (None, Vec::new()),
            Err(e) => return Err(e),
        };
        Ok(Orbiter {
            n,
            order,
            images,
            group: group.clone(),
            cap,
        })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == Some(1)
    }

    /// Distinct members of the orbit of `v`, sorted.
    pub fn orbit(&self, v: &IntVector) -> Result<Vec<IntVector>> {
        match self.order {
            Some(1) => Ok(vec![v.clone()]),
            Some(_) => {
                let mut out: Vec<IntVector> = self
                    .images
                    .chunks_exact(self.n)
                    .map(|e| IntVector::new(e.iter().map(|&i| v[i as usize]).collect()))
                    .collect();
                out.sort_unstable();
                out.dedup();
                Ok(out)
            }
            None => orbit_capped(v, &self.group, self.cap),
        }
    }

    /// Canonical member, orbit size and smallest prefix norm over the first
    /// `d` coordinates, in one pass.
    pub fn record(&self, v: &IntVector, d: usize) -> Result<OrbitRecord> {
        let order = match self.order {
            Some(1) => {
                return Ok(OrbitRecord {
                    canonical: v.clone(),
                    size: 1,
                    min_prefix_norm: Some(prefix_norm_unchecked(v.entries(), d)),
                })
            }
            Some(order) => order,
            None => {
                let members = orbit_capped(v, &self.group, self.cap)?;
                let min = members
                    .iter()
                    .map(|m| prefix_norm_unchecked(m.entries(), d))
                    .min();
                return Ok(OrbitRecord {
                    size: members.len(),
                    canonical: members[0].clone(),
                    min_prefix_norm: min,
                });
            }
        };

        let src = v.entries();
        let n = self.n;
        let mut best: Vec<i64> = src.to_vec();
        let mut scratch: Vec<i64> = vec![0; n];
        let mut min_norm = prefix_norm_unchecked(src, d);
        let mut stabilizer = 0usize;

        for e in self.images.chunks_exact(n) {
            // Lex comparison against `best`, equality against `v`, and the
            // prefix norm, interleaved so most elements exit early.
            let mut cmp = std::cmp::Ordering::Equal;
            let mut fixes = true;
            let mut norm = 0u64;
            let mut j = 0;
            while j < n {
                let x = src[e[j] as usize];
                if j < d {
                    norm += x.unsigned_abs();
                }
                if fixes && x != src[j] {
                    fixes = false;
                }
                if cmp == std::cmp::Ordering::Equal {
                    cmp = x.cmp(&best[j]);
                    if cmp == std::cmp::Ordering::Less {
                        scratch[..j].copy_from_slice(&best[..j]);
                    }
                }
                if cmp == std::cmp::Ordering::Less {
                    scratch[j] = x;
                } else if cmp == std::cmp::Ordering::Greater && !fixes && j + 1 >= d {
                    break;
                }
                j += 1;
            }
            // Early exit only happens once the prefix has been read.
            min_norm = min_norm.min(norm);
            if fixes && j == n {
                stabilizer += 1;
            }
            if cmp == std::cmp::Ordering::Less {
                std::mem::swap(&mut best, &mut scratch);
            }
        }
        Ok(OrbitRecord {
            canonical: IntVector::new(best),
            size: order / stabilizer.max(1),
            min_prefix_norm: Some(min_norm),
        })
    }

    /// The orbit member with the smallest prefix norm, ties broken
    /// lexicographically.
    pub fn min_norm_member(&self, v: &IntVector, d: usize) -> Result<IntVector> {
        let members = self.orbit(v)?;
        Ok(members
            .into_iter()
            .min_by(|a, b| {
                prefix_norm_unchecked(a.entries(), d)
                    .cmp(&prefix_norm_unchecked(b.entries(), d))
                    .then_with(|| a.cmp(b))
            })
            .expect("orbit is nonempty"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::kernel_lattice;
    use crate::models::{table_group, table_matrix};
    use proptest::prelude::*;

    fn iv(x: &[i64]) -> IntVector {
        IntVector::from(x)
    }

    const G1: [i64; 9] = [1, -1, 0, -1, 1, 0, 0, 0, 0];
    const G2: [i64; 9] = [1, -1, 0, -1, 0, 1, 0, 1, -1];

    #[test]
    fn apply_examples() {
        let v = iv(&[3, -1, 4, 1, 5]);
        assert_eq!(apply(&Permutation::identity(5), &v).unwrap(), v);
        // Swap table columns 1 and 2 under the row-major 3x3 encoding.
        let sigma = Permutation::new(vec![1, 0, 2, 4, 3, 5, 7, 6, 8]).unwrap();
        assert_eq!(
            apply(&sigma, &iv(&G1)).unwrap(),
            iv(&[-1, 1, 0, 1, -1, 0, 0, 0, 0])
        );
        let s = Permutation::new(vec![2, 0, 4, 1, 3]).unwrap();
        assert_eq!(apply(&s, &apply(&s.inverse(), &v).unwrap()).unwrap(), v);
        assert!(apply(&s, &iv(&[1, 2])).is_err());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 2, 3])
            .unwrap()
            .is_identity());
        assert!(Permutation::from_one_based(&[0, 1, 2]).is_err());
    }

    #[test]
    fn orbit_examples() {
        let group = table_group(&[3, 3]).unwrap();
        assert_eq!(orbit(&IntVector::zero(9), &group).unwrap().len(), 1);
        assert_eq!(orbit(&iv(&G1), &group).unwrap().len(), 18);
        assert_eq!(orbit(&iv(&G2), &group).unwrap().len(), 12);
        let trivial = PermutationGroup::trivial(9);
        assert_eq!(orbit(&iv(&G1), &trivial).unwrap(), vec![iv(&G1)]);
        assert!(matches!(
            orbit_capped(&iv(&G1), &group, 5),
            Err(GraverError::Resource { .. })
        ));
    }

    #[test]
    fn canonical_examples() {
        let group = table_group(&[3, 3]).unwrap();
        let a = canonical_rep(&iv(&G1), &group, Some(4)).unwrap();
        let b = canonical_rep(&iv(&G2), &group, Some(4)).unwrap();
        assert_ne!(a.canonical, b.canonical);
        assert_eq!(a.size, 18);
        assert_eq!(b.size, 12);
        let again = canonical_rep(&a.canonical, &group, Some(4)).unwrap();
        assert_eq!(again.canonical, a.canonical);
        let moved = apply(&group.generators()[1], &iv(&G1)).unwrap();
        assert_eq!(
            canonical_rep(&moved, &group, None).unwrap().canonical,
            a.canonical
        );
    }

    #[test]
    fn group_orders() {
        assert_eq!(
            table_group(&[3, 3])
                .unwrap()
                .order(DEFAULT_ORBIT_CAP)
                .unwrap(),
            72
        );
        assert_eq!(PermutationGroup::trivial(4).order(10).unwrap(), 1);
        assert!(table_group(&[3, 3]).unwrap().order(10).is_err());
    }

    #[test]
    fn invariance_examples() {
        let k = kernel_lattice(&table_matrix(&[3, 3]).unwrap()).unwrap();
        assert!(verify_invariance(&PermutationGroup::trivial(9), &k));
        assert!(verify_invariance(&table_group(&[3, 3]).unwrap(), &k));
        // The 9-cycle j -> j+1 moves cell (1,3) into row 2, breaking row sums.
        let cycle = Permutation::new((0..9).map(|j| (j + 1) % 9).collect()).unwrap();
        let bad = PermutationGroup::new(9, vec![cycle.clone()]).unwrap();
        assert!(!verify_invariance(&bad, &k));
        let image = apply(&cycle, &iv(&G1)).unwrap();
        assert!(!member(&image, &k));
    }

    #[test]
    fn conjugation_matches_coordinate_change() {
        let group = table_group(&[3, 3]).unwrap();
        let perm = vec![4, 0, 8, 2, 1, 3, 5, 6, 7];
        let conj = group.conjugate(&perm).unwrap();
        let v = iv(&G2);
        let working = IntVector::new(perm.iter().map(|&o| v[o]).collect());
        for (s, c) in group.generators().iter().zip(conj.generators()) {
            let a = apply(s, &v).unwrap();
            let b = apply(c, &working).unwrap();
            let a_working = IntVector::new(perm.iter().map(|&o| a[o]).collect());
            assert_eq!(a_working, b);
        }
    }

    #[test]
    fn orbiter_agrees_with_bfs() {
        let group = table_group(&[3, 3]).unwrap();
        let orb = Orbiter::new(&group, DEFAULT_ORBIT_CAP).unwrap();
        for v in [iv(&G1), iv(&G2), iv(&[0, 0, 0, 1, 0, -1, -1, 0, 1])] {
            let r = orb.record(&v, 4).unwrap();
            assert_eq!(r, canonical_rep(&v, &group, Some(4)).unwrap());
            assert_eq!(orb.orbit(&v).unwrap(), orbit(&v, &group).unwrap());
        }
    }

    fn table_vec() -> impl Strategy<Value = IntVector> {
        prop::collection::vec(-2i64..=2, 9).prop_map(IntVector::new)
    }

    proptest! {
        #[test]
        fn orbit_laws(u in table_vec(), v in table_vec(), k in 0usize..5) {
            let group = table_group(&[3, 3]).unwrap();
            let orb = Orbiter::new(&group, DEFAULT_ORBIT_CAP).unwrap();
            let sigma = &group.generators()[k % group.generators().len()];
            let su = apply(sigma, &u).unwrap();
            let sv = apply(sigma, &v).unwrap();
            if crate::vectors::conforms(&u, &v).unwrap() {
                prop_assert!(crate::vectors::conforms(&su, &sv).unwrap());
            }
            let ru = orb.record(&u, 4).unwrap();
            prop_assert_eq!(&orb.record(&su, 4).unwrap(), &ru);
            prop_assert_eq!(ru.clone(), canonical_rep(&u, &group, Some(4)).unwrap());
            let ou = orb.orbit(&u).unwrap();
            let ov = orb.orbit(&v).unwrap();
            prop_assert!(ou == ov || ou.iter().all(|x| !ov.contains(x)));
            let mut neg: Vec<IntVector> = orb.orbit(&u.neg()).unwrap();
            neg.sort();
            let mut negated: Vec<IntVector> = ou.iter().map(IntVector::neg).collect();
            negated.sort();
            prop_assert_eq!(neg, negated);
            prop_assert_eq!(group.order(DEFAULT_ORBIT_CAP).unwrap() % ru.size, 0);
        }
    }
}
