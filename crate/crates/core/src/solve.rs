//! End-to-end drivers: from a lattice in original coordinates to its Graver
//! basis in original coordinates.

use std::fmt;
use std::str::FromStr;

use crate::engine::fast::fast_graver_with;
use crate::engine::pottier::{extract_minimal, pottier_graver_with};
use crate::engine::sym_fast::sym_fast_graver_with;
use crate::engine::sym_pottier::sym_pottier_with;
use crate::engine::EngineOptions;
use crate::error::{GraverError, Result};
use crate::lattice::{minimal_projected_generators, preprocess, LatticeBasis};
use crate::symmetry::{verify_invariance, PermutationGroup};
use crate::vectors::IntVector;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    Pottier,
    #[default]
    Fast,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pottier => "pottier",
            Algorithm::Fast => "fast",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pottier" => Ok(Algorithm::Pottier),
            "fast" => Ok(Algorithm::Fast),
            _ => Err(format!(
                "unknown algorithm '{s}' (expected pottier or fast)"
            )),
        }
    }
}

/// Result of a symmetric run, in original coordinates.
#[derive(Clone, Debug)]
pub struct SymmetricGraver {
    /// Every Graver element, both signs, sorted.
    pub graver: Vec<IntVector>,
    /// One member per orbit as chosen by the engine, sorted.
    pub representatives: Vec<IntVector>,
}

/// The Graver basis of the lattice spanned by `basis`, both signs, sorted.
pub fn graver_basis(
    basis: &LatticeBasis,
    algorithm: Algorithm,
    opts: &EngineOptions,
) -> Result<Vec<IntVector>> {
    let mut out = match algorithm {
        Algorithm::Pottier => {
            let gens: Vec<IntVector> = basis
                .generators()
                .iter()
                .map(|g| basis.to_original(g))
                .collect();
            if gens.is_empty() {
                return Ok(Vec::new());
            }
            let (g, _) = pottier_graver_with(&gens, opts)?;
            extract_minimal(&g).vectors().to_vec()
        }
        Algorithm::Fast => {
            let b = preprocess(basis)?;
            let fbar = minimal_projected_generators(&b)?;
            let (g, _) = fast_graver_with(&fbar, &b, opts)?;
            g.vectors().iter().map(|v| b.to_original(v)).collect()
        }
    };
    out.sort();
    Ok(out)
}

/// Graver basis computed over orbit representatives. `group` acts on
/// original coordinates and must leave the lattice invariant.
pub fn graver_basis_sym(
    basis: &LatticeBasis,
    group: &PermutationGroup,
    algorithm: Algorithm,
    opts: &EngineOptions,
) -> Result<SymmetricGraver> {
    if group.degree() != basis.n() {
        return Err(GraverError::Dimension {
            expected: basis.n(),
            found: group.degree(),
        });
    }
    if !verify_invariance(group, basis) {
        return Err(GraverError::Validation(
            "the group does not leave the lattice invariant".into(),
        ));
    }
    let (mut graver, mut representatives): (Vec<IntVector>, Vec<IntVector>) = match algorithm {
        Algorithm::Pottier => {
            let gens: Vec<IntVector> = basis
                .generators()
                .iter()
                .map(|g| basis.to_original(g))
                .collect();
            if gens.is_empty() {
                return Ok(SymmetricGraver {
                    graver: Vec::new(),
                    representatives: Vec::new(),
                });
            }
            let run = sym_pottier_with(&gens, group, opts)?;
            let minimal = extract_minimal(&run.graver);
            let reps = run
                .representatives
                .into_iter()
                .filter(|r| minimal.contains(r))
                .collect();
            (minimal.vectors().to_vec(), reps)
        }
        Algorithm::Fast => {
            let b = preprocess(basis)?;
            let working = group.conjugate(b.column_perm())?;
            let fbar = minimal_projected_generators(&b)?;
            let run = sym_fast_graver_with(&fbar, &working, &b, opts)?;
            (
                run.graver
                    .vectors()
                    .iter()
                    .map(|v| b.to_original(v))
                    .collect(),
                run.representatives
                    .iter()
                    .map(|v| b.to_original(v))
                    .collect(),
            )
        }
    };
    graver.sort();
    representatives.sort();
    Ok(SymmetricGraver {
        graver,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::kernel_lattice;
    use crate::models::{table_group, table_matrix};

    #[test]
    fn engines_agree_on_small_tables() {
        for dims in [vec![2, 2], vec![2, 3], vec![3, 3]] {
            let b = kernel_lattice(&table_matrix(&dims).unwrap()).unwrap();
            let g = table_group(&dims).unwrap();
            let opts = EngineOptions::default();
            let p = graver_basis(&b, Algorithm::Pottier, &opts).unwrap();
            let f = graver_basis(&b, Algorithm::Fast, &opts).unwrap();
            let sp = graver_basis_sym(&b, &g, Algorithm::Pottier, &opts).unwrap();
            let sf = graver_basis_sym(&b, &g, Algorithm::Fast, &opts).unwrap();
            assert_eq!(p, f, "{dims:?}");
            assert_eq!(p, sp.graver, "{dims:?}");
            assert_eq!(p, sf.graver, "{dims:?}");
        }
    }

    #[test]
    fn three_by_three_counts() {
        let b = kernel_lattice(&table_matrix(&[3, 3]).unwrap()).unwrap();
        let g = table_group(&[3, 3]).unwrap();
        let r = graver_basis_sym(&b, &g, Algorithm::Fast, &EngineOptions::default()).unwrap();
        assert_eq!(r.graver.len(), 30);
        assert_eq!(r.representatives.len(), 2);
    }

    #[test]
    fn rejects_non_invariant_group() {
        let b = LatticeBasis::from_generators(3, &[IntVector::from(&[1, 2, 0][..])]).unwrap();
        let g =
            PermutationGroup::new(3, vec![crate::symmetry::Permutation::swap(3, 1, 2)]).unwrap();
        assert!(matches!(
            graver_basis_sym(&b, &g, Algorithm::Fast, &EngineOptions::default()),
            Err(GraverError::Validation(_))
        ));
    }
}
