//! Graver bases of sublattices of Z^n.
//!
//! The Graver basis of a lattice is the set of its nonzero elements that are
//! minimal in the conformal order. Four completion engines are provided:
//! Pottier's algorithm, a norm-ordered variant that produces the basis
//! exactly, and versions of both that keep one representative per orbit of
//! a permutation group leaving the lattice invariant.
//!
//! ```
//! use graver::{kernel_lattice, graver_basis, table_matrix, Algorithm, EngineOptions};
//!
//! let basis = kernel_lattice(&table_matrix(&[3, 3]).unwrap()).unwrap();
//! let g = graver_basis(&basis, Algorithm::Fast, &EngineOptions::default()).unwrap();
//! assert_eq!(g.len(), 30);
//! ```

pub mod cli;
pub mod engine;
pub mod error;
pub mod index;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod models;
pub mod oracle;
pub mod par;
pub mod solve;
pub mod symmetry;
pub mod vectors;

pub use cli::cli_main;
pub use engine::fast::{fast_graver, fast_graver_with, fast_normal_form};
pub use engine::pottier::{extract_minimal, normal_form, pottier_graver, pottier_graver_with};
pub use engine::sym_fast::{sym_fast_graver, sym_fast_graver_with};
pub use engine::sym_pottier::{sym_pottier, sym_pottier_with};
pub use engine::{EngineOptions, EngineStats, GraverSet, PairSide, SymmetricRun};
pub use error::{GraverError, Result};
pub use lattice::{
    kernel_lattice, lift, member, minimal_projected_generators, preprocess, project, InputSetFbar,
    LatticeBasis,
};
pub use matrix::IntMatrix;
pub use models::{table_group, table_matrix};
pub use solve::{graver_basis, graver_basis_sym, Algorithm, SymmetricGraver};
pub use symmetry::{apply, canonical_rep, orbit, verify_invariance, Permutation, PermutationGroup};
pub use vectors::{conforms, pos_neg_split, prefix_norm, IntVector};
