#![allow(dead_code)]

use graver::io::canonical_sign;
use graver::symmetry::Permutation;
use graver::{
    extract_minimal, fast_graver, minimal_projected_generators, pottier_graver, preprocess,
    sym_fast_graver, sym_pottier, IntVector, LatticeBasis, PermutationGroup,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Graver basis of the 3×3 line-sum lattice, one sign per element.
pub const THREE_BY_THREE: [[i64; 9]; 15] = [
    [1, -1, 0, -1, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, -1, -1, 0, 1],
    [1, 0, -1, -1, 0, 1, 0, 0, 0],
    [1, -1, 0, 0, 0, 0, -1, 1, 0],
    [0, 0, 0, 1, -1, 0, -1, 1, 0],
    [1, -1, 0, -1, 0, 1, 0, 1, -1],
    [0, -1, 1, 1, 0, -1, -1, 1, 0],
    [1, -1, 0, 0, 1, -1, -1, 0, 1],
    [1, 0, -1, 0, 0, 0, -1, 0, 1],
    [0, -1, 1, 0, 1, -1, 0, 0, 0],
    [0, 1, -1, 1, -1, 0, -1, 0, 1],
    [0, 0, 0, 0, 1, -1, 0, -1, 1],
    [0, -1, 1, 0, 0, 0, 0, 1, -1],
    [1, 0, -1, 0, -1, 1, -1, 1, 0],
    [1, 0, -1, -1, 1, 0, 0, -1, 1],
];

pub const THREE_BY_THREE_REPS: [[i64; 9]; 2] = [
    [1, -1, 0, -1, 1, 0, 0, 0, 0],
    [1, -1, 0, -1, 0, 1, 0, 1, -1],
];

pub fn iv(x: &[i64]) -> IntVector {
    IntVector::from(x)
}

pub fn canonical_set(vs: &[IntVector]) -> Vec<IntVector> {
    let mut out: Vec<IntVector> = vs
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| canonical_sign(v).unwrap())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A small lattice together with a group that leaves it invariant.
#[derive(Clone, Debug)]
pub struct Instance {
    pub basis: LatticeBasis,
    pub group: PermutationGroup,
}

/// Random lattices of rank at most 3 in dimension at most 7, spanned by
/// vectors with entries in -2..=2. Every other instance is closed under a
/// small group of coordinate swaps.
pub fn random_instances(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=7);
        let symmetric = out.len() % 2 == 1 && n >= 3;
        let group = if symmetric {
            let mut gens = vec![Permutation::swap(n, 0, 1)];
            if n >= 5 && rng.gen_bool(0.5) {
                gens.push(Permutation::swap(n, 2, 3));
            }
            PermutationGroup::new(n, gens).unwrap()
        } else {
            PermutationGroup::trivial(n)
        };
        let elements = group.elements(64).unwrap();
        let target = rng.gen_range(1..=3);
        let mut gens: Vec<IntVector> = Vec::new();
        for _ in 0..8 {
            let v = IntVector::new((0..n).map(|_| rng.gen_range(-2..=2)).collect());
            let mut trial = gens.clone();
            for s in &elements {
                trial.push(graver::apply(s, &v).unwrap());
            }
            let b = LatticeBasis::from_generators(n, &trial).unwrap();
            if b.d() <= target {
                gens = trial;
            }
        }
        let basis = LatticeBasis::from_generators(n, &gens).unwrap();
        if basis.d() == 0 {
            continue;
        }
        out.push(Instance { basis, group });
    }
    out
}

/// Every dimension vector with at least two entries, each at least 2, and
/// product at most `max`.
pub fn table_dims(max: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, product: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        for k in 2..=max / product {
            prefix.push(k);
            extend(prefix, product * k, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max, &mut out);
    out
}

/// Raw outputs of the four engines, each in original coordinates.
pub struct EngineOutputs {
    /// Pottier's output before minimal extraction.
    pub pottier_raw: Vec<IntVector>,
    pub pottier: Vec<IntVector>,
    pub sym_pottier: Vec<IntVector>,
    pub sym_pottier_reps: Vec<IntVector>,
    /// Pivoted basis used by the norm-ordered engines.
    pub pivoted: LatticeBasis,
    /// Norm-ordered outputs in working coordinates of `pivoted`.
    pub fast_working: Vec<IntVector>,
    pub sym_fast_working: Vec<IntVector>,
    pub sym_fast_reps_working: Vec<IntVector>,
    pub fast: Vec<IntVector>,
    pub sym_fast: Vec<IntVector>,
}

pub fn run_engines(inst: &Instance) -> EngineOutputs {
    let b = &inst.basis;
    let gens: Vec<IntVector> = b.generators().iter().map(|g| b.to_original(g)).collect();
    let raw = pottier_graver(&gens).unwrap();
    let pottier = extract_minimal(&raw).vectors().to_vec();
    let sp = sym_pottier(&gens, &inst.group).unwrap();
    let sym_pottier = extract_minimal(&sp.graver).vectors().to_vec();

    let pivoted = preprocess(b).unwrap();
    let fbar = minimal_projected_generators(&pivoted).unwrap();
    let fast_working = fast_graver(&fbar, &pivoted).unwrap().vectors().to_vec();
    let working_group = inst.group.conjugate(pivoted.column_perm()).unwrap();
    let sf = sym_fast_graver(&fbar, &working_group, &pivoted).unwrap();
    let sym_fast_working = sf.graver.vectors().to_vec();
    let fast = fast_working
        .iter()
        .map(|v| pivoted.to_original(v))
        .collect();
    let sym_fast = sym_fast_working
        .iter()
        .map(|v| pivoted.to_original(v))
        .collect();
    EngineOutputs {
        pottier_raw: raw.vectors().to_vec(),
        pottier,
        sym_pottier,
        sym_pottier_reps: sp.representatives,
        pivoted,
        fast_working,
        sym_fast_working,
        sym_fast_reps_working: sf.representatives,
        fast,
        sym_fast,
    }
}

/// Largest absolute entry over a set of vectors.
pub fn max_norm(vs: &[IntVector]) -> u64 {
    vs.iter().map(|v| v.max_abs()).max().unwrap_or(0)
}
