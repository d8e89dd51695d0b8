//! Command line interface.
//!
//! Exit status: 0 success, 1 usage, 2 parse or validation, 3 resource cap,
//! 4 verification failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::engine::EngineOptions;
use crate::error::{GraverError, Result};
use crate::io;
use crate::lattice::{kernel_lattice, member, LatticeBasis};
use crate::models::{table_group, table_matrix};
use crate::oracle::{brute_force_graver, is_graver_element};
use crate::par;
use crate::solve::{graver_basis, graver_basis_sym, Algorithm};
use crate::symmetry::{PermutationGroup, DEFAULT_ORBIT_CAP};
use crate::vectors::IntVector;

#[derive(Parser, Debug)]
#[command(name = "graver", version, about = "Graver bases of integer lattices")]
struct Cli {
    /// Worker threads for the engines (0 = all available).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct LatticeInput {
    /// Matrix whose integer kernel is the lattice.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Lattice given by generators, one per row.
    #[arg(long)]
    lattice: Option<PathBuf>,
}

impl LatticeInput {
    fn load(&self) -> Result<LatticeBasis> {
        match (&self.matrix, &self.lattice) {
            (Some(m), _) => kernel_lattice(&io::read_matrix(m)?),
            (_, Some(l)) => {
                let (n, gens) = io::read_vectors(l)?;
                LatticeBasis::from_generators(n, &gens)
            }
            _ => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the Graver basis of a lattice.
    Graver {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long, default_value = "fast")]
        algorithm: Algorithm,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Write both signs of every element.
        #[arg(long)]
        signed: bool,
    },
    /// Compute the Graver basis using a symmetry group of the lattice.
    GraverSym {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        symmetry: PathBuf,
        #[arg(long, default_value = "fast")]
        algorithm: Algorithm,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        reps: PathBuf,
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        signed: bool,
    },
    /// Write a basis of the integer kernel of a matrix.
    Kernel {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Write the line-sum matrix and symmetry group of a table.
    GenTable {
        #[arg(required = true, num_args = 2..)]
        dims: Vec<usize>,
        #[arg(long)]
        matrix_out: PathBuf,
        #[arg(long)]
        sym_out: PathBuf,
    },
    /// Split a set of vectors into orbits.
    Orbits {
        #[arg(long)]
        vectors: PathBuf,
        #[arg(long)]
        symmetry: PathBuf,
        #[arg(long)]
        reps_out: PathBuf,
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Certify a Graver basis by brute force.
    Check {
        #[arg(long)]
        graver: PathBuf,
        #[command(flatten)]
        input: LatticeInput,
        /// Entry bound for the completeness search (default: largest entry
        /// in the file).
        #[arg(long)]
        bound: Option<u64>,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let threads = cli.threads;
    match par::with_threads(threads, move || run(cli.command)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Graver {
            input,
            algorithm,
            output,
            stats,
            signed,
        } => {
            let start = Instant::now();
            let basis = input.load()?;
            let g = graver_basis(&basis, algorithm, &EngineOptions::default())?;
            let elapsed = start.elapsed().as_millis() as u64;
            write_graver(&output, basis.n(), &g, signed)?;
            if let Some(path) = stats {
                let summary = io::orbits_up_to_sign(&g, &PermutationGroup::trivial(basis.n()))?;
                io::write_stats(&path, &make_stats(&summary, 1, elapsed, algorithm))?;
            }
            Ok(())
        }
        Command::GraverSym {
            input,
            symmetry,
            algorithm,
            output,
            reps,
            stats,
            signed,
        } => {
            let start = Instant::now();
            let basis = input.load()?;
            let group = io::read_symmetry(&symmetry)?;
            let run = graver_basis_sym(&basis, &group, algorithm, &EngineOptions::default())?;
            let summary = io::orbits_up_to_sign(&run.graver, &group)?;
            let elapsed = start.elapsed().as_millis() as u64;
            write_graver(&output, basis.n(), &run.graver, signed)?;
            io::write_vectors(&reps, basis.n(), &summary.representatives)?;
            if let Some(path) = stats {
                let order = group.order(DEFAULT_ORBIT_CAP)? as u64;
                io::write_stats(&path, &make_stats(&summary, order, elapsed, algorithm))?;
            }
            Ok(())
        }
        Command::Kernel { matrix, output } => {
            let basis = kernel_lattice(&io::read_matrix(&matrix)?)?;
            io::write_vectors(&output, basis.n(), basis.generators())
        }
        Command::GenTable {
            dims,
            matrix_out,
            sym_out,
        } => {
            io::write_matrix(&matrix_out, &table_matrix(&dims)?)?;
            io::write_symmetry(&sym_out, &table_group(&dims)?)
        }
        Command::Orbits {
            vectors,
            symmetry,
            reps_out,
            stats,
        } => {
            let start = Instant::now();
            let (n, vs) = io::read_vectors(&vectors)?;
            let group = io::read_symmetry(&symmetry)?;
            if group.degree() != n {
                return Err(GraverError::Dimension {
                    expected: n,
                    found: group.degree(),
                });
            }
            let all = io::with_both_signs(&vs)?;
            let summary = io::orbits_up_to_sign(&all, &group)?;
            io::write_vectors(&reps_out, n, &summary.representatives)?;
            if let Some(path) = stats {
                let order = group.order(DEFAULT_ORBIT_CAP)? as u64;
                let elapsed = start.elapsed().as_millis() as u64;
                let mut s = make_stats(&summary, order, elapsed, Algorithm::Fast);
                s.algorithm = "none".into();
                io::write_stats(&path, &s)?;
            }
            Ok(())
        }
        Command::Check {
            graver,
            input,
            bound,
        } => {
            let basis = input.load()?;
            let (n, vs) = io::read_vectors(&graver)?;
            if n != basis.n() {
                return Err(GraverError::Dimension {
                    expected: basis.n(),
                    found: n,
                });
            }
            check(&basis, &vs, bound)
        }
    }
}

fn write_graver(path: &Path, n: usize, g: &[IntVector], signed: bool) -> Result<()> {
    let out = if signed {
        io::with_both_signs(g)?
    } else {
        io::up_to_sign(g)?
    };
    io::write_vectors(path, n, &out)
}

fn make_stats(
    summary: &io::OrbitSummary,
    order: u64,
    runtime_ms: u64,
    algorithm: Algorithm,
) -> io::RunStats {
    io::RunStats {
        graver_size_up_to_sign: summary.sizes.iter().sum(),
        num_representatives: summary.representatives.len(),
        group_order: order,
        orbit_sizes: summary.sizes.clone(),
        runtime_ms,
        algorithm: algorithm.name().into(),
    }
}

/// Every listed vector must be a Graver element, and up to sign the list
/// must contain every Graver element with entries bounded by `bound`.
fn check(basis: &LatticeBasis, vs: &[IntVector], bound: Option<u64>) -> Result<()> {
    for (i, v) in vs.iter().enumerate() {
        if v.is_zero() {
            return Err(GraverError::Verification(format!(
                "vector {} is zero",
                i + 1
            )));
        }
        if !member(v, basis) {
            return Err(GraverError::Verification(format!(
                "vector {} is not in the lattice",
                i + 1
            )));
        }
        if !is_graver_element(v, basis)? {
            return Err(GraverError::Verification(format!(
                "vector {} ({v}) is not conformally minimal",
                i + 1
            )));
        }
    }
    let bound = bound.unwrap_or_else(|| vs.iter().map(|v| v.max_abs()).max().unwrap_or(0));
    let expected = io::up_to_sign(brute_force_graver(basis, bound)?.vectors())?;
    let listed = io::up_to_sign(vs)?;
    if let Some(missing) = expected.iter().find(|v| listed.binary_search(v).is_err()) {
        return Err(GraverError::Verification(format!(
            "Graver element {missing} is missing"
        )));
    }
    Ok(())
}
