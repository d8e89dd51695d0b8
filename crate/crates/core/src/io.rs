//! Text file formats and reporting.
//!
//! Every format is a header line of two counts followed by whitespace
//! separated integers:
//!
//! * matrix and lattice files: `m n`, then `m` rows of `n` entries;
//! * symmetry files: `k n`, then `k` permutations given by their 1-based
//!   images;
//! * vector files (`.gra`, `.rep`): `N n`, then `N` vectors.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{GraverError, Result};
use crate::matrix::IntMatrix;
use crate::symmetry::{Orbiter, Permutation, PermutationGroup, DEFAULT_ORBIT_CAP};
use crate::vectors::IntVector;

struct Tokens<'a> {
    path: &'a Path,
    items: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(path: &'a Path, text: &'a str) -> Self {
        let items: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .flat_map(|(i, line)| line.split_whitespace().map(move |t| (i + 1, t)))
            .collect();
        let last_line = text.lines().count().max(1);
        Tokens {
            path,
            items,
            pos: 0,
            last_line,
        }
    }

    fn error(&self, line: usize, msg: impl Into<String>) -> GraverError {
        GraverError::Parse {
            path: self.path.to_path_buf(),
            line,
            msg: msg.into(),
        }
    }

    fn line(&self) -> usize {
        self.items.get(self.pos).map_or(self.last_line, |t| t.0)
    }

    fn int(&mut self, what: &str) -> Result<i64> {
        let Some(&(line, tok)) = self.items.get(self.pos) else {
            return Err(self.error(
                self.last_line,
                format!("unexpected end of file, expected {what}"),
            ));
        };
        self.pos += 1;
        tok.parse::<i64>().map_err(|_| {
            self.error(
                line,
                format!("expected an integer for {what}, found '{tok}'"),
            )
        })
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let line = self.line();
        let x = self.int(what)?;
        usize::try_from(x)
            .map_err(|_| self.error(line, format!("{what} must be non-negative, found {x}")))
    }

    fn finish(&self) -> Result<()> {
        match self.items.get(self.pos) {
            Some(&(line, tok)) => {
                Err(self.error(line, format!("unexpected trailing token '{tok}'")))
            }
            None => Ok(()),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| GraverError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| GraverError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_rows(path: &Path, text: &str) -> Result<(usize, Vec<Vec<i64>>)> {
    let mut t = Tokens::new(path, text);
    let m = t.count("row count")?;
    let n = t.count("column count")?;
    let mut rows = Vec::with_capacity(m.min(1 << 16));
    for r in 0..m {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            row.push(t.int(&format!("entry ({}, {})", r + 1, c + 1))?);
        }
        rows.push(row);
    }
    t.finish()?;
    Ok((n, rows))
}

fn format_rows<'a>(n: usize, rows: impl ExactSizeIterator<Item = &'a [i64]>) -> String {
    let mut out = format!("{} {}\n", rows.len(), n);
    for row in rows {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(path: &Path, text: &str) -> Result<IntMatrix> {
    let (n, rows) = parse_rows(path, text)?;
    IntMatrix::from_rows(n, &rows)
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix> {
    parse_matrix(path, &read_text(path)?)
}

pub fn format_matrix(m: &IntMatrix) -> String {
    format_rows(m.cols(), m.row_iter().collect::<Vec<_>>().into_iter())
}

pub fn write_matrix(path: &Path, m: &IntMatrix) -> Result<()> {
    write_text(path, &format_matrix(m))
}

/// Reads a vector file; returns the ambient dimension and the vectors.
pub fn parse_vectors(path: &Path, text: &str) -> Result<(usize, Vec<IntVector>)> {
    let (n, rows) = parse_rows(path, text)?;
    Ok((n, rows.into_iter().map(IntVector::new).collect()))
}

pub fn read_vectors(path: &Path) -> Result<(usize, Vec<IntVector>)> {
    parse_vectors(path, &read_text(path)?)
}

pub fn format_vectors(n: usize, vectors: &[IntVector]) -> String {
    format_rows(n, vectors.iter().map(|v| v.entries()))
}

pub fn write_vectors(path: &Path, n: usize, vectors: &[IntVector]) -> Result<()> {
    write_text(path, &format_vectors(n, vectors))
}

pub fn parse_symmetry(path: &Path, text: &str) -> Result<PermutationGroup> {
    let mut t = Tokens::new(path, text);
    let k = t.count("generator count")?;
    let n = t.count("degree")?;
    let mut gens = Vec::with_capacity(k.min(1 << 16));
    for i in 0..k {
        let line = t.line();
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            images.push(t.int(&format!("image {} of generator {}", j + 1, i + 1))?);
        }
        let p = Permutation::from_one_based(&images).map_err(|_| {
            GraverError::Validation(format!(
                "{}: line {line}: generator {} is not a permutation of 1..{n}",
                path.display(),
                i + 1
            ))
        })?;
        gens.push(p);
    }
    t.finish()?;
    PermutationGroup::new(n, gens)
}

pub fn read_symmetry(path: &Path) -> Result<PermutationGroup> {
    parse_symmetry(path, &read_text(path)?)
}

pub fn format_symmetry(group: &PermutationGroup) -> String {
    let mut out = format!("{} {}\n", group.generators().len(), group.degree());
    for g in group.generators() {
        let line: Vec<String> = g.one_based().iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_symmetry(path: &Path, group: &PermutationGroup) -> Result<()> {
    write_text(path, &format_symmetry(group))
}

/// `v` or `-v`, whichever has a positive first nonzero entry.
pub fn canonical_sign(v: &IntVector) -> Result<IntVector> {
    match v.entries().iter().find(|&&x| x != 0) {
        None => Err(GraverError::Domain("the zero vector has no canonical sign")),
        Some(&x) if x > 0 => Ok(v.clone()),
        Some(_) => v.checked_neg(),
    }
}

/// Canonical-sign representatives of a set closed under negation, sorted
/// and deduplicated.
pub fn up_to_sign(vectors: &[IntVector]) -> Result<Vec<IntVector>> {
    let mut out = vectors
        .iter()
        .filter(|v| !v.is_zero())
        .map(canonical_sign)
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Both signs of every vector, sorted and deduplicated.
pub fn with_both_signs(vectors: &[IntVector]) -> Result<Vec<IntVector>> {
    let mut out = Vec::with_capacity(2 * vectors.len());
    for v in vectors.iter().filter(|v| !v.is_zero()) {
        out.push(v.clone());
        out.push(v.checked_neg()?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Orbits of a set of vectors taken up to sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    /// Smallest canonical-sign member of each orbit, sorted.
    pub representatives: Vec<IntVector>,
    /// Number of up-to-sign members of each orbit, aligned with
    /// `representatives`.
    pub sizes: Vec<usize>,
}

/// Partitions the canonical-sign classes of `vectors` into orbits under
/// `group`. Every orbit must lie entirely inside the set.
pub fn orbits_up_to_sign(vectors: &[IntVector], group: &PermutationGroup) -> Result<OrbitSummary> {
    let classes = up_to_sign(vectors)?;
    let orbiter = Orbiter::new(group, DEFAULT_ORBIT_CAP)?;
    let mut seen = std::collections::HashSet::new();
    let mut groups: Vec<(IntVector, usize)> = Vec::new();
    for v in &classes {
        if seen.contains(v) {
            continue;
        }
        let members = up_to_sign(&orbiter.orbit(v)?)?;
        for m in &members {
            if classes.binary_search(m).is_err() {
                return Err(GraverError::Validation(format!(
                    "the set is not closed under the group: {m} is missing"
                )));
            }
            seen.insert(m.clone());
        }
        groups.push((members[0].clone(), members.len()));
    }
    groups.sort();
    Ok(OrbitSummary {
        representatives: groups.iter().map(|g| g.0.clone()).collect(),
        sizes: groups.iter().map(|g| g.1).collect(),
    })
}

/// The stats JSON written next to computed bases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub graver_size_up_to_sign: usize,
    pub num_representatives: usize,
    pub group_order: u64,
    pub orbit_sizes: Vec<usize>,
    pub runtime_ms: u64,
    pub algorithm: String,
}

pub fn write_stats(path: &Path, stats: &RunStats) -> Result<()> {
    let mut text = serde_json::to_string_pretty(stats).expect("stats serialize");
    text.push('\n');
    write_text(path, &text)
}

pub fn read_stats(path: &Path) -> Result<RunStats> {
    serde_json::from_str(&read_text(path)?).map_err(|e| GraverError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        msg: e.to_string(),
    })
}
