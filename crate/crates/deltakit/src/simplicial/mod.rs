//! Finitely presented simplicial sets.
//!
//! A [`SimplicialSet`] stores only nondegenerate cells, graded by dimension.
//! Every face of a cell is a [`Simplex`]: a nondegenerate cell together with a
//! degeneracy word, kept in the canonical Eilenberg–Zilber form `s_{j1} s_{j2}
//! ... s_{jk}` with `j1 > j2 > ... > jk`. The simplicial identities
//!
//! ```text
//! d_i d_j = d_{j-1} d_i          (i < j)
//! s_i s_j = s_{j+1} s_i          (i <= j)
//! d_i s_j = s_{j-1} d_i          (i < j)
//! d_i s_j = id                   (i = j, j+1)
//! d_i s_j = s_j d_{i-1}          (i > j+1)
//! ```
//!
//! are used to push face operators through degeneracy words, so faces and
//! degeneracies of arbitrary (possibly degenerate) simplices are computable
//! and always land back in canonical form.

mod format;
mod ops;

pub use format::{parse, print};
pub use ops::{
    boundary, cone, disjoint_union, glue, horn, product, product_with_interval, pushout,
    standard_simplex, ConeResult, ProductResult,
};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Default truncation dimension for exhaustive checks and constructions.
pub const DEFAULT_DIMENSION_BOUND: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("capacity: dimension {requested} exceeds bound {bound}")]
    Capacity { requested: usize, bound: usize },
    #[error("horn index k={k} out of range for n={n}")]
    HornIndex { n: usize, k: usize },
    #[error("identification pairs simplices of different dimensions ({0} vs {1})")]
    InconsistentIdentification(usize, usize),
    #[error("pushout legs must send cells to nondegenerate cells injectively")]
    NonInjectiveLeg,
    #[error("no cell named {name} in dimension {dim}")]
    UnknownCell { dim: usize, name: String },
    #[error("map does not commute with face operators at {0}")]
    NotSimplicial(String),
}

/// A nondegenerate cell, addressed by dimension and index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cell {
    pub dim: usize,
    pub idx: usize,
}

/// Canonical degeneracy word: strictly decreasing indices, outermost first.
///
/// The word `[j1, j2, ..., jk]` denotes the operator `s_{j1} ∘ s_{j2} ∘ ... ∘
/// s_{jk}`; equivalently, its set of entries is the collapse set of the
/// associated monotone surjection.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct DegWord(Vec<usize>);

impl DegWord {
    pub fn identity() -> Self {
        DegWord(Vec::new())
    }

    pub fn from_canonical(indices: Vec<usize>) -> Self {
        assert!(indices.windows(2).all(|w| w[0] > w[1]), "degeneracy word not canonical");
        DegWord(indices)
    }

    /// Word collapsing everything down to a vertex: `s_{n-1} ... s_1 s_0`.
    pub fn full_collapse(n: usize) -> Self {
        DegWord((0..n).rev().collect())
    }

    /// Canonical word for a collapse set (positions where the surjection is
    /// constant).
    pub fn from_collapse_set(mut set: Vec<usize>) -> Self {
        set.sort_unstable_by(|a, b| b.cmp(a));
        set.dedup();
        DegWord(set)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Canonical form of `s_a ∘ self`.
    pub fn prepend(&self, a: usize) -> DegWord {
        let mut out = self.clone();
        out.prepend_mut(a);
        out
    }

    fn prepend_mut(&mut self, a: usize) {
        // s_a s_j = s_{j+1} s_a for a <= j: bump heads until a dominates.
        let mut pos = 0;
        while pos < self.0.len() && a <= self.0[pos] {
            self.0[pos] += 1;
            pos += 1;
        }
        self.0.insert(pos, a);
        debug_assert!(self.0.windows(2).all(|w| w[0] > w[1]));
    }

    /// Canonical form of `self ∘ other`.
    pub fn then(&self, other: &DegWord) -> DegWord {
        let mut out = other.clone();
        for &a in self.0.iter().rev() {
            out.prepend_mut(a);
        }
        out
    }

    /// Whether the word can be applied on top of a simplex of dimension `p`.
    pub fn valid_over(&self, p: usize) -> bool {
        // Applying innermost first: the t-th entry from the end must fit the
        // intermediate dimension p + t.
        self.0.iter().rev().enumerate().all(|(t, &j)| j <= p + t)
    }

    /// The monotone surjection `[p + len] -> [p]` this word denotes.
    pub fn to_surjection(&self, top_dim: usize) -> Vec<usize> {
        let mut m: Vec<usize> = (0..=top_dim).collect();
        for &j in &self.0 {
            for v in m.iter_mut() {
                if *v > j {
                    *v -= 1;
                }
            }
        }
        m
    }

    /// Collapse set: positions where the surjection repeats.
    pub fn collapse_set(&self, top_dim: usize) -> Vec<usize> {
        let surj = self.to_surjection(top_dim);
        (0..top_dim).filter(|&i| surj[i] == surj[i + 1]).collect()
    }
}

impl fmt::Display for DegWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s_{j}")?;
        }
        Ok(())
    }
}

/// A simplex in canonical form: an iterated degeneracy of a nondegenerate
/// cell.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex {
    pub cell: Cell,
    pub word: DegWord,
}

impl Simplex {
    pub fn nondegenerate(cell: Cell) -> Self {
        Simplex { cell, word: DegWord::identity() }
    }

    pub fn dim(&self) -> usize {
        self.cell.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }
}

/// Report produced by [`SimplicialSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "valid"),
            Some(v) => write!(f, "invalid: {v}"),
        }
    }
}

/// A finitely presented simplicial set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialSet {
    dimension_bound: usize,
    names: Vec<Vec<String>>,
    // faces[d][i][k] = k-th face of the i-th nondegenerate d-cell, d >= 1
    faces: Vec<Vec<Vec<Simplex>>>,
    labels: BTreeMap<Cell, String>,
}

impl SimplicialSet {
    pub fn new(dimension_bound: usize) -> Self {
        SimplicialSet {
            dimension_bound,
            names: Vec::new(),
            faces: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn dimension_bound(&self) -> usize {
        self.dimension_bound
    }

    /// Largest dimension with a nondegenerate cell (0 when empty).
    pub fn max_dim(&self) -> usize {
        (0..self.names.len()).rev().find(|&d| !self.names[d].is_empty()).unwrap_or(0)
    }

    pub fn is_cell_empty(&self) -> bool {
        self.names.iter().all(|v| v.is_empty())
    }

    pub fn add_cell(&mut self, dim: usize, name: impl Into<String>) -> Cell {
        assert!(dim <= self.dimension_bound, "cell dimension exceeds bound");
        while self.names.len() <= dim {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
        let name = name.into();
        assert!(
            !self.names[dim].contains(&name),
            "duplicate cell name {name} in dimension {dim}"
        );
        self.names[dim].push(name);
        self.faces[dim].push(vec![]);
        Cell { dim, idx: self.names[dim].len() - 1 }
    }

    pub fn set_faces(&mut self, cell: Cell, faces: Vec<Simplex>) {
        assert!(cell.dim >= 1, "0-cells have no faces");
        assert_eq!(faces.len(), cell.dim + 1);
        self.faces[cell.dim][cell.idx] = faces;
    }

    pub fn set_label(&mut self, cell: Cell, label: impl Into<String>) {
        self.labels.insert(cell, label.into());
    }

    pub fn label(&self, cell: Cell) -> Option<&str> {
        self.labels.get(&cell).map(|s| s.as_str())
    }

    pub fn labels(&self) -> &BTreeMap<Cell, String> {
        &self.labels
    }

    pub fn cell_count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, |v| v.len())
    }

    pub fn nondegenerate_cell_count(&self) -> usize {
        self.names.iter().map(|v| v.len()).sum()
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = Cell> + '_ {
        (0..self.cell_count(dim)).map(move |idx| Cell { dim, idx })
    }

    pub fn all_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.names.len()).flat_map(move |d| self.cells(d))
    }

    pub fn name(&self, cell: Cell) -> &str {
        &self.names[cell.dim][cell.idx]
    }

    pub fn cell_by_name(&self, dim: usize, name: &str) -> Option<Cell> {
        self.names
            .get(dim)?
            .iter()
            .position(|n| n == name)
            .map(|idx| Cell { dim, idx })
    }

    pub fn cell_faces(&self, cell: Cell) -> &[Simplex] {
        &self.faces[cell.dim][cell.idx]
    }

    /// The i-th face of an arbitrary simplex, pushed to canonical form.
    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        assert!(s.dim() >= 1 && i <= s.dim());
        let mut emitted: Vec<usize> = Vec::new();
        let mut face_idx = i;
        let mut swallowed = false;
        let mut rest_at = s.word.len();
        for (pos, &j) in s.word.indices().iter().enumerate() {
            if face_idx < j {
                emitted.push(j - 1);
            } else if face_idx == j || face_idx == j + 1 {
                swallowed = true;
                rest_at = pos + 1;
                break;
            } else {
                emitted.push(j);
                face_idx -= 1;
            }
        }
        let prefix = DegWord::from_canonical(emitted);
        if swallowed {
            let rest = DegWord(s.word.indices()[rest_at..].to_vec());
            return Simplex { cell: s.cell, word: prefix.then(&rest) };
        }
        // The face operator reached the cell itself.
        let stored = &self.faces[s.cell.dim][s.cell.idx][face_idx];
        Simplex { cell: stored.cell, word: prefix.then(&stored.word) }
    }

    /// The j-th degeneracy of a simplex.
    pub fn degeneracy(&self, s: &Simplex, j: usize) -> Simplex {
        assert!(j <= s.dim());
        Simplex { cell: s.cell, word: s.word.prepend(j) }
    }

    /// All simplices of dimension `n`, including degenerate ones, in a
    /// canonical order.
    pub fn all_simplices(&self, n: usize) -> Vec<Simplex> {
        assert!(n <= self.dimension_bound);
        let mut out = Vec::new();
        for p in 0..=n {
            for cell in self.cells(p) {
                for set in subsets_of_size(n, n - p) {
                    out.push(Simplex { cell, word: DegWord::from_collapse_set(set) });
                }
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.names
            .iter()
            .enumerate()
            .map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) })
            .sum()
    }

    /// Exhaustively checks the simplicial identities on all simplices up to
    /// the dimension bound, reporting the first violation.
    pub fn validate(&self) -> ValidationReport {
        // Structural checks first.
        for d in 1..self.names.len() {
            for idx in 0..self.names[d].len() {
                let cell = Cell { dim: d, idx };
                let fs = &self.faces[d][idx];
                if fs.len() != d + 1 {
                    return ValidationReport {
                        violation: Some(format!(
                            "cell {} has {} faces, expected {}",
                            self.name(cell),
                            fs.len(),
                            d + 1
                        )),
                    };
                }
                for (k, f) in fs.iter().enumerate() {
                    if f.cell.dim >= self.names.len()
                        || f.cell.idx >= self.names[f.cell.dim].len()
                    {
                        return ValidationReport {
                            violation: Some(format!(
                                "cell {}.face({k}) points at a missing cell",
                                self.name(cell)
                            )),
                        };
                    }
                    if !f.word.valid_over(f.cell.dim) || f.dim() + 1 != d {
                        return ValidationReport {
                            violation: Some(format!(
                                "cell {}.face({k}) has dimension {} (expected {})",
                                self.name(cell),
                                f.dim(),
                                d - 1
                            )),
                        };
                    }
                }
            }
        }
        // d_i d_j = d_{j-1} d_i on every simplex up to the bound.
        for n in 2..=self.dimension_bound.min(self.names.len().saturating_sub(1) + 1) {
            for s in self.all_simplices(n) {
                for j in 1..=n {
                    for i in 0..j {
                        let left = self.face(&self.face(&s, j), i);
                        let right = self.face(&self.face(&s, i), j - 1);
                        if left != right {
                            return ValidationReport {
                                violation: Some(format!(
                                    "d_{i} d_{j} != d_{} d_{i} on {}",
                                    j - 1,
                                    self.describe(&s)
                                )),
                            };
                        }
                    }
                }
            }
        }
        ValidationReport { violation: None }
    }

    pub fn describe(&self, s: &Simplex) -> String {
        if s.word.is_empty() {
            self.name(s.cell).to_string()
        } else {
            format!("{} {}", s.word, self.name(s.cell))
        }
    }
}

/// All subsets of {0..range-1} of the given size, in lexicographic order.
pub(crate) fn subsets_of_size(range: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, range: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..range {
            if range - v < size - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, range, size, cur, out);
            cur.pop();
        }
    }
    rec(0, range, size, &mut cur, &mut out);
    out
}

/// A morphism of simplicial sets, presented on nondegenerate cells.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: SimplicialSet,
    pub target: SimplicialSet,
    // assignment[d][i] = image of the i-th d-cell of the source
    pub assignment: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    pub fn new(source: SimplicialSet, target: SimplicialSet, assignment: Vec<Vec<Simplex>>) -> Self {
        SimplicialMap { source, target, assignment }
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        let assignment = (0..x.names.len())
            .map(|d| x.cells(d).map(Simplex::nondegenerate).collect())
            .collect();
        SimplicialMap { source: x.clone(), target: x.clone(), assignment }
    }

    pub fn image_of_cell(&self, cell: Cell) -> &Simplex {
        &self.assignment[cell.dim][cell.idx]
    }

    /// Image of an arbitrary simplex.
    pub fn apply(&self, s: &Simplex) -> Simplex {
        let base = self.image_of_cell(s.cell);
        Simplex { cell: base.cell, word: s.word.then(&base.word) }
    }

    /// Exhaustive verification that the assignment commutes with faces and
    /// degeneracies up to the source's dimension bound.
    pub fn verify(&self) -> Result<(), SimplicialError> {
        for d in 0..self.assignment.len() {
            for idx in 0..self.assignment[d].len() {
                let img = &self.assignment[d][idx];
                if img.dim() != d {
                    return Err(SimplicialError::NotSimplicial(format!(
                        "{} maps to a simplex of dimension {}",
                        self.source.name(Cell { dim: d, idx }),
                        img.dim()
                    )));
                }
            }
        }
        let top = self.source.dimension_bound.min(self.source.max_dim() + 1);
        for n in 1..=top {
            for s in self.source.all_simplices(n) {
                for i in 0..=n {
                    let lhs = self.apply(&self.source.face(&s, i));
                    let rhs = self.target.face(&self.apply(&s), i);
                    if lhs != rhs {
                        return Err(SimplicialError::NotSimplicial(format!(
                            "d_{i} of {}",
                            self.source.describe(&s)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
