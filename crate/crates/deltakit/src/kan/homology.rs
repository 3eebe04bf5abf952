//! Exact simplicial homology of the normalized chain complex.
//!
//! Chains are generated by nondegenerate cells; a face that lands in a
//! degeneracy contributes zero. Over the integers the computation goes
//! through Smith normal form; over F2 through rank computations.

use std::fmt;

use crate::gf2::Gf2Matrix;
use crate::simplicial::{Simplex, SimplicialMap, SimplicialSet};
use crate::snf::{self, IMat, Smith};

use super::KanError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Integers,
    F2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescription {
    pub ring: Ring,
    pub free_rank: usize,
    pub torsion: Vec<i128>,
}

impl GroupDescription {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.ring {
            Ring::Integers => {
                if self.free_rank == 1 {
                    parts.push("Z".to_string());
                } else if self.free_rank > 1 {
                    parts.push(format!("Z^{}", self.free_rank));
                }
                for d in &self.torsion {
                    parts.push(format!("Z/{d}"));
                }
            }
            Ring::F2 => {
                if self.free_rank == 1 {
                    parts.push("F2".to_string());
                } else {
                    parts.push(format!("F2^{}", self.free_rank));
                }
            }
        }
        write!(f, "{}", parts.join(" (+) "))
    }
}

/// Boundary matrix C_n -> C_{n-1} of the normalized complex (n >= 1).
pub fn boundary_matrix(x: &SimplicialSet, n: usize) -> IMat {
    let rows = if n >= 1 { x.cell_count(n - 1) } else { 0 };
    let cols = x.cell_count(n);
    let mut m = snf::zeros(rows, cols);
    if n == 0 {
        return m;
    }
    for c in x.cells(n) {
        for (i, f) in x.cell_faces(c).iter().enumerate() {
            if f.is_degenerate() {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m[f.cell.idx][c.idx] += sign;
        }
    }
    m
}

/// Homology groups in the given degree range.
pub fn homology(x: &SimplicialSet, max_degree: usize, ring: Ring) -> Vec<GroupDescription> {
    (0..=max_degree).map(|n| homology_in_degree(x, n, ring)).collect()
}

pub fn homology_in_degree(x: &SimplicialSet, n: usize, ring: Ring) -> GroupDescription {
    let cells = x.cell_count(n);
    let d_n = boundary_matrix(x, n);
    let d_np1 = boundary_matrix(x, n + 1);
    match ring {
        Ring::Integers => {
            let rank_n = if n == 0 { 0 } else { snf::smith_normal_form(&d_n).rank() };
            let sm = snf::smith_normal_form(&d_np1);
            let rank_np1 = sm.rank();
            let torsion: Vec<i128> =
                sm.diag().iter().map(|d| d.abs()).filter(|&d| d > 1).collect();
            GroupDescription {
                ring,
                free_rank: cells - rank_n - rank_np1,
                torsion,
            }
        }
        Ring::F2 => {
            let rank_n = if n == 0 { 0 } else { gf2_rank(&d_n) };
            let rank_np1 = gf2_rank(&d_np1);
            GroupDescription { ring, free_rank: cells - rank_n - rank_np1, torsion: Vec::new() }
        }
    }
}

fn gf2_rank(m: &IMat) -> usize {
    let (rows, cols) = snf::shape(m);
    let mut g = Gf2Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if m[i][j].rem_euclid(2) == 1 {
                g.set(i, j, true);
            }
        }
    }
    g.rank()
}

/// Integer homology in one degree together with the data needed to locate
/// the class of a cycle: a kernel basis and the quotient presentation.
pub struct HomologyBasis {
    pub degree: usize,
    pub description: GroupDescription,
    kernel: IMat,
    kernel_smith: Smith,
    rel_l: IMat,
    rel_diag: Vec<i128>,
    rel_l_inv: IMat,
}

impl HomologyBasis {
    pub fn new(x: &SimplicialSet, n: usize) -> Self {
        let d_n = boundary_matrix(x, n);
        let d_np1 = boundary_matrix(x, n + 1);
        let cells = x.cell_count(n);
        // the boundary into an empty chain group is the zero map
        let kernel_cols = if n == 0 || x.cell_count(n - 1) == 0 {
            snf::identity(cells)
        } else {
            columns_matrix(&snf::kernel_basis(&d_n), cells)
        };
        let kernel_smith = snf::smith_normal_form(&kernel_cols);
        let k = snf::shape(&kernel_cols).1;
        // boundary columns expressed in kernel coordinates
        let (_, m) = snf::shape(&d_np1);
        let mut rel = snf::zeros(k, m);
        for j in 0..m {
            let b: Vec<i128> = (0..cells).map(|i| d_np1[i][j]).collect();
            let y = snf::solve_with(&kernel_cols, &kernel_smith, &b)
                .expect("boundaries are cycles");
            for (i, v) in y.iter().enumerate() {
                rel[i][j] = *v;
            }
        }
        let rel_sm = snf::smith_normal_form(&rel);
        let mut rel_diag = rel_sm.diag();
        rel_diag.resize(k, 0);
        let torsion: Vec<i128> =
            rel_diag.iter().map(|d| d.abs()).filter(|&d| d > 1).collect();
        let free_rank = rel_diag.iter().filter(|&&d| d == 0).count();
        HomologyBasis {
            degree: n,
            description: GroupDescription { ring: Ring::Integers, free_rank, torsion },
            kernel: kernel_cols,
            kernel_smith,
            rel_l: rel_sm.l,
            rel_diag,
            rel_l_inv: rel_sm.l_inv,
        }
    }

    /// Free-part coordinates of a cycle's class; None when the chain is not
    /// in the kernel.
    pub fn class_of(&self, chain: &[i128]) -> Option<Vec<i128>> {
        let c = snf::solve_with(&self.kernel, &self.kernel_smith, chain)?;
        let w = snf::mat_vec(&self.rel_l, &c);
        Some(
            self.rel_diag
                .iter()
                .enumerate()
                .filter(|(_, &d)| d == 0)
                .map(|(i, _)| w[i])
                .collect(),
        )
    }

    /// Chains generating the free part of the homology group.
    pub fn free_generators(&self) -> Vec<Vec<i128>> {
        let k = self.rel_diag.len();
        let cells = snf::shape(&self.kernel).0;
        self.rel_diag
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| {
                let coords: Vec<i128> = (0..k).map(|row| self.rel_l_inv[row][i]).collect();
                let mut chain = vec![0i128; cells];
                for (col, coef) in coords.iter().enumerate() {
                    if *coef != 0 {
                        for (r, chain_r) in chain.iter_mut().enumerate() {
                            *chain_r += coef * self.kernel[r][col];
                        }
                    }
                }
                chain
            })
            .collect()
    }
}

fn columns_matrix(cols: &[Vec<i128>], rows: usize) -> IMat {
    let mut m = snf::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            m[i][j] = *v;
        }
    }
    m
}

/// Chain of a simplex in the normalized complex (degenerate simplices vanish).
pub fn chain_of(x: &SimplicialSet, s: &Simplex) -> Vec<i128> {
    let mut v = vec![0i128; x.cell_count(s.dim())];
    if !s.is_degenerate() {
        v[s.cell.idx] = 1;
    }
    v
}

/// Matrix of the induced chain map in degree n.
pub fn chain_map_matrix(f: &SimplicialMap, n: usize) -> IMat {
    let rows = f.target.cell_count(n);
    let cols = f.source.cell_count(n);
    let mut m = snf::zeros(rows, cols);
    for c in f.source.cells(n) {
        let img = f.image_of_cell(c);
        if !img.is_degenerate() {
            m[img.cell.idx][c.idx] += 1;
        }
    }
    m
}

/// Whether the map induces an isomorphism on integer homology in degree n.
/// Torsion-free groups only; torsion makes this checker bail out.
pub fn induces_homology_iso(f: &SimplicialMap, n: usize) -> Result<bool, KanError> {
    let hx = HomologyBasis::new(&f.source, n);
    let hy = HomologyBasis::new(&f.target, n);
    if !hx.description.torsion.is_empty() || !hy.description.torsion.is_empty() {
        return Err(KanError::Unsupported(
            "iso check implemented for torsion-free homology".into(),
        ));
    }
    if hx.description.free_rank != hy.description.free_rank {
        return Ok(false);
    }
    let b = hx.description.free_rank;
    if b == 0 {
        return Ok(true);
    }
    let m = chain_map_matrix(f, n);
    let mut cols = Vec::new();
    for g in hx.free_generators() {
        let image = snf::mat_vec(&m, &g);
        match hy.class_of(&image) {
            Some(coords) => cols.push(coords),
            None => return Ok(false),
        }
    }
    let mut mat = snf::zeros(b, b);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            mat[i][j] = *v;
        }
    }
    Ok(det(&mat).abs() == 1)
}

/// Determinant by fraction-free Gaussian elimination.
fn det(a: &IMat) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m = a.clone();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for t in 0..n {
        let pivot_row = (t..n).find(|&i| m[i][t] != 0);
        let Some(p) = pivot_row else {
            return 0;
        };
        if p != t {
            m.swap(p, t);
            sign = -sign;
        }
        for i in t + 1..n {
            for j in t + 1..n {
                m[i][j] = (m[t][t] * m[i][j] - m[i][t] * m[t][j]) / prev;
            }
            m[i][t] = 0;
        }
        prev = m[t][t];
    }
    sign * m[n - 1][n - 1]
}

/// Alternating sum of F2 Betti numbers, for Euler-characteristic checks.
pub fn euler_from_betti(x: &SimplicialSet, max_degree: usize) -> i64 {
    homology(x, max_degree, Ring::F2)
        .iter()
        .enumerate()
        .map(|(n, h)| if n % 2 == 0 { h.free_rank as i64 } else { -(h.free_rank as i64) })
        .sum()
}
