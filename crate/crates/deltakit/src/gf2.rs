//! Dense linear algebra over F2.
//!
//! Vectors are bit-packed into `u64` blocks. Everything here is exact; the
//! solvers return full solution sets (a particular solution plus a kernel
//! basis) so callers can enumerate affine solution cosets.

/// Bit-packed vector over F2.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gf2Vec {
    len: usize,
    blocks: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec { len, blocks: vec![0; len.div_ceil(64)] }
    }

    /// Builds a vector from the low bits of `mask` (for `len <= 64`).
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= 64);
        let mut v = Gf2Vec::zeros(len);
        if len > 0 {
            let keep = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            if !v.blocks.is_empty() {
                v.blocks[0] = mask & keep;
            }
        }
        v
    }

    /// Low 64 bits as a mask (requires `len <= 64`).
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= 64);
        self.blocks.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.blocks[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        let b = 1u64 << (i % 64);
        if bit {
            self.blocks[i / 64] |= b;
        } else {
            self.blocks[i / 64] &= !b;
        }
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Standard F2 pairing: parity of the intersection of supports.
    pub fn dot(&self, other: &Gf2Vec) -> bool {
        assert_eq!(self.len, other.len);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

/// Dense row-major matrix over F2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix { rows, cols, data: vec![Gf2Vec::zeros(cols); rows] }
    }

    pub fn from_rows(rows: Vec<Gf2Vec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Gf2Matrix { rows: rows.len(), cols, data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.data[i].set(j, bit);
    }

    pub fn row(&self, i: usize) -> &Gf2Vec {
        &self.data[i]
    }

    /// Matrix-vector product A x.
    pub fn apply(&self, x: &Gf2Vec) -> Gf2Vec {
        assert_eq!(x.len(), self.cols);
        let mut out = Gf2Vec::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            out.set(i, row.dot(x));
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.clone().echelonize().1.len()
    }

    /// In-place row echelon form; returns (reduced matrix, pivot columns).
    fn echelonize(mut self) -> (Gf2Matrix, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.data.swap(r, p);
            let pivot_row = self.data[r].clone();
            for (i, row) in self.data.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (self, pivots)
    }

    /// Solves A x = b; returns one particular solution if the system is
    /// consistent.
    pub fn solve(&self, b: &Gf2Vec) -> Option<Gf2Vec> {
        assert_eq!(b.len(), self.rows);
        // Eliminate on the augmented matrix.
        let mut aug = Gf2Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b.get(i));
        }
        let (aug, pivots) = aug.echelonize();
        if pivots.contains(&self.cols) {
            return None; // pivot in the rhs column: inconsistent
        }
        let mut x = Gf2Vec::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, aug.get(r, self.cols));
        }
        Some(x)
    }

    /// Basis of the null space of A.
    pub fn kernel_basis(&self) -> Vec<Gf2Vec> {
        let (ech, pivots) = self.clone().echelonize();
        let mut basis = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut x = Gf2Vec::zeros(self.cols);
            x.set(free, true);
            for (r, &c) in pivots.iter().enumerate() {
                if ech.get(r, free) {
                    x.set(c, true);
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Whether b lies in the column span of A.
    pub fn in_image(&self, b: &Gf2Vec) -> bool {
        self.solve(b).is_some()
    }
}

/// Builds the matrix whose columns are the given vectors.
pub fn from_columns(cols: &[Gf2Vec], dim: usize) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(dim, cols.len());
    for (j, c) in cols.iter().enumerate() {
        assert_eq!(c.len(), dim);
        for i in 0..dim {
            if c.get(i) {
                m.set(i, j, true);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_kernel() {
        // x0 + x1 = 1, x1 + x2 = 0
        let mut a = Gf2Matrix::zeros(2, 3);
        a.set(0, 0, true);
        a.set(0, 1, true);
        a.set(1, 1, true);
        a.set(1, 2, true);
        let b = Gf2Vec::from_mask(0b01, 2);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.apply(&x), b);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(a.apply(v).is_zero());
        }
    }

    #[test]
    fn inconsistent_system() {
        let mut a = Gf2Matrix::zeros(2, 1);
        a.set(0, 0, true);
        a.set(1, 0, true);
        let b = Gf2Vec::from_mask(0b01, 2);
        assert!(a.solve(&b).is_none());
    }

    #[test]
    fn rank_of_identity_block() {
        let mut a = Gf2Matrix::zeros(3, 3);
        for i in 0..3 {
            a.set(i, i, true);
        }
        assert_eq!(a.rank(), 3);
    }
}
