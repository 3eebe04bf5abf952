//! Smith normal form over the integers, with the transform matrices needed to
//! solve integer linear systems and present quotient lattices.
//!
//! Matrices are tiny here (boundary operators of small cell complexes), so a
//! dense `i128` representation with full-pivot reduction is plenty.

pub type IMat = Vec<Vec<i128>>;

pub fn zeros(rows: usize, cols: usize) -> IMat {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> IMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let (ra, ca) = shape(a);
    let (rb, cb) = shape(b);
    assert_eq!(ca, rb);
    let mut out = zeros(ra, cb);
    for i in 0..ra {
        for k in 0..ca {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..cb {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &IMat, x: &[i128]) -> Vec<i128> {
    let (r, c) = shape(a);
    assert_eq!(c, x.len());
    (0..r).map(|i| (0..c).map(|j| a[i][j] * x[j]).sum()).collect()
}

pub fn shape(a: &IMat) -> (usize, usize) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    (rows, cols)
}

/// s = l * a * r with l, r unimodular; s diagonal with divisibility
/// d_1 | d_2 | ... along the diagonal. l_inv and r_inv are the tracked
/// inverses of the transforms.
pub struct Smith {
    pub s: IMat,
    pub l: IMat,
    pub r: IMat,
    pub l_inv: IMat,
    pub r_inv: IMat,
}

impl Smith {
    pub fn diag(&self) -> Vec<i128> {
        let (rows, cols) = shape(&self.s);
        (0..rows.min(cols)).map(|i| self.s[i][i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diag().iter().filter(|&&d| d != 0).count()
    }
}

pub fn smith_normal_form(a: &IMat) -> Smith {
    let (rows, cols) = shape(a);
    let mut sm = Smith {
        s: a.clone(),
        l: identity(rows),
        r: identity(cols),
        l_inv: identity(rows),
        r_inv: identity(cols),
    };

    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // Smallest nonzero entry in the remaining block becomes the pivot.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if sm.s[i][j] != 0
                        && pivot.is_none_or(|(pi, pj)| sm.s[i][j].abs() < sm.s[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return sm;
            };
            sm.swap_rows(t, pi);
            sm.swap_cols(t, pj);
            if sm.s[t][t] < 0 {
                sm.negate_row(t);
            }

            let mut dirty = false;
            for i in t + 1..rows {
                let q = div_round(sm.s[i][t], sm.s[t][t]);
                if q != 0 {
                    sm.add_row(i, t, -q);
                }
                if sm.s[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = div_round(sm.s[t][j], sm.s[t][t]);
                if q != 0 {
                    sm.add_col(j, t, -q);
                }
                if sm.s[t][j] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce that the pivot divides the
            // rest of the block before moving on.
            let d = sm.s[t][t];
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| sm.s[i][j] % d != 0);
            match offender {
                Some((i, _)) => {
                    sm.add_row(t, i, 1);
                }
                None => break,
            }
        }
    }
    sm
}

fn div_round(a: i128, b: i128) -> i128 {
    // Round-to-nearest quotient keeps the remainders small.
    let q = a.div_euclid(b);
    let rem = a - q * b;
    if 2 * rem.abs() > b.abs() {
        q + if b > 0 { 1 } else { -1 }
    } else {
        q
    }
}

impl Smith {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.s.swap(a, b);
        self.l.swap(a, b);
        for row in self.l_inv.iter_mut() {
            row.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.s.iter_mut() {
            row.swap(a, b);
        }
        for row in self.r.iter_mut() {
            row.swap(a, b);
        }
        self.r_inv.swap(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.s[i].iter_mut() {
            *x = -*x;
        }
        for x in self.l[i].iter_mut() {
            *x = -*x;
        }
        for row in self.l_inv.iter_mut() {
            row[i] = -row[i];
        }
    }

    /// row_i += q * row_j on s and l; the inverse transform gets the inverse
    /// column operation.
    fn add_row(&mut self, i: usize, j: usize, q: i128) {
        for c in 0..self.s[i].len() {
            let v = self.s[j][c];
            self.s[i][c] += q * v;
        }
        for c in 0..self.l[i].len() {
            let v = self.l[j][c];
            self.l[i][c] += q * v;
        }
        for row in self.l_inv.iter_mut() {
            let v = row[i];
            row[j] -= q * v;
        }
    }

    /// col_i += q * col_j on s and r; the inverse transform gets the inverse
    /// row operation.
    fn add_col(&mut self, i: usize, j: usize, q: i128) {
        for row in self.s.iter_mut() {
            let v = row[j];
            row[i] += q * v;
        }
        for row in self.r.iter_mut() {
            let v = row[j];
            row[i] += q * v;
        }
        for c in 0..self.r_inv[j].len() {
            let v = self.r_inv[i][c];
            self.r_inv[j][c] -= q * v;
        }
    }
}

/// Basis of the integer kernel of a.
pub fn kernel_basis(a: &IMat) -> Vec<Vec<i128>> {
    let (rows, cols) = shape(a);
    if cols == 0 {
        return Vec::new();
    }
    let sm = smith_normal_form(a);
    let d = sm.diag();
    let mut basis = Vec::new();
    for j in 0..cols {
        let dj = if j < d.len() { d[j] } else { 0 };
        if dj == 0 || j >= rows.min(cols) {
            basis.push((0..cols).map(|i| sm.r[i][j]).collect());
        }
    }
    basis
}

/// One integer solution of A x = b, if any.
pub fn solve(a: &IMat, b: &[i128]) -> Option<Vec<i128>> {
    let sm = smith_normal_form(a);
    solve_with(a, &sm, b)
}

/// Same as [`solve`] but reuses a precomputed decomposition of a.
pub fn solve_with(a: &IMat, sm: &Smith, b: &[i128]) -> Option<Vec<i128>> {
    let (rows, cols) = shape(a);
    assert_eq!(b.len(), rows);
    let c = mat_vec(&sm.l, b);
    let mut y = vec![0i128; cols];
    for (i, ci) in c.iter().enumerate() {
        let d = if i < rows.min(cols) { sm.s[i][i] } else { 0 };
        if d == 0 {
            if *ci != 0 {
                return None;
            }
        } else {
            if ci % d != 0 {
                return None;
            }
            y[i] = ci / d;
        }
    }
    Some(mat_vec(&sm.r, &y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IMat) {
        let sm = smith_normal_form(a);
        // s = l a r
        let lar = mat_mul(&mat_mul(&sm.l, a), &sm.r);
        assert_eq!(lar, sm.s);
        let (rows, cols) = shape(a);
        assert_eq!(mat_mul(&sm.l, &sm.l_inv), identity(rows));
        assert_eq!(mat_mul(&sm.r, &sm.r_inv), identity(cols));
        // diagonal with divisibility
        let (rows, cols) = shape(&sm.s);
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert_eq!(sm.s[i][j], 0);
                }
            }
        }
        let d = sm.diag();
        for w in d.windows(2) {
            if w[0] != 0 && w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            }
        }
    }

    #[test]
    fn small_matrices() {
        check(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        check(&vec![vec![1, 0], vec![0, 1]]);
        check(&vec![vec![0, 0], vec![0, 0]]);
        check(&vec![vec![2, 0], vec![0, 3]]);
        check(&vec![vec![6, 10, 15]]);
    }

    #[test]
    fn known_invariant_factors() {
        let sm = smith_normal_form(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let d: Vec<i128> = sm.diag().iter().map(|x| x.abs()).collect();
        assert_eq!(d, vec![2, 2, 156]);
    }

    #[test]
    fn kernel_and_solve() {
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(mat_vec(&a, v), vec![0, 0]);
        }
        let x = solve(&a, &[6, 12]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![6, 12]);
        assert!(solve(&a, &[1, 1]).is_none());
    }
}
