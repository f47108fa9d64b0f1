//! Smith normal form of small integer matrices.
//!
//! `U * A * V = D` with `U`, `V` unimodular and `D` diagonal,
//! `d_1 | d_2 | ... | d_r`, all nonnegative.

use crate::vec3::IntVec3;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_vectors(vs: &[IntVec3]) -> Self {
        let rows: Vec<[i64; 3]> = vs.iter().map(|v| v.0).collect();
        if rows.is_empty() {
            return Self::zeros(0, 3);
        }
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| a[i * n + k] != 0) else {
                return 0;
            };
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        (sign * a[n * n - 1]) as i64
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`; trailing zeros for rank deficiency.
    pub invariant_factors: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|&&d| d != 0).count()
    }

    /// Index of the row lattice in `Z^cols` when it has full rank.
    pub fn lattice_index(&self, full_rank: usize) -> Option<i64> {
        (self.rank() == full_rank).then(|| self.invariant_factors.iter().product())
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // smallest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d[(i, j)] != 0 && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let q = d[(i, t)].div_euclid(d[(t, t)]);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if d[(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_euclid(d[(t, t)]);
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if d[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t onto the diagonal
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..m {
                    if d[(i, t)] != 0 && d[(i, t)].abs() < d[(bi, bj)].abs() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..n {
                    if d[(t, j)] != 0 && d[(t, j)].abs() < d[(bi, bj)].abs() {
                        bi = t;
                        bj = j;
                    }
                }
                d.swap_rows(t, bi);
                u.swap_rows(t, bi);
                d.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            // divisibility of the trailing block
            let p = d[(t, t)];
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[(i, j)] % p != 0));
            match offender {
                Some(i) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let invariant_factors = (0..m.min(n)).map(|i| d[(i, i)]).collect();
    SmithForm { invariant_factors, left: u, right: v, diagonal: d }
}

/// Rank and (for full rank 3) index of the lattice spanned by `vs` in `Z^3`.
pub fn lattice_rank_and_index(vs: &[IntVec3]) -> (usize, Option<i64>) {
    if vs.is_empty() {
        return (0, None);
    }
    let s = smith_normal_form(&IntMatrix::from_vectors(vs));
    (s.rank(), s.lattice_index(3))
}
