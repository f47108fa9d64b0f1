//! Integer 3-vectors and 3x3 integer matrices.
//!
//! Edge labels, lattice vectors and discrete-torus points are all [`IntVec3`].
//! [`IntMat3`] acts on column vectors; [`IntMat3::signed_permutations`]
//! enumerates the 48-element point group of the primitive cubic lattice.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVec3(pub [i64; 3]);

impl IntVec3 {
    pub const ZERO: IntVec3 = IntVec3([0, 0, 0]);

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        IntVec3([x, y, z])
    }

    pub const fn axis(i: usize) -> Self {
        let mut v = [0; 3];
        v[i] = 1;
        IntVec3(v)
    }

    pub fn x(self) -> i64 {
        self.0[0]
    }
    pub fn y(self) -> i64 {
        self.0[1]
    }
    pub fn z(self) -> i64 {
        self.0[2]
    }

    pub fn is_zero(self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn dot(self, o: IntVec3) -> i64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn cross(self, o: IntVec3) -> IntVec3 {
        let [a, b, c] = self.0;
        let [d, e, f] = o.0;
        IntVec3([b * f - c * e, c * d - a * f, a * e - b * d])
    }

    /// Largest absolute coordinate.
    pub fn max_norm(self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// gcd of the three entries (0 for the zero vector).
    pub fn content(self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    /// A vector is primitive when its entries are coprime.
    pub fn is_primitive(self) -> bool {
        self.content() == 1
    }

    /// Representative of `{v, -v}` whose first nonzero entry is positive.
    pub fn sign_normalized(self) -> IntVec3 {
        if self.is_lex_nonnegative() {
            self
        } else {
            -self
        }
    }

    /// True when the first nonzero coordinate is positive, or the vector is zero.
    pub fn is_lex_nonnegative(self) -> bool {
        for c in self.0 {
            if c != 0 {
                return c > 0;
            }
        }
        true
    }

    /// Componentwise Euclidean remainder modulo `n`.
    pub fn rem_euclid(self, n: i64) -> IntVec3 {
        IntVec3(self.0.map(|c| c.rem_euclid(n)))
    }

    pub fn scale(self, k: i64) -> IntVec3 {
        IntVec3(self.0.map(|c| c * k))
    }
}

impl fmt::Debug for IntVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for IntVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Index<usize> for IntVec3 {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for IntVec3 {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

impl Add for IntVec3 {
    type Output = IntVec3;
    fn add(self, o: IntVec3) -> IntVec3 {
        IntVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for IntVec3 {
    fn add_assign(&mut self, o: IntVec3) {
        *self = *self + o;
    }
}

impl Sub for IntVec3 {
    type Output = IntVec3;
    fn sub(self, o: IntVec3) -> IntVec3 {
        IntVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl SubAssign for IntVec3 {
    fn sub_assign(&mut self, o: IntVec3) {
        *self = *self - o;
    }
}

impl Neg for IntVec3 {
    type Output = IntVec3;
    fn neg(self) -> IntVec3 {
        IntVec3(self.0.map(|c| -c))
    }
}

impl From<[i64; 3]> for IntVec3 {
    fn from(a: [i64; 3]) -> Self {
        IntVec3(a)
    }
}

/// Row-major 3x3 integer matrix acting on column vectors.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMat3(pub [[i64; 3]; 3]);

impl IntMat3 {
    pub const IDENTITY: IntMat3 = IntMat3([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    pub fn from_rows(rows: [IntVec3; 3]) -> Self {
        IntMat3([rows[0].0, rows[1].0, rows[2].0])
    }

    pub fn from_cols(cols: [IntVec3; 3]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn row(&self, i: usize) -> IntVec3 {
        IntVec3(self.0[i])
    }

    pub fn col(&self, j: usize) -> IntVec3 {
        IntVec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    pub fn transpose(&self) -> IntMat3 {
        let m = &self.0;
        IntMat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> i64 {
        self.row(0).dot(self.row(1).cross(self.row(2)))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    /// Adjugate; `self * adj = det * I`.
    pub fn adjugate(&self) -> IntMat3 {
        let c0 = self.row(1).cross(self.row(2));
        let c1 = self.row(2).cross(self.row(0));
        let c2 = self.row(0).cross(self.row(1));
        IntMat3::from_cols([c0, c1, c2])
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<IntMat3> {
        match self.det() {
            1 => Some(self.adjugate()),
            -1 => Some(self.adjugate().scale(-1)),
            _ => None,
        }
    }

    pub fn scale(&self, k: i64) -> IntMat3 {
        IntMat3(self.0.map(|r| r.map(|c| c * k)))
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.0.iter().flatten().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Elementary shear `I + sign * E_{row,col}` (`row != col`).
    pub fn shear(row: usize, col: usize, sign: i64) -> IntMat3 {
        debug_assert!(row != col);
        let mut m = IntMat3::IDENTITY;
        m.0[row][col] = sign;
        m
    }

    /// The twelve elementary shears `I ± E_ij`.
    pub fn elementary_shears() -> Vec<IntMat3> {
        let mut out = Vec::with_capacity(12);
        for r in 0..3 {
            for c in 0..3 {
                if r != c {
                    out.push(Self::shear(r, c, 1));
                    out.push(Self::shear(r, c, -1));
                }
            }
        }
        out
    }

    /// All 48 signed permutation matrices, identity first.
    pub fn signed_permutations() -> Vec<IntMat3> {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(48);
        for p in PERMS {
            for signs in 0..8u8 {
                let mut m = [[0i64; 3]; 3];
                for (r, &c) in p.iter().enumerate() {
                    m[r][c] = if signs & (1 << r) != 0 { -1 } else { 1 };
                }
                out.push(IntMat3(m));
            }
        }
        out
    }

    /// The 24 proper rotations of the cube.
    pub fn cube_rotations() -> Vec<IntMat3> {
        Self::signed_permutations()
            .into_iter()
            .filter(|m| m.det() == 1)
            .collect()
    }
}

impl Mul<IntVec3> for IntMat3 {
    type Output = IntVec3;
    fn mul(self, v: IntVec3) -> IntVec3 {
        IntVec3([self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v)])
    }
}

impl Mul for IntMat3 {
    type Output = IntMat3;
    fn mul(self, o: IntMat3) -> IntMat3 {
        let mut m = [[0i64; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.row(i).dot(o.col(j));
            }
        }
        IntMat3(m)
    }
}

impl fmt::Debug for IntMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}; {:?}; {:?}]", self.row(0), self.row(1), self.row(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_group_sizes() {
        let all = IntMat3::signed_permutations();
        assert_eq!(all.len(), 48);
        assert_eq!(all[0], IntMat3::IDENTITY);
        assert_eq!(IntMat3::cube_rotations().len(), 24);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 48);
        // closed under products
        for a in &all {
            for b in &all {
                assert!(all.contains(&(*a * *b)));
            }
        }
    }

    #[test]
    fn unimodular_inverse() {
        let m = IntMat3([[1, 2, 0], [0, 1, -1], [3, 0, 1]]);
        assert_eq!(m.det(), -5);
        assert!(m.inverse_unimodular().is_none());
        let s = IntMat3::shear(0, 2, -1) * IntMat3::shear(1, 0, 1);
        let inv = s.inverse_unimodular().unwrap();
        assert_eq!(s * inv, IntMat3::IDENTITY);
        assert_eq!(m * m.adjugate(), IntMat3::IDENTITY.scale(m.det()));
    }

    #[test]
    fn primitive_and_sign() {
        assert!(IntVec3::new(1, 1, 0).is_primitive());
        assert!(!IntVec3::new(0, 0, 2).is_primitive());
        assert!(!IntVec3::ZERO.is_primitive());
        assert_eq!(IntVec3::new(0, -1, 1).sign_normalized(), IntVec3::new(0, 1, -1));
    }
}
