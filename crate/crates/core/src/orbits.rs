//! n-grid patterns and their orbit counts.
//!
//! A pattern is a set of `n` points of the discrete torus `{0..n-1}^3` that
//! differ in every coordinate. Sorting by `x` leaves the `y` and `z`
//! coordinates as two permutations, so the pattern space has `(n!)^2`
//! elements and is indexed by `rank(y) * n! + rank(z)` (Lehmer ranks).
//!
//! Symmetries act by negating coordinates (`j -> n-1-j`, the image of
//! `x -> 1-x` on cell midpoints), permuting axes and then adding a shift
//! modulo `n`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::vec3::{IntMat3, IntVec3};

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lehmer rank of a permutation of `0..len`.
pub fn permutation_rank(perm: &[u8]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&q| q < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

pub fn permutation_unrank(n: usize, mut rank: usize) -> Vec<u8> {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<u8> = (0..n as u8).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pattern {
    n: usize,
    /// Sorted; the `i`-th point has `x = i`.
    points: Vec<[u8; 3]>,
}

impl Pattern {
    /// Validates coordinate-distinctness and range.
    pub fn from_points(n: usize, mut points: Vec<[u8; 3]>) -> Option<Pattern> {
        if points.len() != n || points.iter().flatten().any(|&c| c as usize >= n) {
            return None;
        }
        for axis in 0..3 {
            let mut seen = vec![false; n];
            for p in &points {
                if std::mem::replace(&mut seen[p[axis] as usize], true) {
                    return None;
                }
            }
        }
        points.sort_unstable();
        Some(Pattern { n, points })
    }

    pub fn from_index(n: usize, index: usize) -> Pattern {
        let f = factorial(n);
        let ys = permutation_unrank(n, index / f);
        let zs = permutation_unrank(n, index % f);
        let points = (0..n).map(|i| [i as u8, ys[i], zs[i]]).collect();
        Pattern { n, points }
    }

    pub fn index(&self) -> usize {
        let ys: Vec<u8> = self.points.iter().map(|p| p[1]).collect();
        let zs: Vec<u8> = self.points.iter().map(|p| p[2]).collect();
        permutation_rank(&ys) * factorial(self.n) + permutation_rank(&zs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[[u8; 3]] {
        &self.points
    }
}

/// All `(n!)^2` patterns in index order.
pub fn pattern_space(n: usize) -> impl Iterator<Item = Pattern> {
    let f = factorial(n);
    (0..f * f).map(move |i| Pattern::from_index(n, i))
}

/// A signed axis permutation followed by a shift on `{0..n-1}^3`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSymmetry {
    pub rotation: IntMat3,
    pub shift: IntVec3,
}

impl GridSymmetry {
    pub fn identity() -> Self {
        GridSymmetry { rotation: IntMat3::IDENTITY, shift: IntVec3::ZERO }
    }

    fn lanes(&self, n: usize) -> [(usize, bool, u8); 3] {
        [0, 1, 2].map(|r| {
            let row = self.rotation.row(r);
            let c = (0..3).find(|&c| row[c] != 0).expect("signed permutation");
            (c, row[c] < 0, self.shift[r].rem_euclid(n as i64) as u8)
        })
    }

    /// Image of one torus point.
    pub fn apply_point(&self, n: usize, p: [u8; 3]) -> [u8; 3] {
        let lanes = self.lanes(n);
        apply_lanes(&lanes, n as u8, p)
    }

    pub fn inverse(&self, n: usize) -> GridSymmetry {
        let rotation = self.rotation.transpose();
        GridSymmetry { rotation, shift: (-(rotation * self.shift)).rem_euclid(n as i64) }
    }

    /// `self` after `other`: `act(self.compose(other), p) = act(self, act(other, p))`.
    ///
    /// In coordinates centred at `(n-1)/2` the action is `u -> Q u + t`, so
    /// composites multiply rotations and carry `t_g + Q_g t_h`.
    pub fn compose(&self, other: &GridSymmetry, n: usize) -> GridSymmetry {
        let shift = (self.shift + self.rotation * other.shift).rem_euclid(n as i64);
        GridSymmetry { rotation: self.rotation * other.rotation, shift }
    }
}

fn apply_lanes(lanes: &[(usize, bool, u8); 3], n: u8, p: [u8; 3]) -> [u8; 3] {
    lanes.map(|(c, neg, t)| {
        let v = if neg { n - 1 - p[c] } else { p[c] };
        (v + t) % n
    })
}

pub fn act(g: &GridSymmetry, p: &Pattern) -> Pattern {
    let n = p.n;
    let lanes = g.lanes(n);
    let mut points: Vec<[u8; 3]> = p.points.iter().map(|&q| apply_lanes(&lanes, n as u8, q)).collect();
    points.sort_unstable();
    Pattern { n, points }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GridGroup {
    /// Translations `C_n^3`.
    Shifts,
    /// The 24 rotations of the cube, no translations.
    Rotations,
    /// Translations with the 24 rotations.
    ShiftsRotations,
    /// Translations with all 48 signed permutations.
    ShiftsPointGroup,
}

impl GridGroup {
    pub fn elements(self, n: usize) -> Vec<GridSymmetry> {
        let rotations = match self {
            GridGroup::Shifts => vec![IntMat3::IDENTITY],
            GridGroup::Rotations | GridGroup::ShiftsRotations => IntMat3::cube_rotations(),
            GridGroup::ShiftsPointGroup => IntMat3::signed_permutations(),
        };
        let shifts: Vec<IntVec3> = if self == GridGroup::Rotations {
            vec![IntVec3::ZERO]
        } else {
            let m = n as i64;
            (0..m * m * m).map(|i| IntVec3::new(i / (m * m), (i / m) % m, i % m)).collect()
        };
        rotations
            .iter()
            .flat_map(|&rotation| shifts.iter().map(move |&shift| GridSymmetry { rotation, shift }))
            .collect()
    }
}

/// Applies a fixed list of symmetries to pattern indices without allocation.
struct IndexAction {
    n: usize,
    fact: usize,
    lanes: Vec<[(usize, bool, u8); 3]>,
}

impl IndexAction {
    fn new(n: usize, elements: &[GridSymmetry]) -> Self {
        IndexAction { n, fact: factorial(n), lanes: elements.iter().map(|g| g.lanes(n)).collect() }
    }

    fn decode(&self, index: usize, buf: &mut [[u8; 3]; 8]) {
        let ys = permutation_unrank(self.n, index / self.fact);
        let zs = permutation_unrank(self.n, index % self.fact);
        for i in 0..self.n {
            buf[i] = [i as u8, ys[i], zs[i]];
        }
    }

    /// Index of the image of `points` under element `e`.
    fn image(&self, e: usize, points: &[[u8; 3]; 8]) -> usize {
        let n = self.n;
        let mut ys = [0u8; 8];
        let mut zs = [0u8; 8];
        for p in &points[..n] {
            let q = apply_lanes(&self.lanes[e], n as u8, *p);
            ys[q[0] as usize] = q[1];
            zs[q[0] as usize] = q[2];
        }
        permutation_rank(&ys[..n]) * self.fact + permutation_rank(&zs[..n])
    }
}

/// Orbit decomposition of the pattern space.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub n: usize,
    /// Minimum pattern index of each orbit, ascending.
    pub representatives: Vec<usize>,
    /// Orbit number of every pattern.
    pub labels: Vec<u32>,
}

/// Visits patterns in `order`, sweeping out the whole orbit of each
/// unvisited one; representatives are reported as orbit minima.
fn sweep(n: usize, group: GridGroup, order: impl Iterator<Item = usize>, want_labels: bool) -> (Vec<usize>, Vec<u32>) {
    assert!((1..=8).contains(&n), "pattern size {n} outside 1..=8");
    let elements = group.elements(n);
    let action = IndexAction::new(n, &elements);
    let total = factorial(n).pow(2);
    let mut visited = vec![0u64; total.div_ceil(64)];
    let mut labels = if want_labels { vec![u32::MAX; total] } else { Vec::new() };
    let mut reps = Vec::new();
    let mut buf = [[0u8; 3]; 8];
    for start in order {
        if visited[start / 64] >> (start % 64) & 1 == 1 {
            continue;
        }
        action.decode(start, &mut buf);
        let id = reps.len() as u32;
        let mut min = start;
        for e in 0..elements.len() {
            let img = action.image(e, &buf);
            visited[img / 64] |= 1 << (img % 64);
            if want_labels {
                labels[img] = id;
            }
            min = min.min(img);
        }
        reps.push(min);
    }
    (reps, labels)
}

pub fn orbit_partition(n: usize, group: GridGroup) -> OrbitPartition {
    let total = factorial(n).pow(2);
    let (representatives, labels) = sweep(n, group, 0..total, true);
    OrbitPartition { n, representatives, labels }
}

/// Orbit minima in ascending order.
pub fn orbit_representatives(n: usize, group: GridGroup) -> Vec<usize> {
    let total = factorial(n).pow(2);
    let mut reps = sweep(n, group, 0..total, false).0;
    reps.sort_unstable();
    reps
}

/// Orbit count by direct enumeration.
pub fn count_orbits(n: usize, group: GridGroup) -> usize {
    let total = factorial(n).pow(2);
    sweep(n, group, 0..total, false).0.len()
}

/// Orbit minima found when visiting patterns in an arbitrary order.
pub fn orbit_representatives_in_order(n: usize, group: GridGroup, order: &[usize]) -> Vec<usize> {
    let mut reps = sweep(n, group, order.iter().copied(), false).0;
    reps.sort_unstable();
    reps
}

/// Burnside count of shift orbits.
///
/// Only the identity and the diagonal-type shifts whose three coordinates all
/// have the same order `r | n` fix any pattern; there are `phi(r)^3` of them
/// and each fixes `prod_{j < n/r} (n - j r)^2` patterns.
pub fn alpha_closed_form(n: usize) -> BigUint {
    let big = |x: usize| BigUint::from(x);
    let mut sum: BigUint = (1..=n).map(big).product::<BigUint>().pow(2);
    for r in (2..=n).filter(|r| n.is_multiple_of(*r)) {
        let phi = (1..=r).filter(|k| k.gcd(&r) == 1).count();
        let fixed: BigUint = (0..n / r).map(|j| big(n - j * r).pow(2)).product();
        sum += big(phi).pow(3) * fixed;
    }
    let order = big(n).pow(3);
    debug_assert!((&sum % &order).is_zero());
    sum / order
}

/// Number of orbits of the 24 rotations on `n`-point patterns whose frame
/// node is pinned.
pub fn rho(n: usize) -> usize {
    count_orbits(n, GridGroup::Rotations)
}

pub fn alpha(n: usize) -> usize {
    count_orbits(n, GridGroup::Shifts)
}

/// Classes of n-grids: shift orbits merged under all 48 signed
/// permutations. Mirror images are identified; with the 24 rotations alone
/// the counts are larger from `n = 4` on (4, 13, 148 for `n = 4, 5, 6`).
pub fn beta(n: usize) -> usize {
    count_orbits(n, GridGroup::ShiftsPointGroup)
}

/// Images of point 0 under the stabiliser of `p` in the full group of
/// signed permutations with shifts; `p` is point-transitive when all `n`
/// points appear.
pub fn stabilizer_point_orbit(p: &Pattern) -> Vec<usize> {
    let n = p.n;
    let mut hit = vec![false; n];
    for g in GridGroup::ShiftsPointGroup.elements(n) {
        if act(&g, p) == *p {
            let img = g.apply_point(n, p.points[0]);
            let j = p.points.iter().position(|&q| q == img).expect("stabiliser maps p to itself");
            hit[j] = true;
        }
    }
    (0..n).filter(|&j| hit[j]).collect()
}

pub fn is_point_transitive(p: &Pattern) -> bool {
    stabilizer_point_orbit(p).len() == p.n
}

#[derive(Clone, Debug)]
pub struct TransitiveCount {
    pub beta_classes: usize,
    /// Orbit-minimum representatives of the point-transitive classes, ascending.
    pub transitive: Vec<Pattern>,
}

/// Classes counted by [`beta`] whose symmetry stabiliser acts transitively
/// on the points.
///
/// Stabilisers along an orbit are conjugate, so testing one representative
/// per class decides the class.
pub fn beta_t(n: usize) -> TransitiveCount {
    let reps = orbit_representatives(n, GridGroup::ShiftsPointGroup);
    let transitive = reps
        .par_iter()
        .map(|&i| Pattern::from_index(n, i))
        .filter(is_point_transitive)
        .collect();
    TransitiveCount { beta_classes: reps.len(), transitive }
}

/// Sum of every element's fixed-point count; Burnside gives the orbit
/// count as this divided by the group order. Used as a cross-check.
///
/// Fixed-point counts are constant on conjugacy classes, so one element per
/// class is evaluated and weighted by the class size.
pub fn burnside_fixed_total(n: usize, group: GridGroup) -> BigUint {
    let elements = group.elements(n);
    let classes = conjugacy_classes(n, group, &elements);
    let reps: Vec<GridSymmetry> = classes.iter().map(|&(i, _)| elements[i]).collect();
    let action = IndexAction::new(n, &reps);
    let total = factorial(n).pow(2);
    let mut buf = [[0u8; 3]; 8];
    let mut fixed = vec![0usize; reps.len()];
    for i in 0..total {
        action.decode(i, &mut buf);
        for (e, f) in fixed.iter_mut().enumerate() {
            if action.image(e, &buf) == i {
                *f += 1;
            }
        }
    }
    fixed
        .into_iter()
        .zip(&classes)
        .map(|(f, &(_, size))| BigUint::from(f) * size)
        .fold(BigUint::zero(), |a, b| a + b)
}

/// `(index of a representative, class size)` for every conjugacy class.
fn conjugacy_classes(n: usize, group: GridGroup, elements: &[GridSymmetry]) -> Vec<(usize, usize)> {
    let index: HashMap<GridSymmetry, usize> = elements.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    // the pure rotations and the unit shifts generate every group
    let mut gens: Vec<GridSymmetry> = elements.iter().filter(|g| g.shift.is_zero()).copied().collect();
    if group != GridGroup::Rotations {
        gens.extend((0..3).map(|i| GridSymmetry { rotation: IntMat3::IDENTITY, shift: IntVec3::axis(i) }));
    }
    let mut seen = vec![false; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(h) = stack.pop() {
            size += 1;
            for g in &gens {
                let c = g.compose(&elements[h], n).compose(&g.inverse(n), n);
                let j = index[&c];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        classes.push((start, size));
    }
    classes
}
