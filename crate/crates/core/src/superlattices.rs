//! Translation-transitive n-grids from index-n superlattices of the integer lattice.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{is_proper, ModelNet};
use crate::lqg::{DirectedLabeledEdge, LabeledQuotientGraph};
use crate::orbits::Pattern;
use crate::rational::Rational3;
use crate::vec3::{IntMat3, IntVec3};

/// Lower triangular `[[p1,0,0],[q1,p2,0],[r1,q2,p3]]` with
/// `0 <= q1 < p2`, `0 <= q2 < p3`, `0 <= r1 < p3`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HnfMatrix {
    pub p1: i64,
    pub p2: i64,
    pub p3: i64,
    pub q1: i64,
    pub q2: i64,
    pub r1: i64,
}

impl HnfMatrix {
    pub fn index(&self) -> i64 {
        self.p1 * self.p2 * self.p3
    }

    pub fn matrix(&self) -> IntMat3 {
        IntMat3([[self.p1, 0, 0], [self.q1, self.p2, 0], [self.r1, self.q2, self.p3]])
    }

    pub fn is_valid(&self) -> bool {
        self.p1 >= 1
            && self.p2 >= 1
            && self.p3 >= 1
            && (0..self.p2).contains(&self.q1)
            && (0..self.p3).contains(&self.q2)
            && (0..self.p3).contains(&self.r1)
    }
}

pub fn enumerate_hnf(n: i64) -> Vec<HnfMatrix> {
    let mut out = Vec::new();
    for p1 in (1..=n).filter(|d| n % d == 0) {
        let rest = n / p1;
        for p2 in (1..=rest).filter(|d| rest % d == 0) {
            let p3 = rest / p2;
            for q1 in 0..p2 {
                for q2 in 0..p3 {
                    for r1 in 0..p3 {
                        out.push(HnfMatrix { p1, p2, p3, q1, q2, r1 });
                    }
                }
            }
        }
    }
    out
}

/// Coset representatives of a superlattice modulo the integer lattice,
/// stored scaled by `n` as residues in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Superlattice {
    n: i64,
    scaled: Vec<IntVec3>,
}

impl Superlattice {
    /// Subgroup of `(1/n)Z^3 / Z^3` generated by `gens` (given scaled by `n`).
    pub fn generated(n: i64, gens: &[IntVec3]) -> Superlattice {
        let mut set = BTreeSet::from([IntVec3::ZERO]);
        let mut frontier = vec![IntVec3::ZERO];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = (x + g).rem_euclid(n);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Superlattice { n, scaled: set.into_iter().collect() }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Number of cosets.
    pub fn order(&self) -> usize {
        self.scaled.len()
    }

    pub fn scaled(&self) -> &[IntVec3] {
        &self.scaled
    }

    pub fn representatives(&self) -> Vec<Rational3> {
        self.scaled.iter().map(|v| Rational3::from_fracs(v.0.map(|c| (c, self.n)))).collect()
    }

    /// Image under a point-group element, reduced mod 1.
    pub fn transformed(&self, q: &IntMat3) -> Superlattice {
        let mut scaled: Vec<IntVec3> = self.scaled.iter().map(|&v| (*q * v).rem_euclid(self.n)).collect();
        scaled.sort();
        Superlattice { n: self.n, scaled }
    }

    /// Points of the grid pattern on the `n x n x n` discrete torus.
    pub fn to_pattern(&self) -> Option<Pattern> {
        let pts = self.scaled.iter().map(|v| v.0.map(|c| c as u8)).collect();
        Pattern::from_points(self.n as usize, pts)
    }

    /// The n-grid: one node per coset with the three axis loops.
    pub fn model_net(&self) -> Result<ModelNet> {
        let edges = (0..self.order())
            .flat_map(|v| (0..3).map(move |i| DirectedLabeledEdge::new(v, v, IntVec3::axis(i))));
        ModelNet::new(LabeledQuotientGraph::new(self.order(), edges)?, self.representatives())
    }
}

/// The superlattice spanned by the rows of `L^{-1}`.
pub fn coset_representatives(l: &HnfMatrix) -> Superlattice {
    let n = l.index();
    // n * L^{-1} = (n / det) * adj(L), and det = n
    let scaled = l.matrix().adjugate();
    Superlattice::generated(n, &[scaled.row(0), scaled.row(1), scaled.row(2)])
}

/// Two axis lines of the grid meet exactly when two representatives agree
/// in some coordinate.
pub fn is_proper_grid(s: &Superlattice) -> bool {
    s.scaled.iter().filter(|v| !v.is_zero()).all(|v| v.0.iter().all(|&c| c != 0))
}

/// Cross-check of [`is_proper_grid`] against the exact segment test.
pub fn grid_is_proper_geometrically(s: &Superlattice) -> Result<bool> {
    Ok(is_proper(&s.model_net()?))
}

/// Canonical member of the point-group orbit.
pub fn canonical_superlattice(s: &Superlattice) -> Superlattice {
    IntMat3::signed_permutations().iter().map(|q| s.transformed(q)).min().expect("nonempty group")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TranslationTransitiveCount {
    pub n: i64,
    pub hnf_count: usize,
    pub proper_count: usize,
    /// One canonical superlattice per point-group class.
    pub classes: Vec<Superlattice>,
}

impl TranslationTransitiveCount {
    pub fn beta_tt(&self) -> usize {
        self.classes.len()
    }
}

pub fn beta_tt(n: i64) -> TranslationTransitiveCount {
    let hnfs = enumerate_hnf(n);
    let proper: Vec<Superlattice> = hnfs.iter().map(coset_representatives).filter(is_proper_grid).collect();
    let mut classes: BTreeMap<Superlattice, usize> = BTreeMap::new();
    for s in &proper {
        *classes.entry(canonical_superlattice(s)).or_default() += 1;
    }
    TranslationTransitiveCount {
        n,
        hnf_count: hnfs.len(),
        proper_count: proper.len(),
        classes: classes.into_keys().collect(),
    }
}
