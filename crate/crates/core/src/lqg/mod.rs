//! Labelled quotient graphs.
//!
//! A [`LabeledQuotientGraph`] is a finite multigraph whose edges carry
//! `Z^3` translation labels. The directed edge `(v, w, k)` joins the node of
//! `v` in cell `0` to the node of `w` in cell `k`; it is the same undirected
//! edge as `(w, v, -k)`. Edges are stored in a canonical orientation: the
//! smaller vertex index is the tail, and loops carry the lexicographically
//! nonnegative label of the pair `{k, -k}`.

mod basis;
mod parse;
mod structure;

pub use basis::{change_basis, gauge_shift, reduce_depth, DepthReduction};
pub use parse::{parse_lqg, ParsedLqg};
pub use structure::{
    component_structure, dimension_type, ComponentInfo, ComponentStructure, DimensionType,
    Multiplicity,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, IntMatrix};
use crate::vec3::IntVec3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedLabeledEdge {
    pub tail: usize,
    pub head: usize,
    pub label: IntVec3,
}

impl DirectedLabeledEdge {
    pub fn new(tail: usize, head: usize, label: IntVec3) -> Self {
        DirectedLabeledEdge { tail, head, label }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn reversed(&self) -> Self {
        DirectedLabeledEdge { tail: self.head, head: self.tail, label: -self.label }
    }

    pub fn canonical(&self) -> Self {
        if self.tail > self.head || (self.is_loop() && !self.label.is_lex_nonnegative()) {
            self.reversed()
        } else {
            *self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledQuotientGraph {
    names: Vec<String>,
    edges: Vec<DirectedLabeledEdge>,
}

impl LabeledQuotientGraph {
    /// Build a graph from arbitrary edge orientations.
    ///
    /// Repeated edges are allowed here so that divisible or otherwise
    /// improper label sets can be represented and diagnosed; the file parser
    /// rejects them.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = DirectedLabeledEdge>) -> Result<Self> {
        let names = (1..=vertex_count).map(|i| format!("v{i}")).collect();
        Self::with_names(names, edges)
    }

    pub fn with_names(
        names: Vec<String>,
        edges: impl IntoIterator<Item = DirectedLabeledEdge>,
    ) -> Result<Self> {
        let n = names.len();
        let mut out = Vec::new();
        for e in edges {
            if e.tail >= n {
                return Err(Error::UnknownVertex(e.tail));
            }
            if e.head >= n {
                return Err(Error::UnknownVertex(e.head));
            }
            if e.is_loop() && e.label.is_zero() {
                return Err(Error::DegenerateLoop(e.tail));
            }
            out.push(e.canonical());
        }
        Ok(LabeledQuotientGraph { names, edges: out })
    }

    /// Single-vertex graph with one loop per label.
    pub fn bouquet(labels: &[IntVec3]) -> Result<Self> {
        Self::new(1, labels.iter().map(|&l| DirectedLabeledEdge::new(0, 0, l)))
    }

    /// Two-vertex graph `H(0, m, 0)` with edges `v1 -> v2` carrying `labels`.
    pub fn bipartite_pair(labels: &[IntVec3]) -> Result<Self> {
        Self::new(2, labels.iter().map(|&l| DirectedLabeledEdge::new(0, 1, l)))
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[DirectedLabeledEdge] {
        &self.edges
    }

    pub fn labels(&self) -> impl Iterator<Item = IntVec3> + '_ {
        self.edges.iter().map(|e| e.label)
    }

    /// Sorted canonical edge list; equal iff the edge multisets agree.
    pub fn edge_multiset(&self) -> Vec<DirectedLabeledEdge> {
        let mut v = self.edges.clone();
        v.sort();
        v
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    /// Largest absolute label coordinate.
    pub fn depth(&self) -> i64 {
        self.edges.iter().map(|e| e.label.max_norm()).max().unwrap_or(0)
    }

    /// Replace every label by `f(label)` keeping endpoints.
    pub(crate) fn map_labels(&self, f: impl Fn(&DirectedLabeledEdge) -> IntVec3) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| DirectedLabeledEdge::new(e.tail, e.head, f(e)).canonical())
            .collect();
        LabeledQuotientGraph { names: self.names.clone(), edges }
    }

    /// Renumber vertices: vertex `i` becomes `perm[i]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Self> {
        assert_eq!(perm.len(), self.vertex_count());
        let mut names = vec![String::new(); perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            names[p] = self.names[i].clone();
        }
        Self::with_names(
            names,
            self.edges.iter().map(|e| DirectedLabeledEdge::new(perm[e.tail], perm[e.head], e.label)),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundViolation {
    TooManyLoops { vertex: usize, count: usize },
    TooManyLinks { tail: usize, head: usize, count: usize },
}

pub const MAX_LOOPS_DEPTH_ONE: usize = 7;
pub const MAX_LINKS_DEPTH_ONE: usize = 8;

/// Loop and link multiplicity bounds that every proper depth-1 net obeys.
pub fn check_multiplicity_bounds(g: &LabeledQuotientGraph) -> Result<Vec<BoundViolation>> {
    let depth = g.depth();
    if depth > 1 {
        return Err(Error::DepthTooLarge(depth));
    }
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in g.edges() {
        *counts.entry((e.tail, e.head)).or_default() += 1;
    }
    let violations = counts
        .into_iter()
        .filter_map(|((t, h), count)| {
            if t == h && count > MAX_LOOPS_DEPTH_ONE {
                Some(BoundViolation::TooManyLoops { vertex: t, count })
            } else if t != h && count > MAX_LINKS_DEPTH_ONE {
                Some(BoundViolation::TooManyLinks { tail: t, head: h, count })
            } else {
                None
            }
        })
        .collect();
    Ok(violations)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivisibilityReason {
    /// A label difference (or sum, for loops) of the form `n t`, `n >= 2`.
    DivisibleDifference(IntVec3),
    /// Two loop labels spanning a non-saturated rank-2 lattice with these Smith factors.
    NonPrimitiveSpan([i64; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Indivisibility {
    Indivisible,
    Divisible { first: usize, second: usize, reason: DivisibilityReason },
}

impl Indivisibility {
    pub fn is_indivisible(&self) -> bool {
        matches!(self, Indivisibility::Indivisible)
    }
}

fn non_primitive(v: IntVec3) -> bool {
    v.content() != 1
}

/// Necessary condition for a proper realization.
///
/// Parallel links must have primitive label differences; two loops at a
/// vertex must span a saturated rank-2 sublattice of `Z^3`.
pub fn is_indivisible(g: &LabeledQuotientGraph) -> Indivisibility {
    let edges = g.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = (edges[i], edges[j]);
            if (a.tail, a.head) != (b.tail, b.head) {
                continue;
            }
            let diff = a.label - b.label;
            if !a.is_loop() {
                if non_primitive(diff) {
                    return Indivisibility::Divisible {
                        first: i,
                        second: j,
                        reason: DivisibilityReason::DivisibleDifference(diff),
                    };
                }
                continue;
            }
            let sum = a.label + b.label;
            for v in [diff, sum] {
                if !v.is_zero() && non_primitive(v) {
                    return Indivisibility::Divisible {
                        first: i,
                        second: j,
                        reason: DivisibilityReason::DivisibleDifference(v),
                    };
                }
            }
            let snf = smith_normal_form(&IntMatrix::from_vectors(&[a.label, b.label]));
            let f = [snf.invariant_factors[0], snf.invariant_factors[1]];
            if f != [1, 1] {
                // coincident loops: report the doubled label
                let reason = if diff.is_zero() || sum.is_zero() {
                    DivisibilityReason::DivisibleDifference(a.label.scale(2))
                } else {
                    DivisibilityReason::NonPrimitiveSpan(f)
                };
                return Indivisibility::Divisible { first: i, second: j, reason };
            }
        }
    }
    Indivisibility::Indivisible
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64, z: i64) -> IntVec3 {
        IntVec3::new(x, y, z)
    }

    pub(crate) fn pcu() -> LabeledQuotientGraph {
        LabeledQuotientGraph::bouquet(&[v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)]).unwrap()
    }

    #[test]
    fn canonical_orientation() {
        let e = DirectedLabeledEdge::new(1, 0, v(1, 0, -1)).canonical();
        assert_eq!(e, DirectedLabeledEdge::new(0, 1, v(-1, 0, 1)));
        let l = DirectedLabeledEdge::new(0, 0, v(0, -1, 1)).canonical();
        assert_eq!(l.label, v(0, 1, -1));
    }

    #[test]
    fn depth_examples() {
        assert_eq!(pcu().depth(), 1);
        let g = LabeledQuotientGraph::bouquet(&[v(1, 0, 0), v(0, 0, 2)]).unwrap();
        assert_eq!(g.depth(), 2);
    }

    #[test]
    fn zero_loop_rejected() {
        assert!(matches!(
            LabeledQuotientGraph::bouquet(&[v(0, 0, 0)]),
            Err(Error::DegenerateLoop(0))
        ));
    }

    #[test]
    fn multiplicity_bounds() {
        // four-loop word passes
        let g = LabeledQuotientGraph::bouquet(&[v(0, 1, -1), v(1, 0, -1), v(1, -1, 0), v(1, 1, 1)]).unwrap();
        assert!(check_multiplicity_bounds(&g).unwrap().is_empty());
        // eight distinct loops on one vertex
        let eight = [
            v(1, 0, 0),
            v(0, 1, 0),
            v(0, 0, 1),
            v(0, 1, 1),
            v(1, 0, 1),
            v(1, 1, 0),
            v(1, 1, 1),
            v(1, -1, 1),
        ];
        let g = LabeledQuotientGraph::bouquet(&eight).unwrap();
        assert_eq!(
            check_multiplicity_bounds(&g).unwrap(),
            vec![BoundViolation::TooManyLoops { vertex: 0, count: 8 }]
        );
        // H(0,8,0): one link per parity class
        let links: Vec<IntVec3> = (0..8).map(|m| v(m & 1, (m >> 1) & 1, (m >> 2) & 1)).collect();
        let g = LabeledQuotientGraph::bipartite_pair(&links).unwrap();
        assert!(check_multiplicity_bounds(&g).unwrap().is_empty());
        let deep = LabeledQuotientGraph::bouquet(&[v(2, 0, 0)]).unwrap();
        assert!(matches!(check_multiplicity_bounds(&deep), Err(Error::DepthTooLarge(2))));
    }

    #[test]
    fn indivisibility_examples() {
        assert!(is_indivisible(&pcu()).is_indivisible());
        let g = LabeledQuotientGraph::bouquet(&[v(0, 0, 1), v(0, 0, -1)]).unwrap();
        match is_indivisible(&g) {
            Indivisibility::Divisible { reason, .. } => {
                assert_eq!(reason, DivisibilityReason::DivisibleDifference(v(0, 0, 2)))
            }
            other => panic!("{other:?}"),
        }
        let g = LabeledQuotientGraph::bipartite_pair(&[v(0, 0, 0), v(2, 0, 0)]).unwrap();
        assert!(!is_indivisible(&g).is_indivisible());
        // face diagonals f_x and g_x: sum (0,2,0)
        let g = LabeledQuotientGraph::bouquet(&[v(0, 1, 1), v(0, 1, -1)]).unwrap();
        assert!(!is_indivisible(&g).is_indivisible());
        // index-5 span with primitive sum and difference
        let g = LabeledQuotientGraph::bouquet(&[v(1, 0, 0), v(2, 5, 0)]).unwrap();
        assert_eq!(
            is_indivisible(&g),
            Indivisibility::Divisible {
                first: 0,
                second: 1,
                reason: DivisibilityReason::NonPrimitiveSpan([1, 5])
            }
        );
    }
}
