//! Exact geometry of model nets.
//!
//! A [`ModelNet`] places each quotient vertex at a rational point of the unit
//! cell; the edge `(v, w, k)` becomes the segment from `p(v)` to `p(w) + k`
//! and is repeated by every integer translation. All decisions are made on
//! integer coordinates obtained by clearing denominators.

mod knot;

pub use knot::{export_knot, import_knot_json, linear_graph_knot, GraphKnot, KnotEdge, KnotFormat};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lqg::LabeledQuotientGraph;
use crate::rational::Rational3;
use crate::vec3::IntVec3;

/// Closed straight segment between two distinct points.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[Rational3; 2]", into = "[Rational3; 2]")]
pub struct Segment {
    pub a: Rational3,
    pub b: Rational3,
}

impl Segment {
    pub fn new(a: Rational3, b: Rational3) -> Self {
        Segment { a, b }
    }

    pub fn vector(&self) -> Rational3 {
        self.b - self.a
    }

    pub fn translated(&self, k: IntVec3) -> Segment {
        Segment { a: self.a + k, b: self.b + k }
    }
}

impl From<[Rational3; 2]> for Segment {
    fn from([a, b]: [Rational3; 2]) -> Self {
        Segment { a, b }
    }
}

impl From<Segment> for [Rational3; 2] {
    fn from(s: Segment) -> Self {
        [s.a, s.b]
    }
}

type P3 = [i128; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: P3, b: P3) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn widen(v: IntVec3) -> P3 {
    v.0.map(i128::from)
}

/// Essential disjointness on integer endpoints: the closed segments `[a0,a1]`
/// and `[b0,b1]` are disjoint or meet only in a point that is an endpoint of both.
pub(crate) fn essentially_disjoint_int(a0: P3, a1: P3, b0: P3, b1: P3) -> bool {
    let d1 = sub(a1, a0);
    let d2 = sub(b1, b0);
    let r = sub(b0, a0);
    let n = cross(d1, d2);
    if n != [0, 0, 0] {
        if dot(r, n) != 0 {
            return true;
        }
        // coplanar, non-parallel: a0 + s d1 = b0 + t d2 with s = sn/nn, t = tn/nn
        let nn = dot(n, n);
        let sn = dot(cross(r, d2), n);
        let tn = dot(cross(r, d1), n);
        if sn < 0 || sn > nn || tn < 0 || tn > nn {
            return true;
        }
        let s_end = sn == 0 || sn == nn;
        let t_end = tn == 0 || tn == nn;
        return s_end && t_end;
    }
    if cross(r, d1) != [0, 0, 0] {
        return true;
    }
    // collinear: compare projections onto d1
    let len = dot(d1, d1);
    let p = dot(r, d1);
    let q = dot(sub(b1, a0), d1);
    let lo = p.min(q).max(0);
    let hi = p.max(q).min(len);
    lo >= hi
}

/// Point `x` lies on the closed segment `[a, b]`.
fn on_segment_int(x: P3, a: P3, b: P3) -> bool {
    let d = sub(b, a);
    let r = sub(x, a);
    cross(r, d) == [0, 0, 0] && (0..=dot(d, d)).contains(&dot(r, d))
}

pub fn segments_essentially_disjoint(s1: &Segment, s2: &Segment) -> bool {
    let pts = [s1.a, s1.b, s2.a, s2.b];
    let d = pts.iter().fold(1i64, |l, p| num_integer::lcm(l, p.denominator_lcm()));
    let [a0, a1, b0, b1] = pts.map(|p| widen(p.scaled(d)));
    essentially_disjoint_int(a0, a1, b0, b1)
}

/// A quotient graph with rational node positions in `[0,1)^3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelNet {
    pub graph: LabeledQuotientGraph,
    pub positions: Vec<Rational3>,
}

impl ModelNet {
    pub fn new(graph: LabeledQuotientGraph, positions: Vec<Rational3>) -> Result<Self> {
        if positions.len() != graph.vertex_count() {
            return Err(Error::PositionCount { expected: graph.vertex_count(), got: positions.len() });
        }
        if let Some(p) = positions.iter().find(|p| !p.in_unit_cube()) {
            return Err(Error::PositionOutsideUnitCell(p.to_string()));
        }
        Ok(ModelNet { graph, positions })
    }

    /// Single node at the origin with one loop per label.
    pub fn lattice(labels: &[IntVec3]) -> Result<Self> {
        Self::new(LabeledQuotientGraph::bouquet(labels)?, vec![Rational3::zero()])
    }

    /// Segment of motif edge `i` with its tail in cell `0`.
    pub fn edge_segment(&self, i: usize) -> Segment {
        let e = self.graph.edges()[i];
        Segment::new(self.positions[e.tail], self.positions[e.head] + e.label)
    }

    /// Same net with every position moved by `shift` and wrapped back into
    /// the unit cell (labels are adjusted to keep each edge's geometry).
    pub fn translated(&self, shift: Rational3) -> ModelNet {
        let moved: Vec<Rational3> = self.positions.iter().map(|&p| p + shift).collect();
        let cells: Vec<IntVec3> = moved.iter().map(|p| p.floor()).collect();
        let graph = self.graph.map_labels(|e| e.label + cells[e.head] - cells[e.tail]);
        ModelNet { graph, positions: moved.iter().map(|p| p.wrap()).collect() }
    }

    fn scaled(&self) -> ScaledNet {
        let d = self.positions.iter().fold(1i64, |l, p| num_integer::lcm(l, p.denominator_lcm()));
        let nodes: Vec<P3> = self.positions.iter().map(|p| widen(p.scaled(d))).collect();
        let edges = self
            .graph
            .edges()
            .iter()
            .map(|e| {
                let a = nodes[e.tail];
                let h = nodes[e.head];
                let k = widen(e.label.scale(d));
                (a, [h[0] + k[0], h[1] + k[1], h[2] + k[2]])
            })
            .collect();
        ScaledNet { d: d as i128, nodes, edges }
    }
}

struct ScaledNet {
    d: i128,
    nodes: Vec<P3>,
    edges: Vec<(P3, P3)>,
}

fn bbox(s: &(P3, P3)) -> (P3, P3) {
    let lo = [0, 1, 2].map(|i| s.0[i].min(s.1[i]));
    let hi = [0, 1, 2].map(|i| s.0[i].max(s.1[i]));
    (lo, hi)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// Integer translations `k` (within `|k_i| <= bound`) for which the box of
/// `b + k` can meet the box of `a`.
fn candidate_shifts(a: &(P3, P3), b: &(P3, P3), d: i128, bound: i128) -> [(i128, i128); 3] {
    let (alo, ahi) = bbox(a);
    let (blo, bhi) = bbox(b);
    [0, 1, 2].map(|i| {
        let lo = ceil_div(alo[i] - bhi[i], d).max(-bound);
        let hi = (ahi[i] - blo[i]).div_euclid(d).min(bound);
        (lo, hi)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Impropriety {
    /// Two vertices share a position.
    NodeCoincidence { first: usize, second: usize },
    /// Edge `first` (tail in cell 0) and edge `second` translated by `shift`
    /// meet other than at a common endpoint.
    EdgeCrossing { first: usize, second: usize, shift: IntVec3 },
    /// The node of `vertex` in `cell` lies on edge `edge` (tail in cell 0).
    NodeOnEdge { vertex: usize, cell: IntVec3, edge: usize },
}

impl fmt::Display for Impropriety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Impropriety::NodeCoincidence { first, second } => {
                write!(f, "nodes {first} and {second} coincide")
            }
            Impropriety::EdgeCrossing { first, second, shift } => {
                write!(f, "edge {first} meets edge {second} translated by {shift}")
            }
            Impropriety::NodeOnEdge { vertex, cell, edge } => {
                write!(f, "node {vertex} in cell {cell} lies on edge {edge}")
            }
        }
    }
}

/// First obstruction to properness, or `None` for a proper net.
///
/// Node coincidences are reported before any edge test. Edge pairs
/// `(e_i, e_j + k)` are scanned for `i <= j` and `|k_l| <= 2 depth + 1`,
/// pruned by bounding boxes.
pub fn find_impropriety(m: &ModelNet) -> Option<Impropriety> {
    let n = m.graph.vertex_count();
    for v in 0..n {
        for w in v + 1..n {
            if m.positions[v] == m.positions[w] {
                return Some(Impropriety::NodeCoincidence { first: v, second: w });
            }
        }
    }
    let s = m.scaled();
    let bound = i128::from(2 * m.graph.depth() + 1);
    let edges = &s.edges;
    for i in 0..edges.len() {
        for j in i..edges.len() {
            let [(x0, x1), (y0, y1), (z0, z1)] = candidate_shifts(&edges[i], &edges[j], s.d, bound);
            for kx in x0..=x1 {
                for ky in y0..=y1 {
                    for kz in z0..=z1 {
                        if i == j && kx == 0 && ky == 0 && kz == 0 {
                            continue;
                        }
                        let t = [kx * s.d, ky * s.d, kz * s.d];
                        let (b0, b1) = edges[j];
                        let b0 = [b0[0] + t[0], b0[1] + t[1], b0[2] + t[2]];
                        let b1 = [b1[0] + t[0], b1[1] + t[1], b1[2] + t[2]];
                        if !essentially_disjoint_int(edges[i].0, edges[i].1, b0, b1) {
                            let shift = IntVec3::new(kx as i64, ky as i64, kz as i64);
                            return Some(Impropriety::EdgeCrossing { first: i, second: j, shift });
                        }
                    }
                }
            }
        }
    }
    // nodes with no incident edge can still sit on an edge
    for v in (0..n).filter(|&v| m.graph.degree(v) == 0) {
        let node = (s.nodes[v], s.nodes[v]);
        for (ei, e) in edges.iter().enumerate() {
            let [(x0, x1), (y0, y1), (z0, z1)] = candidate_shifts(e, &node, s.d, bound);
            for kx in x0..=x1 {
                for ky in y0..=y1 {
                    for kz in z0..=z1 {
                        let p = s.nodes[v];
                        let x = [p[0] + kx * s.d, p[1] + ky * s.d, p[2] + kz * s.d];
                        if on_segment_int(x, e.0, e.1) {
                            let cell = IntVec3::new(kx as i64, ky as i64, kz as i64);
                            return Some(Impropriety::NodeOnEdge { vertex: v, cell, edge: ei });
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_proper(m: &ModelNet) -> bool {
    find_impropriety(m).is_none()
}

/// Inclusive box of cells `lo..=hi`; empty when any `lo_i > hi_i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CellWindow {
    pub lo: IntVec3,
    pub hi: IntVec3,
}

impl CellWindow {
    pub fn new(lo: IntVec3, hi: IntVec3) -> Self {
        CellWindow { lo, hi }
    }

    /// The cube `-r..=r` in every axis.
    pub fn centered(r: i64) -> Self {
        CellWindow { lo: IntVec3::new(-r, -r, -r), hi: IntVec3::new(r, r, r) }
    }

    pub fn cells(&self) -> impl Iterator<Item = IntVec3> + '_ {
        let (lo, hi) = (self.lo, self.hi);
        (lo.x()..=hi.x()).flat_map(move |x| {
            (lo.y()..=hi.y()).flat_map(move |y| (lo.z()..=hi.z()).map(move |z| IntVec3::new(x, y, z)))
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Fragment {
    /// `(vertex, cell, position)`
    pub nodes: Vec<(usize, IntVec3, Rational3)>,
    /// `(edge, tail cell, segment)`
    pub segments: Vec<(usize, IntVec3, Segment)>,
}

/// Every node translate and every edge translate whose tail cell lies in `window`.
pub fn generate_fragment(m: &ModelNet, window: &CellWindow) -> Fragment {
    let mut f = Fragment::default();
    for cell in window.cells() {
        for (v, p) in m.positions.iter().enumerate() {
            f.nodes.push((v, cell, *p + cell));
        }
        for i in 0..m.graph.edges().len() {
            f.segments.push((i, cell, m.edge_segment(i).translated(cell)));
        }
    }
    f
}

/// All-pairs properness check of a finite fragment; the brute-force oracle
/// for [`is_proper`].
pub fn fragment_is_proper(f: &Fragment) -> bool {
    for (i, a) in f.nodes.iter().enumerate() {
        for b in &f.nodes[i + 1..] {
            if a.2 == b.2 {
                return false;
            }
        }
    }
    for (i, a) in f.segments.iter().enumerate() {
        for b in &f.segments[i + 1..] {
            if !segments_essentially_disjoint(&a.2, &b.2) {
                return false;
            }
        }
    }
    true
}
