//! Gauge shifts, changes of periodicity basis, and depth reduction.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::vec3::{IntMat3, IntVec3};

use super::LabeledQuotientGraph;

/// Re-choose the representative of `vertex`: edges arriving at `vertex` gain
/// `t`, edges leaving it lose `t`, loops are unchanged.
///
/// The new graph describes the same net when the vertex position is moved by
/// `-t`.
pub fn gauge_shift(g: &LabeledQuotientGraph, vertex: usize, t: IntVec3) -> Result<LabeledQuotientGraph> {
    if vertex >= g.vertex_count() {
        return Err(Error::UnknownVertex(vertex));
    }
    Ok(g.map_labels(|e| {
        let mut k = e.label;
        if e.head == vertex {
            k += t;
        }
        if e.tail == vertex {
            k -= t;
        }
        k
    }))
}

/// Relabel every edge by `k -> z * k`.
pub fn change_basis(g: &LabeledQuotientGraph, z: &IntMat3) -> Result<LabeledQuotientGraph> {
    if !z.is_unimodular() {
        return Err(Error::NotUnimodular(z.det()));
    }
    Ok(g.map_labels(|e| *z * e.label))
}

#[derive(Clone, Debug)]
pub struct DepthReduction {
    pub graph: LabeledQuotientGraph,
    pub depth: i64,
    /// The unimodular matrix applied to the original labels.
    pub matrix: IntMat3,
}

fn depth_under(z: &IntMat3, labels: &[IntVec3]) -> i64 {
    labels.iter().map(|&k| (*z * k).max_norm()).max().unwrap_or(0)
}

/// Breadth-first search over products of elementary shears whose entries stay
/// within `search_bound`, keeping the relabelling of smallest depth.
///
/// Signed permutations never change depth, so only shears are explored.
/// Vertex gauges are left as given.
pub fn reduce_depth(g: &LabeledQuotientGraph, search_bound: i64) -> DepthReduction {
    let labels: Vec<IntVec3> = g.labels().collect();
    let floor = i64::from(labels.iter().any(|k| !k.is_zero()));
    let shears = IntMat3::elementary_shears();

    let mut best = (depth_under(&IntMat3::IDENTITY, &labels), IntMat3::IDENTITY);
    let mut seen = HashSet::from([IntMat3::IDENTITY]);
    let mut queue = VecDeque::from([IntMat3::IDENTITY]);
    while let Some(z) = queue.pop_front() {
        if best.0 <= floor {
            break;
        }
        for s in &shears {
            let next = *s * z;
            if next.max_abs_entry() > search_bound.max(1) || !seen.insert(next) {
                continue;
            }
            let d = depth_under(&next, &labels);
            if d < best.0 {
                best = (d, next);
            }
            queue.push_back(next);
        }
    }
    let (depth, matrix) = best;
    let graph = g.map_labels(|e| matrix * e.label);
    DepthReduction { graph, depth, matrix }
}
