//! Connected components of the covering net.
//!
//! Each component of the quotient multigraph lifts to a family of translated
//! copies in the periodic net. Its voltage lattice (the labels of closed
//! walks) decides the periodicity rank of one copy, and for rank 3 the index
//! of the lattice counts how many disjoint copies there are.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::snf::lattice_rank_and_index;
use crate::vec3::IntVec3;

use super::LabeledQuotientGraph;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Multiplicity {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub vertices: Vec<usize>,
    pub rank: usize,
    pub multiplicity: Multiplicity,
    /// Cycle labels generating the voltage lattice.
    pub generators: Vec<IntVec3>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStructure {
    pub components: Vec<ComponentInfo>,
}

impl ComponentStructure {
    /// The covering net is connected.
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1 && self.components[0].multiplicity == Multiplicity::Finite(1)
    }

    /// Total number of net components per unit of translation, if finite.
    pub fn total_multiplicity(&self) -> Multiplicity {
        let mut total = 0;
        for c in &self.components {
            match c.multiplicity {
                Multiplicity::Finite(n) => total += n,
                Multiplicity::Infinite => return Multiplicity::Infinite,
            }
        }
        Multiplicity::Finite(total)
    }
}

/// Spanning-tree potentials per component; `potential[v]` is the cell of the
/// representative of `v` reached from the component root.
pub(crate) fn spanning_potentials(g: &LabeledQuotientGraph) -> (Vec<usize>, Vec<IntVec3>, Vec<Vec<usize>>) {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, IntVec3)>> = vec![Vec::new(); n];
    for e in g.edges() {
        adj[e.tail].push((e.head, e.label));
        if !e.is_loop() {
            adj[e.head].push((e.tail, -e.label));
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut pot = vec![IntVec3::ZERO; n];
    let mut members = Vec::new();
    for root in 0..n {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut verts = vec![root];
        comp[root] = id;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, k) in &adj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    pot[w] = pot[u] + k;
                    verts.push(w);
                    queue.push_back(w);
                }
            }
        }
        verts.sort_unstable();
        members.push(verts);
    }
    (comp, pot, members)
}

pub fn component_structure(g: &LabeledQuotientGraph) -> ComponentStructure {
    let (comp, pot, members) = spanning_potentials(g);
    let mut gens: Vec<Vec<IntVec3>> = vec![Vec::new(); members.len()];
    for e in g.edges() {
        let cycle = pot[e.tail] + e.label - pot[e.head];
        if !cycle.is_zero() {
            gens[comp[e.tail]].push(cycle);
        }
    }
    let components = members
        .into_iter()
        .zip(gens)
        .map(|(vertices, generators)| {
            let (rank, index) = lattice_rank_and_index(&generators);
            let multiplicity = match index {
                Some(i) => Multiplicity::Finite(i),
                None => Multiplicity::Infinite,
            };
            ComponentInfo { vertices, rank, multiplicity, generators }
        })
        .collect();
    ComponentStructure { components }
}

/// `{d'; d_1, ..., d_s}` with the distinct component ranks in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionType {
    /// Periodicity rank of the whole net. An LQG always describes a net
    /// invariant under all of `Z^3`, so this is 3.
    pub ambient: usize,
    pub component_ranks: Vec<usize>,
    /// Rank of the lattice spanned by every component's cycle labels.
    /// Below 3 the translations in the complement move whole components
    /// onto disjoint copies; reported so callers can flag such inputs.
    pub voltage_span_rank: usize,
}

impl DimensionType {
    pub fn span_deficient(&self) -> bool {
        self.voltage_span_rank < self.ambient
    }
}

impl fmt::Display for DimensionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.component_ranks.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{};{}}}", self.ambient, ranks.join(","))
    }
}

pub fn dimension_type(g: &LabeledQuotientGraph) -> DimensionType {
    let cs = component_structure(g);
    let mut ranks: Vec<usize> = cs.components.iter().map(|c| c.rank).collect();
    ranks.sort_unstable_by(|a, b| b.cmp(a));
    ranks.dedup();
    let all: Vec<IntVec3> = cs.components.iter().flat_map(|c| c.generators.iter().copied()).collect();
    let (voltage_span_rank, _) = lattice_rank_and_index(&all);
    DimensionType { ambient: 3, component_ranks: ranks, voltage_span_rank }
}
