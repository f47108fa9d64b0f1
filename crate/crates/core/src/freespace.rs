//! Sampled configuration space of one mobile node.
//!
//! Every other node is fixed; the mobile node is placed at each cell centre
//! of an `R x R x R` grid over `[0,1)^3` and the resulting net is tested
//! exactly for properness. Two neighbouring admissible cells are joined when
//! the centre of their shared face is admissible as well, which catches the
//! zero-thickness walls that cell centres never sample.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_proper, ModelNet};
use crate::lqg::LabeledQuotientGraph;
use crate::rational::{Rational, Rational3};

/// Whether cells on opposite faces of the cube are adjacent.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjacency {
    /// Positions form a subset of the half-open cube; crossing a face
    /// changes the labelled quotient graph, so faces do not join.
    #[default]
    Cube,
    Torus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeRegionScan {
    pub resolution: usize,
    pub mobile: usize,
    /// Indexed by `(i * R + j) * R + k` for the centre `((i,j,k) + 1/2) / R`.
    pub admissible: Vec<bool>,
    /// Per cell and axis: the centre of the face towards the next cell along
    /// that axis is admissible. On the last layer this face lies at
    /// coordinate 0 of the next period.
    pub faces: Vec<[bool; 3]>,
    /// The mobile node has no link to another node, so moving it only
    /// translates its own component.
    pub degenerate: bool,
}

impl FreeRegionScan {
    pub fn index(&self, cell: [usize; 3]) -> usize {
        (cell[0] * self.resolution + cell[1]) * self.resolution + cell[2]
    }

    pub fn cell(&self, index: usize) -> [usize; 3] {
        let r = self.resolution;
        [index / (r * r), index / r % r, index % r]
    }

    pub fn centre(&self, cell: [usize; 3]) -> Rational3 {
        let r = self.resolution as i64;
        Rational3::from_fracs(cell.map(|c| (2 * c as i64 + 1, 2 * r)))
    }

    /// Centre of the face between `cell` and its successor along `axis`.
    pub fn face_centre(&self, cell: [usize; 3], axis: usize) -> Rational3 {
        let r = self.resolution as i64;
        let mut p = self.centre(cell);
        let next = (cell[axis] as i64 + 1) % r;
        p.0[axis] = Rational::new(next, r);
        p
    }

    fn successor(&self, cell: [usize; 3], axis: usize) -> [usize; 3] {
        let mut n = cell;
        n[axis] = (cell[axis] + 1) % self.resolution;
        n
    }

    pub fn admissible_count(&self) -> usize {
        self.admissible.iter().filter(|a| **a).count()
    }

    /// Cell containing `p`.
    pub fn cell_of(&self, p: &Rational3) -> Option<[usize; 3]> {
        if !p.in_unit_cube() {
            return None;
        }
        let r = Rational::from_integer(self.resolution as i64);
        Some(p.0.map(|c| (c * r).floor().to_integer() as usize))
    }
}

fn has_link(g: &LabeledQuotientGraph, v: usize) -> bool {
    g.edges().iter().any(|e| !e.is_loop() && (e.tail == v || e.head == v))
}

/// Test the mobile node at every cell centre.
///
/// `positions` holds one entry per vertex; the mobile entry is ignored.
pub fn scan_free_region(
    g: &LabeledQuotientGraph,
    positions: &[Option<Rational3>],
    mobile: usize,
    resolution: usize,
) -> Result<FreeRegionScan> {
    if mobile >= g.vertex_count() {
        return Err(Error::UnknownVertex(mobile));
    }
    if positions.len() != g.vertex_count() {
        return Err(Error::PositionCount { expected: g.vertex_count(), got: positions.len() });
    }
    if g.depth() > 1 {
        return Err(Error::DepthTooLarge(g.depth()));
    }
    let mut fixed = Vec::with_capacity(positions.len());
    for (v, p) in positions.iter().enumerate() {
        match p {
            _ if v == mobile => fixed.push(Rational3::zero()),
            Some(p) if p.in_unit_cube() => fixed.push(*p),
            Some(p) => return Err(Error::PositionOutsideUnitCell(p.to_string())),
            None => return Err(Error::MissingPosition(v)),
        }
    }
    let mut scan = FreeRegionScan {
        resolution,
        mobile,
        admissible: Vec::new(),
        faces: Vec::new(),
        degenerate: !has_link(g, mobile),
    };
    let proper_at = |p: Rational3| {
        let mut pos = fixed.clone();
        pos[mobile] = p;
        is_proper(&ModelNet { graph: g.clone(), positions: pos })
    };
    let cells = resolution * resolution * resolution;
    scan.admissible = (0..cells).into_par_iter().map(|i| proper_at(scan.centre(scan.cell(i)))).collect();
    scan.faces = (0..cells)
        .into_par_iter()
        .map(|i| {
            let c = scan.cell(i);
            [0, 1, 2].map(|axis| {
                scan.admissible[i]
                    && scan.admissible[scan.index(scan.successor(c, axis))]
                    && proper_at(scan.face_centre(c, axis))
            })
        })
        .collect();
    Ok(scan)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Components {
    pub adjacency: Adjacency,
    /// Component id per cell, `None` for inadmissible cells.
    pub labels: Vec<Option<usize>>,
    /// Lexicographically smallest cell of each component, in id order.
    pub representatives: Vec<[usize; 3]>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

pub fn count_components(scan: &FreeRegionScan, adjacency: Adjacency) -> Components {
    let r = scan.resolution;
    let mut labels = vec![None; scan.admissible.len()];
    let mut representatives = Vec::new();
    // cells are visited in index order, which is lexicographic in (i, j, k)
    for start in 0..scan.admissible.len() {
        if !scan.admissible[start] || labels[start].is_some() {
            continue;
        }
        let id = representatives.len();
        representatives.push(scan.cell(start));
        labels[start] = Some(id);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let c = scan.cell(i);
            let mut next = Vec::with_capacity(6);
            for axis in 0..3 {
                let wraps_up = c[axis] + 1 == r;
                if scan.faces[i][axis] && (adjacency == Adjacency::Torus || !wraps_up) {
                    next.push(scan.successor(c, axis));
                }
                let mut p = c;
                p[axis] = (c[axis] + r - 1) % r;
                if scan.faces[scan.index(p)][axis] && (adjacency == Adjacency::Torus || c[axis] > 0) {
                    next.push(p);
                }
            }
            for n in next {
                let j = scan.index(n);
                if labels[j].is_none() {
                    labels[j] = Some(id);
                    queue.push_back(j);
                }
            }
        }
    }
    Components { adjacency, labels, representatives }
}

/// Component containing `p`.
pub fn classify_representative(scan: &FreeRegionScan, components: &Components, p: &Rational3) -> Result<usize> {
    scan.cell_of(p)
        .and_then(|c| components.labels[scan.index(c)])
        .ok_or_else(|| Error::InadmissiblePoint(p.to_string()))
}

fn run_lengths<T: PartialEq + Copy>(xs: &[T]) -> Vec<(T, usize)> {
    let mut out: Vec<(T, usize)> = Vec::new();
    for &x in xs {
        match out.last_mut() {
            Some((y, n)) if *y == x => *n += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// Run-length encoded grid for export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridExport {
    pub resolution: usize,
    pub mobile: usize,
    pub adjacency: Adjacency,
    pub degenerate: bool,
    pub admissible: Vec<(bool, usize)>,
    /// Component ids with `-1` for inadmissible cells.
    pub labels: Vec<(i64, usize)>,
    pub representatives: Vec<Rational3>,
}

pub fn export_grid(scan: &FreeRegionScan, components: &Components) -> GridExport {
    let ids: Vec<i64> = components.labels.iter().map(|l| l.map_or(-1, |x| x as i64)).collect();
    GridExport {
        resolution: scan.resolution,
        mobile: scan.mobile,
        adjacency: components.adjacency,
        degenerate: scan.degenerate,
        admissible: run_lengths(&scan.admissible),
        labels: run_lengths(&ids),
        representatives: components.representatives.iter().map(|&c| scan.centre(c)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lqg::DirectedLabeledEdge;
    use crate::vec3::IntVec3;

    fn v(x: i64, y: i64, z: i64) -> IntVec3 {
        IntVec3::new(x, y, z)
    }

    fn grid(r: usize, f: impl Fn([usize; 3]) -> bool) -> FreeRegionScan {
        let mut s = FreeRegionScan { resolution: r, mobile: 0, admissible: vec![], faces: vec![], degenerate: false };
        s.admissible = (0..r * r * r).map(|i| f(s.cell(i))).collect();
        s.faces = (0..r * r * r)
            .map(|i| {
                let c = s.cell(i);
                [0, 1, 2].map(|a| s.admissible[i] && s.admissible[s.index(s.successor(c, a))])
            })
            .collect();
        s
    }

    #[test]
    fn slabs_and_wrap() {
        let full = grid(4, |_| true);
        assert_eq!(count_components(&full, Adjacency::Cube).count(), 1);
        let slabs = grid(6, |c| c[0] != 2);
        assert_eq!(count_components(&slabs, Adjacency::Cube).count(), 2);
        assert_eq!(count_components(&slabs, Adjacency::Torus).count(), 1);
        let comps = count_components(&slabs, Adjacency::Cube);
        assert_eq!(comps.representatives, vec![[0, 0, 0], [3, 0, 0]]);
    }

    #[test]
    fn degenerate_single_vertex() {
        let g = LabeledQuotientGraph::bouquet(&[v(1, 0, 0)]).unwrap();
        let s = scan_free_region(&g, &[None], 0, 4).unwrap();
        assert!(s.degenerate);
        assert_eq!(s.admissible_count(), 64);
    }

    #[test]
    fn errors() {
        let g = LabeledQuotientGraph::new(2, [DirectedLabeledEdge::new(0, 1, v(0, 0, 0))]).unwrap();
        assert!(matches!(scan_free_region(&g, &[None, None], 1, 2), Err(Error::MissingPosition(0))));
        assert!(matches!(scan_free_region(&g, &[None, None], 2, 2), Err(Error::UnknownVertex(2))));
        let s = grid(2, |c| c[0] == 0);
        let comps = count_components(&s, Adjacency::Cube);
        let bad = Rational3::from_fracs([(3, 4), (1, 4), (1, 4)]);
        assert!(matches!(classify_representative(&s, &comps, &bad), Err(Error::InadmissiblePoint(_))));
    }

    #[test]
    fn cds_regions() {
        let cds = "vertex v1\nvertex v2\nedge v1 v1 0 0 1\nedge v2 v2 1 0 0\n\
                   edge v1 v2 0 0 0\nedge v1 v2 0 1 0\npos v1 1/2 1/2 1/2\n";
        let p = crate::lqg::parse_lqg(cds).unwrap();
        let s = scan_free_region(&p.graph, &p.positions, 1, 16).unwrap();
        let c = count_components(&s, Adjacency::Cube);
        assert_eq!(c.count(), 5);
        assert_eq!(count_components(&s, Adjacency::Torus).count(), 1);
        let id = |q: [(i64, i64); 3]| classify_representative(&s, &c, &Rational3::from_fracs(q)).unwrap();
        let low = id([(1, 2), (1, 4), (1, 4)]);
        assert_eq!(id([(1, 8), (1, 8), (7, 8)]), low);
        let ids = [
            id([(3, 4), (3, 4), (1, 4)]),
            id([(1, 4), (3, 4), (1, 4)]),
            id([(3, 4), (3, 4), (3, 4)]),
            id([(1, 4), (3, 4), (3, 4)]),
        ];
        let distinct: std::collections::BTreeSet<usize> = ids.iter().copied().chain([low]).collect();
        assert_eq!(distinct.len(), 5);
    }

    #[test]
    fn run_length_export() {
        assert_eq!(run_lengths(&[true, true, false, true]), vec![(true, 2), (false, 1), (true, 1)]);
    }
}
