#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use netiso::freespace::FreeRegionScan;
use netiso::geometry::{generate_fragment, linear_graph_knot, CellWindow, ModelNet};
use netiso::lqg::{parse_lqg, ParsedLqg};
use netiso::rational::{Rational, Rational3};
use netiso::vec3::IntVec3;

pub const TWO_VERTEX: &str = include_str!("../../../../data/nets/two_vertex.lqg");
pub const CDS: &str = include_str!("../../../../data/nets/cds.lqg");

pub fn net(text: &str) -> ParsedLqg {
    parse_lqg(text).expect("bundled net parses")
}

/// Components of the window graph that reach the central 3x3x3 block.
pub fn window_components(m: &ModelNet, r: i64) -> usize {
    let f = generate_fragment(m, &CellWindow::centered(r));
    let index: BTreeMap<(usize, IntVec3), usize> =
        f.nodes.iter().enumerate().map(|(i, &(v, cell, _))| ((v, cell), i)).collect();
    let mut parent: Vec<usize> = (0..f.nodes.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(e, cell, _) in &f.segments {
        let edge = m.graph.edges()[e];
        if let (Some(&a), Some(&b)) = (index.get(&(edge.tail, cell)), index.get(&(edge.head, cell + edge.label))) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let roots: BTreeSet<usize> = f
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, (_, cell, _))| cell.max_norm() <= 1)
        .map(|(i, _)| find(&mut parent, i))
        .collect();
    roots.len()
}

/// Every knot edge chains up, carries its label, and its pieces add up to
/// the unfolded edge vector.
pub fn knot_reassembles(m: &ModelNet) -> bool {
    let Ok(k) = linear_graph_knot(m) else { return false };
    m.graph.edges().iter().zip(&k.edges).all(|(e, ke)| {
        ke.label == e.label
            && ke.pieces_chain()
            && ke.piece_sum() - (m.positions[e.head] - m.positions[e.tail]) == Rational3::from_int(e.label)
    })
}

/// Region of a free cds position: 0 below `y = 1/2`, above it the four
/// quadrants (x>, z<), (x<, z<), (x>, z>), (x<, z>) as 1..=4.
pub fn cds_region(p: &Rational3) -> Option<usize> {
    let half = Rational::new(1, 2);
    let [x, y, z] = p.0;
    if x == half || y == half || z == half {
        return None;
    }
    if y < half {
        return Some(0);
    }
    Some(match (x > half, z > half) {
        (true, false) => 1,
        (false, false) => 2,
        (true, true) => 3,
        (false, true) => 4,
    })
}

/// Every component lies in one region and the regions are hit one-to-one.
pub fn cds_components_match_regions(scan: &FreeRegionScan, labels: &[Option<usize>], count: usize) -> bool {
    let mut region_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        let Some(c) = l else { continue };
        let Some(r) = cds_region(&scan.centre(scan.cell(i))) else { return false };
        if *region_of.entry(*c).or_insert(r) != r {
            return false;
        }
    }
    let regions: BTreeSet<usize> = region_of.values().copied().collect();
    region_of.len() == count && regions.len() == count
}
