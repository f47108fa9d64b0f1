//! Computable invariants of periodic nets.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::ModelNet;
use crate::lqg::{component_structure, ComponentStructure, LabeledQuotientGraph};
use crate::orbits::Pattern;
use crate::vec3::{IntMat3, IntVec3};

/// Neighbours of a node `(v, cell)` in the covering graph.
fn neighbours(g: &LabeledQuotientGraph) -> Vec<Vec<(usize, IntVec3)>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        adj[e.tail].push((e.head, e.label));
        adj[e.head].push((e.tail, -e.label));
    }
    adj
}

/// Shell sizes `n_1..n_k` of the breadth-first search from vertex `class` in cell 0.
pub fn coordination_sequence(g: &LabeledQuotientGraph, class: usize, k: usize) -> Vec<u64> {
    let adj = neighbours(g);
    let start = (class, IntVec3::ZERO);
    let mut seen: HashSet<(usize, IntVec3)> = HashSet::from([start]);
    let mut shell = vec![start];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let mut next = Vec::new();
        for &(v, c) in &shell {
            for &(w, l) in &adj[v] {
                let node = (w, c + l);
                if seen.insert(node) {
                    next.push(node);
                }
            }
        }
        out.push(next.len() as u64);
        shell = next;
    }
    out
}

/// `1 + n_1 + ... + n_10`.
pub fn td10(g: &LabeledQuotientGraph, class: usize) -> u64 {
    1 + coordination_sequence(g, class, 10).iter().sum::<u64>()
}

/// Number of 3-subsets of edge directions that are linearly dependent.
///
/// Each such triple spans a plane carrying a fully triangulated layer.
pub fn hxl_multiplicity(g: &LabeledQuotientGraph) -> Option<usize> {
    if g.vertex_count() != 1 {
        return None;
    }
    let d: Vec<IntVec3> = g.labels().collect();
    let mut count = 0;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            for k in j + 1..d.len() {
                if IntMat3::from_rows([d[i], d[j], d[k]]).det() == 0 {
                    count += 1;
                }
            }
        }
    }
    Some(count)
}

/// Largest number of disjoint parallel triangles (`triangles`) and
/// untriangulated parallelograms (`parallelograms`) crossed by a single edge.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Penetration {
    pub triangles: usize,
    pub parallelograms: usize,
}

impl Penetration {
    pub fn is_empty(&self) -> bool {
        self.triangles == 0 && self.parallelograms == 0
    }

    /// Flags like `3^2` and `4^1`.
    pub fn flags(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.triangles > 0 {
            out.push(format!("3^{}", self.triangles));
        }
        if self.parallelograms > 0 {
            out.push(format!("4^{}", self.parallelograms));
        }
        out
    }
}

impl fmt::Display for Penetration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", self.flags().join(","))
        }
    }
}

/// A planar polygon of the lattice net, vertices in cyclic order.
#[derive(Clone, Debug)]
struct Polygon {
    vertices: Vec<IntVec3>,
}

impl Polygon {
    fn normal(&self) -> IntVec3 {
        let v = &self.vertices;
        (v[1] - v[0]).cross(v[2] - v[0])
    }

    /// The open segment `(p, q)` passes through the polygon, meeting its
    /// plane at a single point of the closed polygon.
    fn crossed_by(&self, p: IntVec3, q: IntVec3) -> bool {
        let n = self.normal();
        let o = self.vertices[0];
        let sp = n.dot(p - o);
        let sq = n.dot(q - o);
        if sp == 0 || sq == 0 || (sp > 0) == (sq > 0) {
            return false;
        }
        // X = (sp q - sq p) / (sp - sq); test sides scaled by (sp - sq)
        let den = sp - sq;
        let x = p.scale(-sq) + q.scale(sp);
        let m = self.vertices.len();
        let mut sign = 0i64;
        for i in 0..m {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % m];
            let side = (b - a).cross(x - a.scale(den)).dot(n) * den.signum();
            if side != 0 {
                if sign != 0 && side.signum() != sign {
                    return false;
                }
                sign = side.signum();
            }
        }
        true
    }
}

fn plane_key(poly: &Polygon) -> (IntVec3, i64) {
    let n = poly.normal();
    let g = n.content();
    let n = IntVec3(n.0.map(|c| c / g)).sign_normalized();
    (n, n.dot(poly.vertices[0]))
}

/// Triangles and untriangulated parallelograms of the lattice net with
/// every vertex inside `-r..=r`.
fn lattice_polygons(dirs: &[IntVec3], r: i64) -> (Vec<Polygon>, Vec<Polygon>) {
    let signed: Vec<IntVec3> = dirs.iter().flat_map(|&d| [d, -d]).collect();
    let is_edge = |v: IntVec3| signed.contains(&v);
    let inside = |v: IntVec3| v.max_norm() <= r;
    let mut tri_seen = BTreeSet::new();
    let mut par_seen = BTreeSet::new();
    let mut triangles = Vec::new();
    let mut parallelograms = Vec::new();
    let anchors = (-r..=r).flat_map(|x| (-r..=r).flat_map(move |y| (-r..=r).map(move |z| IntVec3::new(x, y, z))));
    for a in anchors {
        for &x in &signed {
            for &y in &signed {
                if x.cross(y).is_zero() {
                    continue;
                }
                let verts = [a, a + x, a + x + y, a + y];
                if is_edge(x + y) {
                    let tri = [a, a + x, a + x + y];
                    if tri.iter().all(|&v| inside(v)) {
                        let mut key = tri.to_vec();
                        key.sort();
                        if tri_seen.insert(key) {
                            triangles.push(Polygon { vertices: tri.to_vec() });
                        }
                    }
                } else if !is_edge(x - y) && verts.iter().all(|&v| inside(v)) {
                    let mut key = verts.to_vec();
                    key.sort();
                    if par_seen.insert(key) {
                        parallelograms.push(Polygon { vertices: verts.to_vec() });
                    }
                }
            }
        }
    }
    (triangles, parallelograms)
}

/// Largest number of distinct parallel planes whose polygons the edge `(0, d)` crosses.
fn max_parallel_crossings(polys: &[Polygon], d: IntVec3, skip: impl Fn(&Polygon) -> bool) -> usize {
    let mut planes: BTreeMap<IntVec3, BTreeSet<i64>> = BTreeMap::new();
    for p in polys {
        if !skip(p) && p.crossed_by(IntVec3::ZERO, d) {
            let (n, offset) = plane_key(p);
            planes.entry(n).or_default().insert(offset);
        }
    }
    planes.values().map(|s| s.len()).max().unwrap_or(0)
}

/// Geometric penetration type of a single-vertex depth-1 lattice net.
pub fn penetration_type(g: &LabeledQuotientGraph) -> Option<Penetration> {
    if g.vertex_count() != 1 || g.depth() > 1 {
        return None;
    }
    let dirs: Vec<IntVec3> = g.labels().collect();
    let (triangles, parallelograms) = lattice_polygons(&dirs, 3);
    let mut out = Penetration::default();
    let tiled: BTreeSet<IntVec3> = triangles.iter().map(|t| plane_key(t).0).collect();
    for &d in &dirs {
        out.triangles = out.triangles.max(max_parallel_crossings(&triangles, d, |_| false));
        // an edge inside a triangulated sheet does not count parallelograms
        // with a side in that same sheet
        let shares_sheet = |p: &Polygon| {
            let sides = [p.vertices[1] - p.vertices[0], p.vertices[3] - p.vertices[0]];
            tiled.iter().any(|n| n.dot(d) == 0 && sides.iter().any(|s| n.dot(*s) == 0))
        };
        out.parallelograms = out.parallelograms.max(max_parallel_crossings(&parallelograms, d, shares_sheet));
    }
    Some(out)
}

/// The 13 depth-1 edge direction classes in word order.
pub const DIRECTION_NAMES: [&str; 13] =
    ["a_x", "a_y", "a_z", "f_x", "f_y", "f_z", "g_x", "g_y", "g_z", "d_1", "d_2", "d_3", "d_4"];

pub const DIRECTIONS: [IntVec3; 13] = [
    IntVec3::new(1, 0, 0),
    IntVec3::new(0, 1, 0),
    IntVec3::new(0, 0, 1),
    IntVec3::new(0, 1, 1),
    IntVec3::new(1, 0, 1),
    IntVec3::new(1, 1, 0),
    IntVec3::new(0, 1, -1),
    IntVec3::new(1, 0, -1),
    IntVec3::new(1, -1, 0),
    IntVec3::new(1, 1, 1),
    IntVec3::new(-1, 1, 1),
    IntVec3::new(-1, -1, 1),
    IntVec3::new(1, -1, 1),
];

/// Penetration flags read off a standardized word: `3^2` exactly when it
/// contains `g_x g_y g_z d_1`, `4^2` when it contains `d_1` and exactly two
/// `g` letters.
pub fn combinatorial_penetration(letters: &[&str]) -> BTreeSet<String> {
    let has = |l: &str| letters.contains(&l);
    let gs = ["g_x", "g_y", "g_z"].iter().filter(|l| has(l)).count();
    let mut out = BTreeSet::new();
    if has("d_1") && gs == 3 {
        out.insert("3^2".to_string());
    }
    if has("d_1") && gs == 2 {
        out.insert("4^2".to_string());
    }
    out
}

/// Cyclic orders of the points along the three axes.
///
/// Points are labelled by their `x` order starting at an arbitrary point;
/// each `y` and `z` order is rotated to begin at label 0, and the minimum
/// over the `n` starting points is returned. Shifts rotate every cyclic
/// order, so the result is constant on shift orbits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicOrder {
    pub y_cycle: Vec<u8>,
    pub z_cycle: Vec<u8>,
}

pub fn cyclic_order_invariant(p: &Pattern) -> CyclicOrder {
    let n = p.n();
    let pts = p.points();
    let cycle = |axis: usize, start: usize| -> Vec<u8> {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| pts[i][axis]);
        let labels: Vec<u8> = order.iter().map(|&i| ((i + n - start) % n) as u8).collect();
        let pos = labels.iter().position(|&l| l == 0).unwrap_or(0);
        labels[pos..].iter().chain(&labels[..pos]).copied().collect()
    };
    (0..n)
        .map(|s| CyclicOrder { y_cycle: cycle(1, s), z_cycle: cycle(2, s) })
        .min()
        .unwrap_or(CyclicOrder { y_cycle: Vec::new(), z_cycle: Vec::new() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    /// Degree of each vertex class.
    pub coordination: Vec<usize>,
    /// `n_1..n_10` per vertex class.
    pub cs: Vec<Vec<u64>>,
    /// From the first vertex class.
    pub td10: u64,
    pub hxl: Option<usize>,
    pub penetration: Option<Penetration>,
    pub components: ComponentStructure,
}

pub fn fingerprint(m: &ModelNet) -> Fingerprint {
    let g = &m.graph;
    let cs: Vec<Vec<u64>> = (0..g.vertex_count()).map(|v| coordination_sequence(g, v, 10)).collect();
    Fingerprint {
        coordination: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
        td10: 1 + cs.first().map_or(0, |c| c.iter().sum()),
        cs,
        hxl: hxl_multiplicity(g),
        penetration: penetration_type(g),
        components: component_structure(g),
    }
}

impl Fingerprint {
    pub const CSV_HEADER: &'static str =
        "name,word,coordination,hxl,penetration,td10,cs1,cs2,cs3,cs4,cs5,cs6,cs7,cs8,cs9,cs10";

    pub fn csv_row(&self, name: &str, word: &str) -> String {
        let coord: Vec<String> = self.coordination.iter().map(|c| c.to_string()).collect();
        let hxl = self.hxl.map_or(String::new(), |h| h.to_string());
        let pen = self.penetration.map_or(String::new(), |p| p.to_string());
        let cs: Vec<String> = self.cs.first().map_or(Vec::new(), |c| c.iter().map(|x| x.to_string()).collect());
        let quote = |s: String| if s.contains(',') { format!("\"{s}\"") } else { s };
        format!(
            "{},{},{},{},{},{},{}",
            name,
            word,
            quote(coord.join(";")),
            hxl,
            quote(pen),
            self.td10,
            cs.join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lqg::LabeledQuotientGraph;

    fn word(letters: &[&str]) -> LabeledQuotientGraph {
        let labels: Vec<IntVec3> = letters
            .iter()
            .map(|l| DIRECTIONS[DIRECTION_NAMES.iter().position(|n| n == l).unwrap()])
            .collect();
        LabeledQuotientGraph::bouquet(&labels).unwrap()
    }

    #[test]
    fn pcu_sequence() {
        let g = word(&["a_x", "a_y", "a_z"]);
        assert_eq!(coordination_sequence(&g, 0, 10), vec![6, 18, 38, 66, 102, 146, 198, 258, 326, 402]);
        assert_eq!(td10(&g, 0), 1561);
    }

    #[test]
    fn bcu_and_fcu() {
        let bcu = word(&["a_x", "a_y", "a_z", "d_1"]);
        assert_eq!(&coordination_sequence(&bcu, 0, 5), &[8, 26, 56, 98, 152]);
        assert_eq!(td10(&bcu, 0), 2331);
        let fcu = word(&["a_x", "a_y", "a_z", "g_x", "g_y", "g_z"]);
        assert_eq!(td10(&fcu, 0), 3871);
    }

    #[test]
    fn hxl_examples() {
        assert_eq!(hxl_multiplicity(&word(&["a_x", "a_y", "a_z", "g_x", "g_y", "g_z"])), Some(4));
        assert_eq!(hxl_multiplicity(&word(&["a_x", "a_y", "a_z"])), Some(0));
        assert_eq!(hxl_multiplicity(&word(&["a_x", "a_y", "a_z", "f_x", "f_y", "f_z", "d_1"])), Some(6));
    }

    #[test]
    fn penetration_examples() {
        let p = penetration_type(&word(&["a_x", "g_x", "g_y", "d_1"])).unwrap();
        assert_eq!(p.to_string(), "4^2");
        let p = penetration_type(&word(&["a_x", "a_y", "g_x", "d_1"])).unwrap();
        assert_eq!(p.to_string(), "4^1");
        // the g edges lie in triangulated sheets and do not count the
        // (g, d_1) parallelograms
        let p = penetration_type(&word(&["a_x", "g_x", "g_y", "g_z", "d_1"])).unwrap();
        assert_eq!(p.to_string(), "3^2,4^1");
        let p = penetration_type(&word(&["a_x", "a_y", "a_z", "g_x", "g_y", "g_z", "d_1"])).unwrap();
        assert_eq!(p.to_string(), "3^2,4^1");
        assert!(penetration_type(&word(&["a_x", "a_y", "a_z"])).unwrap().is_empty());
    }

    #[test]
    fn combinatorial_flags() {
        assert_eq!(combinatorial_penetration(&["a_x", "g_x", "g_y", "d_1"]), BTreeSet::from(["4^2".to_string()]));
        assert!(combinatorial_penetration(&["a_x", "a_y", "a_z", "g_x", "d_1"]).is_empty());
        assert!(combinatorial_penetration(&["a_x", "a_y", "a_z"]).is_empty());
    }

    #[test]
    fn cyclic_orders() {
        let all: BTreeSet<CyclicOrder> = crate::orbits::pattern_space(2).map(|p| cyclic_order_invariant(&p)).collect();
        assert_eq!(all.len(), 1);
        let diag = Pattern::from_points(4, (0..4).map(|i| [i, i, i]).collect()).unwrap();
        let shifted = Pattern::from_points(4, (0..4).map(|i| [(i + 1) % 4, (i + 1) % 4, (i + 1) % 4]).collect()).unwrap();
        assert_eq!(cyclic_order_invariant(&diag), cyclic_order_invariant(&shifted));
        let swapped = Pattern::from_points(4, vec![[0, 0, 0], [1, 2, 1], [2, 1, 2], [3, 3, 3]]).unwrap();
        assert_ne!(cyclic_order_invariant(&diag), cyclic_order_invariant(&swapped));
    }
}

