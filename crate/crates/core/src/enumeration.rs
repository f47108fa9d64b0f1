//! Censuses of depth-1 lattice nets and bipartite double-lattice nets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{is_proper, ModelNet};
use crate::invariants::{coordination_sequence, fingerprint, Fingerprint, DIRECTIONS, DIRECTION_NAMES};
use crate::lqg::{component_structure, is_indivisible, LabeledQuotientGraph, Multiplicity};
use crate::rational::Rational3;
use crate::vec3::{IntMat3, IntVec3};

/// Index of the direction class containing `v` or `-v`.
pub fn direction_class(v: IntVec3) -> Option<usize> {
    DIRECTIONS.iter().position(|&d| d == v || d == -v)
}

/// A nonempty set of depth-1 direction classes, stored as a 13-bit mask.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeWord(u16);

impl EdgeWord {
    pub const ALPHABET: usize = 13;

    pub fn from_mask(mask: u16) -> Option<Self> {
        (mask != 0 && mask < 1 << Self::ALPHABET).then_some(EdgeWord(mask))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    /// Class indices in word order.
    pub fn letters(self) -> Vec<usize> {
        (0..Self::ALPHABET).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn names(self) -> Vec<&'static str> {
        self.letters().into_iter().map(|i| DIRECTION_NAMES[i]).collect()
    }

    pub fn directions(self) -> Vec<IntVec3> {
        self.letters().into_iter().map(|i| DIRECTIONS[i]).collect()
    }

    /// Word whose classes are those of `vs`; `None` if some vector is not a
    /// depth-1 direction or two vectors share a class.
    pub fn from_directions(vs: &[IntVec3]) -> Option<Self> {
        let mut mask = 0u16;
        for &v in vs {
            let bit = 1 << direction_class(v)?;
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Self::from_mask(mask)
    }

    pub fn model_net(self) -> ModelNet {
        ModelNet::lattice(&self.directions()).expect("depth-1 directions are nonzero")
    }

    /// Image under a linear map, if it stays inside the alphabet.
    pub fn transformed(self, z: &IntMat3) -> Option<Self> {
        let image: Vec<IntVec3> = self.directions().into_iter().map(|v| *z * v).collect();
        Self::from_directions(&image)
    }
}

/// Words compare lexicographically by their letter lists.
impl Ord for EdgeWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters().cmp(&other.letters())
    }
}

impl PartialOrd for EdgeWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EdgeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(" "))
    }
}

impl FromStr for EdgeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut mask = 0u16;
        for tok in s.split_whitespace() {
            let i = DIRECTION_NAMES
                .iter()
                .position(|&n| n == tok)
                .ok_or_else(|| Error::Parse { line: 1, message: format!("unknown letter {tok:?}") })?;
            mask |= 1 << i;
        }
        Self::from_mask(mask).ok_or_else(|| Error::Parse { line: 1, message: "empty word".into() })
    }
}

impl Serialize for EdgeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EdgeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every nonempty word with its properness verdict, in mask order.
pub fn enumerate_lattice_words() -> Vec<(EdgeWord, bool)> {
    (1..1u16 << EdgeWord::ALPHABET)
        .into_par_iter()
        .map(|mask| {
            let w = EdgeWord(mask);
            (w, is_proper(&w.model_net()))
        })
        .collect()
}

fn lattice_moves() -> Vec<IntMat3> {
    let mut moves = IntMat3::signed_permutations();
    moves.extend(IntMat3::elementary_shears());
    moves
}

fn lattice_orbit(w: EdgeWord, moves: &[IntMat3]) -> BTreeSet<EdgeWord> {
    let mut seen = BTreeSet::from([w]);
    let mut queue = VecDeque::from([w]);
    while let Some(u) = queue.pop_front() {
        for z in moves {
            if let Some(v) = u.transformed(z) {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

/// Smallest word reachable by signed permutations and elementary shears
/// without leaving the depth-1 alphabet.
pub fn canonicalize_lattice_word(w: EdgeWord) -> EdgeWord {
    *lattice_orbit(w, &lattice_moves()).first().expect("orbit contains w")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeClass {
    pub canonical: EdgeWord,
    pub members: Vec<EdgeWord>,
    pub fingerprint: Fingerprint,
}

impl LatticeClass {
    pub fn is_connected(&self) -> bool {
        self.fingerprint.components.is_connected()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeCensus {
    pub connected: Vec<LatticeClass>,
    pub disconnected: Vec<LatticeClass>,
}

impl LatticeCensus {
    /// Class containing `w`, found through its canonical form.
    pub fn class_of(&self, w: EdgeWord) -> Option<&LatticeClass> {
        let c = canonicalize_lattice_word(w);
        self.connected.iter().chain(&self.disconnected).find(|k| k.canonical == c)
    }
}

pub const CONNECTED_LATTICE_CLASSES: usize = 19;
pub const DISCONNECTED_LATTICE_CLASSES: usize = 6;

/// Proper words grouped by canonical form and split by connectivity.
///
/// A class count other than 19 connected and 6 disconnected is an error.
pub fn lattice_census() -> Result<LatticeCensus> {
    let moves = lattice_moves();
    let proper: BTreeSet<EdgeWord> = enumerate_lattice_words().into_iter().filter(|p| p.1).map(|p| p.0).collect();
    let mut left = proper.clone();
    let mut orbits = Vec::new();
    while let Some(&w) = left.iter().next() {
        let orbit = lattice_orbit(w, &moves);
        for u in &orbit {
            left.remove(u);
        }
        orbits.push(orbit);
    }
    let classes: Vec<LatticeClass> = orbits
        .into_par_iter()
        .map(|orbit| {
            let canonical = *orbit.first().expect("nonempty orbit");
            LatticeClass {
                canonical,
                fingerprint: fingerprint(&canonical.model_net()),
                members: orbit.into_iter().filter(|u| proper.contains(u)).collect(),
            }
        })
        .collect();
    let (mut connected, mut disconnected): (Vec<_>, Vec<_>) = classes.into_iter().partition(|c| c.is_connected());
    connected.sort_by_key(|c| (c.fingerprint.coordination.clone(), c.fingerprint.td10, c.canonical));
    disconnected.sort_by_key(|c| (c.fingerprint.coordination.clone(), c.canonical));
    if connected.len() != CONNECTED_LATTICE_CLASSES || disconnected.len() != DISCONNECTED_LATTICE_CLASSES {
        return Err(Error::Census(format!(
            "{} connected and {} disconnected classes",
            connected.len(),
            disconnected.len()
        )));
    }
    Ok(LatticeCensus { connected, disconnected })
}

/// A row of the published table of connected depth-1 lattice nets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub word: EdgeWord,
    pub coordination: usize,
    pub hxl: usize,
    pub penetration: String,
    pub topology: String,
    pub td10: u64,
}

/// A row of the published table of disconnected depth-1 lattice nets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisconnectedReferenceRow {
    pub word: EdgeWord,
    pub coordination: usize,
    pub topology: String,
    /// Number of components, `inf` when each component is lower dimensional.
    pub multiplicity: String,
}

fn read_rows<T: serde::de::DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| Error::Parse { line: i + 2, message: e.to_string() }))
        .collect()
}

pub fn reference_rows() -> Vec<ReferenceRow> {
    read_rows(include_str!("../../../data/lattice_census.csv")).expect("bundled table parses")
}

pub fn disconnected_reference_rows() -> Vec<DisconnectedReferenceRow> {
    read_rows(include_str!("../../../data/disconnected_census.csv")).expect("bundled table parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub word: EdgeWord,
    pub field: String,
    pub expected: String,
    pub got: String,
}

fn compare(out: &mut Vec<Mismatch>, word: EdgeWord, field: &str, expected: String, got: String) {
    if expected != got {
        out.push(Mismatch { word, field: field.into(), expected, got });
    }
}

fn penetration_text(f: &Fingerprint) -> String {
    f.penetration.map_or_else(|| "-".to_string(), |p| p.to_string())
}

/// Compare every published row with the class that contains its word.
pub fn cross_check(census: &LatticeCensus) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for row in reference_rows() {
        let Some(class) = census.class_of(row.word).filter(|c| c.is_connected()) else {
            compare(&mut out, row.word, "class", "connected".into(), "missing".into());
            continue;
        };
        // invariants are read off the published word itself
        let f = fingerprint(&row.word.model_net());
        compare(&mut out, row.word, "coordination", row.coordination.to_string(), f.coordination[0].to_string());
        compare(&mut out, row.word, "hxl", row.hxl.to_string(), f.hxl.map_or(String::new(), |h| h.to_string()));
        compare(&mut out, row.word, "penetration", row.penetration.clone(), penetration_text(&f));
        compare(&mut out, row.word, "td10", row.td10.to_string(), f.td10.to_string());
        compare(&mut out, row.word, "class td10", row.td10.to_string(), class.fingerprint.td10.to_string());
    }
    for row in disconnected_reference_rows() {
        let Some(class) = census.class_of(row.word).filter(|c| !c.is_connected()) else {
            compare(&mut out, row.word, "class", "disconnected".into(), "missing".into());
            continue;
        };
        let f = &class.fingerprint;
        compare(&mut out, row.word, "coordination", row.coordination.to_string(), f.coordination[0].to_string());
        let got = match f.components.total_multiplicity() {
            Multiplicity::Finite(n) => n.to_string(),
            Multiplicity::Infinite => "inf".to_string(),
        };
        compare(&mut out, row.word, "multiplicity", row.multiplicity.clone(), got);
    }
    out
}

/// Labels of the edges `v1 -> v2` of a bipartite two-vertex quotient graph
/// with no loops; always contains the zero label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubleLatticeLqg {
    labels: Vec<IntVec3>,
}

impl DoubleLatticeLqg {
    pub fn new(labels: &[IntVec3]) -> Result<Self> {
        let mut labels = labels.to_vec();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Census("repeated label".into()));
        }
        if !labels.contains(&IntVec3::ZERO) {
            return Err(Error::Census("no zero label".into()));
        }
        if let Some(k) = labels.iter().find(|k| k.max_norm() > 1) {
            return Err(Error::DepthTooLarge(k.max_norm()));
        }
        Ok(DoubleLatticeLqg { labels })
    }

    pub fn labels(&self) -> &[IntVec3] {
        &self.labels
    }

    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    pub fn graph(&self) -> LabeledQuotientGraph {
        LabeledQuotientGraph::bipartite_pair(&self.labels).expect("links are never zero loops")
    }
}

/// Candidate second-node positions tried with the first node at the origin;
/// each is also tried mirrored through the cell centre.
pub const PLACEMENTS: [[(i64, i64); 3]; 5] = [
    [(1, 3), (1, 5), (1, 7)],
    [(2, 7), (3, 11), (5, 13)],
    [(3, 7), (2, 9), (5, 11)],
    [(1, 4), (3, 5), (2, 7)],
    [(5, 8), (1, 9), (4, 13)],
];

fn placements() -> impl Iterator<Item = Rational3> {
    PLACEMENTS.iter().flat_map(|&p| {
        let q = Rational3::from_fracs(p);
        [q, Rational3::from_int(IntVec3::new(1, 1, 1)) - q]
    })
}

/// First sampled placement giving a proper net.
pub fn proper_placement(inst: &DoubleLatticeLqg) -> Option<Rational3> {
    let g = inst.graph();
    placements().find(|&p| {
        let m = ModelNet::new(g.clone(), vec![Rational3::zero(), p]).expect("placements lie in the unit cell");
        is_proper(&m)
    })
}

fn cube_labels() -> Vec<IntVec3> {
    let mut out = Vec::new();
    for x in -1..=1 {
        for y in -1..=1 {
            for z in -1..=1 {
                let v = IntVec3::new(x, y, z);
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn parity(v: IntVec3) -> usize {
    v.0.iter().enumerate().map(|(i, c)| (c.rem_euclid(2) as usize) << i).sum()
}

fn label_sets(m: usize) -> Vec<Vec<IntVec3>> {
    // labels in one parity class differ by an even vector, so only one
    // label per class can survive the indivisibility filter
    fn extend(
        cube: &[IntVec3],
        from: usize,
        used: u8,
        cur: &mut Vec<IntVec3>,
        m: usize,
        out: &mut Vec<Vec<IntVec3>>,
    ) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in from..cube.len() {
            let bit = 1u8 << parity(cube[i]);
            if used & bit == 0 {
                cur.push(cube[i]);
                extend(cube, i + 1, used | bit, cur, m, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if (1..=8).contains(&m) {
        extend(&cube_labels(), 0, 1, &mut vec![IntVec3::ZERO], m, &mut out);
    }
    out
}

/// Admissible label sets of size `m`: indivisible, connected, and proper at
/// one of the sampled placements.
pub fn enumerate_double_lattice(m: usize) -> Vec<DoubleLatticeLqg> {
    let mut out: Vec<DoubleLatticeLqg> = label_sets(m)
        .into_par_iter()
        .filter_map(|labels| {
            let inst = DoubleLatticeLqg::new(&labels).ok()?;
            let g = inst.graph();
            if !is_indivisible(&g).is_indivisible() || !component_structure(&g).is_connected() {
                return None;
            }
            proper_placement(&inst).map(|_| inst)
        })
        .collect();
    out.sort();
    out
}

/// Affine relabelling `L' = X L + c` with `|det X| = 1`. Swapping the two
/// vertices negates every label, which is the case `X = -I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleLatticeMap {
    pub matrix: IntMat3,
    pub shift: IntVec3,
}

fn independent_triple(labels: &[IntVec3]) -> Option<[IntVec3; 3]> {
    let n = labels.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = [labels[i], labels[j], labels[k]];
                if IntMat3::from_cols(t).det() != 0 {
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Search for `X`, `c` with `b = X a + c`.
///
/// Both sets contain zero, so `c` ranges over `b`. Three independent labels
/// of `a` are sent to every ordered triple of `b - c`; a rational solution
/// that maps `a` onto `b - c` is accepted when integral and unimodular.
pub fn double_lattice_equivalence(a: &DoubleLatticeLqg, b: &DoubleLatticeLqg) -> Option<DoubleLatticeMap> {
    if a.degree() != b.degree() {
        return None;
    }
    let basis = independent_triple(&a.labels)?;
    let bm = IntMat3::from_cols(basis);
    let det = bm.det();
    let adj = bm.adjugate();
    let target: BTreeSet<IntVec3> = b.labels.iter().copied().collect();
    for &c in &b.labels {
        let shifted: Vec<IntVec3> = b.labels.iter().map(|&k| k - c).collect();
        let shifted_set: BTreeSet<IntVec3> = shifted.iter().copied().collect();
        for &y0 in &shifted {
            for &y1 in &shifted {
                for &y2 in &shifted {
                    let ym = IntMat3::from_cols([y0, y1, y2]);
                    if ym.det().abs() != det.abs() {
                        continue;
                    }
                    let num = ym * adj;
                    if num.0.iter().flatten().any(|e| e % det != 0) {
                        continue;
                    }
                    let x = IntMat3(num.0.map(|r| r.map(|e| e / det)));
                    if !x.is_unimodular() {
                        continue;
                    }
                    if a.labels.iter().all(|&k| shifted_set.contains(&(x * k))) {
                        debug_assert!(a.labels.iter().all(|&k| target.contains(&(x * k + c))));
                        return Some(DoubleLatticeMap { matrix: x, shift: c });
                    }
                }
            }
        }
    }
    None
}

/// Quantity preserved by every relabelling: for each choice of origin in the
/// set, the sorted absolute determinants of all label triples.
fn determinant_profile(inst: &DoubleLatticeLqg) -> Vec<Vec<i64>> {
    let l = &inst.labels;
    let mut profile: Vec<Vec<i64>> = l
        .iter()
        .map(|&c| {
            let s: Vec<IntVec3> = l.iter().map(|&k| k - c).filter(|k| !k.is_zero()).collect();
            let mut dets = Vec::new();
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    for k in j + 1..s.len() {
                        dets.push(IntMat3::from_cols([s[i], s[j], s[k]]).det().abs());
                    }
                }
            }
            dets.sort();
            dets
        })
        .collect();
    profile.sort();
    profile
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleLatticeClass {
    pub representative: DoubleLatticeLqg,
    pub size: usize,
    /// `n_1..n_10` from either vertex.
    pub cs: Vec<u64>,
    pub td10: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoubleLatticeCensus {
    pub classes: Vec<DoubleLatticeClass>,
    /// Pairs of class indices with equal coordination sequences; these are
    /// reported, never merged.
    pub collisions: Vec<(usize, usize)>,
}

impl DoubleLatticeCensus {
    pub fn count(&self, m: usize) -> usize {
        self.classes.iter().filter(|c| c.representative.degree() == m).count()
    }
}

pub const CS_PREFIX: usize = 10;

/// Equivalence classes of admissible instances under `L' = X L + c`.
pub fn classify_double_lattice_topologies(instances: &[DoubleLatticeLqg]) -> DoubleLatticeCensus {
    let mut buckets: BTreeMap<(usize, Vec<Vec<i64>>), Vec<&DoubleLatticeLqg>> = BTreeMap::new();
    for inst in instances {
        buckets.entry((inst.degree(), determinant_profile(inst))).or_default().push(inst);
    }
    let per_bucket: Vec<Vec<(DoubleLatticeLqg, usize)>> = buckets
        .into_par_iter()
        .map(|(_, members)| {
            let mut reps: Vec<(DoubleLatticeLqg, usize)> = Vec::new();
            for inst in members {
                match reps.iter_mut().find(|(r, _)| double_lattice_equivalence(inst, r).is_some()) {
                    Some(r) => r.1 += 1,
                    None => reps.push((inst.clone(), 1)),
                }
            }
            reps
        })
        .collect();
    let mut classes: Vec<DoubleLatticeClass> = per_bucket
        .into_iter()
        .flatten()
        .map(|(representative, size)| {
            let cs = coordination_sequence(&representative.graph(), 0, CS_PREFIX);
            let td10 = 1 + cs.iter().sum::<u64>();
            DoubleLatticeClass { representative, size, cs, td10 }
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.representative.degree(), a.td10, &a.cs, &a.representative).cmp(&(
            b.representative.degree(),
            b.td10,
            &b.cs,
            &b.representative,
        ))
    });
    let mut collisions = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if classes[i].cs == classes[j].cs {
                collisions.push((i, j));
            }
        }
    }
    DoubleLatticeCensus { classes, collisions }
}

/// Enumerate and classify for every `m` in `1..=8`.
pub fn double_lattice_census() -> DoubleLatticeCensus {
    let instances: Vec<DoubleLatticeLqg> = (1..=8).flat_map(enumerate_double_lattice).collect();
    classify_double_lattice_topologies(&instances)
}
