//! Linear graph knots: a model net folded into the unit cell.
//!
//! Each motif edge is cut where it crosses an integer coordinate plane and
//! the pieces are translated back into `[0,1]^3`. A point on a cell face
//! belongs to both pieces meeting there; the set of pieces does not depend on
//! that choice.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Rational, Rational3};
use crate::vec3::IntVec3;

use super::{find_impropriety, ModelNet, Segment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotEdge {
    pub id: usize,
    /// Homology class of the closed path; equal to the LQG label.
    pub label: IntVec3,
    pub pieces: Vec<Segment>,
}

impl KnotEdge {
    /// Sum of the piece vectors, which reassembles the unfolded edge vector.
    pub fn piece_sum(&self) -> Rational3 {
        self.pieces.iter().fold(Rational3::zero(), |acc, s| acc + s.vector())
    }

    /// Consecutive pieces join up to an integer translation.
    pub fn pieces_chain(&self) -> bool {
        self.pieces.windows(2).all(|w| (w[1].a - w[0].b).is_integral())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphKnot {
    pub nodes: Vec<Rational3>,
    pub edges: Vec<KnotEdge>,
}

impl GraphKnot {
    pub fn piece_count(&self) -> usize {
        self.edges.iter().map(|e| e.pieces.len()).sum()
    }
}

fn point_at(a: &Rational3, d: &Rational3, t: Rational) -> Rational3 {
    *a + d.scale(t)
}

/// Cut `[a, b]` at every integer plane it crosses in its interior.
fn fold_segment(a: Rational3, b: Rational3) -> Vec<Segment> {
    let d = b - a;
    let mut cuts = vec![Rational::zero(), Rational::one()];
    for i in 0..3 {
        let (lo, hi) = if a.0[i] <= b.0[i] { (a.0[i], b.0[i]) } else { (b.0[i], a.0[i]) };
        let mut c = lo.floor() + Rational::one();
        while c < hi {
            cuts.push((c - a.0[i]) / d.0[i]);
            c += Rational::one();
        }
    }
    cuts.sort();
    cuts.dedup();
    let two = Rational::from_integer(2);
    cuts.windows(2)
        .map(|w| {
            let p = point_at(&a, &d, w[0]);
            let q = point_at(&a, &d, w[1]);
            let mid = (p + q).scale(Rational::one() / two);
            let cell = mid.floor();
            Segment::new(p + (-cell), q + (-cell))
        })
        .collect()
}

pub fn linear_graph_knot(m: &ModelNet) -> Result<GraphKnot> {
    if let Some(w) = find_impropriety(m) {
        return Err(Error::Improper(w));
    }
    let edges = m
        .graph
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let s = m.edge_segment(id);
            KnotEdge { id, label: e.label, pieces: fold_segment(s.a, s.b) }
        })
        .collect();
    Ok(GraphKnot { nodes: m.positions.clone(), edges })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KnotFormat {
    Json,
    Obj,
}

impl FromStr for KnotFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(KnotFormat::Json),
            "obj" => Ok(KnotFormat::Obj),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

fn obj_vertex(out: &mut String, p: &Rational3) {
    let [x, y, z] = p.to_f64();
    let _ = writeln!(out, "v {x:.12} {y:.12} {z:.12}");
}

pub fn export_knot(k: &GraphKnot, format: KnotFormat) -> Result<String> {
    match format {
        KnotFormat::Json => Ok(serde_json::to_string_pretty(k)? + "\n"),
        KnotFormat::Obj => {
            let mut out = String::new();
            for p in &k.nodes {
                obj_vertex(&mut out, p);
            }
            let mut next = k.nodes.len() + 1;
            let mut lines = String::new();
            for e in &k.edges {
                for s in &e.pieces {
                    obj_vertex(&mut out, &s.a);
                    obj_vertex(&mut out, &s.b);
                    let _ = writeln!(lines, "l {} {}", next, next + 1);
                    next += 2;
                }
            }
            Ok(out + &lines)
        }
    }
}

pub fn import_knot_json(text: &str) -> Result<GraphKnot> {
    Ok(serde_json::from_str(text)?)
}
