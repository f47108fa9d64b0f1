//! Line-oriented LQG text format.
//!
//! ```text
//! # comment
//! vertex v1
//! vertex v2
//! edge v1 v1 0 0 1
//! edge v1 v2 0 -1 -1
//! pos v2 1/4 1/4 3/4
//! ```

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::rational::Rational3;
use crate::vec3::IntVec3;

use super::{DirectedLabeledEdge, LabeledQuotientGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedLqg {
    pub graph: LabeledQuotientGraph,
    /// One slot per vertex; `None` where no `pos` line was given.
    pub positions: Vec<Option<Rational3>>,
}

impl ParsedLqg {
    /// All positions, if every vertex has one.
    pub fn complete_positions(&self) -> Option<Vec<Rational3>> {
        self.positions.iter().copied().collect()
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_lqg(text: &str) -> Result<ParsedLqg> {
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<DirectedLabeledEdge> = Vec::new();
    let mut seen: HashSet<DirectedLabeledEdge> = HashSet::new();
    let mut positions: Vec<Option<Rational3>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let lookup = |name: &str, names: &[String]| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| parse_err(line_no, format!("unknown vertex `{name}`")))
        };
        match fields[0] {
            "vertex" => {
                if fields.len() != 2 {
                    return Err(parse_err(line_no, "expected `vertex <name>`"));
                }
                if names.iter().any(|n| n == fields[1]) {
                    return Err(parse_err(line_no, format!("vertex `{}` declared twice", fields[1])));
                }
                names.push(fields[1].to_string());
                positions.push(None);
            }
            "edge" => {
                if fields.len() != 6 {
                    return Err(parse_err(line_no, "expected `edge <v> <w> <k1> <k2> <k3>`"));
                }
                let tail = lookup(fields[1], &names)?;
                let head = lookup(fields[2], &names)?;
                let mut label = [0i64; 3];
                for (slot, s) in label.iter_mut().zip(&fields[3..6]) {
                    *slot = s
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad label entry `{s}`")))?;
                }
                let label = IntVec3(label);
                if tail == head && label.is_zero() {
                    return Err(parse_err(line_no, "loop with zero label"));
                }
                let e = DirectedLabeledEdge::new(tail, head, label).canonical();
                if !seen.insert(e) {
                    return Err(Error::DuplicateEdge {
                        line: line_no,
                        tail: fields[1].to_string(),
                        head: fields[2].to_string(),
                        label: label.to_string(),
                    });
                }
                edges.push(e);
            }
            "pos" => {
                if fields.len() != 5 {
                    return Err(parse_err(line_no, "expected `pos <v> <x> <y> <z>`"));
                }
                let v = lookup(fields[1], &names)?;
                let p: Rational3 = fields[2..5]
                    .join(" ")
                    .parse()
                    .map_err(|e: String| parse_err(line_no, e))?;
                if !p.in_unit_cube() {
                    return Err(Error::PositionOutsideCell { line: line_no, vertex: fields[1].to_string() });
                }
                if positions[v].is_some() {
                    return Err(parse_err(line_no, format!("second position for `{}`", fields[1])));
                }
                positions[v] = Some(p);
            }
            other => return Err(parse_err(line_no, format!("unknown directive `{other}`"))),
        }
    }
    if names.is_empty() {
        return Err(parse_err(0, "no vertices declared"));
    }
    let graph = LabeledQuotientGraph::with_names(names, edges)?;
    Ok(ParsedLqg { graph, positions })
}

impl LabeledQuotientGraph {
    /// Render in the text format accepted by [`parse_lqg`].
    pub fn to_lqg_text(&self, positions: Option<&[Rational3]>) -> String {
        use crate::rational::format_rational;
        let mut s = String::new();
        for n in self.names() {
            s.push_str(&format!("vertex {n}\n"));
        }
        for e in self.edges() {
            let [a, b, c] = e.label.0;
            s.push_str(&format!(
                "edge {} {} {a} {b} {c}\n",
                self.names()[e.tail],
                self.names()[e.head]
            ));
        }
        if let Some(ps) = positions {
            for (n, p) in self.names().iter().zip(ps) {
                let [x, y, z] = p.0.map(|c| format_rational(&c));
                s.push_str(&format!("pos {n} {x} {y} {z}\n"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PCU: &str = "vertex v\nedge v v 1 0 0\nedge v v 0 1 0\nedge v v 0 0 1\n";

    const EX31: &str = "\
# two-vertex depth-1 example
vertex v1
vertex v2
edge v1 v1 0 0 1
edge v1 v1 1 1 1
edge v2 v2 0 1 0
edge v2 v2 0 0 1
edge v1 v2 0 0 0
edge v1 v2 0 -1 -1
pos v1 0 0 0
pos v2 1/4 1/4 3/4
";

    #[test]
    fn parses_pcu() {
        let p = parse_lqg(PCU).unwrap();
        assert_eq!(p.graph.vertex_count(), 1);
        assert_eq!(p.graph.edges().len(), 3);
        assert!(p.graph.edges().iter().all(|e| e.is_loop()));
        assert_eq!(p.complete_positions(), None);
    }

    #[test]
    fn parses_two_vertex_example() {
        let p = parse_lqg(EX31).unwrap();
        assert_eq!(p.graph.vertex_count(), 2);
        assert_eq!(p.graph.edges().len(), 6);
        assert_eq!(p.graph.depth(), 1);
        let pos = p.complete_positions().unwrap();
        assert_eq!(pos[1], Rational3::from_fracs([(1, 4), (1, 4), (3, 4)]));
    }

    #[test]
    fn zero_loop_is_error_with_line() {
        let err = parse_lqg("vertex v1\nedge v1 v1 0 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn duplicate_edges_rejected() {
        let err = parse_lqg("vertex a\nvertex b\nedge a b 1 0 0\nedge b a -1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { line: 4, .. }));
        let err = parse_lqg("vertex a\nedge a a 0 0 1\nedge a a 0 0 -1\n").unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { line: 3, .. }));
    }

    #[test]
    fn position_outside_cell() {
        let err = parse_lqg("vertex a\npos a 1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::PositionOutsideCell { line: 2, .. }));
        let err = parse_lqg("vertex a\npos a 1/2 x 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse_lqg("vertex a\nedge a b 0 0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_lqg("vertex a\nedge a a 0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_lqg("node a\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_lqg("# nothing\n").is_err());
    }

    #[test]
    fn text_roundtrip() {
        let p = parse_lqg(EX31).unwrap();
        let pos = p.complete_positions().unwrap();
        let again = parse_lqg(&p.graph.to_lqg_text(Some(&pos))).unwrap();
        assert_eq!(again, p);
    }
}
