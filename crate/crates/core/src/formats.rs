//! Plain-text file formats. All formats are line oriented, UTF-8, with `#`
//! comment lines and blank lines ignored. Coordinates are deci-units.
//!
//! * graph: `n m`, then `m` lines `u v` with `0 <= u < v < n`
//! * points: `<id> <kind> <x> <y>`, kind one of `node joint sx sy sz`
//! * embedding: `v <id> <x> <y>` and `e <u> <v> <x1> <y1> ... <xk> <yk>`
//! * provenance: `<id> node <v>` | `<id> joint <e> <offset>` | `<id> support <v> <x|y|z>`
//! * solution: one id per line
//!
//! Writers emit exactly what the parsers accept, with no timestamps.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::embedding::GridEmbedding;
use crate::geometry::{Coord, PointKind, PointRecord, UdgInstance};
use crate::graph::{SimpleGraph, VertexSet};
use crate::reduction::{Origin, ReductionMap, SupportRole};

/// Largest vertex count or id accepted by the parsers.
pub const MAX_ID: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let t = raw.trim();
        (!t.is_empty() && !t.starts_with('#')).then(|| (i + 1, t.split_whitespace().collect()))
    })
}

fn int(line: usize, tok: &str, what: &str) -> Result<i64, ParseError> {
    tok.parse::<i64>()
        .or_else(|_| err(line, format!("{what} `{tok}` is not an integer")))
}

fn id(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    match tok.parse::<usize>() {
        Ok(v) if v < MAX_ID => Ok(v),
        Ok(_) => err(line, format!("{what} `{tok}` exceeds {MAX_ID}")),
        Err(_) => err(
            line,
            format!("{what} `{tok}` is not a non-negative integer"),
        ),
    }
}

fn coord(line: usize, xs: &str, ys: &str) -> Result<Coord, ParseError> {
    let c = Coord::new(int(line, xs, "x")?, int(line, ys, "y")?);
    if !c.in_range() {
        return err(line, format!("coordinate {c} exceeds the supported range"));
    }
    Ok(c)
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return err(0, "missing `n m` header");
    };
    let [ns, ms] = header[..] else {
        return err(hl, "header must be `n m`");
    };
    let n = id(hl, ns, "vertex count")?;
    let m = id(hl, ms, "edge count")?;
    let mut edges = Vec::with_capacity(m.min(1 << 16));
    let mut seen = BTreeSet::new();
    for (ln, toks) in lines {
        let [us, vs] = toks[..] else {
            return err(ln, "edge line must be `u v`");
        };
        let u = id(ln, us, "vertex")?;
        let v = id(ln, vs, "vertex")?;
        if u == v {
            return err(ln, format!("self-loop at {u}"));
        }
        if u > v {
            return err(
                ln,
                format!("edge endpoints must be ascending, got `{u} {v}`"),
            );
        }
        if v >= n {
            return err(ln, format!("vertex {v} out of range for n = {n}"));
        }
        if !seen.insert((u, v)) {
            return err(ln, format!("duplicate edge {u} {v}"));
        }
        if edges.len() == m {
            return err(ln, format!("more than the declared {m} edges"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return err(0, format!("declared {m} edges, found {}", edges.len()));
    }
    Ok(SimpleGraph::new(n, edges).expect("validated above"))
}

pub fn write_graph(g: &SimpleGraph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Point records in file order. Id density and distinct positions are checked
/// by [`crate::geometry::build_udg`].
pub fn parse_points(text: &str) -> Result<Vec<PointRecord>, ParseError> {
    let mut out = Vec::new();
    for (ln, toks) in content_lines(text) {
        let [ids, kinds, xs, ys] = toks[..] else {
            return err(ln, "point line must be `<id> <kind> <x> <y>`");
        };
        let pid = id(ln, ids, "point id")?;
        let kind: PointKind = kinds
            .parse()
            .or_else(|_| err(ln, format!("unknown point kind `{kinds}`")))?;
        out.push(PointRecord::new(pid, kind, coord(ln, xs, ys)?));
    }
    Ok(out)
}

pub fn write_points(inst: &UdgInstance) -> String {
    let mut s = String::from("# id kind x y (deci-units)\n");
    for p in inst.points() {
        let _ = writeln!(s, "{} {} {} {}", p.id, p.kind, p.pos.x, p.pos.y);
    }
    s
}

pub fn parse_embedding(text: &str) -> Result<GridEmbedding, ParseError> {
    let mut emb = GridEmbedding::new();
    for (ln, toks) in content_lines(text) {
        match toks[0] {
            "v" => {
                let [_, vs, xs, ys] = toks[..] else {
                    return err(ln, "vertex line must be `v <id> <x> <y>`");
                };
                let v = id(ln, vs, "vertex")?;
                if emb.vertex_pos.contains_key(&v) {
                    return err(ln, format!("vertex {v} placed twice"));
                }
                emb.place(v, coord(ln, xs, ys)?);
            }
            "e" => {
                if toks.len() < 7 || toks.len() % 2 == 0 {
                    return err(
                        ln,
                        "edge line must be `e <u> <v>` followed by at least two x y pairs",
                    );
                }
                let u = id(ln, toks[1], "vertex")?;
                let v = id(ln, toks[2], "vertex")?;
                if u == v {
                    return err(ln, format!("self-loop at {u}"));
                }
                if emb.path(u, v).is_some() {
                    return err(ln, format!("edge {u} {v} routed twice"));
                }
                let path = toks[3..]
                    .chunks(2)
                    .map(|xy| coord(ln, xy[0], xy[1]))
                    .collect::<Result<Vec<_>, _>>()?;
                emb.insert_path(u, v, path);
            }
            other => return err(ln, format!("unknown record `{other}` (expected v or e)")),
        }
    }
    Ok(emb)
}

pub fn write_embedding(emb: &GridEmbedding) -> String {
    let mut s = String::new();
    for (v, p) in &emb.vertex_pos {
        let _ = writeln!(s, "v {v} {} {}", p.x, p.y);
    }
    for ((u, v), path) in &emb.edge_paths {
        let _ = write!(s, "e {u} {v}");
        for p in path {
            let _ = write!(s, " {} {}", p.x, p.y);
        }
        s.push('\n');
    }
    s
}

/// Provenance lines in file order.
pub fn parse_provenance(text: &str) -> Result<Vec<(usize, Origin)>, ParseError> {
    let mut out = Vec::new();
    for (ln, toks) in content_lines(text) {
        let pid = id(ln, toks[0], "point id")?;
        let origin = match toks[1..] {
            ["node", v] => Origin::Node {
                vertex: id(ln, v, "vertex")?,
            },
            ["joint", e, off] => Origin::Joint {
                edge: id(ln, e, "edge")?,
                offset: int(ln, off, "offset")?,
            },
            ["support", v, role] => Origin::Support {
                vertex: id(ln, v, "vertex")?,
                role: match role {
                    "x" => SupportRole::X,
                    "y" => SupportRole::Y,
                    "z" => SupportRole::Z,
                    r => return err(ln, format!("unknown support role `{r}`")),
                },
            },
            _ => {
                return err(
                    ln,
                    "expected `node <v>`, `joint <e> <offset>` or `support <v> <x|y|z>`",
                )
            }
        };
        out.push((pid, origin));
    }
    Ok(out)
}

pub fn write_provenance(map: &ReductionMap) -> String {
    let mut s = String::from("# point-id origin\n");
    for (i, o) in map.origin.iter().enumerate() {
        let _ = writeln!(s, "{i} {o}");
    }
    s
}

pub fn parse_solution(text: &str) -> Result<VertexSet, ParseError> {
    let mut out = VertexSet::new();
    for (ln, toks) in content_lines(text) {
        let [tok] = toks[..] else {
            return err(ln, "solution line must hold a single id");
        };
        if !out.insert(id(ln, tok, "id")?) {
            return err(ln, format!("id {tok} listed twice"));
        }
    }
    Ok(out)
}

pub fn write_solution(s: &VertexSet) -> String {
    let mut out = String::new();
    for v in s {
        let _ = writeln!(out, "{v}");
    }
    out
}

/// Best guess at which format a file holds, from its first content line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Graph,
    Points,
    Embedding,
    Unknown,
}

pub fn sniff(text: &str) -> FileKind {
    match content_lines(text).next() {
        Some((_, t)) if t[0] == "v" || t[0] == "e" => FileKind::Embedding,
        Some((_, t)) if t.len() == 2 => FileKind::Graph,
        Some((_, t)) if t.len() == 4 => FileKind::Points,
        _ => FileKind::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_udg;
    use crate::reduction::{instances, reduce};
    use proptest::prelude::*;

    #[test]
    fn graph_round_trip_and_errors() {
        let g = parse_graph("# triangle\n3 3\n0 1\n0 2\n\n1 2\n").unwrap();
        assert_eq!(g, SimpleGraph::complete(3));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);

        for (bad, line) in [
            ("2 1\n0 0\n", 2),
            ("2 2\n0 1\n0 1\n", 3),
            ("2 1\n1 0\n", 2),
            ("2 1\n0 2\n", 2),
            ("2 1\n", 0),
            ("2 0\n0 1\n", 2),
            ("x 1\n", 1),
            ("", 0),
        ] {
            assert_eq!(parse_graph(bad).unwrap_err().line, line, "{bad:?}");
        }
    }

    #[test]
    fn points_parse() {
        let pts = parse_points("# a\n0 node 0 0\n1 sx -2 0\n").unwrap();
        assert_eq!(pts[1].kind, PointKind::SupportX);
        assert!(parse_points("0 blob 0 0\n").is_err());
        assert!(parse_points("0 node 0\n").is_err());
        assert!(parse_points("0 node 2000000000 0\n").is_err());
    }

    #[test]
    fn embedding_parse_errors() {
        assert!(parse_embedding("v 0 0 0\nv 0 40 0\n").is_err());
        assert!(parse_embedding("e 0 1 0 0\n").is_err());
        assert!(parse_embedding("e 0 1 0 0 40\n").is_err());
        assert!(parse_embedding("q 1\n").is_err());
        assert!(parse_embedding("e 0 1 0 0 40 0\ne 1 0 40 0 0 0\n").is_err());
    }

    #[test]
    fn reduction_files_round_trip() {
        let (g, e) = instances::k13();
        let red = reduce(&g, &e).unwrap();
        let pts = parse_points(&write_points(&red.instance)).unwrap();
        assert_eq!(build_udg(&pts).unwrap(), red.instance);
        let prov = parse_provenance(&write_provenance(&red.map)).unwrap();
        assert_eq!(
            prov.into_iter().map(|(_, o)| o).collect::<Vec<_>>(),
            red.map.origin
        );
        assert_eq!(parse_embedding(&write_embedding(&e)).unwrap(), e);
    }

    #[test]
    fn solution_parse() {
        let s = parse_solution("# sol\n3\n1\n").unwrap();
        assert_eq!(s, [1, 3].into_iter().collect());
        assert!(parse_solution("1\n1\n").is_err());
        assert!(parse_solution("1 2\n").is_err());
        assert_eq!(write_solution(&s), "1\n3\n");
    }

    #[test]
    fn sniffing() {
        assert_eq!(sniff("# c\n2 1\n0 1\n"), FileKind::Graph);
        assert_eq!(sniff("0 node 0 0\n"), FileKind::Points);
        assert_eq!(sniff("v 0 0 0\n"), FileKind::Embedding);
        assert_eq!(sniff(""), FileKind::Unknown);
    }

    proptest! {
        #[test]
        fn embedding_serialisation_round_trips(
            verts in proptest::collection::btree_map(0usize..50, (-100i64..100, -100i64..100), 0..8),
            paths in proptest::collection::vec((0usize..50, 0usize..50, proptest::collection::vec((-100i64..100, -100i64..100), 2..6)), 0..6),
        ) {
            let mut e = GridEmbedding::new();
            for (v, (x, y)) in verts {
                e.place(v, Coord::new(x * 40, y * 40));
            }
            for (u, v, pts) in paths {
                if u != v {
                    e.insert_path(u, v, pts.into_iter().map(|(x, y)| Coord::new(x, y)).collect());
                }
            }
            prop_assert_eq!(parse_embedding(&write_embedding(&e)).unwrap(), e);
        }

        #[test]
        fn parsers_never_panic(s in "\\PC{0,200}") {
            let _ = parse_graph(&s);
            let _ = parse_points(&s);
            let _ = parse_embedding(&s);
            let _ = parse_provenance(&s);
            let _ = parse_solution(&s);
        }
    }
}
