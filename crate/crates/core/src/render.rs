//! Deterministic SVG 1.1 output for embeddings and point sets.
//!
//! The y axis points up (flipped relative to SVG). Node points are filled
//! circles, joints filled squares and supports open circles; lattice lines are
//! drawn every 40 deci-units. All numbers are integers, so output is
//! byte-identical across runs.

use std::fmt::Write as _;

use crate::embedding::{GridEmbedding, GRID};
use crate::geometry::{Coord, PointKind, UdgInstance};

/// Pixels per deci-unit.
const PX: i64 = 4;
/// Margin around the drawing, in deci-units.
const MARGIN: i64 = 20;

struct Frame {
    min: Coord,
    max: Coord,
}

impl Frame {
    fn around(points: impl IntoIterator<Item = Coord>) -> Self {
        let mut it = points.into_iter();
        let first = it.next().unwrap_or_default();
        let (mut min, mut max) = (first, first);
        for p in it {
            min = Coord::new(min.x.min(p.x), min.y.min(p.y));
            max = Coord::new(max.x.max(p.x), max.y.max(p.y));
        }
        Frame {
            min: Coord::new(min.x - MARGIN, min.y - MARGIN),
            max: Coord::new(max.x + MARGIN, max.y + MARGIN),
        }
    }

    fn x(&self, x: i64) -> i64 {
        (x - self.min.x) * PX
    }

    fn y(&self, y: i64) -> i64 {
        (self.max.y - y) * PX
    }

    fn open(&self) -> String {
        let w = (self.max.x - self.min.x) * PX;
        let h = (self.max.y - self.min.y) * PX;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        s.push_str(r##"<g stroke="#dddddd" stroke-width="1">"##);
        s.push('\n');
        let gx0 = self.min.x.div_euclid(GRID) * GRID;
        let gy0 = self.min.y.div_euclid(GRID) * GRID;
        let mut gx = gx0;
        while gx <= self.max.x {
            if gx >= self.min.x {
                let _ = writeln!(
                    s,
                    r#"<line x1="{0}" y1="0" x2="{0}" y2="{h}"/>"#,
                    self.x(gx)
                );
            }
            gx += GRID;
        }
        let mut gy = gy0;
        while gy <= self.max.y {
            if gy >= self.min.y {
                let _ = writeln!(
                    s,
                    r#"<line x1="0" y1="{0}" x2="{w}" y2="{0}"/>"#,
                    self.y(gy)
                );
            }
            gy += GRID;
        }
        s.push_str("</g>\n");
        s
    }
}

pub fn render_embedding(emb: &GridEmbedding) -> String {
    let frame = Frame::around(
        emb.vertex_pos
            .values()
            .copied()
            .chain(emb.edge_paths.values().flatten().copied()),
    );
    let mut s = frame.open();
    s.push_str(r#"<g fill="none" stroke="black" stroke-width="3">"#);
    s.push('\n');
    for path in emb.edge_paths.values() {
        let pts: Vec<String> = path
            .iter()
            .map(|p| format!("{},{}", frame.x(p.x), frame.y(p.y)))
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}"/>"#, pts.join(" "));
    }
    s.push_str("</g>\n");
    for (v, p) in &emb.vertex_pos {
        let (x, y) = (frame.x(p.x), frame.y(p.y));
        let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="12" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="20">{v}</text>"#,
            x + 14,
            y - 14
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn render_points(inst: &UdgInstance) -> String {
    let frame = Frame::around(inst.points().iter().map(|p| p.pos));
    let mut s = frame.open();
    s.push_str(r##"<g stroke="#4477aa" stroke-width="1">"##);
    s.push('\n');
    for (a, b) in inst.edges() {
        let (pa, pb) = (inst.points()[a].pos, inst.points()[b].pos);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            frame.x(pa.x),
            frame.y(pa.y),
            frame.x(pb.x),
            frame.y(pb.y)
        );
    }
    s.push_str("</g>\n");
    for p in inst.points() {
        let (x, y) = (frame.x(p.pos.x), frame.y(p.pos.y));
        let _ = match p.kind {
            PointKind::Node => writeln!(s, r#"<circle cx="{x}" cy="{y}" r="6" fill="black"/>"#),
            PointKind::Joint => writeln!(
                s,
                r#"<rect x="{}" y="{}" width="10" height="10" fill="black"/>"#,
                x - 5,
                y - 5
            ),
            _ => writeln!(
                s,
                r#"<circle cx="{x}" cy="{y}" r="3" fill="white" stroke="black" stroke-width="1"/>"#
            ),
        };
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{instances, reduce};

    #[test]
    fn shapes_follow_point_kinds() {
        let (g, e) = instances::k2();
        let red = reduce(&g, &e).unwrap();
        let svg = render_points(&red.instance);
        assert_eq!(svg.matches("<rect x=").count(), 4);
        assert_eq!(svg.matches(r#"fill="white" stroke"#).count(), 6);
        assert_eq!(svg.matches(r#"r="6" fill="black""#).count(), 2);
        assert_eq!(svg, render_points(&red.instance));
        assert!(svg.starts_with("<?xml"));
    }

    #[test]
    fn embedding_svg_is_deterministic() {
        let (_, e) = instances::k13();
        let svg = render_embedding(&e);
        assert_eq!(svg, render_embedding(&e));
        assert_eq!(svg.matches("<polyline").count(), 3);
    }
}
