//! JSON and SVG formats.
//!
//! Graph: `{"vertex_count": 4, "edges": [[0,1],...], "cycles": [[0,1,2,3]]}`
//! with `cycles` optional.
//!
//! Drawing: `{"graph": <graph>, "points": [[[xn,xd],[yn,yd]], ...]}` where
//! every coordinate is a numerator/denominator pair of JSON integers of any
//! size.
//!
//! SVG output is for looking at. Coordinates are rounded to floats for
//! display, and the exact drawing JSON is embedded in a comment so the file
//! can be read back losslessly.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::crossings::{edge_crossing_counts, Drawing};
use crate::error::{Error, Result};
use crate::exact_geom::{strictly_separates, Point, Rational};
use crate::graphs::Graph;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    cycles: Vec<Vec<usize>>,
}

impl GraphJson {
    fn from_graph(g: &Graph) -> Self {
        GraphJson {
            vertex_count: g.vertex_count(),
            edges: g.edges().iter().map(|&(s, t)| [s, t]).collect(),
            cycles: g.tagged_cycles().to_vec(),
        }
    }

    fn into_graph(self) -> Result<Graph> {
        Graph::new(self.vertex_count, self.edges.into_iter().map(|[s, t]| (s, t)))?
            .with_cycles(self.cycles)
    }
}

/// A rational as `[numerator, denominator]`, both exact JSON integers.
struct RationalJson(Rational);

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let num = serde_json::Number::from_str(&self.0.numer().to_string())
            .map_err(serde::ser::Error::custom)?;
        let den = serde_json::Number::from_str(&self.0.denom().to_string())
            .map_err(serde::ser::Error::custom)?;
        (num, den).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (num, den) = <(serde_json::Number, serde_json::Number)>::deserialize(deserializer)?;
        let parse = |n: &serde_json::Number| {
            BigInt::from_str(&n.to_string())
                .map_err(|_| D::Error::custom(format!("{n} is not an integer")))
        };
        let (num, den) = (parse(&num)?, parse(&den)?);
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(RationalJson(Rational::new(num, den)))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrawingJson {
    graph: GraphJson,
    points: Vec<[RationalJson; 2]>,
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    serde_json::from_str::<GraphJson>(text)?.into_graph()
}

fn drawing_json(d: &Drawing) -> DrawingJson {
    DrawingJson {
        graph: GraphJson::from_graph(d.graph()),
        points: d
            .placement()
            .iter()
            .map(|p| [RationalJson(p.x.clone()), RationalJson(p.y.clone())])
            .collect(),
    }
}

/// Compact single-line JSON.
pub fn drawing_to_json(d: &Drawing) -> String {
    serde_json::to_string(&drawing_json(d)).expect("drawing serializes")
}

pub fn drawing_to_json_pretty(d: &Drawing) -> String {
    serde_json::to_string_pretty(&drawing_json(d)).expect("drawing serializes")
}

/// Parses and validates a drawing. Structural problems come back as
/// [`Error::Json`] or [`Error::InvalidGraph`], placements that are not in
/// general position as [`Error::GeneralPosition`].
pub fn drawing_from_json(text: &str) -> Result<Drawing> {
    let raw: DrawingJson = serde_json::from_str(text)?;
    let graph = raw.graph.into_graph()?;
    let points = raw
        .points
        .into_iter()
        .map(|[x, y]| Point::new(x.0, y.0))
        .collect();
    Drawing::new(graph, points)
}

const SVG_MARKER: &str = "orchard-drawing-json";

/// Reads a drawing from JSON or from an SVG written by [`drawing_to_svg`].
pub fn read_drawing(text: &str) -> Result<Drawing> {
    if text.trim_start().starts_with('<') {
        let start = text
            .find(SVG_MARKER)
            .ok_or_else(|| Error::Format("SVG has no embedded drawing".into()))?
            + SVG_MARKER.len();
        let end = text[start..]
            .find("-->")
            .ok_or_else(|| Error::Format("unterminated drawing comment".into()))?;
        drawing_from_json(text[start..start + end].trim())
    } else {
        drawing_from_json(text)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SvgOptions {
    /// Draw every line spanned by two points and mark its crossings.
    pub show_lines: bool,
    pub size: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { show_lines: false, size: 640.0 }
    }
}

/// Renders a drawing as SVG 1.1.
pub fn drawing_to_svg(d: &Drawing, opts: SvgOptions) -> String {
    let pts: Vec<(f64, f64)> = d.placement().iter().map(Point::to_f64).collect();
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    if pts.is_empty() {
        (min_x, min_y, max_x, max_y) = (0.0, 0.0, 1.0, 1.0);
    }
    let margin = 32.0;
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = (opts.size - 2.0 * margin) / span;
    // SVG y grows downwards.
    let to_svg = |(x, y): (f64, f64)| (margin + (x - min_x) * scale, opts.size - margin - (y - min_y) * scale);

    let counts = edge_crossing_counts(d);
    let total: u64 = counts.iter().sum();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = opts.size
    );
    let _ = writeln!(out, "<!-- {SVG_MARKER}\n{}\n-->", drawing_to_json(d));
    let _ = writeln!(out, "<title>{} vertices, {} edges, {total} Orchard crossings</title>",
        d.graph().vertex_count(), d.graph().edges().len());
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    if opts.show_lines {
        let _ = writeln!(out, r##"<g stroke="#bbbbbb" stroke-width="0.5">"##);
        let m = pts.len();
        for u in 0..m {
            for v in u + 1..m {
                let (a, b) = (to_svg(pts[u]), to_svg(pts[v]));
                let (dx, dy) = (b.0 - a.0, b.1 - a.1);
                let len = (dx * dx + dy * dy).sqrt().max(1e-9);
                let ext = 4.0 * opts.size / len;
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                    a.0 - dx * ext, a.1 - dy * ext, b.0 + dx * ext, b.1 + dy * ext
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, r#"<g stroke="black" stroke-width="2">"#);
    for (&(s, t), c) in d.graph().edges().iter().zip(&counts) {
        let (a, b) = (to_svg(pts[s]), to_svg(pts[t]));
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"><title>({s}, {t}): {c}</title></line>"#,
            a.0, a.1, b.0, b.1
        );
    }
    let _ = writeln!(out, "</g>");

    if opts.show_lines {
        let _ = writeln!(out, r#"<g fill="red">"#);
        let placement = d.placement();
        let m = placement.len();
        for &(s, t) in d.graph().edges() {
            for u in 0..m {
                for v in u + 1..m {
                    if strictly_separates(&placement[u], &placement[v], &placement[s], &placement[t]) {
                        if let Some(p) = line_segment_point(pts[u], pts[v], pts[s], pts[t]) {
                            let (x, y) = to_svg(p);
                            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5"/>"#);
                        }
                    }
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="12">"#);
    for (i, &p) in pts.iter().enumerate() {
        let (x, y) = to_svg(p);
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="steelblue" stroke="black"/><text x="{:.2}" y="{:.2}">{i}</text>"#,
            x + 7.0,
            y - 7.0
        );
    }
    let _ = writeln!(out, "</g>\n</svg>");
    out
}

/// Display-only intersection of line `uv` with segment `st`.
fn line_segment_point(u: (f64, f64), v: (f64, f64), s: (f64, f64), t: (f64, f64)) -> Option<(f64, f64)> {
    let side = |p: (f64, f64)| (v.0 - u.0) * (p.1 - u.1) - (v.1 - u.1) * (p.0 - u.0);
    let (fs, ft) = (side(s), side(t));
    let denom = fs - ft;
    if denom == 0.0 {
        return None;
    }
    let k = fs / denom;
    Some((s.0 + k * (t.0 - s.0), s.1 + k * (t.1 - s.1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_geom::ratio;
    use crate::graphs::{generate, FamilySpec};

    fn sample() -> Drawing {
        let g = generate(&FamilySpec::cycle(3)).unwrap();
        let huge = BigInt::from(7).pow(60);
        let pts = vec![
            Point::new(ratio(-1, 3), ratio(0, 1)),
            Point::new(Rational::new(huge.clone(), huge + 1), ratio(5, 2)),
            Point::from_ints(2, -9),
        ];
        Drawing::new(g, pts).unwrap()
    }

    #[test]
    fn drawing_json_round_trip_is_exact() {
        let d = sample();
        let text = drawing_to_json(&d);
        assert_eq!(drawing_from_json(&text).unwrap(), d);
        assert_eq!(drawing_from_json(&drawing_to_json_pretty(&d)).unwrap(), d);
    }

    #[test]
    fn graph_json_keeps_cycles() {
        let g = generate(&FamilySpec::prism(4)).unwrap();
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(back, g);
        let plain = graph_from_json(r#"{"vertex_count":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert!(plain.tagged_cycles().is_empty());
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(drawing_from_json("{"), Err(Error::Json(_))));
        let frac = r#"{"graph":{"vertex_count":1,"edges":[]},"points":[[[1.5,1],[0,1]]]}"#;
        assert!(matches!(drawing_from_json(frac), Err(Error::Json(_))));
        let zero = r#"{"graph":{"vertex_count":1,"edges":[]},"points":[[[1,0],[0,1]]]}"#;
        assert!(matches!(drawing_from_json(zero), Err(Error::Json(_))));
        let collinear = r#"{"graph":{"vertex_count":3,"edges":[[0,1]]},
            "points":[[[0,1],[0,1]],[[1,1],[0,1]],[[2,1],[0,1]]]}"#;
        assert!(matches!(drawing_from_json(collinear), Err(Error::GeneralPosition(_))));
    }

    #[test]
    fn svg_embeds_recoverable_drawing() {
        let d = sample();
        let svg = drawing_to_svg(&d, SvgOptions { show_lines: true, ..Default::default() });
        assert!(svg.contains("<svg"));
        assert_eq!(read_drawing(&svg).unwrap(), d);
        assert!(read_drawing("<svg></svg>").is_err());
    }
}
