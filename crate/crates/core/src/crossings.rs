//! Orchard crossing counts.
//!
//! An edge `(s, t)` of a drawing is crossed once by every line spanned by a
//! pair of drawing points `{u, v}` that strictly separates `s` from `t`.
//! Every pair of points spans a line, whether or not it is an edge. Lines
//! through `s` or `t` never count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_geom::{
    self, circle_parameter_near, common_denominator_coords, orient_big, orient_i64, orientation,
    rational_circle_point, strictly_separates, Orientation, Point, SMALL_COORD_LIMIT,
};
use crate::graphs::{cycle_edges, Edge, Graph};
use num_traits::ToPrimitive;

/// A rectilinear drawing: a graph plus one point per vertex, in general
/// position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    graph: Graph,
    placement: Vec<Point>,
}

impl Drawing {
    pub fn new(graph: Graph, placement: Vec<Point>) -> Result<Self> {
        if placement.len() != graph.vertex_count() {
            return Err(Error::Usage(format!(
                "placement has {} points for {} vertices",
                placement.len(),
                graph.vertex_count()
            )));
        }
        if let Some(d) = exact_geom::find_degeneracy(&placement) {
            return Err(Error::GeneralPosition(d));
        }
        Ok(Drawing { graph, placement })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn placement(&self) -> &[Point] {
        &self.placement
    }

    pub fn point(&self, v: usize) -> &Point {
        &self.placement[v]
    }

    pub fn into_parts(self) -> (Graph, Vec<Point>) {
        (self.graph, self.placement)
    }
}

/// Crossings on one edge, evaluated directly with rational predicates.
pub fn edge_crossings(d: &Drawing, edge: Edge) -> Result<u64> {
    let (s, t) = edge;
    if !d.graph.has_edge(s, t) {
        return Err(Error::Usage(format!("({s}, {t}) is not an edge of the graph")));
    }
    Ok(edge_crossings_unchecked(d, s, t))
}

fn edge_crossings_unchecked(d: &Drawing, s: usize, t: usize) -> u64 {
    let pts = &d.placement;
    let (ps, pt) = (&pts[s], &pts[t]);
    let m = pts.len();
    let mut count = 0;
    for u in 0..m {
        for v in u + 1..m {
            if strictly_separates(&pts[u], &pts[v], ps, pt) {
                count += 1;
            }
        }
    }
    count
}

/// Reference total: every edge against every pair, rational predicates only.
pub fn total_crossings_naive(d: &Drawing) -> u64 {
    d.graph
        .edges()
        .iter()
        .map(|&(s, t)| edge_crossings_unchecked(d, s, t))
        .sum()
}

/// Sum of edge crossings over all edges.
pub fn total_crossings(d: &Drawing) -> u64 {
    edge_crossing_counts(d).iter().sum()
}

/// Per-edge crossing counts, in the order of `d.graph().edges()`.
///
/// Scales all points to a common integer denominator, then for every line
/// computes each point's side once and scans the edges: `O(V^2 (V + E))`.
pub fn edge_crossing_counts(d: &Drawing) -> Vec<u64> {
    let ints = common_denominator_coords(&d.placement);
    let small: Option<Vec<(i64, i64)>> = ints
        .iter()
        .map(|(x, y)| {
            let (x, y) = (x.to_i64()?, y.to_i64()?);
            (x.abs() < SMALL_COORD_LIMIT && y.abs() < SMALL_COORD_LIMIT).then_some((x, y))
        })
        .collect();
    let edges = d.graph.edges();
    match small {
        Some(pts) => count_by_lines(pts.len(), edges, |u, v, w| orient_i64(pts[u], pts[v], pts[w])),
        None => count_by_lines(ints.len(), edges, |u, v, w| orient_big(&ints[u], &ints[v], &ints[w])),
    }
}

const PARALLEL_LINE_THRESHOLD: usize = 256;

fn count_by_lines<F>(m: usize, edges: &[Edge], orient: F) -> Vec<u64>
where
    F: Fn(usize, usize, usize) -> i8 + Sync,
{
    let per_line = |u: usize, v: usize, side: &mut Vec<i8>, acc: &mut Vec<u64>| {
        side.clear();
        side.extend((0..m).map(|w| orient(u, v, w)));
        for (k, &(s, t)) in edges.iter().enumerate() {
            if side[s] * side[t] == -1 {
                acc[k] += 1;
            }
        }
    };
    let lines = m * m.saturating_sub(1) / 2;
    if lines < PARALLEL_LINE_THRESHOLD {
        let mut acc = vec![0u64; edges.len()];
        let mut side = Vec::with_capacity(m);
        for u in 0..m {
            for v in u + 1..m {
                per_line(u, v, &mut side, &mut acc);
            }
        }
        acc
    } else {
        // One partial vector per first line endpoint; summed in index order.
        (0..m)
            .into_par_iter()
            .map(|u| {
                let mut acc = vec![0u64; edges.len()];
                let mut side = Vec::with_capacity(m);
                for v in u + 1..m {
                    per_line(u, v, &mut side, &mut acc);
                }
                acc
            })
            .reduce(
                || vec![0u64; edges.len()],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    }
}

/// Even-odd containment of `p` in the closed polygon `polygon`.
/// Returns `None` when `p` lies on the boundary.
pub fn point_in_polygon(p: &Point, polygon: &[Point]) -> Option<bool> {
    let k = polygon.len();
    let mut inside = false;
    for i in 0..k {
        let a = &polygon[i];
        let b = &polygon[(i + 1) % k];
        let o = orientation(a, b, p);
        if o == Orientation::Collinear {
            let within = |lo: &_, hi: &_, v: &_| {
                (lo <= v && v <= hi) || (hi <= v && v <= lo)
            };
            if within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y) {
                return None;
            }
        }
        let upward = a.y <= p.y && p.y < b.y && o == Orientation::CounterClockwise;
        let downward = b.y <= p.y && p.y < a.y && o == Orientation::Clockwise;
        if upward || downward {
            inside = !inside;
        }
    }
    Some(inside)
}

/// Crossings on the edges of `cycle` made by the lines joining `p` to the
/// cycle's own vertices.
pub fn point_cycle_contribution(d: &Drawing, cycle: &[usize], p: usize) -> Result<u64> {
    if cycle.contains(&p) {
        return Err(Error::Usage(format!("vertex {p} lies on the cycle")));
    }
    d.graph.check_cycle(cycle)?;
    let pts = &d.placement;
    let mut count = 0;
    for &v in cycle {
        for (s, t) in cycle_edges(cycle) {
            if strictly_separates(&pts[p], &pts[v], &pts[s], &pts[t]) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// A cyclic vertex order standing for a convex-position drawing. Stored in
/// canonical form: starts at vertex 0 and the second entry is smaller than
/// the last, so each order and its reversal share one representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircularOrder {
    order: Vec<usize>,
}

impl CircularOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let m = order.len();
        let mut seen = vec![false; m];
        for &v in &order {
            if v >= m || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Usage(format!("{order:?} is not a permutation of 0..{m}")));
            }
        }
        Ok(CircularOrder { order: canonicalize(order) })
    }

    /// The identity order `0, 1, ..., m-1`.
    pub fn natural(m: usize) -> Self {
        CircularOrder { order: (0..m).collect() }
    }

    pub(crate) fn from_canonical_unchecked(order: Vec<usize>) -> Self {
        CircularOrder { order }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Position of each vertex along the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Places the vertices on rational points of the unit circle, evenly
    /// spread in angle, in this order.
    pub fn circle_placement(&self) -> Vec<Point> {
        let m = self.order.len();
        let denominator = if m <= 256 { 1 << 12 } else { 1 << 24 };
        let mut params: Vec<_> = (0..m)
            .map(|k| {
                let angle = -std::f64::consts::PI
                    + (2 * k + 1) as f64 * std::f64::consts::PI / m as f64;
                circle_parameter_near(angle, denominator)
            })
            .collect();
        params.dedup();
        assert_eq!(params.len(), m, "circle parameters collided");
        let mut placement = vec![Point::from_ints(0, 0); m];
        for (k, t) in params.iter().enumerate() {
            placement[self.order[k]] = rational_circle_point(t);
        }
        placement
    }

    /// The convex drawing of `g` realized by this order.
    pub fn realize(&self, g: &Graph) -> Result<Drawing> {
        if self.order.len() != g.vertex_count() {
            return Err(Error::Usage(format!(
                "order has {} vertices, graph has {}",
                self.order.len(),
                g.vertex_count()
            )));
        }
        Drawing::new(g.clone(), self.circle_placement())
    }
}

fn canonicalize(mut order: Vec<usize>) -> Vec<usize> {
    if order.len() < 3 {
        order.sort_unstable();
        return order;
    }
    let start = order.iter().position(|&v| v == 0).unwrap_or(0);
    order.rotate_left(start);
    if order[1] > order[order.len() - 1] {
        order[1..].reverse();
    }
    order
}

/// Crossings of the convex drawing realized by `ord`, computed from the
/// order alone.
///
/// For an edge whose endpoints have `a` vertices strictly between them on
/// one side of the circle and `b = m - 2 - a` on the other, the crossing
/// lines are exactly those joining one vertex from each side: `a * b`.
pub fn convex_crossings(g: &Graph, ord: &CircularOrder) -> Result<u64> {
    let m = g.vertex_count();
    if ord.len() != m {
        return Err(Error::Usage(format!("order has {} vertices, graph has {m}", ord.len())));
    }
    Ok(convex_crossings_with_positions(g.edges(), &ord.positions(), m))
}

#[inline]
pub(crate) fn convex_crossings_with_positions(edges: &[Edge], pos: &[usize], m: usize) -> u64 {
    edges
        .iter()
        .map(|&(s, t)| {
            let a = pos[s].abs_diff(pos[t]) - 1;
            (a * (m - 2 - a)) as u64
        })
        .sum()
}
