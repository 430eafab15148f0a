//! Random drawings shared by the integration tests.

#![allow(dead_code)]

use orchard_core::exact_geom::{find_degeneracy, orientation, ratio, rational_circle_point};
use orchard_core::search::random_drawing;
use orchard_core::{Drawing, Graph, Point, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random graph on `3..=max_vertices` vertices with at most `max_edges`
/// edges, drawn on a random general-position lattice placement.
pub fn random_graph_drawing(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> Drawing {
    let m = rng.gen_range(3..=max_vertices);
    let mut all: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    all.shuffle(rng);
    let k = rng.gen_range(1..=all.len().min(max_edges));
    all.truncate(k);
    let g = Graph::new(m, all).expect("valid graph");
    random_drawing(&g, 1 << 12, rng.gen())
}

fn cycle_graph_with_point(n: usize) -> Graph {
    Graph::new(n + 1, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

fn lattice(rng: &mut impl Rng, r: i64) -> Point {
    Point::from_ints(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// `C_n` on `n` random points of the unit circle in circular order, plus an
/// extra vertex `n`, strictly inside when `inside` and outside the circle
/// otherwise.
pub fn convex_cycle_with_point(rng: &mut impl Rng, n: usize, inside: bool) -> Drawing {
    loop {
        let mut ts: Vec<i64> = (0..n).map(|_| rng.gen_range(-4000..=4000)).collect();
        ts.sort_unstable();
        ts.dedup();
        if ts.len() < n {
            continue;
        }
        // Increasing tangent half-angles give increasing angles.
        let mut pts: Vec<Point> = ts.iter().map(|&t| rational_circle_point(&ratio(t, 1000))).collect();
        let p = if inside {
            let w: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=20)).collect();
            let total: i64 = w.iter().sum();
            let sum = |f: fn(&Point) -> &Rational| {
                pts.iter().zip(&w).map(|(q, &wi)| f(q) * Rational::from_integer(wi.into())).sum::<Rational>()
                    / Rational::from_integer(total.into())
            };
            Point::new(sum(|q| &q.x), sum(|q| &q.y))
        } else {
            let q = rational_circle_point(&ratio(rng.gen_range(-4000..=4000), 1000));
            let s = ratio(rng.gen_range(11..=40), 10);
            Point::new(&q.x * &s, &q.y * &s)
        };
        pts.push(p);
        if find_degeneracy(&pts).is_none() {
            return Drawing::new(cycle_graph_with_point(n), pts).expect("general position checked");
        }
    }
}

fn segments_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orientation(a, b, c).sign();
    let o2 = orientation(a, b, d).sign();
    let o3 = orientation(c, d, a).sign();
    let o4 = orientation(c, d, b).sign();
    o1 * o2 < 0 && o3 * o4 < 0
}

fn is_simple(poly: &[Point]) -> bool {
    let k = poly.len();
    for i in 0..k {
        for j in i + 1..k {
            let adjacent = j == i + 1 || (i == 0 && j == k - 1);
            if !adjacent && segments_cross(&poly[i], &poly[(i + 1) % k], &poly[j], &poly[(j + 1) % k]) {
                return false;
            }
        }
    }
    true
}

/// `C_n` as a random simple (usually non-convex) polygon on lattice points,
/// plus a random extra vertex `n` off its boundary.
pub fn simple_cycle_with_point(rng: &mut impl Rng, n: usize) -> Drawing {
    loop {
        let mut pts: Vec<Point> = (0..n).map(|_| lattice(rng, 1000)).collect();
        let (cx, cy) = pts.iter().map(Point::to_f64).fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let (cx, cy) = (cx / n as f64, cy / n as f64);
        pts.sort_by(|a, b| {
            let (ax, ay) = a.to_f64();
            let (bx, by) = b.to_f64();
            (ay - cy).atan2(ax - cx).total_cmp(&(by - cy).atan2(bx - cx))
        });
        if !is_simple(&pts) {
            continue;
        }
        pts.push(lattice(rng, 1500));
        if find_degeneracy(&pts).is_none() {
            return Drawing::new(cycle_graph_with_point(n), pts).expect("general position checked");
        }
    }
}
