//! Explicit low-crossing drawings for the cycle families.
//!
//! Every constructor returns an exact [`Drawing`] in the canonical vertex
//! numbering of [`crate::graphs`]. Constructions whose count is pinned by a
//! closed form check it before returning.

use std::collections::HashSet;
use std::f64::consts::PI;

use crate::bounds::formula_value;
use crate::crossings::{total_crossings, CircularOrder, Drawing};
use crate::error::{Error, Result};
use crate::exact_geom::{circle_parameter_near, orientation, rational_circle_point, Point};
use crate::graphs::{generate, Edge, Family, FamilySpec};
use crate::io;

fn construction_error(spec: &FamilySpec, reason: impl Into<String>) -> Error {
    Error::Construction { family: spec.to_string(), reason: reason.into() }
}

fn expect_formula(spec: &FamilySpec, d: Drawing) -> Result<Drawing> {
    let expected = formula_value(spec)?.exact;
    let achieved = total_crossings(&d);
    match expected {
        Some(e) if e != achieved => Err(construction_error(
            spec,
            format!("expected {e} crossings, placement gives {achieved}"),
        )),
        _ => Ok(d),
    }
}

/// All vertices on a circle, each cycle occupying a contiguous arc and
/// traversed along it, so that only its closing chord is interior.
pub fn convex_blocks(spec: &FamilySpec) -> Result<Drawing> {
    match spec.family {
        Family::Cycle | Family::DisjointCycles | Family::ClosedChain | Family::OpenChain => {}
        other => {
            return Err(Error::Usage(format!("convex_blocks does not apply to the {other} family")))
        }
    }
    let g = generate(spec)?;
    // Canonical numbering already lists each cycle as a contiguous run.
    let d = CircularOrder::natural(g.vertex_count()).realize(&g)?;
    expect_formula(spec, d)
}

const ANGLE_DENOMINATOR: i64 = 1 << 16;

fn circle_point_at(angle: f64) -> Point {
    // Keep the angle in (-pi, pi] so the tangent half-angle parameter stays finite.
    let a = (angle + PI).rem_euclid(2.0 * PI) - PI;
    rational_circle_point(&circle_parameter_near(a, ANGLE_DENOMINATOR))
}

/// The hub of each cycle sits at the origin, the other vertices on the unit
/// circle with every cycle's vertices forming one arc (block). Block `k` of
/// `b` is centred at `2 pi k / b + pi / (4 b^2)` with half-width `pi / (4 b)`.
///
/// The spokes of `K_{n,1}` use a perturbed regular `n`-gon instead: leaf `k`
/// at `2 pi k / n + k pi / (4 n^2)`, which avoids antipodal leaf pairs.
///
/// For cycle families the double wedge through the hub spanned by each
/// block must contain no other vertex. Otherwise the block's chords pick up
/// crossings from spoke lines, and the construction is refused.
pub fn central_star(spec: &FamilySpec) -> Result<Drawing> {
    let g = generate(spec)?;
    let mut placement = vec![Point::from_ints(0, 0)];
    match spec.family {
        Family::StarKn1 => {
            let n = spec.n as f64;
            for k in 0..spec.n {
                let k = k as f64;
                placement.push(circle_point_at(2.0 * PI * k / n + k * PI / (4.0 * n * n)));
            }
            let d = Drawing::new(g, placement)?;
            return expect_formula(spec, d);
        }
        Family::TriangleBouquet | Family::ThreeCyclesCommonVertex => {}
        other => {
            return Err(Error::Usage(format!("central_star does not apply to the {other} family")))
        }
    }
    let blocks = spec.x as usize;
    let per_block = (g.vertex_count() - 1) / blocks;
    let b = blocks as f64;
    let half_width = PI / (4.0 * b);
    for k in 0..blocks {
        let centre = 2.0 * PI * k as f64 / b + PI / (4.0 * b * b);
        for i in 0..per_block {
            let frac = i as f64 / (per_block - 1) as f64;
            placement.push(circle_point_at(centre - half_width + 2.0 * half_width * frac));
        }
    }
    check_wedges(spec, &placement, blocks, per_block)?;
    let d = Drawing::new(g, placement)?;
    expect_formula(spec, d)
}

fn check_wedges(spec: &FamilySpec, placement: &[Point], blocks: usize, per_block: usize) -> Result<()> {
    let hub = &placement[0];
    for k in 0..blocks {
        let first = 1 + k * per_block;
        let last = first + per_block - 1;
        let (a, b) = (&placement[first], &placement[last]);
        for q in (1..placement.len()).filter(|q| !(first..=last).contains(q)) {
            let sa = orientation(hub, a, &placement[q]).sign();
            let sb = orientation(hub, b, &placement[q]).sign();
            if sa * sb <= 0 {
                return Err(construction_error(
                    spec,
                    format!(
                        "vertex {q} lies in the double wedge of block {k}; \
                         no placement of equal blocks around the hub avoids this"
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// Hull positions of the two-color `2n`-gon: position `k` is white when
/// `k / 2` is even, except that for odd `n` the last two positions are
/// one white and one black.
fn two_color_whites(n: usize) -> Vec<bool> {
    let m = 2 * n;
    (0..m)
        .map(|k| {
            if n % 2 == 1 && k >= m - 2 {
                k == m - 2
            } else {
                (k / 2) % 2 == 0
            }
        })
        .collect()
}

struct TwoColorLayout {
    n: usize,
    /// White positions in hull order.
    whites: Vec<usize>,
    /// Rung partner of every hull position.
    partner: Vec<usize>,
}

impl TwoColorLayout {
    fn new(n: usize) -> Self {
        let m = 2 * n;
        let white = two_color_whites(n);
        let whites: Vec<usize> = (0..m).filter(|&k| white[k]).collect();
        let mut partner = vec![usize::MAX; m];
        for k in 0..m {
            let j = (k + 1) % m;
            // For odd n the lone white/black hull edge is not a rung.
            let lone_pair = n % 2 == 1 && k == m - 2;
            if white[k] != white[j] && !lone_pair {
                partner[k] = j;
                partner[j] = k;
            }
        }
        debug_assert!(partner.iter().all(|&p| p != usize::MAX));
        TwoColorLayout { n, whites, partner }
    }

    /// Number of hull positions strictly between `p` and `q` on the short side.
    fn gap(&self, p: usize, q: usize) -> usize {
        let m = 2 * self.n;
        let d = p.abs_diff(q);
        d.min(m - d) - 1
    }

    /// Canonical vertex -> hull position, starting the white cycle at
    /// `whites[start]`: vertex `i` is the `i`-th white after it, vertex
    /// `n + i` its rung partner.
    fn positions(&self, start: usize) -> Vec<usize> {
        let n = self.n;
        let mut pos = vec![0; 2 * n];
        for i in 0..n {
            let w = self.whites[(start + i) % n];
            pos[i] = w;
            pos[n + i] = self.partner[w];
        }
        pos
    }
}

fn placement_from_positions(pos: &[usize]) -> Vec<Point> {
    let hull = CircularOrder::natural(pos.len()).circle_placement();
    pos.iter().map(|&p| hull[p].clone()).collect()
}

/// Checks that the drawn hull-position edges are exactly the canonical
/// edges of `spec` under `pos`.
fn check_wiring(spec: &FamilySpec, pos: &[usize], drawn: &HashSet<Edge>) -> Result<()> {
    let g = generate(spec)?;
    let mapped: HashSet<Edge> = g
        .edges()
        .iter()
        .map(|&(s, t)| (pos[s].min(pos[t]), pos[s].max(pos[t])))
        .collect();
    if &mapped != drawn {
        return Err(construction_error(spec, "two-color wiring does not realize the graph"));
    }
    Ok(())
}

fn drawn_edges(layout: &TwoColorLayout, omitted: &[Edge]) -> HashSet<Edge> {
    let n = layout.n;
    let m = 2 * n;
    let white = two_color_whites(n);
    let mut edges = HashSet::new();
    for color in [true, false] {
        let ring: Vec<usize> = (0..m).filter(|&k| white[k] == color).collect();
        for i in 0..n {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    for k in 0..m {
        let p = layout.partner[k];
        edges.insert((k.min(p), k.max(p)));
    }
    for e in omitted {
        edges.remove(&(e.0.min(e.1), e.0.max(e.1)));
    }
    edges
}

/// Prism drawing on a regular `2n`-gon colored two whites, two blacks,
/// and so on. Each color class is joined to its next same-colored hull
/// neighbor, and rungs fill the white/black hull edges. For odd `n` the
/// hull edge between the final lone white and lone black is not drawn; all
/// `n` rungs are then still hull edges, so no choice of wiring remains.
pub fn prism_two_color(n: usize) -> Result<Drawing> {
    let spec = FamilySpec::prism(n as u32);
    if n <= 4 {
        return Err(Error::Usage(format!("prism_two_color needs n > 4; use small_case for P{n}")));
    }
    let layout = TwoColorLayout::new(n);
    let pos = layout.positions(0);
    check_wiring(&spec, &pos, &drawn_edges(&layout, &[]))?;
    let d = Drawing::new(generate(&spec)?, placement_from_positions(&pos))?;
    let expected = formula_value(&spec)?.upper;
    let achieved = total_crossings(&d);
    if achieved != expected {
        return Err(construction_error(&spec, format!("expected {expected}, got {achieved}")));
    }
    Ok(d)
}

/// Ladder drawing: the prism two-color drawing minus one white and one
/// black edge of a common four-cycle. For even `n` one omitted edge is an
/// interior chord and the other a hull edge; for odd `n` both are the
/// chords that skip a single hull vertex.
pub fn ladder_two_color(n: usize) -> Result<Drawing> {
    let spec = FamilySpec::ladder(n as u32);
    if n <= 5 {
        return Err(Error::Usage(format!("ladder_two_color needs n > 5; use small_case for L{n}")));
    }
    let layout = TwoColorLayout::new(n);
    let start = (0..n)
        .find(|&r| {
            let w0 = layout.whites[(r + n - 1) % n];
            let w1 = layout.whites[r];
            let (b0, b1) = (layout.partner[w0], layout.partner[w1]);
            let (gw, gb) = (layout.gap(w0, w1), layout.gap(b0, b1));
            if n.is_multiple_of(2) {
                (gw == 0) != (gb == 0)
            } else {
                gw == 1 && gb == 1
            }
        })
        .ok_or_else(|| construction_error(&spec, "no four-cycle matches the omission rule"))?;
    let pos = layout.positions(start);
    // Canonical ladder = prism without the edges (n-1, 0) and (2n-1, n).
    let omitted = [(pos[n - 1], pos[0]), (pos[2 * n - 1], pos[n])];
    check_wiring(&spec, &pos, &drawn_edges(&layout, &omitted))?;
    let d = Drawing::new(generate(&spec)?, placement_from_positions(&pos))?;
    let expected = formula_value(&spec)?.upper;
    let achieved = total_crossings(&d);
    if achieved != expected {
        return Err(construction_error(&spec, format!("expected {expected}, got {achieved}")));
    }
    Ok(d)
}

/// Stored drawings for the small prisms and ladders whose optimal
/// drawings are not part of a general pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmallCase {
    P3,
    P4,
    L3,
    L4,
    L5,
    /// A second drawing of `L_6` in the style of the small ladders,
    /// matching the two-color count.
    L6Alt,
}

impl SmallCase {
    pub const ALL: [SmallCase; 6] =
        [SmallCase::P3, SmallCase::P4, SmallCase::L3, SmallCase::L4, SmallCase::L5, SmallCase::L6Alt];

    pub fn spec(self) -> FamilySpec {
        match self {
            SmallCase::P3 => FamilySpec::prism(3),
            SmallCase::P4 => FamilySpec::prism(4),
            SmallCase::L3 => FamilySpec::ladder(3),
            SmallCase::L4 => FamilySpec::ladder(4),
            SmallCase::L5 => FamilySpec::ladder(5),
            SmallCase::L6Alt => FamilySpec::ladder(6),
        }
    }

    /// The crossing count the stored drawing attains.
    pub fn target(self) -> u64 {
        match self {
            SmallCase::P3 => 10,
            SmallCase::P4 => 32,
            SmallCase::L3 => 4,
            SmallCase::L4 => 16,
            SmallCase::L5 => 40,
            SmallCase::L6Alt => 80,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SmallCase::P3 => "P3",
            SmallCase::P4 => "P4",
            SmallCase::L3 => "L3",
            SmallCase::L4 => "L4",
            SmallCase::L5 => "L5",
            SmallCase::L6Alt => "L6-alt",
        }
    }

    fn data(self) -> &'static str {
        match self {
            SmallCase::P3 => include_str!("../data/small_cases/P3.json"),
            SmallCase::P4 => include_str!("../data/small_cases/P4.json"),
            SmallCase::L3 => include_str!("../data/small_cases/L3.json"),
            SmallCase::L4 => include_str!("../data/small_cases/L4.json"),
            SmallCase::L5 => include_str!("../data/small_cases/L5.json"),
            SmallCase::L6Alt => include_str!("../data/small_cases/L6-alt.json"),
        }
    }
}

/// The stored drawing for a small case. Regenerate with
/// `orchard derive-small`.
pub fn small_case(case: SmallCase) -> Drawing {
    let d = io::drawing_from_json(case.data())
        .unwrap_or_else(|e| panic!("stored drawing {} is corrupt: {e}", case.name()));
    assert_eq!(
        d.graph().edges(),
        generate(&case.spec()).expect("valid spec").edges(),
        "stored drawing {} has the wrong graph",
        case.name()
    );
    d
}

/// The best drawing this crate knows for a family member.
pub fn best_known(spec: &FamilySpec) -> Result<Drawing> {
    spec.validate()?;
    match spec.family {
        Family::Cycle | Family::DisjointCycles | Family::ClosedChain | Family::OpenChain => {
            convex_blocks(spec)
        }
        Family::TriangleBouquet | Family::ThreeCyclesCommonVertex | Family::StarKn1 => {
            central_star(spec)
        }
        Family::Prism => match spec.n {
            3 => Ok(small_case(SmallCase::P3)),
            4 => Ok(small_case(SmallCase::P4)),
            n => prism_two_color(n as usize),
        },
        Family::Ladder => match spec.n {
            3 => Ok(small_case(SmallCase::L3)),
            4 => Ok(small_case(SmallCase::L4)),
            5 => Ok(small_case(SmallCase::L5)),
            n => ladder_two_color(n as usize),
        },
    }
}
