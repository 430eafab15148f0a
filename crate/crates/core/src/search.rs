//! Minimizing crossings over drawings.
//!
//! Three strategies: every convex position (circular order) up to a vertex
//! cap, random circular orders beyond it, and simulated annealing over
//! general-position placements. Every reported optimum is recounted by the
//! naive rational counter before it is returned.
//!
//! Annealing runs on an integer lattice: all coordinates are multiples of
//! `1 / scale` for one fixed `scale`, so orientation tests are exact `i128`
//! determinants. The lattice is a subset of the rationals, so nothing is
//! approximated.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{certified_lower_bound, formula_value};
use crate::constructions::{best_known, SmallCase};
use crate::crossings::{
    convex_crossings_with_positions, total_crossings, total_crossings_naive, CircularOrder, Drawing,
};
use crate::error::{Error, Result};
use crate::exact_geom::{orient_i64, Point, Rational};
use crate::graphs::{generate, Edge, FamilySpec, Graph};
use crate::io;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Construction,
    ConvexExhaustive,
    ConvexSampled,
    Anneal,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SearchMode::Construction => "construction",
            SearchMode::ConvexExhaustive => "convex_exhaustive",
            SearchMode::ConvexSampled => "convex_sampled",
            SearchMode::Anneal => "anneal",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    Min,
    Max,
}

impl Objective {
    fn better(self, a: u64, b: u64) -> bool {
        match self {
            Objective::Min => a < b,
            Objective::Max => a > b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best_count: u64,
    pub best_drawing: Drawing,
    /// Set when the optimum came from a convex-position search.
    pub best_order: Option<CircularOrder>,
    pub evaluations: u64,
    pub mode: SearchMode,
    pub seed: u64,
    /// Which stage of a portfolio run produced the optimum.
    pub stage: String,
}

impl SearchResult {
    fn verified(self) -> Self {
        let recount = total_crossings_naive(&self.best_drawing);
        assert_eq!(
            recount, self.best_count,
            "search reported {} crossings but the drawing has {recount}",
            self.best_count
        );
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "best_count": self.best_count,
            "mode": self.mode,
            "stage": self.stage,
            "seed": self.seed,
            "evaluations": self.evaluations,
            "order": self.best_order.as_ref().map(|o| o.as_slice().to_vec()),
            "drawing": serde_json::from_str::<serde_json::Value>(&io::drawing_to_json(&self.best_drawing))
                .expect("drawing JSON parses"),
        })
    }
}

/// Vertex cap for exhaustive convex enumeration: 10 vertices is 181440
/// circular orders.
pub const DEFAULT_CONVEX_CAP: usize = 10;

/// Number of canonical circular orders of `m` vertices, `(m - 1)! / 2`.
pub fn canonical_order_count(m: usize) -> u64 {
    if m < 3 {
        return 1;
    }
    (1..m as u64).product::<u64>() / 2
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Calls `visit` on every canonical circular order of `0..m` whose second
/// and last entries are `a < b`, in lexicographic order.
fn for_each_order_with_ends(m: usize, a: usize, b: usize, mut visit: impl FnMut(&[usize])) {
    let mut middle: Vec<usize> = (1..m).filter(|&v| v != a && v != b).collect();
    let mut order = vec![0; m];
    order[1] = a;
    order[m - 1] = b;
    loop {
        order[2..m - 1].copy_from_slice(&middle);
        visit(&order);
        if !next_permutation(&mut middle) {
            break;
        }
    }
}

/// Calls `visit` on every canonical circular order of `0..m`.
pub fn for_each_canonical_order(m: usize, mut visit: impl FnMut(&[usize])) {
    if m < 3 {
        visit(&(0..m).collect::<Vec<_>>());
        return;
    }
    for a in 1..m {
        for b in a + 1..m {
            for_each_order_with_ends(m, a, b, &mut visit);
        }
    }
}

/// Optimizes crossings over every convex-position drawing of `g`. Among
/// optimal orders the lexicographically smallest canonical one is returned.
pub fn convex_exhaustive(g: &Graph, objective: Objective, cap: usize) -> Result<SearchResult> {
    let m = g.vertex_count();
    if m > cap {
        return Err(Error::CapExceeded { vertices: m, cap });
    }
    let edges = g.edges();
    let (count, order) = if m < 3 {
        let order: Vec<usize> = (0..m).collect();
        (0, order)
    } else {
        let ends: Vec<(usize, usize)> =
            (1..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
        let partials: Vec<(u64, Vec<usize>)> = ends
            .par_iter()
            .map(|&(a, b)| {
                let mut best: Option<(u64, Vec<usize>)> = None;
                let mut pos = vec![0; m];
                for_each_order_with_ends(m, a, b, |order| {
                    for (i, &v) in order.iter().enumerate() {
                        pos[v] = i;
                    }
                    let c = convex_crossings_with_positions(edges, &pos, m);
                    if best.as_ref().is_none_or(|(bc, _)| objective.better(c, *bc)) {
                        best = Some((c, order.to_vec()));
                    }
                });
                best.expect("at least one order per end pair")
            })
            .collect();
        // Partials arrive in lexicographic order of their (a, b) prefix.
        partials
            .into_iter()
            .reduce(|acc, next| if objective.better(next.0, acc.0) { next } else { acc })
            .expect("m >= 3 has orders")
    };
    let order = CircularOrder::from_canonical_unchecked(order);
    let drawing = order.realize(g)?;
    Ok(SearchResult {
        best_count: count,
        best_drawing: drawing,
        best_order: Some(order),
        evaluations: canonical_order_count(m),
        mode: SearchMode::ConvexExhaustive,
        seed: 0,
        stage: SearchMode::ConvexExhaustive.to_string(),
    }
    .verified())
}

/// Optimizes crossings over `samples` uniformly random circular orders.
pub fn convex_sampled(g: &Graph, objective: Objective, samples: u64, seed: u64) -> Result<SearchResult> {
    let m = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..m).collect();
    let mut pos = vec![0; m];
    let mut best: Option<(u64, Vec<usize>)> = None;
    for _ in 0..samples.max(1) {
        perm.shuffle(&mut rng);
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let c = convex_crossings_with_positions(g.edges(), &pos, m);
        if best.as_ref().is_none_or(|(bc, _)| objective.better(c, *bc)) {
            best = Some((c, perm.clone()));
        }
    }
    let (count, order) = best.expect("at least one sample");
    let order = CircularOrder::new(order)?;
    let drawing = order.realize(g)?;
    Ok(SearchResult {
        best_count: count,
        best_drawing: drawing,
        best_order: Some(order),
        evaluations: samples.max(1),
        mode: SearchMode::ConvexSampled,
        seed,
        stage: SearchMode::ConvexSampled.to_string(),
    }
    .verified())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnealParams {
    /// `None` calibrates the start temperature to the mean `|delta|` of 100
    /// probe moves.
    pub initial_temperature: Option<Rational>,
    pub cooling_factor: Rational,
    pub steps_per_temperature: u64,
    pub max_steps: u64,
    /// Largest coordinate offset of a single move.
    pub move_scale: Rational,
    pub seed: u64,
    /// Moves land on multiples of `1 / denominator_cap` (or of a finer
    /// common denominator already present in the start drawing).
    pub denominator_cap: u64,
    /// Stop as soon as the best count is at or below this value.
    pub stop_at: Option<u64>,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams {
            initial_temperature: None,
            cooling_factor: Rational::new(49.into(), 50.into()),
            steps_per_temperature: 200,
            max_steps: 200_000,
            move_scale: Rational::new(1.into(), 4.into()),
            seed: 0,
            denominator_cap: 1 << 16,
            stop_at: None,
        }
    }
}

impl AnnealParams {
    pub fn validate(&self) -> Result<()> {
        let zero = Rational::from_integer(0.into());
        let one = Rational::one();
        let bad = |msg: &str| Err(Error::InvalidParameters(format!("anneal: {msg}")));
        if self.initial_temperature.as_ref().is_some_and(|t| *t <= zero) {
            return bad("initial temperature must be positive");
        }
        if self.cooling_factor <= zero || self.cooling_factor >= one {
            return bad("cooling factor must lie in (0, 1)");
        }
        if self.steps_per_temperature == 0 || self.max_steps == 0 {
            return bad("step counts must be positive");
        }
        if self.move_scale <= zero {
            return bad("move scale must be positive");
        }
        if self.denominator_cap < 2 || self.denominator_cap > 1 << 30 {
            return bad("denominator cap must lie in [2, 2^30]");
        }
        Ok(())
    }
}

/// Largest lattice coordinate magnitude. Keeps every orientation
/// determinant far inside `i128`.
const LATTICE_LIMIT: i64 = 1 << 40;

/// A drawing on the lattice `(1 / scale) Z^2` with exact incremental
/// crossing deltas.
#[derive(Clone)]
struct LatticeDrawing {
    scale: i64,
    pts: Vec<(i64, i64)>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

impl LatticeDrawing {
    fn new(g: &Graph, scale: i64, pts: Vec<(i64, i64)>) -> Self {
        let mut incident = vec![Vec::new(); g.vertex_count()];
        for (k, &(s, t)) in g.edges().iter().enumerate() {
            incident[s].push(k);
            incident[t].push(k);
        }
        LatticeDrawing { scale, pts, edges: g.edges().to_vec(), incident }
    }

    /// Exact lattice copy of `d`, if its coordinates fit on a lattice
    /// refining `1 / cap` within the size limit.
    fn exact_from(d: &Drawing, cap: u64) -> Option<Self> {
        let mut lcm = BigInt::from(cap);
        for p in d.placement() {
            lcm = lcm.lcm(p.x.denom()).lcm(p.y.denom());
        }
        let scale = lcm.to_i64().filter(|&s| s < LATTICE_LIMIT)?;
        let to_int = |r: &Rational| -> Option<i64> {
            let v = (r.numer() * (&lcm / r.denom())).to_i64()?;
            (v.abs() < LATTICE_LIMIT / 4).then_some(v)
        };
        let pts = d
            .placement()
            .iter()
            .map(|p| Some((to_int(&p.x)?, to_int(&p.y)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(LatticeDrawing::new(d.graph(), scale, pts))
    }

    /// `d` rounded onto the `1 / cap` lattice, nudged back into general
    /// position if rounding created a degeneracy.
    fn snapped_from(d: &Drawing, cap: u64, rng: &mut ChaCha8Rng) -> Option<Self> {
        let scale = cap as i64;
        let round = |r: &Rational| -> Option<i64> {
            let v = (r * Rational::from_integer(scale.into())).round().to_integer().to_i64()?;
            (v.abs() < LATTICE_LIMIT / 4).then_some(v)
        };
        let pts = d
            .placement()
            .iter()
            .map(|p| Some((round(&p.x)?, round(&p.y)?)))
            .collect::<Option<Vec<_>>>()?;
        let mut lat = LatticeDrawing::new(d.graph(), scale, pts);
        for _ in 0..1000 {
            let Some(w) = (0..lat.pts.len()).find(|&w| !lat.fits(w, lat.pts[w])) else {
                return Some(lat);
            };
            let (x, y) = lat.pts[w];
            lat.pts[w] = (x + rng.gen_range(-2..=2), y + rng.gen_range(-2..=2));
        }
        None
    }

    /// Uniform random general-position placement in the unit square.
    fn random(g: &Graph, cap: u64, rng: &mut ChaCha8Rng) -> Self {
        let scale = cap as i64;
        let mut lat = LatticeDrawing::new(g, scale, Vec::with_capacity(g.vertex_count()));
        while lat.pts.len() < g.vertex_count() {
            let p = (rng.gen_range(0..=scale), rng.gen_range(0..=scale));
            let w = lat.pts.len();
            lat.pts.push(p);
            if !lat.fits(w, p) {
                lat.pts.pop();
            }
        }
        lat
    }

    /// Whether vertex `w` at `p` keeps the placement in general position,
    /// checked against every other placed vertex.
    fn fits(&self, w: usize, p: (i64, i64)) -> bool {
        let m = self.pts.len();
        for u in (0..m).filter(|&u| u != w) {
            if self.pts[u] == p {
                return false;
            }
            for v in (u + 1..m).filter(|&v| v != w) {
                if orient_i64(self.pts[u], self.pts[v], p) == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn total(&self) -> u64 {
        let m = self.pts.len();
        let mut side = vec![0i8; m];
        let mut count = 0;
        for u in 0..m {
            for v in u + 1..m {
                for (sw, &pw) in side.iter_mut().zip(&self.pts) {
                    *sw = orient_i64(self.pts[u], self.pts[v], pw);
                }
                count += self.edges.iter().filter(|&&(s, t)| side[s] * side[t] == -1).count() as u64;
            }
        }
        count
    }

    /// Crossings that involve vertex `w`, either as an endpoint of the
    /// crossing line or of the crossed edge. The two kinds never overlap:
    /// a line through `w` cannot cross an edge ending at `w`.
    fn involving(&self, w: usize, side: &mut [i8]) -> u64 {
        let m = self.pts.len();
        let pw = self.pts[w];
        let mut count = 0;
        for u in (0..m).filter(|&u| u != w) {
            for (x, s) in side.iter_mut().enumerate() {
                *s = orient_i64(pw, self.pts[u], self.pts[x]);
            }
            count += self
                .edges
                .iter()
                .filter(|&&(s, t)| s != w && t != w && side[s] * side[t] == -1)
                .count() as u64;
        }
        if self.incident[w].is_empty() {
            return count;
        }
        for u in (0..m).filter(|&u| u != w) {
            for v in (u + 1..m).filter(|&v| v != w) {
                let (pu, pv) = (self.pts[u], self.pts[v]);
                let sw = orient_i64(pu, pv, pw);
                for &k in &self.incident[w] {
                    let (s, t) = self.edges[k];
                    let other = if s == w { t } else { s };
                    if orient_i64(pu, pv, self.pts[other]) * sw == -1 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    fn to_drawing(&self, g: &Graph) -> Drawing {
        let den = BigInt::from(self.scale);
        let placement = self
            .pts
            .iter()
            .map(|&(x, y)| {
                Point::new(Rational::new(x.into(), den.clone()), Rational::new(y.into(), den.clone()))
            })
            .collect();
        Drawing::new(g.clone(), placement).expect("lattice drawing stays in general position")
    }
}

struct Walker<'a> {
    lat: LatticeDrawing,
    rng: &'a mut ChaCha8Rng,
    radius: i64,
    bounds: (i64, i64),
    side: Vec<i8>,
}

impl Walker<'_> {
    /// Proposes a move: a bounded random offset, or occasionally a jump to
    /// a uniform point of the box. `None` when the proposal is degenerate.
    fn propose(&mut self) -> Option<(usize, (i64, i64))> {
        let m = self.lat.pts.len();
        let w = self.rng.gen_range(0..m);
        let (lo, hi) = self.bounds;
        let p = if self.rng.gen_ratio(1, 10) {
            (self.rng.gen_range(lo..=hi), self.rng.gen_range(lo..=hi))
        } else {
            let (x, y) = self.lat.pts[w];
            let r = self.radius;
            (x + self.rng.gen_range(-r..=r), y + self.rng.gen_range(-r..=r))
        };
        let inside = (lo..=hi).contains(&p.0) && (lo..=hi).contains(&p.1);
        (inside && p != self.lat.pts[w] && self.lat.fits(w, p)).then_some((w, p))
    }

    fn delta(&mut self, w: usize, p: (i64, i64)) -> i64 {
        let before = self.lat.involving(w, &mut self.side) as i64;
        let old = std::mem::replace(&mut self.lat.pts[w], p);
        let after = self.lat.involving(w, &mut self.side) as i64;
        self.lat.pts[w] = old;
        after - before
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Simulated annealing from `d0`. The best drawing seen (including `d0`
/// itself) is returned, so the result is never worse than the start.
pub fn anneal(d0: &Drawing, params: &AnnealParams) -> Result<SearchResult> {
    params.validate()?;
    let g = d0.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let start_count = total_crossings(d0);
    let lat = LatticeDrawing::exact_from(d0, params.denominator_cap)
        .or_else(|| LatticeDrawing::snapped_from(d0, params.denominator_cap, &mut rng))
        .unwrap_or_else(|| LatticeDrawing::random(g, params.denominator_cap, &mut rng));
    let extent = lat.pts.iter().map(|&(x, y)| x.abs().max(y.abs())).max().unwrap_or(0);
    let half = (extent + 2 * lat.scale).min(LATTICE_LIMIT / 4);
    let radius = (&params.move_scale * Rational::from_integer(lat.scale.into()))
        .round()
        .to_integer()
        .to_i64()
        .unwrap_or(1)
        .clamp(1, half);
    let m = lat.pts.len();
    let mut walker = Walker { lat, rng: &mut rng, radius, bounds: (-half, half), side: vec![0; m] };

    let mut current = walker.lat.total();
    let mut best_count = start_count;
    let mut best: Option<LatticeDrawing> = None;
    if current < best_count {
        best_count = current;
        best = Some(walker.lat.clone());
    }
    let mut evaluations = 1u64;

    let mut temperature = match &params.initial_temperature {
        Some(t) => rational_to_f64(t),
        None => {
            let mut sum = 0i64;
            let mut probes = 0i64;
            for _ in 0..100 {
                if let Some((w, p)) = walker.propose() {
                    sum += walker.delta(w, p).abs();
                    probes += 1;
                }
            }
            evaluations += probes as u64;
            if sum == 0 {
                1.0
            } else {
                sum as f64 / probes as f64
            }
        }
    };
    let cooling = rational_to_f64(&params.cooling_factor);

    for step in 0..params.max_steps {
        if params.stop_at.is_some_and(|target| best_count <= target) || m < 2 {
            break;
        }
        if step > 0 && step % params.steps_per_temperature == 0 {
            temperature *= cooling;
        }
        let Some((w, p)) = walker.propose() else { continue };
        let delta = walker.delta(w, p);
        evaluations += 1;
        let accept = delta <= 0 || walker.rng.gen::<f64>() < (-(delta as f64) / temperature.max(1e-12)).exp();
        if accept {
            walker.lat.pts[w] = p;
            current = (current as i64 + delta) as u64;
            if current < best_count {
                best_count = current;
                best = Some(walker.lat.clone());
            }
        }
    }

    let best_drawing = match best {
        Some(lat) => lat.to_drawing(g),
        None => d0.clone(),
    };
    Ok(SearchResult {
        best_count,
        best_drawing,
        best_order: None,
        evaluations,
        mode: SearchMode::Anneal,
        seed: params.seed,
        stage: SearchMode::Anneal.to_string(),
    }
    .verified())
}

/// A uniformly random general-position drawing of `g` in the unit square
/// with coordinates on the `1 / cap` lattice.
pub fn random_drawing(g: &Graph, cap: u64, seed: u64) -> Drawing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LatticeDrawing::random(g, cap, &mut rng).to_drawing(g)
}

/// Annealing restarts from random placements, seeds `seed, seed + 1, ...`,
/// run in parallel and reduced in seed order.
pub fn anneal_restarts(g: &Graph, restarts: u64, params: &AnnealParams) -> Result<Vec<SearchResult>> {
    params.validate()?;
    (0..restarts)
        .into_par_iter()
        .map(|i| {
            let seed = params.seed.wrapping_add(i);
            let start = random_drawing(g, params.denominator_cap, seed ^ 0x9e37_79b9_7f4a_7c15);
            anneal(&start, &AnnealParams { seed, ..params.clone() })
        })
        .collect()
}

fn pick_best(results: impl IntoIterator<Item = SearchResult>) -> Option<SearchResult> {
    results
        .into_iter()
        .reduce(|acc, next| if next.best_count < acc.best_count { next } else { acc })
}

/// Portfolio minimization for a family member within an evaluation budget:
/// the known construction, then convex search (exhaustive under the cap,
/// sampled above it), then annealing restarts with whatever budget is left.
/// Earlier stages win ties.
pub fn estimate_ocn(spec: &FamilySpec, budget: u64, seed: u64) -> Result<SearchResult> {
    let g = generate(spec)?;
    let floor = certified_lower_bound(spec)?;
    let mut spent = 0u64;
    let mut candidates = Vec::new();

    if let Ok(d) = best_known(spec) {
        spent += 1;
        candidates.push(SearchResult {
            best_count: total_crossings(&d),
            best_drawing: d,
            best_order: None,
            evaluations: 1,
            mode: SearchMode::Construction,
            seed,
            stage: SearchMode::Construction.to_string(),
        });
    }

    let convex = if g.vertex_count() <= DEFAULT_CONVEX_CAP {
        convex_exhaustive(&g, Objective::Min, DEFAULT_CONVEX_CAP)?
    } else {
        convex_sampled(&g, Objective::Min, (budget / 4).clamp(1, 20_000), seed)?
    };
    spent += convex.evaluations;
    candidates.push(convex);

    let mut best = pick_best(candidates.iter().cloned()).expect("convex stage always reports");
    if best.best_count > floor && spent < budget {
        let remaining = budget - spent;
        let per_run = remaining.min(AnnealParams::default().max_steps);
        let restarts = (remaining / per_run).clamp(1, 64);
        let params = AnnealParams { max_steps: per_run, seed, stop_at: Some(floor), ..Default::default() };
        let runs = anneal_restarts(&g, restarts, &params)?;
        for (i, mut r) in runs.into_iter().enumerate() {
            r.stage = format!("anneal restart {i}");
            spent += r.evaluations;
            candidates.push(r);
        }
        best = pick_best(candidates).expect("candidates present");
    }
    best.evaluations = spent;
    best.seed = seed;
    Ok(best)
}

/// Which search [`search_family`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Convex positions only: exhaustive under the cap, sampled above it.
    Convex,
    /// Annealing restarts from random placements.
    Anneal,
    /// [`estimate_ocn`].
    Auto,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "convex" => Ok(Strategy::Convex),
            "anneal" => Ok(Strategy::Anneal),
            "auto" => Ok(Strategy::Auto),
            other => Err(Error::Usage(format!("unknown search mode {other:?} (convex, anneal, auto)"))),
        }
    }
}

/// Minimizes crossings for a family member with one strategy and a budget
/// of evaluations.
pub fn search_family(spec: &FamilySpec, strategy: Strategy, budget: u64, seed: u64) -> Result<SearchResult> {
    let g = generate(spec)?;
    let budget = budget.max(1);
    match strategy {
        Strategy::Auto => estimate_ocn(spec, budget, seed),
        Strategy::Convex if g.vertex_count() <= DEFAULT_CONVEX_CAP => {
            convex_exhaustive(&g, Objective::Min, DEFAULT_CONVEX_CAP)
        }
        Strategy::Convex => convex_sampled(&g, Objective::Min, budget, seed),
        Strategy::Anneal => {
            let per_run = budget.min(AnnealParams::default().max_steps);
            let restarts = (budget / per_run).clamp(1, 64);
            let params = AnnealParams { max_steps: per_run, seed, ..Default::default() };
            let runs = anneal_restarts(&g, restarts, &params)?;
            let evaluations = runs.iter().map(|r| r.evaluations).sum();
            let mut best = pick_best(runs).expect("at least one restart");
            best.evaluations = evaluations;
            Ok(best)
        }
    }
}

/// Searches for a drawing of a stored small case at or below its target
/// count: every convex position first when the graph is within
/// [`DEFAULT_CONVEX_CAP`], then seeded annealing restarts in rounds of
/// `restarts`, up to `rounds` rounds. Returns the best result found; its
/// `mode` records which strategy attained it.
pub fn derive_small_case(case: SmallCase, seed: u64, restarts: u64, rounds: u64) -> Result<SearchResult> {
    let g = generate(&case.spec())?;
    let target = case.target();
    let mut best: Option<SearchResult> = None;
    if g.vertex_count() <= DEFAULT_CONVEX_CAP {
        let convex = convex_exhaustive(&g, Objective::Min, DEFAULT_CONVEX_CAP)?;
        if convex.best_count <= target {
            return Ok(convex);
        }
        best = Some(convex);
    }
    let params = AnnealParams { seed, stop_at: Some(target), ..Default::default() };
    for round in 0..rounds.max(1) {
        let round_params = AnnealParams { seed: seed.wrapping_add(round * restarts), ..params.clone() };
        let runs = anneal_restarts(&g, restarts.max(1), &round_params)?;
        best = pick_best(best.into_iter().chain(runs));
        if best.as_ref().is_some_and(|b| b.best_count <= target) {
            break;
        }
    }
    Ok(best.expect("at least one round runs"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub critical: bool,
    pub message: String,
}

/// Compares a search result against the certified and stated values for
/// its family. A count below a certified lower bound is a critical finding;
/// so is beating a stated exact value.
pub fn check_against_bounds(spec: &FamilySpec, result: &SearchResult) -> Result<Vec<Finding>> {
    let mut findings = Vec::new();
    let floor = certified_lower_bound(spec)?;
    let report = formula_value(spec)?;
    let c = result.best_count;
    if c < floor {
        findings.push(Finding {
            critical: true,
            message: format!("{spec}: search found {c}, below the certified lower bound {floor}"),
        });
    }
    if let Some(exact) = report.exact {
        if c < exact {
            findings.push(Finding {
                critical: true,
                message: format!("{spec}: search found {c}, below the stated exact value {exact}"),
            });
        } else if c > exact {
            findings.push(Finding {
                critical: false,
                message: format!("{spec}: search did not reach the stated exact value {exact} (best {c})"),
            });
        }
    } else if c < report.lower {
        findings.push(Finding {
            critical: true,
            message: format!("{spec}: search found {c}, below the stated lower bound {}", report.lower),
        });
    } else if c < report.upper {
        findings.push(Finding {
            critical: false,
            message: format!("{spec}: search found {c}, improving the stated upper bound {}", report.upper),
        });
    }
    Ok(findings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::convex_blocks;

    #[test]
    fn order_counts() {
        for m in 3..=8 {
            let mut seen = 0u64;
            let mut all = std::collections::HashSet::new();
            for_each_canonical_order(m, |o| {
                seen += 1;
                assert_eq!(o[0], 0);
                assert!(o[1] < o[m - 1]);
                all.insert(o.to_vec());
            });
            assert_eq!(seen, canonical_order_count(m));
            assert_eq!(all.len() as u64, seen);
        }
        assert_eq!(canonical_order_count(10), 181_440);
    }

    #[test]
    fn exhaustive_examples() {
        let two_triangles = generate(&FamilySpec::disjoint_cycles(3, 2)).unwrap();
        let r = convex_exhaustive(&two_triangles, Objective::Min, 10).unwrap();
        assert_eq!(r.best_count, 6);
        assert_eq!(r.evaluations, 60);
        let c6 = generate(&FamilySpec::cycle(6)).unwrap();
        assert_eq!(convex_exhaustive(&c6, Objective::Min, 10).unwrap().best_count, 0);
        let chain = generate(&FamilySpec::closed_chain(3, 3)).unwrap();
        assert_eq!(convex_exhaustive(&chain, Objective::Min, 10).unwrap().best_count, 9);
    }

    #[test]
    fn exhaustive_tie_break_is_lexicographic() {
        let c5 = generate(&FamilySpec::cycle(5)).unwrap();
        let r = convex_exhaustive(&c5, Objective::Min, 10).unwrap();
        assert_eq!(r.best_order.unwrap().as_slice(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn exhaustive_respects_cap() {
        let g = generate(&FamilySpec::prism(6)).unwrap();
        assert!(matches!(
            convex_exhaustive(&g, Objective::Min, 10),
            Err(Error::CapExceeded { vertices: 12, cap: 10 })
        ));
    }

    #[test]
    fn max_objective() {
        let c4 = generate(&FamilySpec::cycle(4)).unwrap();
        // The crossed quadrilateral: two diagonals with one vertex on each side.
        assert_eq!(convex_exhaustive(&c4, Objective::Max, 10).unwrap().best_count, 2);
    }

    #[test]
    fn lattice_delta_matches_full_recount() {
        let g = generate(&FamilySpec::prism(4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut lat = LatticeDrawing::random(&g, 1 << 10, &mut rng);
        let mut side = vec![0; lat.pts.len()];
        for _ in 0..200 {
            let w = rng.gen_range(0..lat.pts.len());
            let p = (rng.gen_range(0..1024), rng.gen_range(0..1024));
            if !lat.fits(w, p) {
                continue;
            }
            let before_total = lat.total() as i64;
            let before = lat.involving(w, &mut side) as i64;
            lat.pts[w] = p;
            let after = lat.involving(w, &mut side) as i64;
            assert_eq!(lat.total() as i64 - before_total, after - before);
        }
        assert_eq!(lat.total(), total_crossings_naive(&lat.to_drawing(&g)));
    }

    #[test]
    fn anneal_never_worse_than_start() {
        let d0 = convex_blocks(&FamilySpec::disjoint_cycles(4, 3)).unwrap();
        let params = AnnealParams { max_steps: 500, seed: 3, ..Default::default() };
        let r = anneal(&d0, &params).unwrap();
        assert!(r.best_count <= 48);
    }

    #[test]
    fn anneal_is_deterministic() {
        let g = generate(&FamilySpec::ladder(4)).unwrap();
        let d0 = random_drawing(&g, 1 << 16, 11);
        let params = AnnealParams { max_steps: 2_000, seed: 5, ..Default::default() };
        assert_eq!(anneal(&d0, &params).unwrap(), anneal(&d0, &params).unwrap());
    }

    #[test]
    fn anneal_params_validation() {
        let bad = AnnealParams { cooling_factor: Rational::one(), ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = AnnealParams { max_steps: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(AnnealParams::default().validate().is_ok());
    }
}
