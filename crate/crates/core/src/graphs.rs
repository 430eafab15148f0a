//! Graph model and generators for the cycle-based families.
//!
//! Canonical vertex numbering, shared by generators, constructions and
//! bound engines:
//!
//! * `Cycle(n)`: `0..n` in cyclic order.
//! * `DisjointCycles(n, x)`: cycle `j` is `j*n .. j*n + n`.
//! * `ClosedChain(n, x)`: `x(n-1)` vertices; cycle `j` is the run
//!   `j(n-1) ..= (j+1)(n-1)` (the last index taken modulo the vertex count),
//!   so its two shared vertices `j(n-1)` and `(j+1)(n-1)` are joined by an edge.
//! * `OpenChain(n, x)`: same layout with `x(n-1) + 1` vertices and no wrap.
//! * `TriangleBouquet(x)`: hub `0`, triangle `j` is `[0, 2j+1, 2j+2]`.
//! * `ThreeCyclesCommonVertex(n)`: hub `0`, cycle `j` is `0` followed by
//!   `j(n-1)+1 ..= (j+1)(n-1)`.
//! * `StarKn1(n)`: hub `0`, leaves `1..=n`.
//! * `Prism(n)`: outer cycle `0..n`, inner cycle `n..2n`, rungs `i -- n+i`.
//! * `Ladder(n)`: rails `0..n` and `n..2n` (paths), rungs `i -- n+i`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Edge = (usize, usize);
pub type Cycle = Vec<usize>;

fn normalize(e: Edge) -> Edge {
    if e.0 <= e.1 {
        e
    } else {
        (e.1, e.0)
    }
}

/// Edges of a cycle given as a vertex list, closing the last vertex back to
/// the first.
pub fn cycle_edges(cycle: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    let k = cycle.len();
    (0..k).map(move |i| normalize((cycle[i], cycle[(i + 1) % k])))
}

/// A simple undirected graph with optional structural cycle metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    tagged_cycles: Vec<Cycle>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for e in edges {
            let e = normalize(e);
            if e.0 == e.1 {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", e.0)));
            }
            if e.1 >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) references a vertex outside 0..{vertex_count}",
                    e.0, e.1
                )));
            }
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            out.push(e);
        }
        Ok(Graph {
            vertex_count,
            edges: out,
            tagged_cycles: Vec::new(),
        })
    }

    /// Attaches structural cycles, checking each is a closed walk on
    /// existing edges through distinct vertices.
    pub fn with_cycles(mut self, cycles: Vec<Cycle>) -> Result<Self> {
        for c in &cycles {
            self.check_cycle(c)?;
        }
        self.tagged_cycles = cycles;
        Ok(self)
    }

    pub fn check_cycle(&self, cycle: &[usize]) -> Result<()> {
        if cycle.len() < 3 {
            return Err(Error::InvalidGraph(format!("cycle {cycle:?} has fewer than 3 vertices")));
        }
        let distinct: HashSet<_> = cycle.iter().collect();
        if distinct.len() != cycle.len() {
            return Err(Error::InvalidGraph(format!("cycle {cycle:?} repeats a vertex")));
        }
        for (s, t) in cycle_edges(cycle) {
            if !self.has_edge(s, t) {
                return Err(Error::InvalidGraph(format!(
                    "cycle {cycle:?} uses missing edge ({s}, {t})"
                )));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn tagged_cycles(&self) -> &[Cycle] {
        &self.tagged_cycles
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        let e = normalize((s, t));
        self.edges.contains(&e)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// True iff every edge of `g` lies on exactly two of `cycles` (and the
/// cycles use no edge outside `g`).
pub fn validate_double_cover(g: &Graph, cycles: &[Cycle]) -> bool {
    let mut uses: HashMap<Edge, usize> = HashMap::new();
    for c in cycles {
        if g.check_cycle(c).is_err() {
            return false;
        }
        for e in cycle_edges(c) {
            *uses.entry(e).or_default() += 1;
        }
    }
    uses.len() == g.edges().len() && g.edges().iter().all(|e| uses.get(e) == Some(&2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cycle,
    DisjointCycles,
    ClosedChain,
    OpenChain,
    TriangleBouquet,
    ThreeCyclesCommonVertex,
    StarKn1,
    Prism,
    Ladder,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Cycle,
        Family::DisjointCycles,
        Family::ClosedChain,
        Family::OpenChain,
        Family::TriangleBouquet,
        Family::ThreeCyclesCommonVertex,
        Family::StarKn1,
        Family::Prism,
        Family::Ladder,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::DisjointCycles => "disjoint-cycles",
            Family::ClosedChain => "closed-chain",
            Family::OpenChain => "open-chain",
            Family::TriangleBouquet => "bouquet",
            Family::ThreeCyclesCommonVertex => "three-cycles",
            Family::StarKn1 => "star",
            Family::Prism => "prism",
            Family::Ladder => "ladder",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        let family = match key.as_str() {
            "cycle" => Family::Cycle,
            "disjoint-cycles" | "disjoint" => Family::DisjointCycles,
            "closed-chain" => Family::ClosedChain,
            "open-chain" => Family::OpenChain,
            "bouquet" | "triangle-bouquet" => Family::TriangleBouquet,
            "three-cycles" | "three-cycles-common-vertex" => Family::ThreeCyclesCommonVertex,
            "star" | "star-k-n1" => Family::StarKn1,
            "prism" => Family::Prism,
            "ladder" => Family::Ladder,
            _ => return Err(Error::InvalidParameters(format!("unknown family `{s}`"))),
        };
        Ok(family)
    }
}

/// A family member: `n` is the cycle order (or index for prisms, ladders and
/// stars), `x` the number of cycles. Parameters a family does not use are
/// pinned to a fixed value by the constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
    pub x: u32,
}

impl FamilySpec {
    /// Builds and validates a spec from optional CLI-style parameters.
    pub fn new(family: Family, n: Option<u32>, x: Option<u32>) -> Result<Self> {
        let need = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| Error::InvalidParameters(format!("family {family} requires --{name}")))
        };
        let spec = match family {
            Family::Cycle => FamilySpec::cycle(need(n, "n")?),
            Family::DisjointCycles => FamilySpec::disjoint_cycles(need(n, "n")?, need(x, "x")?),
            Family::ClosedChain => FamilySpec::closed_chain(need(n, "n")?, need(x, "x")?),
            Family::OpenChain => FamilySpec::open_chain(need(n, "n")?, need(x, "x")?),
            Family::TriangleBouquet => FamilySpec::triangle_bouquet(need(x, "x")?),
            Family::ThreeCyclesCommonVertex => FamilySpec::three_cycles(need(n, "n")?),
            Family::StarKn1 => FamilySpec::star(need(n, "n")?),
            Family::Prism => FamilySpec::prism(need(n, "n")?),
            Family::Ladder => FamilySpec::ladder(need(n, "n")?),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cycle(n: u32) -> Self {
        FamilySpec { family: Family::Cycle, n, x: 1 }
    }
    pub fn disjoint_cycles(n: u32, x: u32) -> Self {
        FamilySpec { family: Family::DisjointCycles, n, x }
    }
    pub fn closed_chain(n: u32, x: u32) -> Self {
        FamilySpec { family: Family::ClosedChain, n, x }
    }
    pub fn open_chain(n: u32, x: u32) -> Self {
        FamilySpec { family: Family::OpenChain, n, x }
    }
    pub fn triangle_bouquet(x: u32) -> Self {
        FamilySpec { family: Family::TriangleBouquet, n: 3, x }
    }
    pub fn three_cycles(n: u32) -> Self {
        FamilySpec { family: Family::ThreeCyclesCommonVertex, n, x: 3 }
    }
    pub fn star(n: u32) -> Self {
        FamilySpec { family: Family::StarKn1, n, x: 1 }
    }
    pub fn prism(n: u32) -> Self {
        FamilySpec { family: Family::Prism, n, x: 1 }
    }
    pub fn ladder(n: u32) -> Self {
        FamilySpec { family: Family::Ladder, n, x: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        let FamilySpec { family, n, x } = *self;
        let bad = |msg: &str| Err(Error::InvalidParameters(format!("{self}: {msg}")));
        match family {
            Family::Cycle | Family::ThreeCyclesCommonVertex | Family::Prism | Family::Ladder
                if n < 3 =>
            {
                bad("n must be at least 3")
            }
            Family::DisjointCycles | Family::OpenChain if n < 3 || x < 1 => {
                bad("need n >= 3 and x >= 1")
            }
            Family::ClosedChain if n < 3 || x < 3 => bad("need n >= 3 and x >= 3"),
            Family::TriangleBouquet if x < 1 => bad("x must be at least 1"),
            Family::TriangleBouquet if n != 3 => bad("bouquet cycles have order 3"),
            Family::ThreeCyclesCommonVertex if x != 3 => bad("exactly three cycles"),
            Family::StarKn1 if n < 2 || n % 2 == 1 => {
                bad("the closed form for K_{n,1} covers even n >= 2 only")
            }
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        let (n, x) = (self.n as usize, self.x as usize);
        match self.family {
            Family::Cycle => n,
            Family::DisjointCycles => n * x,
            Family::ClosedChain => x * (n - 1),
            Family::OpenChain => x * (n - 1) + 1,
            Family::TriangleBouquet => 2 * x + 1,
            Family::ThreeCyclesCommonVertex => 3 * (n - 1) + 1,
            Family::StarKn1 => n + 1,
            Family::Prism | Family::Ladder => 2 * n,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Cycle
            | Family::ThreeCyclesCommonVertex
            | Family::StarKn1
            | Family::Prism
            | Family::Ladder => write!(f, "{}(n={})", self.family, self.n),
            Family::TriangleBouquet => write!(f, "{}(x={})", self.family, self.x),
            _ => write!(f, "{}(n={}, x={})", self.family, self.n, self.x),
        }
    }
}

fn graph_from_cycles(vertex_count: usize, cycles: Vec<Cycle>) -> Result<Graph> {
    let mut edges = Vec::new();
    for c in &cycles {
        edges.extend(cycle_edges(c));
    }
    Graph::new(vertex_count, edges)?.with_cycles(cycles)
}

/// Generates the canonical member of a family (see the module docs for the
/// numbering).
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let (n, x) = (spec.n as usize, spec.x as usize);
    let m = spec.vertex_count();
    match spec.family {
        Family::Cycle => graph_from_cycles(m, vec![(0..n).collect()]),
        Family::DisjointCycles => {
            graph_from_cycles(m, (0..x).map(|j| (j * n..(j + 1) * n).collect()).collect())
        }
        Family::ClosedChain | Family::OpenChain => {
            let cycles = (0..x)
                .map(|j| (j * (n - 1)..=(j + 1) * (n - 1)).map(|v| v % m).collect())
                .collect();
            graph_from_cycles(m, cycles)
        }
        Family::TriangleBouquet => {
            graph_from_cycles(m, (0..x).map(|j| vec![0, 2 * j + 1, 2 * j + 2]).collect())
        }
        Family::ThreeCyclesCommonVertex => {
            let cycles = (0..3)
                .map(|j| {
                    std::iter::once(0)
                        .chain(j * (n - 1) + 1..=(j + 1) * (n - 1))
                        .collect()
                })
                .collect();
            graph_from_cycles(m, cycles)
        }
        Family::StarKn1 => Graph::new(m, (1..=n).map(|leaf| (0, leaf))),
        Family::Prism => {
            let mut edges: Vec<Edge> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            edges.extend((0..n).map(|i| (n + i, n + (i + 1) % n)));
            edges.extend((0..n).map(|i| (i, n + i)));
            let mut cycles: Vec<Cycle> = (0..n)
                .map(|i| {
                    let j = (i + 1) % n;
                    vec![i, j, n + j, n + i]
                })
                .collect();
            cycles.push((0..n).collect());
            cycles.push((n..2 * n).collect());
            Graph::new(m, edges)?.with_cycles(cycles)
        }
        Family::Ladder => {
            let mut edges: Vec<Edge> = (0..n - 1).map(|i| (i, i + 1)).collect();
            edges.extend((0..n - 1).map(|i| (n + i, n + i + 1)));
            edges.extend((0..n).map(|i| (i, n + i)));
            let cycles = (0..n - 1).map(|i| vec![i, i + 1, n + i + 1, n + i]).collect();
            Graph::new(m, edges)?.with_cycles(cycles)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_edge_and_vertex_counts() {
        let p = generate(&FamilySpec::prism(5)).unwrap();
        assert_eq!((p.vertex_count(), p.edges().len()), (10, 15));
        let l = generate(&FamilySpec::ladder(5)).unwrap();
        assert_eq!((l.vertex_count(), l.edges().len()), (10, 13));
        let d = generate(&FamilySpec::disjoint_cycles(4, 3)).unwrap();
        assert_eq!((d.vertex_count(), d.edges().len()), (12, 12));
        assert_eq!(d.tagged_cycles().len(), 3);
        assert!(d.tagged_cycles().iter().all(|c| c.len() == 4));
    }

    #[test]
    fn chain_and_bouquet_sizes() {
        for (n, x) in [(3, 3), (4, 3), (5, 4)] {
            let g = generate(&FamilySpec::closed_chain(n, x)).unwrap();
            assert_eq!(g.vertex_count(), (x * (n - 1)) as usize);
            assert_eq!(g.edges().len(), (x * n) as usize);
            let g = generate(&FamilySpec::open_chain(n, x)).unwrap();
            assert_eq!(g.vertex_count(), (x * (n - 1) + 1) as usize);
            assert_eq!(g.edges().len(), (x * n) as usize);
        }
        let b = generate(&FamilySpec::triangle_bouquet(4)).unwrap();
        assert_eq!((b.vertex_count(), b.edges().len()), (9, 12));
        let t = generate(&FamilySpec::three_cycles(4)).unwrap();
        assert_eq!((t.vertex_count(), t.edges().len()), (10, 12));
        let s = generate(&FamilySpec::star(6)).unwrap();
        assert_eq!((s.vertex_count(), s.edges().len()), (7, 6));
    }

    #[test]
    fn chain_shared_vertices_are_adjacent() {
        let g = generate(&FamilySpec::closed_chain(5, 4)).unwrap();
        let cycles = g.tagged_cycles();
        for (j, c) in cycles.iter().enumerate() {
            let next = &cycles[(j + 1) % cycles.len()];
            let shared: Vec<_> = c.iter().filter(|v| next.contains(v)).collect();
            assert_eq!(shared.len(), 1);
        }
        for c in cycles {
            // the two shared vertices are the first and last of each run
            assert!(g.has_edge(c[0], *c.last().unwrap()));
        }
    }

    #[test]
    fn ladder_consecutive_four_cycles_share_one_edge() {
        let g = generate(&FamilySpec::ladder(7)).unwrap();
        let cs = g.tagged_cycles();
        assert_eq!(cs.len(), 6);
        for w in cs.windows(2) {
            let a: HashSet<_> = cycle_edges(&w[0]).collect();
            let b: HashSet<_> = cycle_edges(&w[1]).collect();
            assert_eq!(a.intersection(&b).count(), 1);
        }
    }

    #[test]
    fn double_cover_examples() {
        let p = generate(&FamilySpec::prism(5)).unwrap();
        assert!(validate_double_cover(&p, p.tagged_cycles()));
        let l = generate(&FamilySpec::ladder(6)).unwrap();
        assert!(!validate_double_cover(&l, l.tagged_cycles()));
        let c = generate(&FamilySpec::cycle(5)).unwrap();
        let twice = vec![c.tagged_cycles()[0].clone(), c.tagged_cycles()[0].clone()];
        assert!(validate_double_cover(&c, &twice));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(generate(&FamilySpec::cycle(2)).is_err());
        assert!(generate(&FamilySpec::prism(2)).is_err());
        assert!(generate(&FamilySpec::closed_chain(4, 2)).is_err());
        assert!(generate(&FamilySpec::star(5)).is_err());
        assert!(FamilySpec::new(Family::Prism, None, None).is_err());
    }

    #[test]
    fn invalid_graphs_rejected() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(g.clone().with_cycles(vec![vec![0, 1, 3]]).is_err());
        assert!(g.with_cycles(vec![vec![0, 1, 2]]).is_ok());
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.cli_name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("triangle_bouquet".parse::<Family>().unwrap(), Family::TriangleBouquet);
    }

    #[test]
    fn generation_is_deterministic() {
        let s = FamilySpec::prism(9);
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
    }
}
