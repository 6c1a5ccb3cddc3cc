//! Regular graphs of prescribed girth and metric systoles of uniformly
//! weighted graphs.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// JSON layout: `{"n": k, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl Graph {
    /// Validate and normalise an edge list (no loops, no repeated edges).
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("repeated edge {:?}", w[0])));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Self { n, edges: list, adj })
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        Self::new(file.n, file.edges.iter().map(|e| (e[0], e[1])))
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile { n: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(), provenance: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `Some(c)` when every vertex has degree `c`.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adj.first()?.len();
        self.adj.iter().all(|nb| nb.len() == first).then_some(first)
    }

    /// Check exact `c`-regularity, naming the first offending vertex.
    pub fn check_regular(&self, c: usize) -> Result<()> {
        match self.adj.iter().position(|nb| nb.len() != c) {
            None => Ok(()),
            Some(vertex) => Err(Error::NotRegular { expected: c, vertex, degree: self.adj[vertex].len() }),
        }
    }
}

/// Length of a shortest cycle, or infinite for a forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Breadth-first search from every vertex. A non-tree edge `uw` met from root
/// `r` closes a walk of length `d(u) + d(w) + 1`; the search from `r` stops once
/// no shorter cycle can appear.
pub fn girth(graph: &Graph) -> Girth {
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; graph.n];
    let mut parent = vec![usize::MAX; graph.n];
    let mut queue = VecDeque::new();
    let mut touched = Vec::new();
    for root in 0..graph.n {
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in &graph.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
        for &v in &touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        queue.clear();
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Minimum vertex count of a `c`-regular graph of girth `g`.
pub fn moore_bound(c: usize, g: usize) -> Result<BigInt> {
    if c < 3 || g < 3 {
        return Err(Error::Domain(format!("Moore bound needs c >= 3 and g >= 3, got ({c}, {g})")));
    }
    let step = BigInt::from(c - 1);
    let geometric = |terms: usize| -> BigInt {
        (0..terms).fold((BigInt::zero(), BigInt::one()), |(acc, p), _| (acc + &p, p * &step)).0
    };
    Ok(if g % 2 == 1 {
        BigInt::one() + BigInt::from(c) * geometric((g - 1) / 2)
    } else {
        BigInt::from(2) * geometric(g / 2)
    })
}

/// Admissible range `[ceil(4((c-1)^l - (c-1))/(c-2)), (c-1)^l]` for the vertex
/// count `2n` of the gluing graph.
pub fn vertex_window(c: usize, l: usize) -> Result<(BigInt, BigInt)> {
    if c < 7 {
        return Err(Error::Domain(format!("vertex window requires valency c >= 2m + 1 >= 7, got c = {c}")));
    }
    if l == 0 {
        return Err(Error::Domain("vertex window requires l >= 1".into()));
    }
    let base = BigInt::from(c - 1);
    let max = num_traits::pow(base.clone(), l);
    let min = (BigInt::from(4) * (&max - &base)).div_ceil(&BigInt::from(c - 2));
    Ok((min, max))
}

/// Construction knobs for [`construct_regular_girth`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionBudget {
    /// Independent restarts before giving up.
    pub attempts: usize,
    /// Edge-swap repairs tried per stuck state.
    pub swap_tries: usize,
}

impl Default for ConstructionBudget {
    fn default() -> Self {
        Self { attempts: 20_000, swap_tries: 200 }
    }
}

/// Random `c`-regular graph on `vertices` vertices with girth at least `g`.
///
/// Each attempt adds edges between deficient vertices at distance at least
/// `g - 1`; when no such pair is left it tries edge swaps that replace an
/// existing edge `xy` by `ux` and `vy`. Attempts share one ChaCha8 stream
/// seeded from `seed`, so the output depends only on the arguments.
pub fn construct_regular_girth(
    c: usize,
    g: usize,
    vertices: usize,
    seed: u64,
    budget: ConstructionBudget,
) -> Result<Graph> {
    let floor = moore_bound(c, g)?;
    if BigInt::from(vertices) < floor {
        return Err(Error::Infeasible(format!(
            "{vertices} vertices is below the Moore bound {floor} for c = {c}, girth {g}"
        )));
    }
    if (c * vertices) % 2 == 1 {
        return Err(Error::Infeasible(format!("c * vertices = {} is odd", c * vertices)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.attempts {
        if let Some(graph) = attempt(c, g, vertices, budget.swap_tries, &mut rng) {
            let graph = Graph::new(vertices, graph)?;
            // Independent re-verification of the contract.
            graph.check_regular(c)?;
            if girth(&graph) >= Girth::Finite(g) {
                return Ok(graph);
            }
        }
    }
    Err(Error::BudgetExhausted { attempts: budget.attempts })
}

struct Builder {
    c: usize,
    g: usize,
    adj: Vec<Vec<usize>>,
    deficient: Vec<usize>,
    slot: Vec<usize>,
    dist: Vec<usize>,
    touched: Vec<usize>,
}

impl Builder {
    fn new(c: usize, g: usize, n: usize) -> Self {
        Self {
            c,
            g,
            adj: vec![Vec::with_capacity(c); n],
            deficient: (0..n).collect(),
            slot: (0..n).collect(),
            dist: vec![usize::MAX; n],
            touched: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
        for x in [u, v] {
            if self.adj[x].len() == self.c {
                self.drop_deficient(x);
            }
        }
    }

    fn remove_edge(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let pos = self.adj[a].iter().position(|&w| w == b).expect("edge present");
            self.adj[a].swap_remove(pos);
            if self.adj[a].len() == self.c - 1 {
                self.slot[a] = self.deficient.len();
                self.deficient.push(a);
            }
        }
    }

    fn drop_deficient(&mut self, x: usize) {
        let pos = self.slot[x];
        let last = *self.deficient.last().expect("nonempty");
        self.deficient.swap_remove(pos);
        if last != x {
            self.slot[last] = pos;
        }
    }

    /// Mark vertices within distance `g - 2` of `root` in `self.dist`; joining
    /// `root` to any unmarked vertex keeps every cycle of length >= g.
    fn mark_ball(&mut self, root: usize) {
        for &v in &self.touched {
            self.dist[v] = usize::MAX;
        }
        self.touched.clear();
        let radius = self.g - 2;
        self.dist[root] = 0;
        self.touched.push(root);
        let mut head = 0;
        while head < self.touched.len() {
            let u = self.touched[head];
            head += 1;
            if self.dist[u] == radius {
                continue;
            }
            for i in 0..self.adj[u].len() {
                let w = self.adj[u][i];
                if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    self.touched.push(w);
                }
            }
        }
    }

    fn far(&self, v: usize) -> bool {
        self.dist[v] == usize::MAX
    }
}

fn attempt(c: usize, g: usize, n: usize, swap_tries: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut b = Builder::new(c, g, n);
    let mut candidates = Vec::new();
    while !b.deficient.is_empty() {
        let u = b.deficient[rng.gen_range(0..b.deficient.len())];
        b.mark_ball(u);
        candidates.clear();
        candidates.extend(b.deficient.iter().copied().filter(|&w| b.far(w)));
        if let Some(&w) = candidates.choose(rng) {
            b.add_edge(u, w);
            continue;
        }
        if !repair(&mut b, u, swap_tries, rng) {
            return None;
        }
    }
    let mut edges = Vec::with_capacity(n * c / 2);
    for (u, nb) in b.adj.iter().enumerate() {
        edges.extend(nb.iter().filter(|&&w| u < w).map(|&w| (u, w)));
    }
    Some(edges)
}

/// Replace an edge `xy` with `ux` and `vy` for deficient `u`, `v` (possibly
/// equal), keeping girth >= g.
fn repair(b: &mut Builder, u: usize, tries: usize, rng: &mut ChaCha8Rng) -> bool {
    let n = b.adj.len();
    for _ in 0..tries {
        let v = b.deficient[rng.gen_range(0..b.deficient.len())];
        if v == u && b.adj[u].len() + 2 > b.c {
            continue;
        }
        let x = rng.gen_range(0..n);
        if b.adj[x].is_empty() {
            continue;
        }
        let y = b.adj[x][rng.gen_range(0..b.adj[x].len())];
        if [x, y].contains(&u) || [x, y].contains(&v) {
            continue;
        }
        b.remove_edge(x, y);
        b.mark_ball(u);
        if b.far(x) {
            b.add_edge(u, x);
            b.mark_ball(v);
            if b.far(y) {
                b.add_edge(v, y);
                return true;
            }
            b.remove_edge(u, x);
        }
        b.add_edge(x, y);
    }
    false
}

/// Graph with every edge of the same positive rational length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGraph {
    pub graph: Graph,
    pub edge_length: BigRational,
}

impl MetricGraph {
    pub fn new(graph: Graph, edge_length: BigRational) -> Result<Self> {
        if !edge_length.is_positive() {
            return Err(Error::Domain(format!("edge length must be positive, got {edge_length}")));
        }
        Ok(Self { graph, edge_length })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Systole {
    Finite(BigRational),
    Infinite,
}

impl Systole {
    pub fn exceeds_one(&self) -> bool {
        match self {
            Systole::Finite(v) => *v > BigRational::one(),
            Systole::Infinite => true,
        }
    }
}

/// `girth * edge length`; infinite for forests.
pub fn metric_systole(mg: &MetricGraph) -> Systole {
    match girth(&mg.graph) {
        Girth::Finite(g) => Systole::Finite(&mg.edge_length * BigInt::from(g)),
        Girth::Infinite => Systole::Infinite,
    }
}
