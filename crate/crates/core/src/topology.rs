//! Topology generators: regular, random (Erdős–Rényi) and scale-free
//! (Barabási–Albert) graphs, plus relabeling and degree utilities.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seed::Seed;

/// Restart cap for the pairing-model regular generator.
///
/// For n = 56 and r = 5 a single pairing is simple with probability close to
/// exp(-(r² - 1)/4) ≈ 0.25%, so the cap has to sit well above a few thousand.
pub const REGULAR_MAX_RESTARTS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    EmptyGraph,
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    NodeOutOfRange(usize, usize, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("no simple {r}-regular graph on {n} nodes (need r < n and n*r even)")]
    InfeasibleDegree { n: usize, r: usize },
    #[error("pairing model found no simple graph after {0} restarts")]
    GenerationExhausted(usize),
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("attachment count m = {m} must satisfy 1 <= m < n = {n}")]
    InvalidAttachment { n: usize, m: usize },
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
}

/// Simple undirected graph on nodes `0..n`. Edges are stored as `(i, j)` with
/// `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates (in either
    /// orientation) and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::NodeOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidPermutation(self.n));
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p >= self.n || hit[p] {
                return Err(GraphError::InvalidPermutation(self.n));
            }
            hit[p] = true;
        }
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        Ok(Graph { n: self.n, edges })
    }
}

/// Generator family and its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TopologyClass {
    Regular { r: usize },
    Random { p: f64 },
    ScaleFree { m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MacroClass {
    Regular,
    Random,
    ScaleFree,
}

impl TopologyClass {
    pub fn macro_class(&self) -> MacroClass {
        match self {
            TopologyClass::Regular { .. } => MacroClass::Regular,
            TopologyClass::Random { .. } => MacroClass::Random,
            TopologyClass::ScaleFree { .. } => MacroClass::ScaleFree,
        }
    }

    pub fn generate(&self, n: usize, seed: Seed) -> Result<Graph, GraphError> {
        match *self {
            TopologyClass::Regular { r } => gen_regular(n, r, seed),
            TopologyClass::Random { p } => gen_random(n, p, seed),
            TopologyClass::ScaleFree { m } => gen_scale_free(n, m, seed),
        }
    }
}

impl fmt::Display for TopologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyClass::Regular { r } => write!(f, "regular;r={r}"),
            TopologyClass::Random { p } => write!(f, "random;p={p}"),
            TopologyClass::ScaleFree { m } => write!(f, "scale_free;m={m}"),
        }
    }
}

/// Uniform-ish random r-regular graph from the pairing (configuration) model.
///
/// The n·r half-edges are shuffled and paired off; any self-loop or repeated
/// pair throws the whole pairing away. Conditioned on success the result is
/// uniform over labeled simple r-regular graphs.
pub fn gen_regular(n: usize, r: usize, seed: Seed) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if r == 0 || r >= n || (n * r) % 2 == 1 {
        return Err(GraphError::InfeasibleDegree { n, r });
    }
    let mut rng = seed.rng();
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(r)).collect();
    let mut edges = BTreeSet::new();
    'restart: for _ in 0..REGULAR_MAX_RESTARTS {
        points.shuffle(&mut rng);
        edges.clear();
        for pair in points.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || !edges.insert((a.min(b), a.max(b))) {
                continue 'restart;
            }
        }
        return Ok(Graph { n, edges: std::mem::take(&mut edges) });
    }
    Err(GraphError::GenerationExhausted(REGULAR_MAX_RESTARTS))
}

/// Erdős–Rényi G(n, p): each unordered pair independently with probability p.
pub fn gen_random(n: usize, p: f64, seed: Seed) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    let mut rng = seed.rng();
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.insert((i, j));
            }
        }
    }
    Ok(Graph { n, edges })
}

/// Barabási–Albert growth from a clique on `m + 1` nodes. Each new node picks
/// `m` distinct targets, each draw proportional to current degree among the
/// nodes not yet picked in that step.
pub fn gen_scale_free(n: usize, m: usize, seed: Seed) -> Result<Graph, GraphError> {
    if m == 0 || m >= n {
        return Err(GraphError::InvalidAttachment { n, m });
    }
    let mut rng = seed.rng();
    let mut edges = BTreeSet::new();
    // One entry per edge endpoint; uniform picks from it are degree-weighted.
    let mut endpoints = Vec::with_capacity(2 * m * n);
    for i in 0..=m {
        for j in i + 1..=m {
            edges.insert((i, j));
            endpoints.push(i);
            endpoints.push(j);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.insert((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Ok(Graph { n, edges })
}
