//! Graph representations: arbitrary simple graphs, the threshold model of a
//! co-chain graph, triangles, packings, hitting sets and their verifiers.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("threshold list has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("threshold {value} at position {index} exceeds m_size = {max}")]
    ThresholdOutOfRange { index: usize, value: usize, max: usize },
    #[error("thresholds increase at position {index} ({prev} < {next})")]
    NotMonotone { index: usize, prev: usize, next: usize },
    #[error("side sizes must be even, got l_size = {l_size}, m_size = {m_size}")]
    OddSides { l_size: usize, m_size: usize },
    #[error("vertices of a triangle must be distinct: {0:?}")]
    DegenerateTriangle([usize; 3]),
}

/// Anything that answers adjacency queries on vertices `0..order()`.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn adjacent(&self, u: usize, v: usize) -> bool;

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.order() })
        }
    }
}

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

impl From<[usize; 2]> for Edge {
    fn from([a, b]: [usize; 2]) -> Self {
        Edge::new(a, b)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Three distinct vertices, sorted ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 3]", into = "[usize; 3]")]
pub struct Triangle([usize; 3]);

impl Triangle {
    /// Panics if two of the vertices coincide; use [`Triangle::try_new`] for untrusted input.
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        Self::try_new(a, b, c).expect("triangle vertices must be distinct")
    }

    pub fn try_new(a: usize, b: usize, c: usize) -> Result<Self, GraphError> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(GraphError::DegenerateTriangle([a, b, c]));
        }
        Ok(Triangle(v))
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge(a, b), Edge(a, c), Edge(b, c)]
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges().contains(&e)
    }

    pub fn exists_in<G: Adjacency + ?Sized>(&self, g: &G) -> bool {
        self.edges().iter().all(|e| g.adjacent(e.0, e.1))
    }
}

impl TryFrom<[usize; 3]> for Triangle {
    type Error = GraphError;
    fn try_from([a, b, c]: [usize; 3]) -> Result<Self, Self::Error> {
        Triangle::try_new(a, b, c)
    }
}

impl From<Triangle> for [usize; 3] {
    fn from(t: Triangle) -> Self {
        t.0
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{a}-{b}-{c}")
    }
}

/// A set of triangles; edge-disjointness is checked by [`verify_packing`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TrianglePacking(BTreeSet<Triangle>);

impl TrianglePacking {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, t: Triangle) -> bool {
        self.0.insert(t)
    }

    pub fn remove(&mut self, t: &Triangle) -> bool {
        self.0.remove(t)
    }

    pub fn extend<I: IntoIterator<Item = Triangle>>(&mut self, iter: I) {
        self.0.extend(iter)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triangle> + '_ {
        self.0.iter()
    }

    pub fn contains(&self, t: &Triangle) -> bool {
        self.0.contains(t)
    }

    /// Edges covered by the packing. Shared edges appear once.
    pub fn used_edges(&self) -> BTreeSet<Edge> {
        self.0.iter().flat_map(|t| t.edges()).collect()
    }

    pub fn relabel(&self, map: &[usize]) -> Self {
        self.0.iter().map(|t| {
            let [a, b, c] = t.vertices();
            Triangle::new(map[a], map[b], map[c])
        })
        .collect()
    }
}

impl FromIterator<Triangle> for TrianglePacking {
    fn from_iter<I: IntoIterator<Item = Triangle>>(iter: I) -> Self {
        TrianglePacking(iter.into_iter().collect())
    }
}

impl IntoIterator for TrianglePacking {
    type Item = Triangle;
    type IntoIter = std::collections::btree_set::IntoIter<Triangle>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// A set of edges; the triangle-hitting property is checked by [`verify_hitting`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HittingSet(BTreeSet<Edge>);

impl HittingSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.0.remove(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.0.iter()
    }

    pub fn relabel(&self, map: &[usize]) -> Self {
        self.0.iter().map(|e| Edge::new(map[e.0], map[e.1])).collect()
    }
}

impl FromIterator<Edge> for HittingSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        HittingSet(iter.into_iter().collect())
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralGraph {
    n: usize,
    edges: BTreeSet<Edge>,
    adj: Vec<bool>,
}

impl GeneralGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        let mut adj = vec![false; n * n];
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = Edge::new(a, b);
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e));
            }
            adj[a * n + b] = true;
            adj[b * n + a] = true;
        }
        Ok(GeneralGraph { n, edges: set, adj })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Self::new(n, edges).expect("complete graph edges are valid")
    }

    pub fn from_adjacency<G: Adjacency + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let edges = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| g.adjacent(a, b))
            .collect::<Vec<_>>();
        Self::new(n, edges).expect("edges come from a valid adjacency relation")
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adj[v * self.n + u])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Graph with the given edges removed.
    pub fn without_edges<'a, I: IntoIterator<Item = &'a Edge>>(&self, removed: I) -> Self {
        let mut g = self.clone();
        for e in removed {
            if g.edges.remove(e) {
                g.adj[e.0 * g.n + e.1] = false;
                g.adj[e.1 * g.n + e.0] = false;
            }
        }
        g
    }
}

impl Adjacency for GeneralGraph {
    fn order(&self) -> usize {
        self.n
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }
}

/// Co-chain graph stored by its threshold sequence.
///
/// Vertices `0..l_size` are `c_1..c_{l_size}`, vertices `l_size..l_size + m_size`
/// are `d_1..d_{m_size}`. Both sides are cliques and `c_i ~ d_j` iff
/// `j > m_size - t_i`, so `c_1` is the most connected vertex on its side and
/// `d_{m_size}` the most connected on the other.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoChainGraph {
    l_size: usize,
    m_size: usize,
    thresholds: Vec<usize>,
}

impl CoChainGraph {
    pub fn new(l_size: usize, m_size: usize, thresholds: Vec<usize>) -> Result<Self, GraphError> {
        if thresholds.len() != l_size {
            return Err(GraphError::LengthMismatch { expected: l_size, got: thresholds.len() });
        }
        for (index, &value) in thresholds.iter().enumerate() {
            if value > m_size {
                return Err(GraphError::ThresholdOutOfRange { index, value, max: m_size });
            }
        }
        for (index, w) in thresholds.windows(2).enumerate() {
            if w[1] > w[0] {
                return Err(GraphError::NotMonotone { index: index + 1, prev: w[0], next: w[1] });
            }
        }
        Ok(CoChainGraph { l_size, m_size, thresholds })
    }

    pub fn l_size(&self) -> usize {
        self.l_size
    }

    pub fn m_size(&self) -> usize {
        self.m_size
    }

    pub fn thresholds(&self) -> &[usize] {
        &self.thresholds
    }

    /// Vertex id of `c_i` (1-based).
    pub fn c(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.l_size);
        i - 1
    }

    /// Vertex id of `d_j` (1-based).
    pub fn d(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.m_size);
        self.l_size + j - 1
    }

    pub fn left(&self) -> std::ops::Range<usize> {
        0..self.l_size
    }

    pub fn right(&self) -> std::ops::Range<usize> {
        self.l_size..self.l_size + self.m_size
    }

    pub fn is_left(&self, v: usize) -> bool {
        v < self.l_size
    }

    pub fn to_general(&self) -> GeneralGraph {
        GeneralGraph::from_adjacency(self)
    }

    pub fn edge_count(&self) -> usize {
        let within = self.l_size * self.l_size.saturating_sub(1) / 2
            + self.m_size * self.m_size.saturating_sub(1) / 2;
        within + self.thresholds.iter().sum::<usize>()
    }

    pub fn has_even_sides(&self) -> bool {
        self.l_size % 2 == 0 && self.m_size % 2 == 0
    }

    /// The same graph with the sides exchanged, plus the map from vertex ids of
    /// the mirrored graph to vertex ids of `self`.
    ///
    /// The new left side lists `d_{m_size}, ..., d_1` and the new right side
    /// lists `c_{l_size}, ..., c_1`, so the nesting orientation is preserved.
    pub fn mirror(&self) -> (CoChainGraph, Vec<usize>) {
        let thresholds = (1..=self.m_size)
            .rev()
            .map(|j| {
                let d = self.d(j);
                self.left().filter(|&c| self.adjacent(c, d)).count()
            })
            .collect();
        let mirrored = CoChainGraph::new(self.m_size, self.l_size, thresholds)
            .expect("mirrored thresholds are nonincreasing");
        let mut map = Vec::with_capacity(self.order());
        map.extend((1..=self.m_size).rev().map(|j| self.d(j)));
        map.extend((1..=self.l_size).rev().map(|i| self.c(i)));
        (mirrored, map)
    }

    pub fn profile(&self) -> Result<CaseProfile, GraphError> {
        profile(self)
    }
}

impl Adjacency for CoChainGraph {
    fn order(&self) -> usize {
        self.l_size + self.m_size
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        let n = self.order();
        if u == v || u >= n || v >= n {
            return false;
        }
        match (self.is_left(u), self.is_left(v)) {
            (true, true) | (false, false) => true,
            (true, false) => self.cross(u, v),
            (false, true) => self.cross(v, u),
        }
    }
}

impl CoChainGraph {
    fn cross(&self, c: usize, d: usize) -> bool {
        let j = d - self.l_size + 1;
        j + self.thresholds[c] > self.m_size
    }
}

/// The parameters `(ℓ, m, x_ℓ, x_m)` that drive the case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CaseProfile {
    pub l: usize,
    pub m: usize,
    pub x_l: usize,
    pub x_m: usize,
}

impl CaseProfile {
    pub const fn new(l: usize, m: usize, x_l: usize, x_m: usize) -> Self {
        CaseProfile { l, m, x_l, x_m }
    }

    pub fn swapped(&self) -> Self {
        CaseProfile { l: self.m, m: self.l, x_l: self.x_m, x_m: self.x_l }
    }

    /// Whether some even-sided co-chain graph has this profile.
    pub fn is_realizable(&self) -> bool {
        if self.l == 0 {
            return self.x_l == 0 && self.x_m == 0;
        }
        if self.m == 0 {
            return self.x_l == 2 * self.l && self.x_m == 0;
        }
        self.x_l <= 2 * self.l
            && self.x_m <= 2 * self.m
            && ((self.x_l >= self.l) == (self.x_m >= self.m))
    }

    /// A co-chain graph with this profile; `dense` picks the most cross edges,
    /// otherwise the fewest.
    pub fn realize(&self, dense: bool) -> Option<CoChainGraph> {
        if !self.is_realizable() {
            return None;
        }
        let (l, m, x_l, x_m) = (self.l, self.m, self.x_l, self.x_m);
        if l == 0 || m == 0 {
            return CoChainGraph::new(2 * l, 2 * m, vec![0; 2 * l]).ok();
        }
        let saturated = x_l >= l;
        let t = (1..=2 * l)
            .map(|i| match (saturated, dense) {
                (true, true) if i < l => 2 * m,
                (true, false) if i < l => x_m,
                (true, true) if i <= x_l => x_m,
                (true, false) if i <= x_l => if i == l { x_m } else { m },
                (true, true) => m - 1,
                (true, false) => 0,
                (false, _) if i == l => x_m,
                (false, true) if i <= x_l => 2 * m,
                (false, false) if i <= x_l => m,
                (false, true) if i < l => m - 1,
                (false, false) if i < l => x_m,
                (false, true) => x_m,
                (false, false) => 0,
            })
            .collect();
        let g = CoChainGraph::new(2 * l, 2 * m, t).ok()?;
        (g.profile().ok()? == *self).then_some(g)
    }
}

impl fmt::Display for CaseProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.l, self.m, self.x_l, self.x_m)
    }
}

pub fn build_cochain(l_size: usize, m_size: usize, thresholds: &[usize]) -> Result<CoChainGraph, GraphError> {
    CoChainGraph::new(l_size, m_size, thresholds.to_vec())
}

/// Case profile of an even-sided co-chain graph.
///
/// `x_ℓ` counts the `c_i` complete to the bottom half of the right side
/// (`t_i ≥ m`); `x_m` counts the `d_j` complete to the top half of the left
/// side, which is exactly the neighbourhood of `c_ℓ`, so `x_m = t_ℓ`.
pub fn profile(g: &CoChainGraph) -> Result<CaseProfile, GraphError> {
    if !g.has_even_sides() {
        return Err(GraphError::OddSides { l_size: g.l_size, m_size: g.m_size });
    }
    let l = g.l_size / 2;
    let m = g.m_size / 2;
    let x_l = g.thresholds.iter().filter(|&&t| t >= m).count();
    let x_m = if l == 0 { 0 } else { g.thresholds[l - 1] };
    Ok(CaseProfile { l, m, x_l, x_m })
}

/// All triangles of `g`, each once, in lexicographic order.
pub fn enumerate_triangles<G: Adjacency + ?Sized>(g: &G) -> Vec<Triangle> {
    let n = g.order();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.adjacent(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.adjacent(a, c) && g.adjacent(b, c) {
                    out.push(Triangle([a, b, c]));
                }
            }
        }
    }
    out
}

/// True iff every triangle exists in `g` and no two triangles share an edge.
pub fn verify_packing<G: Adjacency + ?Sized>(g: &G, p: &TrianglePacking) -> Result<bool, GraphError> {
    for t in p.iter() {
        for v in t.vertices() {
            g.check_vertex(v)?;
        }
    }
    let mut seen = BTreeSet::new();
    for t in p.iter() {
        if !t.exists_in(g) {
            return Ok(false);
        }
        for e in t.edges() {
            if !seen.insert(e) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff `h` consists of edges of `g` and `g - h` has no triangle.
pub fn verify_hitting<G: Adjacency + ?Sized>(g: &G, h: &HittingSet) -> Result<bool, GraphError> {
    for e in h.iter() {
        g.check_vertex(e.0)?;
        g.check_vertex(e.1)?;
    }
    if h.iter().any(|e| e.0 == e.1 || !g.adjacent(e.0, e.1)) {
        return Ok(false);
    }
    Ok(enumerate_triangles(g)
        .iter()
        .all(|t| t.edges().iter().any(|e| h.contains(e))))
}
