//! Exact branch-and-bound solvers for `ν` (maximum triangle packing) and `τ`
//! (minimum triangle hitting set) on small graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{enumerate_triangles, Adjacency, Edge, HittingSet, TrianglePacking};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const BUDGET_ENV: &str = "TUZA_ORACLE_BUDGET";

/// Node budget from the environment, or [`DEFAULT_BUDGET`].
pub fn default_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult<W> {
    pub value: usize,
    pub witness: W,
    /// Search nodes visited.
    pub explored: u64,
    /// True only when the search ran to completion.
    pub proven: bool,
}

struct Instance {
    n: usize,
    edges: Vec<Edge>,
    tris: Vec<[usize; 3]>,
    edge_tris: Vec<Vec<usize>>,
}

impl Instance {
    fn new<G: Adjacency + ?Sized>(g: &G) -> Self {
        let n = g.order();
        let triangles = enumerate_triangles(g);
        let mut index = vec![usize::MAX; n * n];
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if g.adjacent(a, b) {
                    index[a * n + b] = edges.len();
                    edges.push(Edge(a, b));
                }
            }
        }
        let mut edge_tris = vec![Vec::new(); edges.len()];
        let tris = triangles
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let ids = t.edges().map(|e| index[e.0 * n + e.1]);
                for &e in &ids {
                    edge_tris[e].push(i);
                }
                ids
            })
            .collect();
        Instance { n, edges, tris, edge_tris }
    }

    fn triangle(&self, t: usize) -> crate::graph::Triangle {
        let [ab, ac, _] = self.tris[t];
        let (a, b) = (self.edges[ab].0, self.edges[ab].1);
        crate::graph::Triangle::new(a, b, self.edges[ac].1)
    }
}

const FREE: u8 = 0;
const TAKEN: u8 = 1;
const BLOCKED: u8 = 2;

struct NuSearch<'a> {
    inst: &'a Instance,
    state: Vec<u8>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    explored: u64,
    budget: u64,
    aborted: bool,
}

impl NuSearch<'_> {
    fn available(&self, t: usize) -> bool {
        self.inst.tris[t].iter().all(|&e| self.state[e] == FREE)
    }

    fn run(&mut self) {
        self.explored += 1;
        if self.explored > self.budget {
            self.aborted = true;
            return;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let inst = self.inst;
        let mut live = vec![0usize; inst.edges.len()];
        for t in 0..inst.tris.len() {
            if self.available(t) {
                for &e in &inst.tris[t] {
                    live[e] += 1;
                }
            }
        }
        let mut useful = 0;
        let mut degree = vec![0usize; inst.n];
        let mut branch: Option<usize> = None;
        for (e, &c) in live.iter().enumerate() {
            if c == 0 {
                continue;
            }
            useful += 1;
            degree[inst.edges[e].0] += 1;
            degree[inst.edges[e].1] += 1;
            if branch.map_or(true, |b| c < live[b]) {
                branch = Some(e);
            }
        }
        let Some(e) = branch else { return };
        let half_degrees: usize = degree.iter().map(|d| d / 2).sum();
        let bound = self.chosen.len() + (useful / 3).min(half_degrees / 3);
        if bound <= self.best.len() {
            return;
        }
        for &t in &inst.edge_tris[e] {
            if !self.available(t) {
                continue;
            }
            for &x in &inst.tris[t] {
                self.state[x] = TAKEN;
            }
            self.chosen.push(t);
            self.run();
            self.chosen.pop();
            for &x in &inst.tris[t] {
                self.state[x] = FREE;
            }
            if self.aborted {
                return;
            }
        }
        self.state[e] = BLOCKED;
        self.run();
        self.state[e] = FREE;
    }
}

fn greedy_packing(inst: &Instance, state: &[u8], filter: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut used = vec![false; inst.edges.len()];
    let mut out = Vec::new();
    for (t, es) in inst.tris.iter().enumerate() {
        if filter(t) && es.iter().all(|&e| !used[e] && state[e] != TAKEN) {
            for &e in es {
                used[e] = true;
            }
            out.push(t);
        }
    }
    out
}

/// Maximum edge-disjoint triangle packing by branching on an edge: either one
/// of its still-available triangles is taken, or the edge is discarded.
pub fn exact_nu<G: Adjacency + ?Sized>(g: &G, budget: u64) -> ExactResult<TrianglePacking> {
    let inst = Instance::new(g);
    let state = vec![FREE; inst.edges.len()];
    let best = greedy_packing(&inst, &state, |_| true);
    let mut s = NuSearch { inst: &inst, state, chosen: Vec::new(), best, explored: 0, budget, aborted: false };
    s.run();
    let witness: TrianglePacking = s.best.iter().map(|&t| inst.triangle(t)).collect();
    ExactResult { value: witness.len(), witness, explored: s.explored, proven: !s.aborted }
}

struct TauSearch<'a> {
    inst: &'a Instance,
    state: Vec<u8>,
    size: usize,
    best: Vec<usize>,
    explored: u64,
    budget: u64,
    aborted: bool,
}

impl TauSearch<'_> {
    fn covered(&self, t: usize) -> bool {
        self.inst.tris[t].iter().any(|&e| self.state[e] == TAKEN)
    }

    fn lower_bound(&self, open: &[usize]) -> usize {
        let inst = self.inst;
        let packed = greedy_packing(inst, &self.state, |t| !self.covered(t)).len();
        let mut in_open = vec![false; inst.edges.len()];
        let mut touched = vec![false; inst.n];
        for &t in open {
            for &e in &inst.tris[t] {
                in_open[e] = true;
                touched[inst.edges[e].0] = true;
                touched[inst.edges[e].1] = true;
            }
        }
        let edges = in_open.iter().filter(|&&x| x).count();
        let verts = touched.iter().filter(|&&x| x).count();
        packed.max(edges.saturating_sub(verts * verts / 4))
    }

    fn run(&mut self) {
        self.explored += 1;
        if self.explored > self.budget {
            self.aborted = true;
            return;
        }
        let inst = self.inst;
        let open: Vec<usize> = (0..inst.tris.len()).filter(|&t| !self.covered(t)).collect();
        if open.is_empty() {
            if self.size < self.best.len() {
                self.best = (0..inst.edges.len()).filter(|&e| self.state[e] == TAKEN).collect();
            }
            return;
        }
        if self.size + self.lower_bound(&open) >= self.best.len() {
            return;
        }
        let options = |t: usize| inst.tris[t].iter().filter(|&&e| self.state[e] == FREE).count();
        let t = *open.iter().min_by_key(|&&t| options(t)).expect("open is nonempty");
        let choices: Vec<usize> = inst.tris[t].iter().copied().filter(|&e| self.state[e] == FREE).collect();
        for &e in &choices {
            self.state[e] = TAKEN;
            self.size += 1;
            self.run();
            self.size -= 1;
            self.state[e] = BLOCKED;
            if self.aborted {
                break;
            }
        }
        for &e in &choices {
            self.state[e] = FREE;
        }
    }
}

/// Minimum triangle hitting set by branching on the edges of an unhit
/// triangle, with earlier siblings forbidden in later branches.
pub fn exact_tau<G: Adjacency + ?Sized>(g: &G, budget: u64) -> ExactResult<HittingSet> {
    let inst = Instance::new(g);
    let index_of = |e: &Edge| inst.edges.binary_search(e).expect("hitting set uses graph edges");
    let seed = max_cut_complement(g);
    let best: Vec<usize> = seed.iter().map(index_of).collect();
    let state = vec![FREE; inst.edges.len()];
    let mut s = TauSearch { inst: &inst, state, size: 0, best, explored: 0, budget, aborted: false };
    s.run();
    let witness: HittingSet = s.best.iter().map(|&e| inst.edges[e]).collect();
    ExactResult { value: witness.len(), witness, explored: s.explored, proven: !s.aborted }
}

const BRUTE_FORCE_CUT: usize = 16;

/// Edges inside the two parts of a large cut. Removing them leaves a
/// bipartite, hence triangle-free, graph. The cut is optimal up to
/// 16 vertices and found by seeded local search above that.
pub fn max_cut_complement<G: Adjacency + ?Sized>(g: &G) -> HittingSet {
    let n = g.order();
    let side = if n <= BRUTE_FORCE_CUT { brute_force_cut(g) } else { local_search_cut(g) };
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| side[a] == side[b] && g.adjacent(a, b))
        .map(|(a, b)| Edge(a, b))
        .collect()
}

fn brute_force_cut<G: Adjacency + ?Sized>(g: &G) -> Vec<bool> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let adj: Vec<u32> = (0..n)
        .map(|a| (0..n).filter(|&b| g.adjacent(a, b)).fold(0u32, |m, b| m | 1 << b))
        .collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best = (u32::MAX, 0u32);
    for mask in 0..1u32 << (n - 1) {
        let inside: u32 = (0..n)
            .map(|v| {
                let same = if mask >> v & 1 == 1 { mask } else { full & !mask };
                (adj[v] & same).count_ones()
            })
            .sum();
        if inside < best.0 {
            best = (inside, mask);
        }
    }
    (0..n).map(|v| best.1 >> v & 1 == 1).collect()
}

fn local_search_cut<G: Adjacency + ?Sized>(g: &G) -> Vec<bool> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc07);
    let inside = |side: &[bool]| -> usize {
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| side[a] == side[b] && g.adjacent(a, b))
            .count()
    };
    let mut best: Option<(usize, Vec<bool>)> = None;
    for _ in 0..16 {
        let mut side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        loop {
            let mut improved = false;
            for v in 0..n {
                let (same, other) = (0..n).filter(|&u| u != v && g.adjacent(u, v)).fold((0, 0), |(s, o), u| {
                    if side[u] == side[v] {
                        (s + 1, o)
                    } else {
                        (s, o + 1)
                    }
                });
                if same > other {
                    side[v] = !side[v];
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        let cost = inside(&side);
        if best.as_ref().map_or(true, |(c, _)| cost < *c) {
            best = Some((cost, side));
        }
    }
    best.map(|(_, s)| s).unwrap_or_default()
}
