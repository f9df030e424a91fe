//! Maximum edge-disjoint triangle packings of complete graphs.
//!
//! Orders `1, 3 (mod 6)` use the Skolem and Bose Steiner triple systems.
//! Orders `0, 2 (mod 6)` delete a point from a Steiner system on one more
//! point, leaving a perfect matching. Orders `5 (mod 6)` are found by
//! hill-climbing until the leave is a 4-cycle, and orders `4 (mod 6)` delete a
//! leave vertex of the packing on one more point.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Adjacency, Edge, Triangle, TrianglePacking};

use super::PackingError;

pub const DEFAULT_MAX_CLIQUE: usize = 64;

/// Maximum packing size in `K_n`: `(C(n,2) - k) / 3` where `k` depends on `n mod 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliquePackingCount {
    pub n: usize,
    /// Number of edges left uncovered by a maximum packing.
    pub k: usize,
    pub count: usize,
}

pub fn feder_count(n: usize) -> CliquePackingCount {
    let k = match n % 6 {
        1 | 3 => 0,
        5 => 4,
        0 | 2 => n / 2,
        _ => n / 2 + 1,
    };
    let pairs = n * n.saturating_sub(1) / 2;
    // n = 1 and n = 2 have fewer pairs than the generic deficiency formula
    let k = k.min(pairs);
    debug_assert_eq!((pairs - k) % 3, 0);
    CliquePackingCount { n, k, count: (pairs - k) / 3 }
}

type Triples = Arc<Vec<[usize; 3]>>;

fn cache() -> &'static Mutex<HashMap<usize, Triples>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Triples>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// A maximum packing of `K_n` on the points `0..n`.
pub fn base_packing(n: usize) -> Triples {
    if let Some(t) = cache().lock().expect("cache poisoned").get(&n) {
        return t.clone();
    }
    let triples = Arc::new(construct(n));
    debug_assert_eq!(triples.len(), feder_count(n).count, "n = {n}");
    cache().lock().expect("cache poisoned").entry(n).or_insert(triples).clone()
}

fn construct(n: usize) -> Vec<[usize; 3]> {
    match n {
        0..=2 => Vec::new(),
        _ => match n % 6 {
            3 => bose(n),
            1 => skolem(n),
            0 | 2 => delete_point(&base_packing(n + 1), n + 1, n),
            5 => hill_climb(n),
            _ => {
                let bigger = base_packing(n + 1);
                let point = leave(&bigger, n + 1)
                    .first()
                    .map(|e| e.0)
                    .expect("packings of order 5 mod 6 leave a 4-cycle");
                delete_point(&bigger, n + 1, point)
            }
        },
    }
}

fn sorted(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// Bose construction for `n = 6k + 3` on `Z_{2k+1} x Z_3`.
fn bose(n: usize) -> Vec<[usize; 3]> {
    let q = n / 3;
    let half = (q + 1) / 2; // inverse of 2 modulo the odd q
    let op = |x: usize, y: usize| ((x + y) * half) % q;
    let pt = |x: usize, i: usize| x + q * (i % 3);
    let mut out = Vec::with_capacity(n * (n - 1) / 6);
    for x in 0..q {
        out.push(sorted([pt(x, 0), pt(x, 1), pt(x, 2)]));
    }
    for i in 0..3 {
        for x in 0..q {
            for y in x + 1..q {
                out.push(sorted([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]));
            }
        }
    }
    out
}

/// Skolem construction for `n = 6k + 1` on `Z_{2k} x Z_3` plus a point at infinity.
fn skolem(n: usize) -> Vec<[usize; 3]> {
    let k = (n - 1) / 6;
    let q = 2 * k;
    if q == 0 {
        return Vec::new();
    }
    // half-idempotent commutative quasigroup of order 2k
    let op = |x: usize, y: usize| {
        let s = (x + y) % q;
        if s % 2 == 0 {
            s / 2
        } else {
            (s - 1) / 2 + k
        }
    };
    let inf = 3 * q;
    let pt = |x: usize, i: usize| x + q * (i % 3);
    let mut out = Vec::with_capacity(n * (n - 1) / 6);
    for x in 0..k {
        out.push(sorted([pt(x, 0), pt(x, 1), pt(x, 2)]));
    }
    for x in 0..k {
        for i in 0..3 {
            out.push(sorted([inf, pt(x + k, i), pt(x, i + 1)]));
        }
    }
    for i in 0..3 {
        for x in 0..q {
            for y in x + 1..q {
                out.push(sorted([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]));
            }
        }
    }
    out
}

/// Drop every triple through `point` and renumber the rest onto `0..n-1`.
fn delete_point(triples: &[[usize; 3]], n: usize, point: usize) -> Vec<[usize; 3]> {
    debug_assert!(point < n);
    let shift = |v: usize| if v > point { v - 1 } else { v };
    triples
        .iter()
        .filter(|t| !t.contains(&point))
        .map(|t| sorted([shift(t[0]), shift(t[1]), shift(t[2])]))
        .collect()
}

/// Uncovered pairs of a packing of `K_n`, in lexicographic order.
pub fn leave(triples: &[[usize; 3]], n: usize) -> Vec<Edge> {
    let mut covered = vec![false; n * n];
    for &[a, b, c] in triples {
        for (u, v) in [(a, b), (a, c), (b, c)] {
            covered[u * n + v] = true;
        }
    }
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !covered[a * n + b])
        .map(|(a, b)| Edge(a, b))
        .collect()
}

/// Stinson-style hill-climbing: repeatedly pick a point with two uncovered
/// pairs `xy`, `xz`; add `xyz`, first evicting the triple through `yz` if any.
/// Packing size never decreases; stop when the leave reaches the optimum.
fn hill_climb(n: usize) -> Vec<[usize; 3]> {
    const NONE: usize = usize::MAX;
    let target = feder_count(n).count;
    for attempt in 0u64.. {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + (n as u64) * 1000 + attempt);
        let mut owner = vec![NONE; n * n];
        let mut slots: Vec<Option<[usize; 3]>> = Vec::new();
        let mut free: Vec<usize> = Vec::new();
        let mut live = 0usize;
        let step_limit = 200_000 + 2_000 * n * n;
        let mut neighbours = Vec::with_capacity(n);
        for _ in 0..step_limit {
            if live == target {
                let mut out: Vec<[usize; 3]> = slots.into_iter().flatten().collect();
                out.sort_unstable();
                return out;
            }
            let x = rng.gen_range(0..n);
            neighbours.clear();
            neighbours.extend((0..n).filter(|&y| y != x && owner[x * n + y] == NONE));
            if neighbours.len() < 2 {
                continue;
            }
            let i = rng.gen_range(0..neighbours.len());
            let mut j = rng.gen_range(0..neighbours.len() - 1);
            if j >= i {
                j += 1;
            }
            let (y, z) = (neighbours[i], neighbours[j]);
            let evict = owner[y * n + z];
            if evict != NONE {
                let t = slots[evict].take().expect("owner points at a live triple");
                for (u, v) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                    owner[u * n + v] = NONE;
                    owner[v * n + u] = NONE;
                }
                free.push(evict);
                live -= 1;
            }
            let t = sorted([x, y, z]);
            let slot = match free.pop() {
                Some(s) => {
                    slots[s] = Some(t);
                    s
                }
                None => {
                    slots.push(Some(t));
                    slots.len() - 1
                }
            };
            for (u, v) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                owner[u * n + v] = slot;
                owner[v * n + u] = slot;
            }
            live += 1;
        }
    }
    unreachable!("attempt counter is unbounded")
}

fn check_clique<G: Adjacency + ?Sized>(host: &G, vertices: &[usize], skip: Option<Edge>) -> Result<(), PackingError> {
    for &v in vertices {
        host.check_vertex(v)?;
    }
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            if a == b {
                return Err(PackingError::RepeatedVertex(a));
            }
            if Some(Edge::new(a, b)) == skip {
                continue;
            }
            if !host.adjacent(a, b) {
                return Err(PackingError::NotClique(Edge::new(a, b)));
            }
        }
    }
    Ok(())
}

fn place(triples: &[[usize; 3]], perm: &[usize]) -> TrianglePacking {
    triples
        .iter()
        .map(|&[a, b, c]| Triangle::new(perm[a], perm[b], perm[c]))
        .collect()
}

/// Permutation sending abstract points `u`, `v` to positions of `a`, `b` in
/// `vertices`, keeping the relative order of the rest.
fn pinning(vertices: &[usize], u: usize, v: usize, a: usize, b: usize) -> Vec<usize> {
    let mut rest = vertices.iter().copied().filter(|&w| w != a && w != b);
    (0..vertices.len())
        .map(|p| {
            if p == u {
                a
            } else if p == v {
                b
            } else {
                rest.next().expect("vertex count matches")
            }
        })
        .collect()
}

/// Maximum packing of the clique induced by `vertices`, of size `feder_count(n).count`.
pub fn pack_clique<G: Adjacency + ?Sized>(host: &G, vertices: &[usize]) -> Result<TrianglePacking, PackingError> {
    pack_clique_with_limit(host, vertices, DEFAULT_MAX_CLIQUE)
}

pub fn pack_clique_with_limit<G: Adjacency + ?Sized>(
    host: &G,
    vertices: &[usize],
    max_order: usize,
) -> Result<TrianglePacking, PackingError> {
    let n = vertices.len();
    if n > max_order {
        return Err(PackingError::UnsupportedOrder { n, max: max_order });
    }
    check_clique(host, vertices, None)?;
    Ok(place(&base_packing(n), vertices))
}

/// Maximum packing of the clique on `vertices` that leaves the pair `a`-`b` unused.
pub fn pack_clique_leaving<G: Adjacency + ?Sized>(
    host: &G,
    vertices: &[usize],
    a: usize,
    b: usize,
) -> Result<TrianglePacking, PackingError> {
    let n = vertices.len();
    if n > DEFAULT_MAX_CLIQUE {
        return Err(PackingError::UnsupportedOrder { n, max: DEFAULT_MAX_CLIQUE });
    }
    check_clique(host, vertices, None)?;
    if !vertices.contains(&a) || !vertices.contains(&b) || a == b {
        return Err(PackingError::PairOutsideSet(Edge::new(a, b)));
    }
    let base = base_packing(n);
    let free = leave(&base, n);
    let e = free.first().ok_or(PackingError::NoFreeEdge { n })?;
    Ok(place(&base, &pinning(vertices, e.0, e.1, a, b)))
}

/// Packing of a clique on `vertices` that is missing exactly the edge `a`-`b`.
/// Loses at most one triangle against the full clique: none if the maximum
/// packing leaves some pair uncovered.
pub fn pack_clique_minus_edge<G: Adjacency + ?Sized>(
    host: &G,
    vertices: &[usize],
    a: usize,
    b: usize,
) -> Result<TrianglePacking, PackingError> {
    let n = vertices.len();
    if n > DEFAULT_MAX_CLIQUE {
        return Err(PackingError::UnsupportedOrder { n, max: DEFAULT_MAX_CLIQUE });
    }
    if !vertices.contains(&a) || !vertices.contains(&b) || a == b {
        return Err(PackingError::PairOutsideSet(Edge::new(a, b)));
    }
    let missing = Edge::new(a, b);
    check_clique(host, vertices, Some(missing))?;
    let base = base_packing(n);
    let free = leave(&base, n);
    let (u, v) = free.first().map(|e| (e.0, e.1)).unwrap_or((0, 1));
    let mut packing = place(&base, &pinning(vertices, u, v, a, b));
    let through = packing.iter().find(|t| t.contains_edge(missing)).copied();
    if let Some(t) = through {
        packing.remove(&t);
    }
    Ok(packing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_packing, GeneralGraph};

    #[test]
    fn counts_from_formula() {
        let c = feder_count(7);
        assert_eq!((c.k, c.count), (0, 7));
        let c = feder_count(6);
        assert_eq!((c.k, c.count), (3, 4));
        let c = feder_count(4);
        assert_eq!((c.k, c.count), (3, 1));
        let c = feder_count(1);
        assert_eq!((c.k, c.count), (0, 0));
        assert_eq!(feder_count(9).count, 12);
        assert_eq!(feder_count(5).count, 2);
        assert_eq!(feder_count(2).count, 0);
    }

    #[test]
    fn constructions_are_maximum_up_to_limit() {
        for n in 0..=DEFAULT_MAX_CLIQUE {
            let k = GeneralGraph::complete(n);
            let vs: Vec<usize> = (0..n).collect();
            let p = pack_clique(&k, &vs).unwrap();
            assert_eq!(p.len(), feder_count(n).count, "n = {n}");
            assert!(verify_packing(&k, &p).unwrap(), "n = {n}");
            assert_eq!(leave(&base_packing(n), n).len(), feder_count(n).k, "n = {n}");
        }
    }

    #[test]
    fn steiner_orders_have_empty_leave() {
        for n in [3, 7, 9, 13, 15, 19, 21] {
            assert!(leave(&base_packing(n), n).is_empty(), "n = {n}");
        }
    }

    #[test]
    fn leaving_a_pair() {
        let k = GeneralGraph::complete(12);
        let vs: Vec<usize> = (2..12).collect();
        let p = pack_clique_leaving(&k, &vs, 5, 9).unwrap();
        assert_eq!(p.len(), feder_count(10).count);
        assert!(!p.used_edges().contains(&Edge(5, 9)));
        assert!(matches!(pack_clique_leaving(&k, &(0..7).collect::<Vec<_>>(), 0, 1), Err(PackingError::NoFreeEdge { .. })));
    }

    #[test]
    fn clique_without_an_edge() {
        for n in 3..=15 {
            let g = GeneralGraph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&e| e != (0, n - 1))).unwrap();
            let vs: Vec<usize> = (0..n).collect();
            let p = pack_clique_minus_edge(&g, &vs, 0, n - 1).unwrap();
            assert!(verify_packing(&g, &p).unwrap());
            let full = feder_count(n).count;
            assert!(p.len() + 1 >= full, "n = {n}");
            if feder_count(n).k > 0 {
                assert_eq!(p.len(), full);
            }
        }
    }

    #[test]
    fn rejects_non_clique_and_big_orders() {
        let g = GeneralGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(pack_clique(&g, &[0, 1, 2]), Err(PackingError::NotClique(_))));
        let k = GeneralGraph::complete(8);
        assert!(matches!(
            pack_clique_with_limit(&k, &(0..8).collect::<Vec<_>>(), 6),
            Err(PackingError::UnsupportedOrder { n: 8, max: 6 })
        ));
    }
}
