//! Recognition of co-chain graphs: the complement must be a bipartite chain
//! graph, i.e. bipartite with nested neighbourhoods on each side.

use std::collections::VecDeque;

use crate::graph::{Adjacency, CoChainGraph, GeneralGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognized {
    pub graph: CoChainGraph,
    /// `relabel[v]` is the input vertex placed at position `v` of `graph`.
    pub relabel: Vec<usize>,
}

/// Why a graph is not co-chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// An odd cycle of the complement, as a closed vertex sequence without repetition.
    OddComplementCycle(Vec<usize>),
    /// Two vertices of the same side with incomparable cross neighbourhoods:
    /// `only_a` is adjacent to `a` but not `b`, `only_b` the reverse.
    IncomparableNeighborhoods { a: usize, b: usize, only_a: usize, only_b: usize },
}

fn complement_adjacent(g: &GeneralGraph, u: usize, v: usize) -> bool {
    u != v && !g.adjacent(u, v)
}

fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != x {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let (pu, pv) = (path(u), path(v));
    let lca = *pu.iter().find(|x| pv.contains(x)).expect("same BFS tree");
    let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let back: Vec<usize> = pv.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

/// Cross neighbourhood in `g` of `v` restricted to `other`.
fn cross(g: &GeneralGraph, v: usize, other: &[usize]) -> Vec<usize> {
    other.iter().copied().filter(|&u| g.adjacent(u, v)).collect()
}

fn check_nested(g: &GeneralGraph, side: &[usize], other: &[usize]) -> Result<(), Rejection> {
    let mut sorted = side.to_vec();
    sorted.sort_by_key(|&v| (std::cmp::Reverse(cross(g, v, other).len()), v));
    for w in sorted.windows(2) {
        let (big, small) = (cross(g, w[0], other), cross(g, w[1], other));
        if let Some(&only_b) = small.iter().find(|x| !big.contains(x)) {
            let only_a = *big.iter().find(|x| !small.contains(x)).expect("larger set has an extra element");
            return Err(Rejection::IncomparableNeighborhoods { a: w[0], b: w[1], only_a, only_b });
        }
    }
    Ok(())
}

/// Recognise `g` as a co-chain graph and return it in threshold form.
///
/// Vertices without complement neighbours may sit on either side. They are
/// used to make both sides even when possible: first one goes to each odd
/// side (smaller side first), the rest join the larger side. A complete graph
/// on `n` vertices gets a left side of the largest even size `≤ n/2`.
/// Within a side, ties between equal neighbourhoods are broken by input id.
pub fn recognize_cochain(g: &GeneralGraph) -> Result<Recognized, Rejection> {
    let n = g.order();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<usize> = (0..n).collect();
    let mut components: Vec<Vec<usize>> = Vec::new();
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        let mut comp = vec![root];
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if !complement_adjacent(g, u, v) {
                    continue;
                }
                match color[v] {
                    None => {
                        color[v] = Some(!color[u].expect("queued vertices are colored"));
                        parent[v] = u;
                        comp.push(v);
                        queue.push_back(v);
                    }
                    Some(c) if Some(c) == color[u] => {
                        return Err(Rejection::OddComplementCycle(odd_cycle(&parent, u, v)));
                    }
                    Some(_) => {}
                }
            }
        }
        components.push(comp);
    }

    let (nontrivial, universal): (Vec<_>, Vec<_>) = components.into_iter().partition(|c| c.len() > 1);
    let universal: Vec<usize> = universal.into_iter().flatten().collect();
    if nontrivial.len() > 1 {
        // same-colour vertices of two different complement components each miss
        // a complement neighbour of the other
        let pick = |c: &Vec<usize>| {
            let a = c[0];
            let only = c.iter().copied().find(|&x| complement_adjacent(g, a, x)).expect("nontrivial component");
            (a, only)
        };
        let (a, miss_a) = pick(&nontrivial[0]);
        let (b, miss_b) = pick(&nontrivial[1]);
        return Err(Rejection::IncomparableNeighborhoods { a, b, only_a: miss_b, only_b: miss_a });
    }

    let (mut left, mut right): (Vec<usize>, Vec<usize>) = match nontrivial.first() {
        Some(c) => c.iter().copied().partition(|&v| color[v] == Some(color[c[0]].unwrap_or(false))),
        None => (Vec::new(), Vec::new()),
    };
    let mut spare = universal.into_iter();
    if left.is_empty() && right.is_empty() {
        let l = (n / 2) & !1;
        left.extend(spare.by_ref().take(l));
        right.extend(spare.by_ref());
    } else {
        let smaller_first = left.len() > right.len();
        for flip in [smaller_first, !smaller_first] {
            let side = if flip { &mut right } else { &mut left };
            if side.len() % 2 == 1 {
                if let Some(v) = spare.next() {
                    side.push(v);
                }
            }
        }
    }
    let larger = if left.len() >= right.len() { &mut left } else { &mut right };
    larger.extend(spare);

    check_nested(g, &left, &right)?;
    check_nested(g, &right, &left)?;

    left.sort_by_key(|&v| (std::cmp::Reverse(cross(g, v, &right).len()), v));
    right.sort_by_key(|&v| (cross(g, v, &left).len(), v));
    let thresholds = left.iter().map(|&v| cross(g, v, &right).len()).collect();
    let graph = CoChainGraph::new(left.len(), right.len(), thresholds).expect("sorted cross degrees are nonincreasing");
    let relabel: Vec<usize> = left.into_iter().chain(right).collect();
    for u in 0..n {
        for v in u + 1..n {
            assert_eq!(
                graph.adjacent(u, v),
                g.adjacent(relabel[u], relabel[v]),
                "recognised graph disagrees with input at {u},{v}"
            );
        }
    }
    Ok(Recognized { graph, relabel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_cochain;
    use proptest::prelude::*;

    fn permuted(g: &GeneralGraph, perm: &[usize]) -> GeneralGraph {
        GeneralGraph::new(g.order(), g.edges().map(|e| (perm[e.0], perm[e.1]))).unwrap()
    }

    #[test]
    fn rejects_complement_of_c5() {
        let c5c = GeneralGraph::new(5, [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]).unwrap();
        match recognize_cochain(&c5c) {
            Err(Rejection::OddComplementCycle(c)) => {
                assert_eq!(c.len() % 2, 1);
                for (i, &u) in c.iter().enumerate() {
                    assert!(!c5c.adjacent(u, c[(i + 1) % c.len()]));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn accepts_two_disjoint_edges() {
        let g = GeneralGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let r = recognize_cochain(&g).unwrap();
        assert_eq!(r.graph.thresholds(), &[0, 0]);
        assert_eq!((r.graph.l_size(), r.graph.m_size()), (2, 2));
    }

    #[test]
    fn rejects_incomparable_neighbourhoods() {
        // complement is a perfect matching on 4 vertices: two nontrivial components
        let g = GeneralGraph::new(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let Err(Rejection::IncomparableNeighborhoods { a, b, only_a, only_b }) = recognize_cochain(&g) else {
            panic!("should reject");
        };
        assert!(g.adjacent(a, only_a) && !g.adjacent(b, only_a));
        assert!(g.adjacent(b, only_b) && !g.adjacent(a, only_b));
    }

    #[test]
    fn recovers_sample_graph_after_shuffle() {
        let g = build_cochain(4, 8, &[8, 5, 4, 2]).unwrap().to_general();
        let perm = [7, 3, 11, 0, 5, 9, 1, 10, 2, 8, 4, 6];
        let r = recognize_cochain(&permuted(&g, &perm)).unwrap();
        // c_1 is universal and moves to the other side, leaving 3 + 9; the
        // parity top-up then evens both sides out
        assert_eq!(r.graph.order(), 12);
        assert!(r.graph.has_even_sides());
        let oriented = if r.graph.l_size() == 4 { r.graph.clone() } else { r.graph.mirror().0 };
        assert_eq!(oriented.thresholds(), &[8, 5, 4, 2]);
    }

    #[test]
    fn complete_graph_split() {
        let r = recognize_cochain(&GeneralGraph::complete(6)).unwrap();
        assert_eq!((r.graph.l_size(), r.graph.m_size()), (2, 4));
        assert_eq!(r.graph.thresholds(), &[4, 4]);
    }

    fn thresholds() -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
        (0usize..7, 0usize..7).prop_flat_map(|(l, m)| {
            (Just(l), Just(m), proptest::collection::vec(0..=m, l)).prop_map(|(l, m, mut t)| {
                t.sort_unstable_by(|a, b| b.cmp(a));
                (l, m, t)
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip((l, m, t) in thresholds(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let g = build_cochain(l, m, &t).unwrap().to_general();
            let mut perm: Vec<usize> = (0..l + m).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let h = permuted(&g, &perm);
            let r = recognize_cochain(&h).unwrap();
            prop_assert_eq!(r.graph.order(), l + m);
            prop_assert_eq!(r.graph.edge_count(), g.edge_count());
            let universal = t.iter().any(|&x| x == m) || t.iter().filter(|&&x| x > 0).count() == l && l > 0;
            if !universal && l > 0 && m > 0 {
                let back = if r.graph.l_size() == l && r.graph.thresholds() == t.as_slice() {
                    r.graph.clone()
                } else {
                    r.graph.mirror().0
                };
                prop_assert_eq!(back.thresholds(), t.as_slice());
            }
        }
    }
}
