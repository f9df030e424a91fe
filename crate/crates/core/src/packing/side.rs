//! Packings `p(S, K)`: every triangle is one `K`-edge plus an apex in `S`.

use std::collections::BTreeSet;

use crate::graph::{Adjacency, Edge, Triangle, TrianglePacking};

use super::{near_one_factorization, one_factorization, Factorization, PackingError};

/// The larger of the two guaranteed sizes of `p(S, K)` for `|S| = s`, `|K| = k`.
pub fn side_bound(s: usize, k: usize) -> usize {
    let odd_form = (k.saturating_sub(1) / 2) * s.min(k);
    let even_form = if k % 2 == 0 { (k / 2) * s.min(k.saturating_sub(1)) } else { 0 };
    odd_form.max(even_form)
}

fn factorize(k: &[usize]) -> Result<Factorization, PackingError> {
    match k.len() {
        0 => Ok(Factorization { matchings: Vec::new() }),
        n if n % 2 == 0 => one_factorization(k),
        _ => near_one_factorization(k),
    }
}

fn check_disjoint_clique<G: Adjacency + ?Sized>(host: &G, s: &[usize], k: &[usize]) -> Result<(), PackingError> {
    let mut seen = BTreeSet::new();
    for &v in s.iter().chain(k) {
        host.check_vertex(v)?;
        if !seen.insert(v) {
            return Err(if s.contains(&v) && k.contains(&v) {
                PackingError::Overlap(v)
            } else {
                PackingError::RepeatedVertex(v)
            });
        }
    }
    for (i, &a) in k.iter().enumerate() {
        for &b in &k[i + 1..] {
            if !host.adjacent(a, b) {
                return Err(PackingError::NotClique(Edge::new(a, b)));
            }
        }
    }
    Ok(())
}

fn assign(apexes: &[usize], k: &[usize]) -> Result<TrianglePacking, PackingError> {
    let f = factorize(k)?;
    Ok(apexes
        .iter()
        .zip(&f.matchings)
        .flat_map(|(&s, m)| m.iter().map(move |e| Triangle::new(s, e.0, e.1)))
        .collect())
}

/// `p(S, K)` for `S` complete to the clique `K`.
///
/// The `i`-th vertex of `S` receives the `i`-th matching of a 1-factorization
/// of `K` (near-1-factorization when `|K|` is odd), for as many `S`-vertices
/// as there are matchings. Edges inside `S` are never used.
pub fn pack_side<G: Adjacency + ?Sized>(s: &[usize], k: &[usize], host: &G) -> Result<TrianglePacking, PackingError> {
    check_disjoint_clique(host, s, k)?;
    for &a in s {
        if let Some(&b) = k.iter().find(|&&b| !host.adjacent(a, b)) {
            return Err(PackingError::NotComplete { s: a, k: b });
        }
    }
    assign(s, k)
}

/// Result of [`pack_between`]: the packing and the `S`-vertices it drew apexes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetweenPacking {
    pub packing: TrianglePacking,
    /// `S' = {s in S : K ⊆ N(s)}`; equals `S` when `S` is complete to `K`.
    pub restricted_to: Vec<usize>,
}

impl BetweenPacking {
    pub fn is_restricted(&self, s: &[usize]) -> bool {
        self.restricted_to.len() < s.len()
    }
}

/// `p(S, K)` where `S` may be any vertex set disjoint from the clique `K`;
/// only the vertices of `S` complete to `K` act as apexes.
pub fn pack_between<G: Adjacency + ?Sized>(s: &[usize], k: &[usize], host: &G) -> Result<BetweenPacking, PackingError> {
    check_disjoint_clique(host, s, k)?;
    let restricted_to: Vec<usize> = s.iter().copied().filter(|&a| k.iter().all(|&b| host.adjacent(a, b))).collect();
    let packing = assign(&restricted_to, k)?;
    Ok(BetweenPacking { packing, restricted_to })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_packing, GeneralGraph};

    fn split(s: usize, k: usize) -> (GeneralGraph, Vec<usize>, Vec<usize>) {
        let g = GeneralGraph::complete(s + k);
        ((g), (0..s).collect(), (s..s + k).collect())
    }

    #[test]
    fn single_apex_single_edge() {
        let (g, s, k) = split(1, 2);
        assert_eq!(pack_side(&s, &k, &g).unwrap().len(), 1);
    }

    #[test]
    fn even_clique_examples() {
        let (g, s, k) = split(3, 4);
        assert!(pack_side(&s, &k, &g).unwrap().len() >= 6);
        let (g, s, k) = split(5, 4);
        assert_eq!(pack_side(&s, &k, &g).unwrap().len(), 6);
    }

    #[test]
    fn never_uses_edges_inside_s() {
        let (g, s, k) = split(6, 5);
        let p = pack_side(&s, &k, &g).unwrap();
        assert!(verify_packing(&g, &p).unwrap());
        for e in p.used_edges() {
            assert!(!(s.contains(&e.0) && s.contains(&e.1)));
        }
    }

    #[test]
    fn unused_matching_when_s_is_small() {
        for kk in (4..=12).step_by(2) {
            for ss in 0..=kk - 2 {
                let (g, s, k) = split(ss, kk);
                let used = pack_side(&s, &k, &g).unwrap().used_edges();
                let f = one_factorization(&k).unwrap();
                assert!(f.matchings.iter().any(|m| m.iter().all(|e| !used.contains(e))));
            }
        }
    }

    #[test]
    fn partial_completeness_restricts_apexes() {
        // apexes 0 and 1 see all of K = {3,4,5,6}; apex 2 misses 6
        let edges = (0..7)
            .flat_map(|a| (a + 1..7).map(move |b| (a, b)))
            .filter(|&e| e != (2, 6));
        let g = GeneralGraph::new(7, edges).unwrap();
        let r = pack_between(&[0, 1, 2], &[3, 4, 5, 6], &g).unwrap();
        assert_eq!(r.restricted_to, vec![0, 1]);
        assert!(r.is_restricted(&[0, 1, 2]));
        assert!(r.packing.len() >= 4);
        assert!(verify_packing(&g, &r.packing).unwrap());
        assert!(matches!(pack_side(&[0, 1, 2], &[3, 4, 5, 6], &g), Err(PackingError::NotComplete { s: 2, k: 6 })));
        assert!(pack_between(&[], &[3, 4, 5, 6], &g).unwrap().packing.is_empty());
    }

    #[test]
    fn rejects_overlap_and_non_clique() {
        let (g, _, _) = split(2, 3);
        assert!(matches!(pack_side(&[0, 2], &[2, 3, 4], &g), Err(PackingError::Overlap(2))));
        let path = GeneralGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        assert!(matches!(pack_side(&[0], &[1, 2, 3], &path), Err(PackingError::NotClique(_))));
    }

    #[test]
    fn bound_formula() {
        assert_eq!(side_bound(3, 4), 6);
        assert_eq!(side_bound(5, 4), 6);
        assert_eq!(side_bound(2, 5), 4);
        assert_eq!(side_bound(0, 7), 0);
        assert_eq!(side_bound(4, 0), 0);
    }
}
