//! Named vertex blocks of an even-sided co-chain graph and the two hitting sets.

use crate::graph::{Adjacency, CaseProfile, CoChainGraph, Edge, GraphError, HittingSet};

use super::CertifyError;

/// The blocks of a co-chain graph with sides `2ℓ` and `2m`.
///
/// `a` and `b` are the top and bottom halves of the left side, `c` and `d`
/// the top and bottom halves of the right side. `a` is the better connected
/// half on the left, `d` on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub profile: CaseProfile,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    pub x_l: Vec<usize>,
    pub x_m: Vec<usize>,
}

impl Layout {
    pub fn new(g: &CoChainGraph) -> Result<Self, GraphError> {
        let p = g.profile()?;
        let (l, m) = (p.l, p.m);
        let cs = |lo: usize, hi: usize| (lo..=hi).map(|i| g.c(i)).collect::<Vec<_>>();
        let ds = |lo: usize, hi: usize| (lo..=hi).map(|j| g.d(j)).collect::<Vec<_>>();
        Ok(Layout {
            profile: p,
            a: cs(1, l),
            b: cs(l + 1, 2 * l),
            c: ds(1, m),
            d: ds(m + 1, 2 * m),
            x_l: cs(1, p.x_l),
            x_m: ds(2 * m - p.x_m + 1, 2 * m),
        })
    }

    pub fn left(&self) -> Vec<usize> {
        union(&self.a, &self.b)
    }

    pub fn right(&self) -> Vec<usize> {
        union(&self.c, &self.d)
    }
}

/// Elements of `a` not in `b`, in the order of `a`.
pub fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| !b.contains(v)).collect()
}

/// Sorted union without repetition.
pub fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn within(set: &[usize], out: &mut HittingSet) {
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            out.insert(Edge::new(u, v));
        }
    }
}

fn between<G: Adjacency + ?Sized>(g: &G, s: &[usize], t: &[usize], out: &mut HittingSet) {
    for &u in s {
        for &v in t {
            if u != v && g.adjacent(u, v) {
                out.insert(Edge::new(u, v));
            }
        }
    }
}

/// All edges inside the four blocks plus the edges present between `a` and
/// `d` and between `b` and `c`. What remains is bipartite with parts
/// `a ∪ d` and `b ∪ c`.
pub fn build_t1(g: &CoChainGraph) -> Result<HittingSet, GraphError> {
    let lay = Layout::new(g)?;
    let mut h = HittingSet::new();
    for block in [&lay.a, &lay.b, &lay.c, &lay.d] {
        within(block, &mut h);
    }
    between(g, &lay.a, &lay.d, &mut h);
    between(g, &lay.b, &lay.c, &mut h);
    Ok(h)
}

/// All edges inside the four blocks plus all edges from `X_ℓ` to `d` and
/// from `X_m` to `a`. Defined when `x_ℓ < ℓ`.
pub fn build_t2(g: &CoChainGraph) -> Result<HittingSet, CertifyError> {
    let lay = Layout::new(g)?;
    if lay.profile.x_l >= lay.profile.l {
        return Err(CertifyError::T2Undefined(lay.profile));
    }
    let mut h = HittingSet::new();
    for block in [&lay.a, &lay.b, &lay.c, &lay.d] {
        within(block, &mut h);
    }
    between(g, &lay.x_l, &lay.d, &mut h);
    between(g, &lay.x_m, &lay.a, &mut h);
    Ok(h)
}

/// `2C(m,2) + 2C(ℓ,2) + m·x_ℓ + ℓ·x_m − x_ℓ·x_m`.
pub fn t2_size(p: &CaseProfile) -> usize {
    let c2 = |n: usize| n * n.saturating_sub(1) / 2;
    2 * c2(p.m) + 2 * c2(p.l) + p.m * p.x_l + p.l * p.x_m - p.x_l * p.x_m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_cochain, verify_hitting};

    #[test]
    fn sample_graph_blocks_and_t1() {
        let g = build_cochain(4, 8, &[8, 5, 4, 2]).unwrap();
        let lay = Layout::new(&g).unwrap();
        assert_eq!(lay.a, vec![0, 1]);
        assert_eq!(lay.x_l, vec![0, 1, 2]);
        assert_eq!(lay.x_m, vec![7, 8, 9, 10, 11]);
        let t1 = build_t1(&g).unwrap();
        assert!(verify_hitting(&g, &t1).unwrap());
        assert!(t1.len() <= 23);
    }

    #[test]
    fn t1_on_disjoint_cliques_is_within_halves() {
        let g = build_cochain(4, 6, &[0; 4]).unwrap();
        assert_eq!(build_t1(&g).unwrap().len(), 1 + 1 + 3 + 3);
    }

    #[test]
    fn t2_size_matches_formula() {
        let p = CaseProfile::new(3, 3, 2, 1);
        assert_eq!(t2_size(&p), 19);
        for dense in [true, false] {
            let g = p.realize(dense).unwrap();
            let t2 = build_t2(&g).unwrap();
            assert_eq!(t2.len(), 19);
            assert!(verify_hitting(&g, &t2).unwrap());
        }
        let g = build_cochain(4, 6, &[0; 4]).unwrap();
        assert_eq!(build_t2(&g).unwrap().len(), 2 * 3 + 2);
    }

    #[test]
    fn t2_rejects_saturated_profiles() {
        let g = build_cochain(4, 8, &[8, 5, 4, 2]).unwrap();
        assert!(matches!(build_t2(&g), Err(CertifyError::T2Undefined(_))));
    }
}
