//! Try every hitting set and every recipe in both orientations, improve them
//! locally and keep the smallest hitting set and the largest packing.

use std::collections::{HashMap, HashSet};

use crate::graph::{enumerate_triangles, Adjacency, CoChainGraph, Edge, HittingSet, Triangle, TrianglePacking};
use crate::oracle::max_cut_complement;

use super::layout::{build_t1, build_t2};
use super::recipes::{build_recipe, extend_greedily, RecipeId};

/// Drop edges of `h` that hit no triangle alone, scanning from the largest edge down.
pub fn prune_hitting<G: Adjacency + ?Sized>(g: &G, h: &HittingSet) -> HittingSet {
    let tris = enumerate_triangles(g);
    let mut through: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for e in t.edges() {
            through.entry(e).or_default().push(i);
        }
    }
    let mut hits: Vec<usize> = tris.iter().map(|t| t.edges().iter().filter(|e| h.contains(e)).count()).collect();
    let mut out = h.clone();
    let mut edges: Vec<Edge> = h.iter().copied().collect();
    edges.reverse();
    for e in edges {
        let ts = through.get(&e).map(Vec::as_slice).unwrap_or(&[]);
        if ts.iter().all(|&t| hits[t] >= 2) {
            for &t in ts {
                hits[t] -= 1;
            }
            out.remove(&e);
        }
    }
    out
}

/// Replace one triangle by two while possible, then fill greedily.
pub fn improve_packing<G: Adjacency + ?Sized>(g: &G, p: &TrianglePacking) -> TrianglePacking {
    let tris = enumerate_triangles(g);
    let mut through: HashMap<Edge, Vec<Triangle>> = HashMap::new();
    for t in &tris {
        for e in t.edges() {
            through.entry(e).or_default().push(*t);
        }
    }
    let mut p = p.clone();
    extend_greedily(g, &mut p);
    let mut used: HashSet<Edge> = p.used_edges().into_iter().collect();
    'outer: loop {
        let current: Vec<Triangle> = p.iter().copied().collect();
        for t in current {
            for e in t.edges() {
                used.remove(&e);
            }
            let free = |c: &Triangle, used: &HashSet<Edge>| c.edges().iter().all(|e| !used.contains(e));
            let mut cands: Vec<Triangle> = t
                .edges()
                .iter()
                .flat_map(|e| through.get(e).into_iter().flatten())
                .filter(|c| **c != t && free(c, &used))
                .copied()
                .collect();
            cands.sort_unstable();
            cands.dedup();
            for (i, a) in cands.iter().enumerate() {
                let ae = a.edges();
                if let Some(b) = cands[i + 1..].iter().find(|b| b.edges().iter().all(|e| !ae.contains(e))) {
                    p.remove(&t);
                    for c in [*a, *b] {
                        used.extend(c.edges());
                        p.insert(c);
                    }
                    continue 'outer;
                }
            }
            used.extend(t.edges());
        }
        break;
    }
    extend_greedily(g, &mut p);
    p
}

/// The named starting points of the portfolio.
#[derive(Clone, Debug, Default)]
pub struct Candidates {
    pub hitting: Vec<(String, HittingSet)>,
    pub packing: Vec<(String, TrianglePacking)>,
}

impl Candidates {
    /// The smallest hitting set and the largest packing; earlier entries win ties.
    pub fn best(&self) -> (Option<&(String, HittingSet)>, Option<&(String, TrianglePacking)>) {
        let h = self.hitting.iter().fold(None, |b: Option<&(String, HittingSet)>, c| match b {
            Some(b) if b.1.len() <= c.1.len() => Some(b),
            _ => Some(c),
        });
        let p = self.packing.iter().fold(None, |b: Option<&(String, TrianglePacking)>, c| match b {
            Some(b) if b.1.len() >= c.1.len() => Some(b),
            _ => Some(c),
        });
        (h, p)
    }
}

/// Build all candidates. `seed` adds an extra pair (e.g. the guided result).
pub fn candidates(g: &CoChainGraph, seed: Option<(&HittingSet, &TrianglePacking)>) -> Candidates {
    let mut out = Candidates::default();
    if let Some((h, p)) = seed {
        out.hitting.push(("guided".into(), prune_hitting(g, h)));
        out.packing.push(("guided".into(), improve_packing(g, p)));
    }
    out.hitting.push(("cut".into(), prune_hitting(g, &max_cut_complement(g))));
    out.packing.push(("greedy".into(), improve_packing(g, &TrianglePacking::new())));
    if !g.has_even_sides() {
        return out;
    }
    let (mirror, map) = g.mirror();
    for (suffix, h, map) in [("", g, None), ("[mirrored]", &mirror, Some(&map))] {
        let back_h = |x: HittingSet| match map {
            Some(m) => x.relabel(m),
            None => x,
        };
        let back_p = |x: TrianglePacking| match map {
            Some(m) => x.relabel(m),
            None => x,
        };
        if let Ok(t) = build_t1(h) {
            out.hitting.push((format!("T1{suffix}"), prune_hitting(g, &back_h(t))));
        }
        if let Ok(t) = build_t2(h) {
            out.hitting.push((format!("T2{suffix}"), prune_hitting(g, &back_h(t))));
        }
        for r in RecipeId::ALL {
            if let Ok(p) = build_recipe(h, r) {
                out.packing.push((format!("{r}{suffix}"), improve_packing(g, &back_p(p))));
            }
        }
    }
    out
}
