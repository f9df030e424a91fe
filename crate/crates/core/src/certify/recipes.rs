//! The packing recipes used by the case analysis, built from the primitives
//! and checked for edge-disjointness as they are assembled.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::graph::{enumerate_triangles, Adjacency, CoChainGraph, Edge, Triangle, TrianglePacking};
use crate::packing::{pack_clique, pack_clique_leaving, pack_clique_minus_edge, pack_side, PackingError};

use super::layout::{minus, union, Layout};
use super::CertifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RecipeId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P5Prime,
    P6,
    P7,
    P8,
    P9,
    P10,
    P10Prime,
    P11,
    P12,
    P13,
    P14,
    P15L,
    P15M,
    P16L,
    P16M,
    P17L,
    P17M,
    P18Prime,
    P18,
    P19Prime,
    P19,
}

impl RecipeId {
    pub const ALL: [RecipeId; 26] = [
        RecipeId::P1,
        RecipeId::P2,
        RecipeId::P3,
        RecipeId::P4,
        RecipeId::P5,
        RecipeId::P5Prime,
        RecipeId::P6,
        RecipeId::P7,
        RecipeId::P8,
        RecipeId::P9,
        RecipeId::P10,
        RecipeId::P10Prime,
        RecipeId::P11,
        RecipeId::P12,
        RecipeId::P13,
        RecipeId::P14,
        RecipeId::P15L,
        RecipeId::P15M,
        RecipeId::P16L,
        RecipeId::P16M,
        RecipeId::P17L,
        RecipeId::P17M,
        RecipeId::P18Prime,
        RecipeId::P18,
        RecipeId::P19Prime,
        RecipeId::P19,
    ];

    /// The eight recipes of the generic search when `x_ℓ < ℓ`, in `f_1..f_8` order.
    pub const SEARCH: [RecipeId; 8] = [
        RecipeId::P13,
        RecipeId::P14,
        RecipeId::P15L,
        RecipeId::P15M,
        RecipeId::P16L,
        RecipeId::P16M,
        RecipeId::P17L,
        RecipeId::P17M,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RecipeId::P1 => "P1",
            RecipeId::P2 => "P2",
            RecipeId::P3 => "P3",
            RecipeId::P4 => "P4",
            RecipeId::P5 => "P5",
            RecipeId::P5Prime => "P5'",
            RecipeId::P6 => "P6",
            RecipeId::P7 => "P7",
            RecipeId::P8 => "P8",
            RecipeId::P9 => "P9",
            RecipeId::P10 => "P10",
            RecipeId::P10Prime => "P10'",
            RecipeId::P11 => "P11",
            RecipeId::P12 => "P12",
            RecipeId::P13 => "P13",
            RecipeId::P14 => "P14",
            RecipeId::P15L => "P15l",
            RecipeId::P15M => "P15m",
            RecipeId::P16L => "P16l",
            RecipeId::P16M => "P16m",
            RecipeId::P17L => "P17l",
            RecipeId::P17M => "P17m",
            RecipeId::P18Prime => "P18'",
            RecipeId::P18 => "P18",
            RecipeId::P19Prime => "P19'",
            RecipeId::P19 => "P19",
        }
    }
}

impl fmt::Display for RecipeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown recipe `{0}`")]
pub struct UnknownRecipe(pub String);

impl FromStr for RecipeId {
    type Err = UnknownRecipe;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().replace("prime", "'").replace('′', "'");
        RecipeId::ALL
            .iter()
            .copied()
            .find(|r| r.name().eq_ignore_ascii_case(&key))
            .ok_or_else(|| UnknownRecipe(s.to_string()))
    }
}

struct Builder<'a> {
    g: &'a CoChainGraph,
    id: RecipeId,
    packing: TrianglePacking,
    used: HashSet<Edge>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a CoChainGraph, id: RecipeId) -> Self {
        Builder { g, id, packing: TrianglePacking::new(), used: HashSet::new() }
    }

    fn wrap(&self, r: Result<TrianglePacking, PackingError>) -> Result<TrianglePacking, CertifyError> {
        r.map_err(|source| CertifyError::Recipe { recipe: self.id, source })
    }

    fn add(&mut self, part: Result<TrianglePacking, PackingError>) -> Result<(), CertifyError> {
        let part = self.wrap(part)?;
        for t in part {
            self.add_triangle(t)?;
        }
        Ok(())
    }

    fn add_triangle(&mut self, t: Triangle) -> Result<(), CertifyError> {
        if !t.exists_in(self.g) {
            return Err(CertifyError::MissingTriangle { recipe: self.id, triangle: t });
        }
        for e in t.edges() {
            if !self.used.insert(e) {
                return Err(CertifyError::Overlap { recipe: self.id, edge: e });
            }
        }
        self.packing.insert(t);
        Ok(())
    }

    fn is_free(&self, u: usize, v: usize) -> bool {
        self.g.adjacent(u, v) && !self.used.contains(&Edge::new(u, v))
    }

    fn require_free(&self, u: usize, v: usize, what: &'static str) -> Result<(), CertifyError> {
        if self.is_free(u, v) {
            Ok(())
        } else {
            Err(CertifyError::ScanFailed { recipe: self.id, what })
        }
    }

    fn side(&mut self, s: &[usize], k: &[usize]) -> Result<(), CertifyError> {
        self.add(pack_side(s, k, self.g))
    }

    fn clique(&mut self, k: &[usize]) -> Result<(), CertifyError> {
        self.add(pack_clique(self.g, k))
    }

    fn finish(self) -> TrianglePacking {
        self.packing
    }
}

fn require(id: RecipeId, ok: bool, what: &'static str) -> Result<(), CertifyError> {
    if ok {
        Ok(())
    } else {
        Err(CertifyError::ScanFailed { recipe: id, what })
    }
}

/// Build recipe `id` on `g` in its given orientation.
///
/// Every primitive checks its own preconditions, so a recipe that does not
/// apply to the profile of `g` returns an error instead of a packing.
pub fn build_recipe(g: &CoChainGraph, id: RecipeId) -> Result<TrianglePacking, CertifyError> {
    let lay = Layout::new(g)?;
    let p = lay.profile;
    let (l, m) = (p.l, p.m);
    let mut b = Builder::new(g, id);
    let xl_out = minus(&lay.x_l, &lay.a);
    let xm_out = minus(&lay.x_m, &lay.d);
    match id {
        RecipeId::P1 => b.clique(&lay.right())?,
        RecipeId::P2 => {
            b.clique(&union(&lay.d, &lay.x_l))?;
            b.side(&lay.d, &lay.c)?;
        }
        RecipeId::P3 => {
            b.side(&lay.x_l, &lay.d)?;
            b.side(&xm_out, &lay.a)?;
            b.side(&lay.d, &lay.c)?;
            b.side(&lay.a, &lay.b)?;
        }
        RecipeId::P4 => {
            b.clique(&union(&lay.a, &lay.x_m))?;
            b.side(&lay.a, &lay.b)?;
        }
        RecipeId::P5 => b.clique(&union(&lay.a, &lay.x_m))?,
        RecipeId::P5Prime => {
            require(id, l == 2 && m == 4 && p.x_l == 4 && p.x_m == 8, "profile (2,4,4,8)")?;
            let (c1, c2, c3, c4, d8) = (g.c(1), g.c(2), g.c(3), g.c(4), g.d(8));
            b.add(pack_clique_leaving(g, &union(&lay.a, &lay.x_m), c1, c2))?;
            b.require_free(c1, c2, "unused edge c1c2 in p(K_top ∪ X_m)")?;
            b.add_triangle(Triangle::new(c1, c2, c3))?;
            b.add_triangle(Triangle::new(c3, c4, d8))?;
        }
        RecipeId::P6 => {
            require(id, l == 2 && m == 3, "sides 4 and 6")?;
            let (c1, c2) = (g.c(1), g.c(2));
            let (d4, d5, d6) = (g.d(4), g.d(5), g.d(6));
            b.add(pack_clique_leaving(g, &lay.left(), c1, c2))?;
            b.add(pack_clique_leaving(g, &lay.right(), d5, d6))?;
            b.require_free(c1, c2, "unused edge c1c2 in p(K_l)")?;
            b.require_free(d5, d6, "unused edge d5d6 in p(K_m)")?;
            b.add_triangle(Triangle::new(c1, c2, d4))?;
            b.add_triangle(Triangle::new(c1, d5, d6))?;
        }
        RecipeId::P7 => {
            b.clique(&union(&lay.x_l, &lay.d))?;
            b.side(&lay.a, &lay.b)?;
            b.side(&lay.d, &lay.c)?;
        }
        RecipeId::P8 => {
            require(id, m >= 3, "m at least 3")?;
            let d3 = g.d(3);
            b.clique(&union(&union(&lay.x_l, &lay.d), &[d3]))?;
            b.side(&lay.a, &lay.b)?;
            b.side(&lay.d, &minus(&lay.c, &[d3]))?;
        }
        RecipeId::P9 => b.clique(&union(&lay.x_l, &lay.x_m))?,
        RecipeId::P10 | RecipeId::P10Prime => {
            b.side(&lay.d, &lay.c)?;
            b.side(&lay.a, &lay.b)?;
            b.side(&lay.d, &lay.a)?;
            b.side(&xl_out, &lay.d)?;
            if id == RecipeId::P10Prime {
                // one extra triangle per vertex of X_m outside d, through an
                // unused d-edge and an unused a-d edge
                for &x in &xm_out {
                    let found = lay.d.iter().find_map(|&y| {
                        if !b.is_free(x, y) {
                            return None;
                        }
                        lay.a.iter().find(|&&c| b.is_free(c, y) && b.is_free(c, x)).map(|&c| (c, y))
                    });
                    let (c, y) = found.ok_or(CertifyError::ScanFailed {
                        recipe: id,
                        what: "unused edges completing a triangle at a vertex of X_m outside the bottom half",
                    })?;
                    b.add_triangle(Triangle::new(c, x, y))?;
                }
            }
        }
        RecipeId::P11 => {
            b.clique(&union(&lay.x_l, &lay.d))?;
            b.side(&lay.x_l, &minus(&lay.left(), &lay.x_l))?;
            b.side(&lay.d, &lay.c)?;
        }
        RecipeId::P12 => {
            b.side(&lay.d, &lay.x_l)?;
            b.side(&lay.a, &xm_out)?;
            b.side(&lay.c, &lay.d)?;
        }
        RecipeId::P13 => {
            b.clique(&union(&lay.d, &lay.x_l))?;
            b.side(&union(&lay.x_l, &lay.x_m), &minus(&lay.a, &lay.x_l))?;
            b.side(&lay.d, &lay.c)?;
            b.side(&lay.a, &lay.b)?;
        }
        RecipeId::P14 => {
            b.side(&lay.d, &lay.c)?;
            b.side(&lay.a, &lay.b)?;
            let s = union(&minus(&lay.a, &lay.x_l), &minus(&lay.d, &lay.x_m));
            b.side(&s, &union(&lay.x_l, &lay.x_m))?;
        }
        RecipeId::P15L => {
            b.clique(&lay.a)?;
            b.side(&lay.x_l, &lay.d)?;
            b.side(&lay.d, &lay.c)?;
            b.side(&lay.a, &lay.b)?;
        }
        RecipeId::P15M => {
            b.clique(&lay.d)?;
            b.side(&lay.x_m, &lay.a)?;
            b.side(&lay.d, &lay.c)?;
            b.side(&lay.a, &lay.b)?;
        }
        RecipeId::P16L => {
            b.clique(&lay.left())?;
            b.side(&lay.x_l, &lay.d)?;
            b.side(&lay.d, &lay.c)?;
        }
        RecipeId::P16M => {
            b.clique(&lay.right())?;
            b.side(&lay.x_m, &lay.a)?;
            b.side(&lay.a, &lay.b)?;
        }
        RecipeId::P17L => {
            require(id, m >= 1, "m at least 1")?;
            let last = g.d(2 * m);
            let d_rest = minus(&lay.d, &[last]);
            b.clique(&lay.left())?;
            b.side(&lay.x_l, &d_rest)?;
            b.side(&d_rest, &union(&lay.c, &[last]))?;
        }
        RecipeId::P17M => {
            require(id, l >= 1, "l at least 1")?;
            let first = g.c(1);
            let a_rest = minus(&lay.a, &[first]);
            b.clique(&lay.right())?;
            b.side(&lay.x_m, &a_rest)?;
            b.side(&a_rest, &union(&lay.b, &[first]))?;
        }
        RecipeId::P18Prime | RecipeId::P18 => {
            let k = union(&lay.a, &lay.d);
            let missing: Vec<Edge> = k
                .iter()
                .enumerate()
                .flat_map(|(i, &u)| k[i + 1..].iter().map(move |&v| Edge::new(u, v)))
                .filter(|e| !g.adjacent(e.0, e.1))
                .collect();
            let [e] = missing[..] else {
                return Err(CertifyError::ScanFailed { recipe: id, what: "exactly one missing edge in K_top_l ∪ K_bot_m" });
            };
            b.add(pack_clique_minus_edge(g, &k, e.0, e.1))?;
            if id == RecipeId::P18 {
                b.side(&lay.d, &lay.c)?;
                b.side(&lay.a, &lay.b)?;
            }
        }
        RecipeId::P19Prime | RecipeId::P19 => {
            require(id, (2..=3).contains(&l) && m == 3, "l in {2,3} and m = 3")?;
            let (c1, c2) = (g.c(1), g.c(2));
            let (d4, d5, d6) = (g.d(4), g.d(5), g.d(6));
            b.add(pack_clique_leaving(g, &lay.left(), c1, c2))?;
            b.add(pack_clique_leaving(g, &lay.right(), d4, d5))?;
            if id == RecipeId::P19 {
                b.require_free(c1, c2, "unused edge c1c2 in p(K_l)")?;
                b.require_free(d4, d5, "unused edge d4d5 in p(K_m)")?;
                b.add_triangle(Triangle::new(c1, c2, d6))?;
                b.add_triangle(Triangle::new(c1, d4, d5))?;
            }
        }
    }
    Ok(b.finish())
}

/// Add every triangle of `g` whose edges are all unused, in lexicographic order.
pub fn extend_greedily<G: Adjacency + ?Sized>(g: &G, p: &mut TrianglePacking) {
    let mut used: HashSet<Edge> = p.used_edges().into_iter().collect();
    for t in enumerate_triangles(g) {
        if t.edges().iter().all(|e| !used.contains(e)) {
            used.extend(t.edges());
            p.insert(t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_cochain, verify_packing, CaseProfile};

    #[test]
    fn names_round_trip() {
        for r in RecipeId::ALL {
            assert_eq!(r.name().parse::<RecipeId>().unwrap(), r);
        }
        assert_eq!("p10prime".parse::<RecipeId>().unwrap(), RecipeId::P10Prime);
        assert!("P20".parse::<RecipeId>().is_err());
    }

    #[test]
    fn p19_on_both_profiles() {
        for (p, size) in [(CaseProfile::new(2, 3, 1, 2), 7), (CaseProfile::new(3, 3, 2, 1), 10)] {
            for dense in [true, false] {
                let g = p.realize(dense).unwrap();
                let pk = build_recipe(&g, RecipeId::P19).unwrap();
                assert!(verify_packing(&g, &pk).unwrap());
                assert_eq!(pk.len(), size, "{p}");
                assert!(pk.contains(&Triangle::new(g.c(1), g.c(2), g.d(6))));
                assert!(pk.contains(&Triangle::new(g.c(1), g.d(4), g.d(5))));
            }
        }
    }

    #[test]
    fn p5_prime_and_p6() {
        let g = CaseProfile::new(2, 4, 4, 8).realize(true).unwrap();
        let pk = build_recipe(&g, RecipeId::P5Prime).unwrap();
        assert_eq!(pk.len(), 15);
        assert!(verify_packing(&g, &pk).unwrap());
        for dense in [true, false] {
            let g = CaseProfile::new(2, 3, 2, 3).realize(dense).unwrap();
            let pk = build_recipe(&g, RecipeId::P6).unwrap();
            assert_eq!(pk.len(), 7);
        }
    }

    #[test]
    fn p10_prime_adds_one_triangle_per_extra_vertex() {
        let g = build_cochain(6, 6, &[6, 6, 6, 6, 2, 1]).unwrap();
        let p = g.profile().unwrap();
        assert_eq!((p.l, p.m, p.x_l, p.x_m), (3, 3, 4, 6));
        let base = build_recipe(&g, RecipeId::P10).unwrap();
        let primed = build_recipe(&g, RecipeId::P10Prime).unwrap();
        assert_eq!(primed.len(), base.len() + p.x_m - p.m);
        assert!(verify_packing(&g, &primed).unwrap());
    }

    #[test]
    fn p18_drops_at_most_one_triangle() {
        let g = CaseProfile::new(3, 4, 2, 3).realize(true).unwrap();
        let prime = build_recipe(&g, RecipeId::P18Prime).unwrap();
        assert!(prime.len() >= crate::packing::feder_count(7).count - 1);
        assert!(verify_packing(&g, &build_recipe(&g, RecipeId::P18).unwrap()).unwrap());
    }

    #[test]
    fn inapplicable_recipes_fail_loudly() {
        let g = build_cochain(4, 8, &[8, 5, 4, 2]).unwrap();
        assert!(matches!(build_recipe(&g, RecipeId::P9), Err(CertifyError::Recipe { .. })));
        assert!(matches!(build_recipe(&g, RecipeId::P19), Err(CertifyError::ScanFailed { .. })));
    }
}
