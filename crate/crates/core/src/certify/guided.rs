//! The case analysis: chooses an orientation, a hitting set and a recipe
//! from the profile of the graph.

use crate::graph::{Adjacency, CaseProfile, CoChainGraph, HittingSet, TrianglePacking};
use crate::search::{evaluate_case_functions, CaseFunctionReport};

use super::layout::{build_t1, build_t2, minus, Layout};
use super::recipes::{build_recipe, RecipeId};
use super::CertifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hitting {
    T1,
    /// `T1` without the edge `c3d4`, for the profile `(3,3,3,3)`.
    T1WithoutC3D4,
    T2,
}

/// Cases settled by results outside this crate. Both route to the portfolio
/// and exact fallbacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deferral {
    /// Small instances covered by the known result for graphs on few vertices
    /// of this shape; every such instance has at most 8 vertices.
    Small,
    /// `ℓ = m` even with `x_ℓ > m`.
    BalancedEven,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Plan {
    Build { tag: String, recipe: RecipeId, hitting: Hitting, mirrored: bool },
    Deferred { tag: String, deferral: Deferral, mirrored: bool },
}

impl Plan {
    pub fn tag(&self) -> &str {
        match self {
            Plan::Build { tag, .. } | Plan::Deferred { tag, .. } => tag,
        }
    }
}

fn needs_mirror(p: &CaseProfile) -> bool {
    if p.l == 0 || p.m == 0 {
        return p.m == 0 && p.l > 0;
    }
    if p.x_l >= p.l {
        if p.l == 1 || p.m == 1 {
            return p.l != 1;
        }
        return p.l > p.m;
    }
    p.m + p.x_l < p.l + p.x_m || *p == CaseProfile::new(3, 2, 2, 1)
}

/// Edges between `X_ℓ \ K_top_ℓ` and `X_m \ K_bot_m`.
fn outer_edges(g: &CoChainGraph, lay: &Layout) -> usize {
    let xl = minus(&lay.x_l, &lay.a);
    let xm = minus(&lay.x_m, &lay.d);
    xl.iter().map(|&u| xm.iter().filter(|&&v| g.adjacent(u, v)).count()).sum()
}

/// Whether every pair between `X_ℓ \ a` and `X_m \ d` is an edge.
pub fn outer_edges_complete(g: &CoChainGraph) -> bool {
    let Ok(lay) = Layout::new(g) else { return false };
    let p = lay.profile;
    if p.x_l < p.l || p.x_m < p.m {
        return true;
    }
    outer_edges(g, &lay) == (p.x_m - p.m) * (p.x_l - p.l)
}

/// Exceptional profiles of the generic search that admit `P18`.
pub const P18_PROFILES: [CaseProfile; 6] = [
    CaseProfile::new(2, 5, 1, 4),
    CaseProfile::new(5, 2, 4, 1),
    CaseProfile::new(3, 4, 2, 3),
    CaseProfile::new(4, 3, 3, 2),
    CaseProfile::new(3, 6, 2, 5),
    CaseProfile::new(6, 3, 5, 2),
];

pub const P19_PROFILES: [CaseProfile; 2] = [CaseProfile::new(2, 3, 1, 2), CaseProfile::new(3, 3, 2, 1)];

pub const SMALL_EXCEPTIONS: [CaseProfile; 3] =
    [CaseProfile::new(1, 2, 0, 1), CaseProfile::new(2, 1, 1, 0), CaseProfile::new(2, 2, 1, 1)];

/// The recipe with the largest generic lower bound; ties go to the lower index.
pub fn best_search_recipe(report: &CaseFunctionReport) -> RecipeId {
    let (i, _) = report
        .f_values
        .iter()
        .enumerate()
        .fold((0, i64::MIN), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
    RecipeId::SEARCH[i]
}

/// Decide how to certify `g`. Requires even sides.
pub fn plan(g: &CoChainGraph) -> Result<Plan, CertifyError> {
    let p0 = g.profile()?;
    if needs_mirror(&p0) {
        let (h, _) = g.mirror();
        return Ok(match plan_oriented(&h)? {
            Plan::Build { tag, recipe, hitting, .. } => {
                Plan::Build { tag: format!("{tag}[mirrored]"), recipe, hitting, mirrored: true }
            }
            Plan::Deferred { tag, deferral, .. } => {
                Plan::Deferred { tag: format!("{tag}[mirrored]"), deferral, mirrored: true }
            }
        });
    }
    plan_oriented(g)
}

fn build(tag: &str, recipe: RecipeId, hitting: Hitting) -> Plan {
    Plan::Build { tag: format!("{tag}/{recipe}"), recipe, hitting, mirrored: false }
}

fn defer(tag: &str, deferral: Deferral) -> Plan {
    let name = match deferral {
        Deferral::Small => "deferred-small",
        Deferral::BalancedEven => "deferred-balanced-even",
    };
    Plan::Deferred { tag: format!("{tag}/{name}"), deferral, mirrored: false }
}

fn plan_oriented(g: &CoChainGraph) -> Result<Plan, CertifyError> {
    use Hitting::*;
    use RecipeId::*;
    let lay = Layout::new(g)?;
    let p = lay.profile;
    let (l, m, x_l, x_m) = (p.l, p.m, p.x_l, p.x_m);
    if l == 0 {
        return Ok(build("single-clique", P1, T1));
    }
    if x_l >= l {
        let t = "saturated";
        if l == 1 {
            if m <= 3 {
                return Ok(defer("saturated/l=1", Deferral::Small));
            }
            return Ok(build("saturated/l=1", if x_l == 1 { P1 } else { P2 }, T1));
        }
        if x_l <= m {
            let t = format!("{t}/case1");
            if x_m - m >= l {
                if x_m < 2 * m || l >= 3 {
                    return Ok(build(&t, P3, T1));
                }
                if m == 2 {
                    return Ok(defer(&t, Deferral::Small));
                }
                return Ok(match (x_l, m) {
                    (2, _) => build(&t, P3, T1),
                    (3, _) => build(&t, P4, T1),
                    (_, 3) => build(&t, P2, T1),
                    (_, 4) => build(&t, P5Prime, T1),
                    _ => build(&t, P4, T1),
                });
            }
            if x_l > l {
                return Ok(build(&t, P3, T1));
            }
            if l + m == 5 {
                return Ok(build(&t, P6, T1));
            }
            if m > l {
                return Ok(build(&t, P7, T1));
            }
            return Ok(match (l, x_m) {
                (2, _) => defer(&t, Deferral::Small),
                (3, 3) => build(&t, P7, T1WithoutC3D4),
                (3, _) => build(&t, P8, T1),
                _ => build(&t, P7, T1),
            });
        }
        if x_m <= m + l {
            let t = format!("{t}/case2.1");
            if m - l >= 2 {
                return Ok(build(&t, P3, T1));
            }
            if m - l == 1 {
                if x_l < 2 * l {
                    return Ok(build(&t, P3, T1));
                }
                if x_m - m < l || outer_edges(g, &lay) < (x_m - m) * (x_l - l) {
                    return Ok(build(&t, P2, T1));
                }
                return Ok(build(&t, P9, T1));
            }
            if l % 2 == 0 {
                return Ok(defer(&t, Deferral::BalancedEven));
            }
            if x_l == l + 1 && x_m == l {
                return Ok(build(&t, P11, T1));
            }
            return Ok(build(&t, P10Prime, T1));
        }
        let t = format!("{t}/case2.2");
        if m - l >= 2 || x_l == 2 * l {
            return Ok(build(&t, P12, T1));
        }
        return Ok(build(&t, P4, T1));
    }
    if x_m + x_l < l - x_l {
        let t = "unsaturated/sparse";
        if x_l == 0 && x_m == 0 && m <= 2 {
            return Ok(defer(t, Deferral::Small));
        }
        return Ok(build(t, P13, T2));
    }
    let t = "unsaturated/dense";
    if l.max(m) >= 11 {
        return Ok(build(t, P13, T2));
    }
    if P18_PROFILES.contains(&p) {
        return Ok(build(t, P18, T2));
    }
    if P19_PROFILES.contains(&p) {
        return Ok(build(t, P19, T2));
    }
    if SMALL_EXCEPTIONS.contains(&p) {
        return Ok(defer(t, Deferral::Small));
    }
    let report = evaluate_case_functions(&p).map_err(CertifyError::Search)?;
    Ok(build(t, best_search_recipe(&report), T2))
}

/// Hitting set and packing of a `Build` plan, in the vertex ids of `g`.
pub fn execute(g: &CoChainGraph, plan: &Plan) -> Result<(HittingSet, TrianglePacking), CertifyError> {
    let Plan::Build { recipe, hitting, mirrored, .. } = plan else {
        return Err(CertifyError::Deferred(plan.tag().to_string()));
    };
    let (h, map) = if *mirrored {
        let (h, map) = g.mirror();
        (h, Some(map))
    } else {
        (g.clone(), None)
    };
    let packing = build_recipe(&h, *recipe)?;
    let hitting = match hitting {
        Hitting::T1 => build_t1(&h)?,
        Hitting::T2 => build_t2(&h)?,
        Hitting::T1WithoutC3D4 => {
            let mut t1 = build_t1(&h)?;
            let lay = Layout::new(&h)?;
            let (c3, d4) = (h.c(3), h.d(4));
            let justified = (0..h.order())
                .filter(|&w| w != c3 && w != d4 && h.adjacent(w, c3) && h.adjacent(w, d4))
                .all(|w| lay.a.contains(&w) || lay.d.contains(&w));
            if !justified {
                return Err(CertifyError::RefinementUnjustified { edge: crate::graph::Edge::new(c3, d4) });
            }
            t1.remove(&crate::graph::Edge::new(c3, d4));
            t1
        }
    };
    Ok(match map {
        Some(map) => (hitting.relabel(&map), packing.relabel(&map)),
        None => (hitting, packing),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_cochain;

    fn tag_of(p: CaseProfile) -> String {
        plan(&p.realize(true).unwrap()).unwrap().tag().to_string()
    }

    #[test]
    fn sample_graph_goes_to_case_one() {
        let g = build_cochain(4, 8, &[8, 5, 4, 2]).unwrap();
        let pl = plan(&g).unwrap();
        assert_eq!(pl.tag(), "saturated/case1/P3");
        let (h, p) = execute(&g, &pl).unwrap();
        assert!(h.len() <= 2 * p.len());
    }

    #[test]
    fn special_branches() {
        assert_eq!(tag_of(CaseProfile::new(3, 3, 2, 1)), "unsaturated/dense/P19");
        assert_eq!(tag_of(CaseProfile::new(3, 2, 2, 1)), "unsaturated/dense/P19[mirrored]");
        assert_eq!(tag_of(CaseProfile::new(2, 5, 1, 4)), "unsaturated/dense/P18");
        assert_eq!(tag_of(CaseProfile::new(1, 1, 1, 1)), "saturated/l=1/deferred-small");
        assert_eq!(tag_of(CaseProfile::new(2, 2, 3, 4)), "saturated/case2.1/deferred-balanced-even");
        assert_eq!(tag_of(CaseProfile::new(3, 3, 3, 3)), "saturated/case1/P7");
        assert_eq!(tag_of(CaseProfile::new(3, 2, 3, 2)), "saturated/case1/P6[mirrored]");
        assert_eq!(tag_of(CaseProfile::new(0, 3, 0, 0)), "single-clique/P1");
        assert_eq!(tag_of(CaseProfile::new(3, 0, 6, 0)), "single-clique/P1[mirrored]");
    }

    #[test]
    fn c3d4_refinement() {
        let p = CaseProfile::new(3, 3, 3, 3);
        for dense in [true, false] {
            let g = p.realize(dense).unwrap();
            let pl = plan(&g).unwrap();
            let Plan::Build { hitting, .. } = pl else { panic!() };
            assert_eq!(hitting, Hitting::T1WithoutC3D4);
            let (h, pk) = execute(&g, &pl).unwrap();
            assert!(crate::graph::verify_hitting(&g, &h).unwrap());
            assert!(h.len() <= 2 * pk.len());
        }
    }
}
