//! Certificates `|H| ≤ 2|P|` for co-chain graphs: the guided case analysis,
//! a portfolio of all constructions, and exact fallbacks.

pub mod guided;
pub mod layout;
pub mod portfolio;
pub mod recipes;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{verify_hitting, verify_packing, Adjacency, CaseProfile, CoChainGraph, Edge, GraphError, HittingSet, Triangle, TrianglePacking};
use crate::oracle::{default_budget, exact_nu, exact_tau};
use crate::packing::PackingError;
use crate::search::SearchError;

pub use guided::{execute, outer_edges_complete, plan, Deferral, Hitting, Plan};
pub use layout::{build_t1, build_t2, t2_size, Layout};
pub use portfolio::{candidates, improve_packing, prune_hitting, Candidates};
pub use recipes::{build_recipe, extend_greedily, RecipeId, UnknownRecipe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("T2 needs x_l < l, profile is {0}")]
    T2Undefined(CaseProfile),
    #[error("{recipe}: {source}")]
    Recipe { recipe: RecipeId, source: PackingError },
    #[error("{recipe}: triangle {triangle:?} is not in the graph")]
    MissingTriangle { recipe: RecipeId, triangle: Triangle },
    #[error("{recipe}: edge {edge} used twice")]
    Overlap { recipe: RecipeId, edge: Edge },
    #[error("{recipe}: scan found no {what}")]
    ScanFailed { recipe: RecipeId, what: &'static str },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("case {0} is deferred")]
    Deferred(String),
    #[error("cannot drop {edge} from T1: a triangle through it leaves the protected blocks")]
    RefinementUnjustified { edge: Edge },
    #[error("guided mode needs even sides, got {l_size} and {m_size}")]
    OddSides { l_size: usize, m_size: usize },
    #[error("no certificate for case {case}: best |H| = {h_size}, |P| = {p_size} on {order} vertices")]
    Unresolved { case: String, h_size: usize, p_size: usize, order: usize },
    #[error("oracle budget exhausted before a certificate was found (|H| = {h_size}, |P| = {p_size})")]
    BudgetExhausted { h_size: usize, p_size: usize },
    #[error("proven optima violate the ratio: tau = {tau}, nu = {nu}")]
    VerificationFailed { tau: usize, nu: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Guided,
    Portfolio,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyConfig {
    /// Node budget for each oracle call.
    pub budget: u64,
    /// Largest order on which the exact fallback runs.
    pub exact_cap: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig { budget: default_budget(), exact_cap: 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub method: String,
    /// Tag of the guided case, when the case analysis ran.
    pub case: Option<String>,
    pub profile: Option<CaseProfile>,
    pub h_size: usize,
    pub p_size: usize,
    pub hitting_valid: bool,
    pub packing_valid: bool,
    pub ratio_ok: bool,
    /// Both sizes are proven optimal.
    pub optimal: bool,
    pub notes: Vec<String>,
    pub hitting: HittingSet,
    pub packing: TrianglePacking,
}

impl Certificate {
    fn new<G: Adjacency + ?Sized>(g: &G, method: impl Into<String>, hitting: HittingSet, packing: TrianglePacking) -> Self {
        let hitting_valid = verify_hitting(g, &hitting).unwrap_or(false);
        let packing_valid = verify_packing(g, &packing).unwrap_or(false);
        let (h_size, p_size) = (hitting.len(), packing.len());
        Certificate {
            method: method.into(),
            case: None,
            profile: None,
            h_size,
            p_size,
            hitting_valid,
            packing_valid,
            ratio_ok: h_size <= 2 * p_size,
            optimal: false,
            notes: Vec::new(),
            hitting,
            packing,
        }
    }

    /// Valid and within the ratio.
    pub fn is_ok(&self) -> bool {
        self.hitting_valid && self.packing_valid && self.ratio_ok
    }

    /// Recompute every flag against `g`.
    pub fn verify<G: Adjacency + ?Sized>(&self, g: &G) -> bool {
        self.h_size == self.hitting.len()
            && self.p_size == self.packing.len()
            && verify_hitting(g, &self.hitting).unwrap_or(false)
            && verify_packing(g, &self.packing).unwrap_or(false)
            && self.ratio_ok == (self.h_size <= 2 * self.p_size)
    }
}

/// Certify `g`. Guided mode requires even sides and falls back to the
/// portfolio and then to the exact oracles when its case fails or is deferred.
pub fn certify(g: &CoChainGraph, mode: Mode, cfg: &CertifyConfig) -> Result<Certificate, CertifyError> {
    match mode {
        Mode::Guided => certify_guided(g, cfg),
        Mode::Portfolio => certify_portfolio(g, cfg),
        Mode::Exact => certify_exact(g, cfg, "exact"),
    }
}

fn certify_guided(g: &CoChainGraph, cfg: &CertifyConfig) -> Result<Certificate, CertifyError> {
    if !g.has_even_sides() {
        return Err(CertifyError::OddSides { l_size: g.l_size(), m_size: g.m_size() });
    }
    let profile = g.profile()?;
    let pl = plan(g)?;
    let tag = pl.tag().to_string();
    let annotate = |mut c: Certificate, notes: Vec<String>| {
        c.case = Some(tag.clone());
        c.profile = Some(profile);
        c.notes.splice(0..0, notes);
        c
    };
    if let Plan::Deferred { deferral: Deferral::Small, .. } = pl {
        let c = exact_fallback(g, cfg, &tag, None)?;
        return Ok(annotate(c, vec![format!("{tag}: settled by the exact oracles")]));
    }
    let (raw, reason) = match execute(g, &pl) {
        Ok((h, p)) => {
            let c = Certificate::new(g, tag.clone(), h.clone(), p.clone());
            if c.is_ok() {
                return Ok(annotate(c, Vec::new()));
            }
            let why = format!("{tag}: guided sizes |H| = {}, |P| = {}", c.h_size, c.p_size);
            (Some((h, p)), why)
        }
        Err(e) => (None, format!("{tag}: {e}")),
    };
    let cands = candidates(g, raw.as_ref().map(|(h, p)| (h, p)));
    let c = from_candidates(g, &cands);
    if c.is_ok() {
        return Ok(annotate(c, vec![reason]));
    }
    let c = exact_fallback(g, cfg, &tag, Some(&c))?;
    Ok(annotate(c, vec![reason]))
}

fn from_candidates(g: &CoChainGraph, cands: &Candidates) -> Certificate {
    let (h, p) = cands.best();
    let (hn, h) = h.cloned().unwrap_or_default();
    let (pn, p) = p.cloned().unwrap_or_default();
    let mut c = Certificate::new(g, "portfolio", h, p);
    c.notes.push(format!("hitting from {hn}, packing from {pn}"));
    c
}

fn certify_portfolio(g: &CoChainGraph, cfg: &CertifyConfig) -> Result<Certificate, CertifyError> {
    let mut seed = None;
    let mut case = None;
    let mut profile = None;
    if g.has_even_sides() {
        profile = g.profile().ok();
        if let Ok(pl) = plan(g) {
            case = Some(pl.tag().to_string());
            seed = execute(g, &pl).ok();
        }
    }
    let cands = candidates(g, seed.as_ref().map(|(h, p)| (h, p)));
    let mut c = from_candidates(g, &cands);
    if !c.is_ok() {
        let what = case.clone().unwrap_or_else(|| "portfolio".into());
        c = exact_fallback(g, cfg, &what, Some(&c))?;
    }
    c.case = case;
    c.profile = profile;
    Ok(c)
}

fn exact_fallback(
    g: &CoChainGraph,
    cfg: &CertifyConfig,
    case: &str,
    best: Option<&Certificate>,
) -> Result<Certificate, CertifyError> {
    if g.order() > cfg.exact_cap {
        let (h_size, p_size) = best.map_or((0, 0), |c| (c.h_size, c.p_size));
        return Err(CertifyError::Unresolved { case: case.to_string(), h_size, p_size, order: g.order() });
    }
    certify_exact(g, cfg, "exact-fallback")
}

fn certify_exact<G: Adjacency + ?Sized>(g: &G, cfg: &CertifyConfig, method: &str) -> Result<Certificate, CertifyError> {
    let tau = exact_tau(g, cfg.budget);
    let nu = exact_nu(g, cfg.budget);
    let mut c = Certificate::new(g, method, tau.witness, nu.witness);
    c.optimal = tau.proven && nu.proven;
    c.notes.push(format!("oracle nodes: tau {}, nu {}", tau.explored, nu.explored));
    if c.is_ok() {
        if !c.optimal {
            c.notes.push("budget exhausted; sizes are not proven optimal".into());
        }
        return Ok(c);
    }
    if c.optimal {
        Err(CertifyError::VerificationFailed { tau: c.h_size, nu: c.p_size })
    } else {
        Err(CertifyError::BudgetExhausted { h_size: c.h_size, p_size: c.p_size })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_cochain;

    fn cfg() -> CertifyConfig {
        CertifyConfig { budget: 10_000_000, exact_cap: 12 }
    }

    #[test]
    fn sample_graph() {
        let g = build_cochain(4, 8, &[8, 5, 4, 2]).unwrap();
        let c = certify(&g, Mode::Guided, &cfg()).unwrap();
        assert!(c.is_ok() && c.verify(&g));
        assert_eq!(c.method, "saturated/case1/P3");
        assert!(c.notes.is_empty());
    }

    #[test]
    fn k4_goes_to_the_oracles() {
        let g = build_cochain(2, 2, &[2, 2]).unwrap();
        let c = certify(&g, Mode::Guided, &cfg()).unwrap();
        assert_eq!(c.method, "exact-fallback");
        assert_eq!((c.h_size, c.p_size), (2, 1));
        let c = certify(&g, Mode::Exact, &cfg()).unwrap();
        assert!(c.optimal && c.method == "exact");
        assert_eq!((c.h_size, c.p_size), (2, 1));
    }

    #[test]
    fn empty_graph() {
        let g = build_cochain(0, 0, &[]).unwrap();
        for mode in [Mode::Guided, Mode::Portfolio, Mode::Exact] {
            let c = certify(&g, mode, &cfg()).unwrap();
            assert_eq!((c.h_size, c.p_size), (0, 0));
            assert!(c.is_ok());
        }
    }

    #[test]
    fn p19_instance() {
        let g = CaseProfile::new(3, 3, 2, 1).realize(true).unwrap();
        let c = certify(&g, Mode::Guided, &cfg()).unwrap();
        assert_eq!(c.method, "unsaturated/dense/P19");
        assert!(c.packing.contains(&Triangle::new(g.c(1), g.c(2), g.d(6))));
        assert!(c.packing.contains(&Triangle::new(g.c(1), g.d(4), g.d(5))));
    }

    #[test]
    fn odd_sides_rejected_in_guided_mode_only() {
        let g = build_cochain(3, 4, &[4, 2, 1]).unwrap();
        assert!(matches!(certify(&g, Mode::Guided, &cfg()), Err(CertifyError::OddSides { .. })));
        assert!(certify(&g, Mode::Portfolio, &cfg()).unwrap().is_ok());
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let g = build_cochain(6, 6, &[6, 6, 5, 4, 3, 3]).unwrap();
        let tight = CertifyConfig { budget: 1, exact_cap: 12 };
        match certify(&g, Mode::Exact, &tight) {
            Ok(c) => assert!(c.is_ok() && !c.optimal),
            Err(e) => assert!(matches!(e, CertifyError::BudgetExhausted { .. })),
        }
    }

    #[test]
    fn certificate_round_trips_through_json() {
        let g = build_cochain(4, 8, &[8, 5, 4, 2]).unwrap();
        let c = certify(&g, Mode::Guided, &cfg()).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
