//! Random even-sided co-chain graphs, certified in parallel and cross-checked
//! against the exact oracles on small orders.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{certify, CertifyConfig, Mode};
use crate::graph::{Adjacency, CoChainGraph};
use crate::oracle::{exact_nu, exact_tau};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub count: usize,
    /// Largest half side `ℓ`.
    pub max_l: usize,
    /// Largest half side `m`.
    pub max_m: usize,
    pub seed: u64,
    /// Orders up to this are also solved exactly.
    pub oracle_max: usize,
    pub mode: Mode,
    pub certify: CertifyConfig,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            count: 1000,
            max_l: 10,
            max_m: 10,
            seed: 0,
            oracle_max: 10,
            mode: Mode::Guided,
            certify: CertifyConfig::default(),
        }
    }
}

/// Uniform nonincreasing thresholds in `0..=m_size`, one per left vertex:
/// a uniform lattice path from `(0, 0)` to `(l_size, m_size)`.
pub fn random_thresholds<R: Rng + ?Sized>(rng: &mut R, l_size: usize, m_size: usize) -> Vec<usize> {
    let mut picks = sample(rng, l_size + m_size, l_size).into_vec();
    picks.sort_unstable();
    let mut t: Vec<usize> = picks.iter().enumerate().map(|(i, p)| p - i).collect();
    t.reverse();
    t
}

/// A random co-chain graph with sides `2ℓ` and `2m`, `1 ≤ ℓ ≤ max_l`, `1 ≤ m ≤ max_m`.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, max_l: usize, max_m: usize) -> CoChainGraph {
    let l = rng.gen_range(1..=max_l.max(1));
    let m = rng.gen_range(1..=max_m.max(1));
    let t = random_thresholds(rng, 2 * l, 2 * m);
    CoChainGraph::new(2 * l, 2 * m, t).expect("lattice paths give valid thresholds")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub tau: usize,
    pub nu: usize,
    pub proven: bool,
    /// `τ ≤ |H|`, `|P| ≤ ν` and, when proven, `τ ≤ 2ν`.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzCase {
    pub index: usize,
    pub l_size: usize,
    pub m_size: usize,
    pub thresholds: Vec<usize>,
    pub method: Option<String>,
    pub h_size: usize,
    pub p_size: usize,
    pub ok: bool,
    pub error: Option<String>,
    pub oracle: Option<OracleCheck>,
}

impl FuzzCase {
    pub fn passed(&self) -> bool {
        self.ok && self.oracle.as_ref().map_or(true, |o| o.consistent)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub count: usize,
    pub passed: usize,
    /// `(method, count)`, sorted by method.
    pub methods: Vec<(String, usize)>,
    pub oracle_checked: usize,
    pub failures: Vec<FuzzCase>,
}

impl FuzzSummary {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

fn run_case(index: usize, g: &CoChainGraph, cfg: &FuzzConfig) -> FuzzCase {
    let mut case = FuzzCase {
        index,
        l_size: g.l_size(),
        m_size: g.m_size(),
        thresholds: g.thresholds().to_vec(),
        method: None,
        h_size: 0,
        p_size: 0,
        ok: false,
        error: None,
        oracle: None,
    };
    match certify(g, cfg.mode, &cfg.certify) {
        Ok(c) => {
            case.ok = c.is_ok() && c.verify(g);
            case.method = Some(c.method);
            case.h_size = c.h_size;
            case.p_size = c.p_size;
        }
        Err(e) => case.error = Some(e.to_string()),
    }
    if g.order() <= cfg.oracle_max {
        let tau = exact_tau(g, cfg.certify.budget);
        let nu = exact_nu(g, cfg.certify.budget);
        let proven = tau.proven && nu.proven;
        let mut consistent = !proven || tau.value <= 2 * nu.value;
        if case.ok {
            consistent &= !tau.proven || tau.value <= case.h_size;
            consistent &= !nu.proven || case.p_size <= nu.value;
        }
        case.oracle = Some(OracleCheck { tau: tau.value, nu: nu.value, proven, consistent });
    }
    case
}

/// All instances come from one seeded stream drawn up front, so the result
/// does not depend on the thread count.
pub fn instances(cfg: &FuzzConfig) -> Vec<CoChainGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.count).map(|_| random_instance(&mut rng, cfg.max_l, cfg.max_m)).collect()
}

pub fn run_fuzz(cfg: &FuzzConfig) -> FuzzSummary {
    let graphs = instances(cfg);
    let cases: Vec<FuzzCase> = graphs.par_iter().enumerate().map(|(i, g)| run_case(i, g, cfg)).collect();
    let mut summary = FuzzSummary { count: cases.len(), ..FuzzSummary::default() };
    let mut methods = std::collections::BTreeMap::<String, usize>::new();
    for c in cases {
        *methods.entry(c.method.clone().unwrap_or_else(|| "error".into())).or_default() += 1;
        summary.oracle_checked += usize::from(c.oracle.is_some());
        if c.passed() {
            summary.passed += 1;
        } else {
            summary.failures.push(c);
        }
    }
    summary.methods = methods.into_iter().collect();
    summary
}
