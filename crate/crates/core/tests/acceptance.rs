use std::process::ExitCode;
use std::time::Instant;

use tuza_cochain::certify::{certify, CertifyConfig, Mode};
use tuza_cochain::fuzz::{run_fuzz, FuzzConfig};
use tuza_cochain::graph::{verify_hitting, verify_packing, CoChainGraph, GeneralGraph};
use tuza_cochain::oracle::{exact_nu, exact_tau};
use tuza_cochain::packing::{feder_count, pack_clique, pack_side, side_bound};
use tuza_cochain::search::{audit_inequalities, search_report, AuditRanges, EXPECTED_EXCEPTIONAL};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn exceptional_tuples() -> Outcome {
    let r = search_report(10);
    let found: Vec<_> = r.exceptional.iter().map(|t| t.profile).collect();
    let exact = found == EXPECTED_EXCEPTIONAL && r.missing.is_empty() && r.unexpected.is_empty();
    for v in &r.variants {
        println!("  variant {}: {} tuples, {} deviations", v.variant, v.tuples.len(), v.deviations.len());
    }
    let untraced = r.variants.iter().flat_map(|v| &v.deviations).filter(|d| d.f_indices.is_empty()).count();
    let supersets = r.variants.iter().all(|v| found.iter().all(|p| v.tuples.contains(p)));
    outcome(
        exact && untraced == 0 && supersets,
        format!("{} tuples under {}; every variant keeps them; {untraced} untraced deviations", found.len(), r.variant),
    )
}

fn feder_equality() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=16 {
        let g = GeneralGraph::complete(n);
        let vs: Vec<usize> = (0..n).collect();
        let p = pack_clique(&g, &vs).expect("complete graph is a clique");
        if p.len() != feder_count(n).count || !verify_packing(&g, &p).unwrap() {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("n = 1..16, mismatches at {bad:?}"))
}

fn threshold_sequences(len: usize, max: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    (0..=max)
        .flat_map(|first| {
            threshold_sequences(len - 1, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn desk_scale() -> Outcome {
    let cfg = CertifyConfig::default();
    let (mut total, mut bad) = (0, Vec::new());
    for l in [2, 4] {
        for m in [2, 4, 6] {
            for t in threshold_sequences(l, m) {
                let g = CoChainGraph::new(l, m, t).unwrap();
                total += 1;
                let ok = match certify(&g, Mode::Guided, &cfg) {
                    Ok(c) => {
                        let tau = exact_tau(&g, cfg.budget);
                        let nu = exact_nu(&g, cfg.budget);
                        c.ratio_ok
                            && c.verify(&g)
                            && verify_hitting(&g, &c.hitting).unwrap()
                            && verify_packing(&g, &c.packing).unwrap()
                            && tau.proven
                            && nu.proven
                            && tau.value <= c.h_size
                            && c.p_size <= nu.value
                            && tau.value <= 2 * nu.value
                    }
                    Err(_) => false,
                };
                if !ok {
                    bad.push(g.thresholds().to_vec());
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{total} graphs, {} failures", bad.len()))
}

fn side_bounds() -> Outcome {
    let mut bad = Vec::new();
    for k in 0..=12 {
        for s in 0..=12 {
            let edges = (s..s + k)
                .flat_map(|a| (a + 1..s + k).map(move |b| (a, b)))
                .chain((0..s).flat_map(|a| (s..s + k).map(move |b| (a, b))));
            let g = GeneralGraph::new(s + k, edges).unwrap();
            let sv: Vec<usize> = (0..s).collect();
            let kv: Vec<usize> = (s..s + k).collect();
            let p = pack_side(&sv, &kv, &g).unwrap();
            let odd_form = k.saturating_sub(1) * s.min(k) / 2;
            let even_form = if k % 2 == 0 { k / 2 * s.min(k.saturating_sub(1)) } else { 0 };
            if p.len() < odd_form || p.len() < even_form || p.len() < side_bound(s, k) || !verify_packing(&g, &p).unwrap() {
                bad.push((s, k));
            }
        }
    }
    outcome(bad.is_empty(), format!("|S|, |K| = 0..12, short at {bad:?}"))
}

fn audit() -> Outcome {
    let r = audit_inequalities(&AuditRanges::default());
    let realized: usize = r.chains.iter().map(|c| c.realized_checked).sum();
    for c in r.chains.iter().filter(|c| !c.step_violations.is_empty()) {
        let steps: std::collections::BTreeSet<usize> = c.step_violations.iter().map(|v| v.step).collect();
        let first = &c.step_violations[0];
        println!(
            "  slack in {} at step {steps:?}: {} tuples, first {} ({} {} {})",
            c.id,
            c.step_violations.len(),
            first.profile,
            first.lhs,
            first.rel,
            first.rhs
        );
    }
    let sound = r.chains.iter().all(|c| c.is_sound());
    outcome(
        sound,
        format!(
            "{} chains, {} step violations (reported), {} conclusion violations, {} realized violations over {realized} concrete graphs",
            r.chains.len(),
            r.step_violations(),
            r.conclusion_violations(),
            r.realized_violations()
        ),
    )
}

fn fuzz() -> Outcome {
    let cfg = FuzzConfig { count: 10_000, max_l: 10, max_m: 10, seed: 2024, ..FuzzConfig::default() };
    let s = run_fuzz(&cfg);
    let portfolio = s.methods.iter().filter(|(m, _)| m == "portfolio").map(|(_, n)| n).sum::<usize>();
    let exact = s.methods.iter().filter(|(m, _)| m == "exact-fallback").map(|(_, n)| n).sum::<usize>();
    outcome(
        s.is_clean() && s.count == 10_000,
        format!(
            "{} instances, {} valid, {} via portfolio, {} via exact fallback, {} cross-checked by the oracles, {} failures",
            s.count,
            s.passed,
            portfolio,
            exact,
            s.oracle_checked,
            s.failures.len()
        ),
    )
}

fn oracle_sanity() -> Outcome {
    let budget = CertifyConfig::default().budget;
    let mut bad = Vec::new();
    for n in 1..=10 {
        let nu = exact_nu(&GeneralGraph::complete(n), budget);
        if !nu.proven || nu.value != feder_count(n).count {
            bad.push(n);
        }
    }
    let k4 = GeneralGraph::complete(4);
    let tau = exact_tau(&k4, budget);
    let nu = exact_nu(&k4, budget);
    let k4_ok = tau.proven && nu.proven && tau.value == 2 && nu.value == 1;
    outcome(bad.is_empty() && k4_ok, format!("nu(K_n) mismatches at {bad:?}; K4 tau = {}, nu = {}", tau.value, nu.value))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("exceptional tuples", exceptional_tuples),
        ("clique packing counts", feder_equality),
        ("desk-scale certification", desk_scale),
        ("side packing bounds", side_bounds),
        ("inequality audit", audit),
        ("soundness fuzz", fuzz),
        ("oracle sanity", oracle_sanity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {verdict} {name}: {} [{:.1}s]", i + 1, o.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of 7 passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
