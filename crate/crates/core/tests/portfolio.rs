use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tuza_cochain::certify::{certify, execute, plan, CertifyConfig, Mode, Plan};
use tuza_cochain::fuzz::random_instance;

#[test]
fn portfolio_never_does_worse_than_the_guided_construction() {
    let cfg = CertifyConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut compared = 0;
    for _ in 0..150 {
        let g = random_instance(&mut rng, 5, 5);
        let pl = plan(&g).unwrap();
        let Plan::Build { .. } = pl else { continue };
        let (h, p) = execute(&g, &pl).unwrap();
        let c = certify(&g, Mode::Portfolio, &cfg).unwrap();
        assert!(c.is_ok() && c.verify(&g));
        assert!(c.h_size <= h.len(), "{g:?}");
        assert!(c.p_size >= p.len(), "{g:?}");
        assert_eq!(c.case.as_deref(), Some(pl.tag()));
        compared += 1;
    }
    assert!(compared > 100);
}

#[test]
fn portfolio_handles_odd_sides() {
    let cfg = CertifyConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let g = random_instance(&mut rng, 4, 4);
        let t: Vec<usize> = g.thresholds()[1..].iter().map(|&t| t.min(g.m_size() - 1)).collect();
        let odd = tuza_cochain::graph::CoChainGraph::new(g.l_size() - 1, g.m_size() - 1, t).unwrap();
        match certify(&odd, Mode::Portfolio, &cfg) {
            Ok(c) => assert!(c.is_ok() && c.verify(&odd)),
            Err(e) => panic!("{odd:?}: {e}"),
        }
        assert!(certify(&odd, Mode::Guided, &cfg).is_err());
    }
}
