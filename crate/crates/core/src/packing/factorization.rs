//! Round-robin (circle method) 1-factorizations.

use crate::graph::Edge;

use super::PackingError;

/// A sequence of edge-disjoint matchings on a vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub matchings: Vec<Vec<Edge>>,
}

impl Factorization {
    pub fn edge_count(&self) -> usize {
        self.matchings.iter().map(Vec::len).sum()
    }
}

/// 1-factorization of the complete graph on `vertices` (even size): `n - 1`
/// perfect matchings of `n / 2` edges each.
pub fn one_factorization(vertices: &[usize]) -> Result<Factorization, PackingError> {
    let n = vertices.len();
    if n < 2 || n % 2 == 1 {
        return Err(PackingError::OddFactorization(n));
    }
    let rounds = n - 1;
    let hub = vertices[n - 1];
    let matchings = (0..rounds)
        .map(|r| {
            let mut m = Vec::with_capacity(n / 2);
            m.push(Edge::new(hub, vertices[r]));
            for k in 1..n / 2 {
                let a = (r + k) % rounds;
                let b = (r + rounds - k) % rounds;
                m.push(Edge::new(vertices[a], vertices[b]));
            }
            m
        })
        .collect();
    Ok(Factorization { matchings })
}

/// Near-1-factorization of the complete graph on an odd number of vertices:
/// `n` matchings of `(n - 1) / 2` edges, where matching `i` misses `vertices[i]`.
pub fn near_one_factorization(vertices: &[usize]) -> Result<Factorization, PackingError> {
    let n = vertices.len();
    if n % 2 == 0 {
        return Err(PackingError::EvenNearFactorization(n));
    }
    let matchings = (0..n)
        .map(|r| {
            (1..=n / 2)
                .map(|k| Edge::new(vertices[(r + k) % n], vertices[(r + n - k) % n]))
                .collect()
        })
        .collect();
    Ok(Factorization { matchings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn check_cover(n: usize, f: &Factorization, per: usize, count: usize) {
        assert_eq!(f.matchings.len(), count);
        let mut all = BTreeSet::new();
        for m in &f.matchings {
            assert_eq!(m.len(), per);
            let mut touched = BTreeSet::new();
            for e in m {
                assert!(touched.insert(e.0) && touched.insert(e.1), "not a matching");
                assert!(all.insert(*e), "edge {e} repeated");
            }
        }
        assert_eq!(all.len(), n * (n - 1) / 2);
    }

    #[test]
    fn small_factorizations() {
        let f2 = one_factorization(&[0, 1]).unwrap();
        assert_eq!(f2.matchings, vec![vec![Edge(0, 1)]]);
        check_cover(4, &one_factorization(&[0, 1, 2, 3]).unwrap(), 2, 3);
        check_cover(8, &one_factorization(&(0..8).collect::<Vec<_>>()).unwrap(), 4, 7);
        assert!(one_factorization(&[0, 1, 2]).is_err());
    }

    #[test]
    fn exhaustive_up_to_twenty() {
        for n in (2..=20).step_by(2) {
            let vs: Vec<usize> = (0..n).map(|i| 3 * i + 1).collect();
            let f = one_factorization(&vs).unwrap();
            assert_eq!(f.edge_count(), n * (n - 1) / 2);
            check_cover(n, &f, n / 2, n - 1);
        }
        for n in (1..=19).step_by(2) {
            let vs: Vec<usize> = (0..n).collect();
            let f = near_one_factorization(&vs).unwrap();
            check_cover(n, &f, n / 2, n);
            for (i, m) in f.matchings.iter().enumerate() {
                assert!(m.iter().all(|e| !e.contains(vs[i])));
            }
        }
    }
}
