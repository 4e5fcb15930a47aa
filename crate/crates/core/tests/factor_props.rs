mod common;

use cartham::factor::{self, bipartite_certificate, find_p23_factor, find_perfect_matching, wang_certificate};
use cartham::Graph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (1..=max_order).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 1..=n {
                for v in u + 1..=n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn factor_or_certificate(g in graph_strategy(9)) {
        let f = find_p23_factor(&g);
        let c = wang_certificate(&g).unwrap();
        prop_assert!(f.is_some() != c.is_some());
        let expected = !common::all_p23_factors(&g).is_empty();
        prop_assert_eq!(f.is_some(), expected);
        prop_assert_eq!(common::has_isolation_violation(&g), !expected);
        if let Some(f) = f {
            prop_assert!(common::is_p23_factor(&g, f.components()));
        }
        if let Some(c) = c {
            let iso = common::isolated_without(&g, &c.cut);
            prop_assert_eq!(&iso, &c.isolated);
            prop_assert!(iso.len() > 2 * c.cut.len());
        }
    }

    #[test]
    fn perfect_matching_matches_oracle(g in graph_strategy(10)) {
        let expected = common::all_p23_factors(&g).iter().any(|f| f.iter().all(|c| c.len() == 2));
        let m = find_perfect_matching(&g);
        prop_assert_eq!(m.is_some(), expected);
        if let Some(m) = m {
            prop_assert!(m.is_perfect_matching());
            prop_assert!(common::is_p23_factor(&g, m.components()));
        }
    }

    #[test]
    fn tree_factors_match_oracle(seed in any::<u64>(), n in 2usize..=14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = common::random_tree(n, &mut rng);
        let f = find_p23_factor(&t);
        let all = common::all_p23_factors(&t);
        prop_assert_eq!(f.is_some(), !all.is_empty());
        if let Some(f) = f {
            prop_assert!(common::is_p23_factor(&t, f.components()));
        }
        let m = find_perfect_matching(&t);
        prop_assert_eq!(m.is_some(), all.iter().any(|f| f.iter().all(|c| c.len() == 2)));
    }

    #[test]
    fn bipartite_certificates_are_one_sided(g in graph_strategy(8)) {
        if let Ok(bip) = g.bipartition() {
            match bipartite_certificate(&g, &bip) {
                Ok(c) => {
                    prop_assert!(common::has_isolation_violation(&g));
                    let sides: Vec<bool> = c.cut.iter().map(|&v| bip.contains_a(v)).collect();
                    prop_assert!(sides.windows(2).all(|w| w[0] == w[1]));
                    let iso = common::isolated_without(&g, &c.cut);
                    prop_assert_eq!(&iso, &c.isolated);
                    prop_assert!(iso.len() > 2 * c.cut.len());
                }
                Err(e) => {
                    prop_assert_eq!(e, factor::FactorError::HasPathFactor);
                    prop_assert!(!common::has_isolation_violation(&g));
                }
            }
        }
    }
}

#[test]
fn large_trees_use_the_linear_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [40, 90, 200] {
        let t = common::random_tree(n, &mut rng);
        if let Some(f) = find_p23_factor(&t) {
            assert!(common::is_p23_factor(&t, f.components()));
        }
    }
    let long = Graph::path(300);
    let m = find_perfect_matching(&long).unwrap();
    assert_eq!(m.components().len(), 150);
}

#[test]
fn certificate_cap_is_reported() {
    let star = Graph::star(30);
    assert!(matches!(
        wang_certificate(&star),
        Err(factor::FactorError::BudgetExceeded { order: 31, .. })
    ));
}

#[test]
fn certificate_examples() {
    let c = wang_certificate(&Graph::star(3)).unwrap().unwrap();
    assert_eq!((c.cut.clone(), c.isolated_count()), (vec![1], 3));
    assert_eq!(c.to_string(), "S = {1}; i(G-S) = 3; 2|S| = 2");
    assert!(wang_certificate(&common::caterpillar()).unwrap().is_none());
    let k1 = Graph::empty(1);
    let c = wang_certificate(&k1).unwrap().unwrap();
    assert!(c.cut.is_empty() && c.isolated == vec![1]);
}
