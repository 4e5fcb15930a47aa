mod common;

use cartham::toughness::{
    is_one_tough, removal_stats, toughness_exact, witness_bipartite_product, witness_max_degree, OneTough,
    ToughnessError, ToughnessValue,
};
use cartham::{Budget, Graph, Product};
use num_rational::Ratio;
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
    fn exact_toughness_matches_oracle(g in graph_strategy(9)) {
        let t = toughness_exact(&g).unwrap();
        match common::naive_toughness(&g) {
            None => prop_assert_eq!(t.value, ToughnessValue::Infinite),
            Some((a, b)) => {
                prop_assert_eq!(t.value, ToughnessValue::Finite(Ratio::new(a, b)));
                let w = t.witness.unwrap();
                let c = common::components_without(&g, &w.cut);
                prop_assert_eq!(c, w.components);
                prop_assert!(c >= 2);
                prop_assert_eq!(Ratio::new(w.cut.len() as u64, c as u64), Ratio::new(a, b));
            }
        }
    }

    #[test]
    fn one_tough_decision_matches_oracle(g in graph_strategy(10)) {
        let expected = common::is_complete(&g) || !common::naive_not_one_tough(&g);
        match is_one_tough(&g, Budget::unlimited()) {
            OneTough::Yes => prop_assert!(expected),
            OneTough::No(w) => {
                prop_assert!(!expected);
                let c = common::components_without(&g, &w.cut);
                prop_assert_eq!(c, w.components);
                prop_assert!(c >= 2 && c > w.cut.len());
            }
            OneTough::Unknown => prop_assert!(false, "unlimited budget"),
        }
    }

    #[test]
    fn removal_stats_match_oracle(g in graph_strategy(9), pick in any::<u16>()) {
        let s: Vec<usize> = g.vertices().filter(|v| pick >> (v - 1) & 1 == 1).collect();
        let (c, i) = removal_stats(&g, &s);
        prop_assert_eq!(c, common::components_without(&g, &s));
        prop_assert_eq!(i, common::isolated_without(&g, &s).len());
    }

    #[test]
    fn bipartite_graphs_are_at_most_one_tough(seed in any::<u64>(), a in 1usize..=5, b in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_connected_bipartite(a, b, 0.5, &mut rng);
        if !common::is_complete(&g) {
            let t = toughness_exact(&g).unwrap();
            prop_assert!(t.value <= ToughnessValue::Finite(Ratio::from_integer(1)));
        }
    }
}

#[test]
fn one_tough_on_products_matches_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let t = common::random_tree(5, &mut rng);
        for n in 1..=4 {
            let p = Product::path(n, &t);
            let exact = toughness_exact(p.graph()).unwrap().value;
            let decided = is_one_tough(p.graph(), Budget::unlimited());
            assert_eq!(exact.at_least_one(), decided == OneTough::Yes, "P_{n} x {t:?}");
        }
    }
}

#[test]
fn max_degree_witness_counts_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let t = common::random_tree(9, &mut rng);
        let g1 = Graph::path(2);
        match witness_max_degree(&g1, &t) {
            Ok(w) => {
                let p = Product::new(&g1, &t);
                let c = common::components_without(p.graph(), &w.cut);
                assert_eq!(c, t.max_degree());
                assert!(c > w.cut.len());
            }
            Err(ToughnessError::PreconditionFailed(_)) => assert!(t.max_degree() <= 2),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn bipartite_witness_on_stars_and_paths() {
    for leaves in 3..=7 {
        let star = Graph::star(leaves);
        for n in 1..=5 {
            let w = witness_bipartite_product(n, &star).unwrap();
            let p = Product::path(n, &star);
            let c = common::components_without(p.graph(), &w.cut);
            assert!(c >= 2 && c > w.cut.len(), "star {leaves}, n = {n}");
        }
    }
    assert_eq!(
        witness_bipartite_product(3, &Graph::path(6)),
        Err(ToughnessError::HasPathFactor)
    );
}
