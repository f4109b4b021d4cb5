mod common;

use bdmlab::graph_core::all_pairs_distances;
use bdmlab::hunter::matrix_key;
use bdmlab::{
    bdm, canonical_bdm_key, certificate, graph_from_sv, is_isomorphic, parse_graph6, tree_from_leaf_distances,
    write_graph6, BoundaryDistanceMatrix, Graph, SvMatrix,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_of_order(n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
        let mut g = Graph::empty(n);
        let mut it = bits.into_iter();
        for u in 0..n {
            for v in u + 1..n {
                if it.next().unwrap() {
                    g.add_edge(u, v);
                }
            }
        }
        g
    })
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(graph_of_order)
}

/// Connected graph plus a relabelling of it.
fn connected_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    (1..=max_n, any::<u64>(), 0.0..0.6f64).prop_flat_map(|(n, seed, p)| {
        let g = common::random_connected(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn graph6_round_trips(g in any_graph(40)) {
        let text = write_graph6(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn certificate_ignores_labels((g, perm) in connected_with_perm(16)) {
        let h = g.permuted(&perm);
        prop_assert_eq!(certificate(&g), certificate(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn certificate_separates_what_brute_force_separates(
        (a, b) in (1..=6usize).prop_flat_map(|n| (graph_of_order(n), graph_of_order(n)))
    ) {
        prop_assert_eq!(certificate(&a) == certificate(&b), common::isomorphic(&a, &b));
    }

    #[test]
    fn key_ignores_labels((g, perm) in connected_with_perm(20)) {
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_bdm_key(&bdm(&g).unwrap()), canonical_bdm_key(&bdm(&h).unwrap()));
    }

    #[test]
    fn key_separates_inequivalent_matrices(a in 2..8usize, seed in any::<u64>(), p in 0.0..0.7f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_connected(a, p, &mut rng);
        let h = common::random_connected(a, p, &mut rng);
        let (bg, bh) = (bdm(&g).unwrap(), bdm(&h).unwrap());
        let same = bg.kappa() == bh.kappa() && common::permutation_equivalent(&bg.entries, &bh.entries);
        prop_assert_eq!(canonical_bdm_key(&bg) == canonical_bdm_key(&bh), same);
    }

    #[test]
    fn matrix_key_ignores_simultaneous_permutation((g, perm) in connected_with_perm(12)) {
        let d = all_pairs_distances(&g);
        let n = g.order();
        let all: Vec<usize> = (0..n).collect();
        let m = d.principal(&all);
        let p: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| m[perm[i]][perm[j]]).collect()).collect();
        prop_assert_eq!(matrix_key(n, &m), matrix_key(n, &p));
    }

    #[test]
    fn distances_and_boundary_match_oracles((g, _) in connected_with_perm(30)) {
        let d = all_pairs_distances(&g);
        let want = common::distances(&g);
        for u in 0..g.order() {
            for v in 0..g.order() {
                prop_assert_eq!(d.get(u, v) as usize, want[u][v]);
            }
        }
        prop_assert_eq!(bdm(&g).unwrap().boundary.vertices().to_vec(), common::boundary(&g));
    }

    #[test]
    fn boundary_rows_rebuild_the_graph((g, _) in connected_with_perm(30)) {
        let b = common::boundary(&g);
        let sv = SvMatrix::from_distances(&all_pairs_distances(&g), &b);
        prop_assert_eq!(graph_from_sv(&sv).unwrap(), g);
        let text = sv.to_string();
        prop_assert_eq!(text.parse::<SvMatrix>().unwrap(), sv);
    }

    #[test]
    fn records_round_trip((g, _) in connected_with_perm(25)) {
        let b = bdm(&g).unwrap();
        let back: BoundaryDistanceMatrix = b.to_string().parse().unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn trees_come_back_from_leaf_distances(n in 2..40usize, seed in any::<u64>()) {
        let t = common::random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let b = bdm(&t).unwrap();
        let leaves: Vec<usize> = (0..n).filter(|&v| t.degree(v) == 1).collect();
        prop_assert_eq!(b.boundary.vertices(), leaves.as_slice());
        let r = tree_from_leaf_distances(&b.entries).unwrap();
        prop_assert_eq!(r.order(), n);
        prop_assert!(is_isomorphic(&r, &t));
        if n <= 8 {
            prop_assert!(common::isomorphic(&r, &t));
        }
    }
}
