use pcg::bits::AdjMatrix;
use pcg::perf::{
    chromatic_number, clique_number, is_berge, is_perfect_bruteforce, verify_witness, BergeOptions, Outcome,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> AdjMatrix {
    let mut adj = AdjMatrix::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                adj.add_edge(i, j);
            }
        }
    }
    adj
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = AdjMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut adj = AdjMatrix::new(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        adj.add_edge(i, j);
                    }
                    k += 1;
                }
            }
            adj
        })
    })
}

fn berge(adj: &AdjMatrix) -> Option<bool> {
    is_berge(adj, &BergeOptions::default()).outcome.is_berge()
}

/// Berge verdicts against ω(H) = χ(H) over every induced subgraph, on
/// seeded random graphs.
#[test]
fn strong_perfect_graph_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut perfect, mut imperfect) = (0, 0);
    for i in 0..400 {
        let n = 5 + i % 6;
        let adj = random_graph(&mut rng, n, 0.5);
        let v = is_berge(&adj, &BergeOptions::default());
        let truth = is_perfect_bruteforce(&adj).unwrap();
        assert_eq!(v.outcome.is_berge(), Some(truth), "graph {:?}", adj.edges());
        if let Outcome::NotBerge(w) = &v.outcome {
            assert!(verify_witness(&adj, w));
        }
        if truth {
            perfect += 1;
        } else {
            imperfect += 1;
        }
    }
    assert!(perfect >= 50 && imperfect >= 50, "{perfect} / {imperfect}");
}

#[test]
fn cycles_and_their_complements() {
    for n in 4..=15 {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let c = AdjMatrix::from_edges(n, &edges);
        let odd = n % 2 == 1 && n >= 5;
        assert_eq!(berge(&c), Some(!odd), "C{n}");
        assert_eq!(berge(&c.complement()), Some(!odd), "complement of C{n}");
    }
}

#[test]
fn unions_of_cliques_and_bipartite_graphs_are_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = 30;
        let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let mut adj = AdjMatrix::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if side[i] != side[j] && rng.gen_bool(0.3) {
                    adj.add_edge(i, j);
                }
            }
        }
        assert!(matches!(is_berge(&adj, &BergeOptions::default()).outcome, Outcome::Berge(_)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn complement_has_same_verdict(adj in graph_strategy(10)) {
        prop_assert_eq!(berge(&adj), berge(&adj.complement()));
    }

    #[test]
    fn omega_at_most_chi_with_equality_when_berge(adj in graph_strategy(11)) {
        let w = clique_number(&adj).unwrap();
        let c = chromatic_number(&adj).unwrap();
        prop_assert!(w <= c);
        if berge(&adj) == Some(true) {
            prop_assert_eq!(w, c);
        }
    }

    #[test]
    fn induced_subgraphs_of_berge_graphs_are_berge(adj in graph_strategy(11), drop in any::<u16>()) {
        prop_assume!(berge(&adj) == Some(true));
        let keep: Vec<usize> = (0..adj.n()).filter(|i| drop >> i & 1 == 0).collect();
        prop_assert_eq!(berge(&adj.induced(&keep)), Some(true));
    }

    #[test]
    fn witnesses_are_induced_odd_cycles(adj in graph_strategy(12)) {
        if let Outcome::NotBerge(w) = is_berge(&adj, &BergeOptions::default()).outcome {
            prop_assert!(w.len() % 2 == 1 && w.len() >= 5);
            prop_assert!(verify_witness(&adj, &w));
        }
    }

    #[test]
    fn simplification_does_not_change_verdict(adj in graph_strategy(10)) {
        let plain = is_berge(&adj, &BergeOptions { simplify: false, ..Default::default() });
        prop_assert_eq!(plain.outcome.is_berge(), berge(&adj));
    }
}
