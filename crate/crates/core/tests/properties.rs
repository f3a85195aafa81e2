mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crossweight::balance::{balanced_weights, verify_balanced};
use crossweight::canon::canonical_form;
use crossweight::certify::{certify_critical, check_conditions};
use crossweight::families;
use crossweight::graph::{Edge, IndexedMultigraph, IntegerWeighting, SimpleGraph};
use crossweight::io::{parse_graph, CertificateDocument, GraphDocument};
use crossweight::synth::synthesize;

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn weighted_graph() -> impl Strategy<Value = (SimpleGraph, IntegerWeighting)> {
    (2usize..9)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let m = pairs.len();
            (Just(n), proptest::sample::subsequence(pairs, 1..=m))
        })
        .prop_flat_map(|(n, pairs)| {
            let k = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(1u64..u64::MAX, k))
        })
        .prop_map(|(n, pairs, ws)| {
            let g = SimpleGraph::new(n, pairs.iter().copied()).unwrap();
            let w = IntegerWeighting::new(
                &g,
                pairs.iter().zip(ws).map(|(&(a, b), x)| (Edge::new(a, b), BigUint::from(x) * BigUint::from(x))),
            )
            .unwrap();
            (g, w)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_documents_round_trip((g, w) in weighted_graph(), pick in any::<prop::sample::Index>()) {
        let uv = g.edges()[pick.index(g.edge_count())];
        let doc = GraphDocument { uv: Some(uv), weights: Some(w), ..GraphDocument::new(g) };
        let text = doc.to_json();
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn balancing_ignores_vertex_names(seed in any::<u64>(), n in 3usize..10, perm_seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = common::random_biconnected(&mut rng, n, n / 2);
        let g = IndexedMultigraph::new(n, edges.iter().copied()).unwrap();
        let cert = balanced_weights(&g, 0, n / 2).unwrap();
        prop_assert!(verify_balanced(&g, &cert.weights, 0, n / 2).passed());

        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut ChaCha8Rng::seed_from_u64(perm_seed));
        let moved = IndexedMultigraph::new(n, edges.iter().map(|&(a, b)| (perm[a], perm[b]))).unwrap();
        let again = balanced_weights(&moved, perm[0], perm[n / 2]).unwrap();
        prop_assert_eq!(again.weights, cert.weights);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn canonical_form_is_a_class_invariant(perm in permutation(16)) {
        let g = families::barrel(4);
        let (h, uv) = common::with_antipodal(&g, 0);
        let base = canonical_form(&h, uv).unwrap();
        let moved = canonical_form(&h.relabel(&perm).unwrap(), uv.map(|x| perm[x])).unwrap();
        prop_assert_eq!((moved.graph, moved.uv), (base.graph, base.uv));
    }

    #[test]
    fn relabeled_certificates_still_certify(perm in permutation(16)) {
        let (h, uv) = common::with_antipodal(&families::barrel(4), 0);
        let cert = synthesize(&h, uv).unwrap();
        let moved = cert.relabel(&perm).unwrap();
        prop_assert!(check_conditions(&moved).unwrap().all_passed());
        prop_assert_eq!(certify_critical(&moved).unwrap().cr_value, certify_critical(&cert).unwrap().cr_value);
        let doc = CertificateDocument::new(&moved).unwrap();
        prop_assert!(CertificateDocument::parse(&doc.to_json()).unwrap().replay().unwrap().matches());
    }
}
