mod common;

use homcompat::formats::{attach_labels, emit_labels};
use homcompat::hom::MultiHom;
use homcompat::{
    check_equivariance, check_proper, clique_number, complete_graph, emit_dimacs, emit_graph6,
    exact_chromatic_number, find_bad_pair, greedy_coloring, induced_map, kneser_graph, parse_dimacs,
    parse_graph6, pullback_coloring, random_equivariant_labeling, sv_act, sv_leq, ChromaticOptions,
    CompatGraph, Graph, HomPoset, SignedVector, VectorSpace,
};
use proptest::prelude::*;

use common::{brute_chromatic_number, brute_clique_number, random_graph, small_corpus};

fn edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            Graph::from_fn(n, |_, _| it.next().unwrap())
        })
    })
}

fn arb_vector(n: usize, r: usize) -> impl Strategy<Value = SignedVector> {
    proptest::collection::vec(0..=r as u8, n)
        .prop_filter("nonzero", |e| e.iter().any(|&x| x != 0))
        .prop_map(move |e| SignedVector::new(e, r).unwrap())
}

#[test]
fn corpus_round_trips_through_both_formats() {
    let mut corpus = small_corpus();
    corpus.truncate(20);
    for (name, g) in corpus {
        assert_eq!(edges(&parse_graph6(&emit_graph6(&g)).unwrap()), edges(&g), "{name} graph6");
        let back = parse_dimacs(&emit_dimacs(&g)).unwrap();
        assert_eq!(back.vertex_count(), g.vertex_count(), "{name} dimacs");
        assert_eq!(edges(&back), edges(&g), "{name} dimacs");
    }
}

#[test]
fn labels_survive_sidecar_round_trip() {
    let pet = kneser_graph(5, 2).unwrap();
    let json = emit_labels(&pet).unwrap();
    let back = attach_labels(parse_graph6(&emit_graph6(&pet)).unwrap(), &json).unwrap();
    assert_eq!(back.labels(), pet.labels());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in arb_graph(40)) {
        let text = emit_graph6(&g);
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(edges(&back), edges(&g));
        prop_assert_eq!(emit_graph6(&back), text);
    }

    #[test]
    fn dimacs_round_trip(g in arb_graph(30)) {
        let back = parse_dimacs(&emit_dimacs(&g)).unwrap();
        prop_assert_eq!(edges(&back), edges(&g));
    }

    #[test]
    fn solvers_match_brute_force(g in arb_graph(9)) {
        let omega = clique_number(&g, None);
        prop_assert!(omega.exact);
        prop_assert_eq!(omega.size, brute_clique_number(&g));
        let res = exact_chromatic_number(&g, ChromaticOptions::default());
        let chi = res.exact().unwrap();
        prop_assert_eq!(chi, brute_chromatic_number(&g));
        prop_assert!(check_proper(&g, res.witness()).is_ok());
        prop_assert!(omega.size <= chi);
        let order: Vec<usize> = (0..g.vertex_count()).collect();
        prop_assert!(chi <= greedy_coloring(&g, &order).color_count());
    }

    #[test]
    fn sv_leq_is_a_partial_order(x in arb_vector(5, 3), y in arb_vector(5, 3), z in arb_vector(5, 3)) {
        prop_assert!(sv_leq(&x, &x).unwrap());
        if sv_leq(&x, &y).unwrap() && sv_leq(&y, &x).unwrap() {
            prop_assert_eq!(&x, &y);
        }
        if sv_leq(&x, &y).unwrap() && sv_leq(&y, &z).unwrap() {
            prop_assert!(sv_leq(&x, &z).unwrap());
        }
    }

    #[test]
    fn sv_act_is_an_order_preserving_action(x in arb_vector(6, 4), y in arb_vector(6, 4), i in 0usize..8, j in 0usize..8) {
        let r = 4;
        prop_assert_eq!(sv_act(&sv_act(&x, i, r), j, r), sv_act(&x, i + j, r));
        prop_assert_eq!(sv_act(&x, r, r), x.clone());
        prop_assert_eq!(sv_leq(&x, &y).unwrap(), sv_leq(&sv_act(&x, j, r), &sv_act(&y, j, r)).unwrap());
    }

    #[test]
    fn random_labelings_are_equivariant(seed in any::<u64>(), max_level in 1usize..5) {
        let space = VectorSpace::new(4, 3, 1_000_000).unwrap();
        let lab = random_equivariant_labeling(space, max_level, seed).unwrap();
        prop_assert!(check_equivariance(&lab).is_none());
        prop_assert!(lab.max_level() <= max_level);
        if let Some(p) = find_bad_pair(&lab).unwrap() {
            prop_assert!(sv_leq(&p.x, &p.y).unwrap());
            prop_assert_eq!(lab.get(&p.x), lab.get(&p.y).act(p.g, 3));
        }
    }

    #[test]
    fn hom_order_is_partial_and_shift_invariant(seed in 0u64..500, r in 2usize..=3) {
        let host = random_graph(6, 0.6, seed);
        let poset = HomPoset::enumerate(&host, r).unwrap();
        let els = poset.elements();
        let pick = |i: u64| &els[(i as usize) % els.len().max(1)];
        prop_assume!(!els.is_empty());
        let (a, b, c) = (pick(seed), pick(seed * 7 + 3), pick(seed * 13 + 5));
        prop_assert!(a.le(a));
        if a.le(b) && b.le(a) { prop_assert_eq!(a, b); }
        if a.le(b) && b.le(c) { prop_assert!(a.le(c)); }
        for j in 0..r {
            prop_assert_eq!(a.le(b), a.shift(j).le(&b.shift(j)));
            let s: &MultiHom = &a.shift(j);
            prop_assert!(s.validate(&host).is_ok());
            prop_assert!(j == 0 || !(s.le(a) || a.le(s)));
        }
    }

    #[test]
    fn pullbacks_and_induced_maps_are_homomorphisms(seed in 0u64..500) {
        let host = random_graph(7, 0.5, seed);
        let cg = CompatGraph::build(HomPoset::enumerate(&host, 2).unwrap());
        let order: Vec<usize> = (0..host.vertex_count()).collect();
        let col = greedy_coloring(&host, &order);
        let pulled = pullback_coloring(&cg, &col).unwrap();
        prop_assert!(check_proper(cg.graph(), &pulled).is_ok());

        let target = complete_graph(col.color_count().max(2)).unwrap();
        let psi: Vec<usize> = col.colors().iter().map(|&c| c - 1).collect();
        let tp = HomPoset::enumerate(&target, 2).unwrap();
        let map = induced_map(&psi, cg.poset(), &tp).unwrap();
        let tc = CompatGraph::build(tp);
        prop_assert!(cg.graph().check_homomorphism(tc.graph(), &map).is_ok());
    }
}
