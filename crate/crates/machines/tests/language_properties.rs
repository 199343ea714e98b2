use horoforge_core::{is_geodesic, is_shortlex, prefix_suffix_decompose, DefiningGraph, Letter, RaySpec, Word};
use horoforge_machines::{
    build_geo_suffix_machine, build_geodesic_machine, build_shortlex_machine, build_suffix_machine,
};
use proptest::prelude::*;

fn graph_and_word() -> impl Strategy<Value = (usize, Word)> {
    (5usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(0..n as Letter, 0..=10)))
}

/// Words built by appending letters that keep them reduced, so that the
/// interesting (accepted) case is common.
fn graph_and_geodesic() -> impl Strategy<Value = (usize, Word)> {
    graph_and_word().prop_map(|(n, w)| {
        let g = DefiningGraph::cycle(n);
        let mut out = Vec::new();
        for a in w {
            out.push(a);
            if !is_geodesic(&g, &out) {
                out.pop();
            }
        }
        (n, out)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn word_machines_decide_their_languages((n, w) in graph_and_word()) {
        let g = DefiningGraph::cycle(n);
        prop_assert_eq!(build_geodesic_machine(&g).unwrap().accepts(&w).accepted, is_geodesic(&g, &w));
        prop_assert_eq!(build_shortlex_machine(&g).unwrap().accepts(&w).accepted, is_shortlex(&g, &w));
    }

    #[test]
    fn suffix_machines_exclude_ray_prefixes((n, w) in graph_and_geodesic()) {
        let g = DefiningGraph::cycle(n);
        let ray = RaySpec::new(&g, 0, 2).unwrap();
        let lex = is_shortlex(&g, &w);
        let no_prefix = |u: &[Letter]| prefix_suffix_decompose(&g, ray, &horoforge_core::normalize(&g, u))
            .unwrap()
            .prefix
            .is_empty();
        prop_assert_eq!(build_suffix_machine(&g, ray).unwrap().accepts(&w).accepted, lex && no_prefix(&w));
        prop_assert_eq!(build_geo_suffix_machine(&g, ray).unwrap().accepts(&w).accepted, no_prefix(&w));
    }
}
