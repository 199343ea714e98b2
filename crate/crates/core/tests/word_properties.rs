use horoforge_core::{
    assemble_word, busemann, delete_last_copy, inverse, is_geodesic, is_shortlex, last_letters, normalize,
    prefix_suffix_decompose, shortlex_insert, word_distance, DefiningGraph, Letter, RaySpec, Word,
};
use proptest::prelude::*;

fn graph(n: usize) -> (DefiningGraph, RaySpec) {
    let g = DefiningGraph::cycle(n);
    let ray = RaySpec::new(&g, 0, 2).unwrap();
    (g, ray)
}

fn graph_and_word(max_len: usize) -> impl Strategy<Value = (usize, Word)> {
    (5usize..=7).prop_flat_map(move |n| (Just(n), prop::collection::vec(0..n as Letter, 0..=max_len)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn normalize_is_idempotent_and_shortlex((n, w) in graph_and_word(16)) {
        let (g, _) = graph(n);
        let u = normalize(&g, &w);
        prop_assert!(is_shortlex(&g, &u));
        prop_assert!(is_geodesic(&g, &u));
        prop_assert_eq!(normalize(&g, &u), u.clone());
        prop_assert!(u.len() <= w.len());
        prop_assert_eq!(u.len() % 2, w.len() % 2);
    }

    #[test]
    fn inverse_cancels((n, w) in graph_and_word(12)) {
        let (g, _) = graph(n);
        let mut x = w.clone();
        x.extend(inverse(&w));
        prop_assert!(normalize(&g, &x).is_empty());
        prop_assert_eq!(word_distance(&g, &w, &w), 0);
    }

    #[test]
    fn distance_is_symmetric((n, w) in graph_and_word(10), v in prop::collection::vec(0..5 as Letter, 0..10)) {
        let (g, _) = graph(n);
        prop_assert_eq!(word_distance(&g, &w, &v), word_distance(&g, &v, &w));
    }

    #[test]
    fn busemann_is_one_lipschitz((n, w) in graph_and_word(12), a in 0..5 as Letter) {
        let (g, ray) = graph(n);
        let u = normalize(&g, &w);
        let mut ua = u.clone();
        ua.push(a);
        let b0 = busemann(&g, ray, &u).unwrap();
        let b1 = busemann(&g, ray, &normalize(&g, &ua)).unwrap();
        prop_assert_eq!((b1 - b0).abs(), 1);
    }

    #[test]
    fn assemble_inverts_decompose((n, w) in graph_and_word(12)) {
        let (g, ray) = graph(n);
        let u = normalize(&g, &w);
        let d = prefix_suffix_decompose(&g, ray, &u).unwrap();
        let k = d.busemann();
        prop_assert_eq!(normalize(&g, &assemble_word(ray, &d.suffix, k)), u);
    }

    #[test]
    fn insert_then_delete((n, w) in graph_and_word(12), a in 0..5 as Letter) {
        let (g, _) = graph(n);
        let u = normalize(&g, &w);
        if let Ok(x) = shortlex_insert(&g, &u, a) {
            prop_assert_eq!(x.len(), u.len() + 1);
            prop_assert!(last_letters(&g, &x).contains(a));
            prop_assert_eq!(delete_last_copy(&g, &x, a).unwrap(), u);
        } else {
            prop_assert!(last_letters(&g, &u).contains(a));
        }
    }
}

#[test]
fn ray_points_have_expected_busemann() {
    let (g, ray) = graph(5);
    for n in 0..10 {
        assert_eq!(busemann(&g, ray, &ray.point(n)).unwrap(), -(n as i64));
        let back = ray.alternating(ray.j, n);
        assert_eq!(busemann(&g, ray, &back).unwrap(), n as i64);
    }
}
