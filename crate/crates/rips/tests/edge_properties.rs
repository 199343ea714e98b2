use horoforge_core::{assemble_word, busemann, normalize, word_distance, DefiningGraph, RaySpec, Word};
use horoforge_rips::{enumerate_suffixes, generate_rips_graph, RipsGenerator};
use proptest::prelude::*;

const L: usize = 5;

fn setup(n: usize) -> (DefiningGraph, RaySpec, Vec<Word>) {
    let g = DefiningGraph::cycle(n);
    let ray = RaySpec::new(&g, 0, 2).unwrap();
    let v = enumerate_suffixes(&g, ray, L).unwrap();
    (g, ray, v)
}

fn point(g: &DefiningGraph, ray: RaySpec, s: &[u8], k: i64) -> Word {
    normalize(g, &assemble_word(ray, s, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn neighbours_stay_on_the_horosphere(n in 5usize..=7, pick in any::<prop::sample::Index>(), k in -3i64..=3) {
        let (g, ray, vs) = setup(n);
        let gen = RipsGenerator::new(&g, ray).unwrap();
        let w = pick.get(&vs);
        let pw = point(&g, ray, w, k);
        prop_assert_eq!(busemann(&g, ray, &pw).unwrap(), k);
        let mut nbrs = gen.same_length(w);
        nbrs.extend(gen.diff_length(w, k));
        for v in &nbrs {
            let pv = point(&g, ray, v, k);
            prop_assert_eq!(busemann(&g, ray, &pv).unwrap(), k);
            prop_assert_eq!(word_distance(&g, &pw, &pv), 2);
        }
    }

    #[test]
    fn same_length_is_symmetric(n in 5usize..=7, pick in any::<prop::sample::Index>()) {
        let (g, ray, vs) = setup(n);
        let gen = RipsGenerator::new(&g, ray).unwrap();
        let w = pick.get(&vs);
        for v in gen.same_length(w) {
            prop_assert_eq!(v.len(), w.len());
            prop_assert!(gen.same_length(&v).contains(w));
        }
    }

    #[test]
    fn candidate_cost_is_linear(n in 5usize..=7, pick in any::<prop::sample::Index>()) {
        let (g, ray, vs) = setup(n);
        let gen = RipsGenerator::new(&g, ray).unwrap();
        let w = pick.get(&vs);
        prop_assert!(gen.candidate_operations(w) <= g.max_clique_size() * g.len());
    }
}

#[test]
fn graph_edges_are_sorted_and_simple() {
    let (g, ray, _) = setup(6);
    let h = generate_rips_graph(&g, ray, 1, 4).unwrap();
    assert!(h.edges.windows(2).all(|e| e[0] < e[1]));
    assert!(h.edges.iter().all(|&(u, v)| u < v && (v as usize) < h.num_vertices()));
}

#[test]
fn capped_enumeration_is_a_prefix() {
    let (g, ray, all) = setup(6);
    for cap in [0, 1, 7, 40, all.len(), all.len() + 5] {
        let capped = horoforge_rips::enumerate_suffixes_capped(&g, ray, L, cap).unwrap();
        assert_eq!(capped, all[..cap.min(all.len())]);
    }
}
