use std::sync::OnceLock;

use horoforge_core::word::shortlex_forbidden;
use horoforge_core::{inverse, last_letters, normalize, word_distance, DefiningGraph, LetterSet, RaySpec};
use horoforge_divergence::{
    deep_form, enumerate_horocyclic_suffixes, horocyclic_delete, horocyclic_insert, maximal_cancellation_successor,
    point_word, run_cancellation_diff_length, run_cancellation_same_length, s_state, Cancellation, CancellationMachine,
    DivergenceContext, HorocyclicSuffix, Side,
};
use horoforge_machines::{build_geo_suffix_machine, build_horocyclic_machines, HorocyclicMachines};
use proptest::prelude::*;

const L: usize = 4;

struct Case {
    g: DefiningGraph,
    ray: RaySpec,
    machines: HorocyclicMachines,
    /// Suffixes on horospheres 0 and 1.
    vertices: [Vec<HorocyclicSuffix>; 2],
}

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        [(5, 0, 2), (6, 0, 3), (7, 0, 3)]
            .into_iter()
            .map(|(n, i, j)| {
                let g = DefiningGraph::cycle(n);
                let ray = RaySpec::new(&g, i, j).unwrap();
                let machines = build_horocyclic_machines(&g, ray).unwrap();
                let vertices = [0, 1].map(|k| enumerate_horocyclic_suffixes(&g, ray, &machines, k, L).unwrap());
                Case {
                    g,
                    ray,
                    machines,
                    vertices,
                }
            })
            .collect()
    })
}

fn pick() -> impl Strategy<Value = (usize, usize, prop::sample::Index, prop::sample::Index)> {
    (
        0..3usize,
        0..2usize,
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn s_state_is_stable_in_the_exponent((c, k, i, _) in pick()) {
        let case = &cases()[c];
        let h = i.get(&case.vertices[k]);
        let s = s_state(&case.g, case.ray, h).unwrap();
        for m in 2..=4 {
            prop_assert_eq!(shortlex_forbidden(&case.g, &deep_form(case.ray, h, m)), s);
        }
    }

    #[test]
    fn insert_and_delete_stay_in_the_language((c, k, i, _) in pick()) {
        let case = &cases()[c];
        let (g, ray) = (&case.g, case.ray);
        let h = i.get(&case.vertices[k]);
        let geo = build_geo_suffix_machine(g, ray).unwrap();
        let allowed = geo.run(&h.word).map_or(LetterSet::EMPTY, |s| geo.allowed(s));
        for a in allowed.iter() {
            if let Ok(x) = horocyclic_insert(g, ray, h, a) {
                prop_assert_eq!(x.form, h.form);
                prop_assert!(case.machines.for_horosphere(k as i64 + 1).accepts(&x.word).accepted);
                prop_assert_eq!(&horocyclic_delete(g, ray, &x, a).unwrap(), h);
            }
        }
        for a in last_letters(g, &h.word).iter() {
            let x = horocyclic_delete(g, ray, h, a).unwrap();
            prop_assert!(case.machines.for_horosphere(k as i64 - 1).accepts(&x.word).accepted);
        }
    }

    #[test]
    fn edges_are_symmetric_and_short((c, k, i, j) in pick()) {
        let case = &cases()[c];
        let (g, ray) = (&case.g, case.ray);
        let vs = &case.vertices[k];
        let ctx = DivergenceContext::new(g, ray, k as i64, vs).unwrap();
        let mut m = CancellationMachine::new();
        let (w, v) = (i.get(vs), j.get(vs));
        let e = ctx.has_edge(&mut m, w, v).unwrap();
        prop_assert_eq!(e, ctx.has_edge(&mut m, v, w).unwrap());
        if e {
            let d = word_distance(g, &point_word(g, ray, w, k as i64), &point_word(g, ray, v, k as i64));
            prop_assert!(d <= ctx.distance_bound());
        }
    }
}

/// Appending the cancelable letters to the other point leaves exactly the
/// clique between the two points.
#[test]
fn cancellation_leaves_the_clique() {
    let mut checked = [0usize; 2];
    for case in cases() {
        let (g, ray) = (&case.g, case.ray);
        for (k, vs) in case.vertices.iter().enumerate() {
            let k = k as i64;
            let ctx = DivergenceContext::new(g, ray, k, vs).unwrap();
            let mut m = CancellationMachine::new();
            for w in vs {
                for v in vs.iter().filter(|v| v.len() <= w.len() && *v != w) {
                    let result = if w.len() == v.len() {
                        if w.form != v.form {
                            continue;
                        }
                        run_cancellation_same_length(g, &mut m, w, v).unwrap()
                    } else {
                        if !ctx.admits_shorter(w) || (w.len() - v.len() >= 2 && !w.slot(3).is_empty()) {
                            continue;
                        }
                        run_cancellation_diff_length(g, ray, &mut m, w, v).unwrap()
                    };
                    let Cancellation::Clique {
                        k: clique,
                        cancelable,
                        owner,
                    } = result
                    else {
                        continue;
                    };
                    let (own, other) = match owner {
                        Side::W => (w, v),
                        Side::V => (v, w),
                    };
                    maximal_cancellation_successor(g, ray, other, &cancelable).unwrap();
                    let mut x = inverse(&point_word(g, ray, own, k));
                    x.extend(point_word(g, ray, other, k));
                    x.extend(&cancelable);
                    let diff = normalize(g, &x);
                    let letters: LetterSet = diff.iter().copied().collect();
                    assert_eq!(diff.len(), clique.len(), "{} / {}", w.describe(g), v.describe(g));
                    assert_eq!(letters, clique);
                    checked[(w.len() > v.len()) as usize] += 1;
                }
            }
        }
    }
    assert!(checked[0] > 100 && checked[1] > 10, "{checked:?}");
}
