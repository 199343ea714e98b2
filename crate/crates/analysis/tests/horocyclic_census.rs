use std::collections::BTreeSet;

use horoforge_analysis::fixtures;
use horoforge_analysis::{horocyclic_oracle, horosphere_points};
use horoforge_core::Word;
use horoforge_machines::{build_horocyclic_machines, HorocyclicForm};

#[test]
fn horocyclic_machines_match_deep_segmentation() {
    let mut all = fixtures::standard();
    all.push(fixtures::icosahedron_fixture());
    for f in &all {
        let g = &f.graph;
        let max_len = if f.name == "icosahedron" { 3 } else { 4 };
        for &ray in &f.rays {
            let h = build_horocyclic_machines(g, ray).unwrap();
            for k in -1..=2i64 {
                let mut oracle: BTreeSet<Word> = BTreeSet::new();
                for p in horosphere_points(g, ray, k, max_len, 1 << 22).unwrap() {
                    let seg = horocyclic_oracle(g, ray, &p.word).unwrap();
                    let word = seg.word();
                    assert_eq!(word.len(), p.suffix.len());
                    assert_eq!(seg.form, HorocyclicForm::for_horosphere(k, word.len()));
                    assert!(
                        h.for_form(seg.form).accepts(&word).accepted,
                        "{} k={k}: {} rejected",
                        f.name,
                        g.format_word(&word)
                    );
                    oracle.insert(word);
                }
                let machine: BTreeSet<Word> = h.for_horosphere(k).enumerate_language(max_len).into_iter().collect();
                let fmt = |s: &BTreeSet<Word>| s.iter().map(|w| g.format_word(w)).collect::<Vec<_>>();
                assert_eq!(
                    machine,
                    oracle,
                    "{} ray {:?} k={k}: machine-only {:?} oracle-only {:?}",
                    f.name,
                    ray,
                    fmt(&machine.difference(&oracle).cloned().collect()),
                    fmt(&oracle.difference(&machine).cloned().collect())
                );
            }
        }
    }
}
