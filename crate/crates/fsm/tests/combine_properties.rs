use horoforge_core::{Letter, Word};
use horoforge_fsm::{build_by_exploration, combine, CombineMode, Fsm};
use proptest::prelude::*;

const ALPHABET: usize = 2;
const MAX_LEN: usize = 6;

#[derive(Clone, Debug)]
struct Table {
    next: Vec<Option<u8>>,
    accept: Vec<bool>,
}

fn table() -> impl Strategy<Value = Table> {
    (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::option::weighted(0.8, 0..n as u8), n * ALPHABET),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(next, accept)| Table { next, accept })
    })
}

impl Table {
    fn machine(&self) -> Fsm<u8> {
        build_by_exploration(
            ALPHABET,
            0u8,
            |&s, a| self.next[s as usize * ALPHABET + a as usize],
            |&s| self.accept[s as usize],
        )
        .unwrap()
    }

    fn accepts(&self, w: &[Letter]) -> bool {
        let mut s = 0u8;
        for &a in w {
            match self.next[s as usize * ALPHABET + a as usize] {
                Some(t) => s = t,
                None => return false,
            }
        }
        self.accept[s as usize]
    }
}

fn all_words() -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut level: Vec<Word> = vec![Vec::new()];
    for _ in 0..MAX_LEN {
        level = level
            .iter()
            .flat_map(|w| (0..ALPHABET as Letter).map(move |a| [w.as_slice(), &[a]].concat()))
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

proptest! {
    #[test]
    fn exploration_preserves_language(t in table()) {
        let m = t.machine();
        for w in all_words() {
            prop_assert_eq!(m.accepts(&w).accepted, t.accepts(&w));
        }
    }

    #[test]
    fn boolean_combinations(t1 in table(), t2 in table()) {
        let (m1, m2) = (t1.machine(), t2.machine());
        let inter = combine(&m1, &m2, CombineMode::Intersection).unwrap();
        let union = combine(&m1, &m2, CombineMode::Union).unwrap();
        for w in all_words() {
            let (a1, a2) = (t1.accepts(&w), t2.accepts(&w));
            prop_assert_eq!(inter.accepts(&w).accepted, a1 && a2);
            prop_assert_eq!(union.accepts(&w).accepted, a1 || a2);
        }
    }

    #[test]
    fn concatenation(t1 in table(), t2 in table()) {
        let m = combine(&t1.machine(), &t2.machine(), CombineMode::Concatenation).unwrap();
        for w in all_words() {
            let split = (0..=w.len()).any(|p| t1.accepts(&w[..p]) && t2.accepts(&w[p..]));
            prop_assert_eq!(m.accepts(&w).accepted, split);
        }
    }

    #[test]
    fn counts_match_enumeration(t in table()) {
        let m = t.machine();
        let counts = m.count_by_length(MAX_LEN);
        let mut per = vec![0u128; MAX_LEN + 1];
        for w in m.enumerate_language(MAX_LEN) {
            per[w.len()] += 1;
        }
        prop_assert_eq!(counts, per);
    }
}
