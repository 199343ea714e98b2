//! The machine family of a right-angled Coxeter group: geodesics, shortlex
//! geodesics, first-letter excluders, parity, ray suffixes and the
//! horocyclic suffix machines.
//!
//! Basic machines carry their defining letter set as payload. Machines
//! assembled with the language algebra carry a printable description of the
//! factor states instead.

use std::fmt::Debug;

use horoforge_core::{DefiningGraph, LetterSet, RaySpec};
use horoforge_fsm::{build_by_exploration, combine, CombineMode, Combined, Fsm, FsmError};

pub mod horocyclic;

pub use horocyclic::{
    build_geo_horocyclic_machines, build_horocyclic_machines, slot_sets, HorocyclicForm, HorocyclicMachines, SlotSets,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MachineError {
    #[error(transparent)]
    Fsm(#[from] FsmError),
    #[error("state {state} of the geodesic suffix machine is a dead end")]
    DeadEnd { state: u32 },
}

/// Geodesic machine; payload is the set of last letters.
pub fn build_geodesic_machine(g: &DefiningGraph) -> Result<Fsm<LetterSet>, FsmError> {
    build_by_exploration(
        g.len(),
        LetterSet::EMPTY,
        |&s, a| (!s.contains(a)).then(|| (s & g.star(a)).with(a)),
        |_| true,
    )
}

/// Shortlex machine; payload is the set of letters that may not come next.
pub fn build_shortlex_machine(g: &DefiningGraph) -> Result<Fsm<LetterSet>, FsmError> {
    build_by_exploration(
        g.len(),
        LetterSet::EMPTY,
        |&s, a| (!s.contains(a)).then(|| (s & g.star(a)).with(a) | g.star_lt(a)),
        |_| true,
    )
}

/// First-letter excluder `F_B`; payload is the set of letters of `B` that
/// could still be moved to the front.
pub fn build_first_letter_excluder(g: &DefiningGraph, b: LetterSet) -> Result<Fsm<LetterSet>, FsmError> {
    build_by_exploration(g.len(), b, |&s, a| (!s.contains(a)).then(|| s & g.star(a)), |_| true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Two-state machine accepting words of the given length parity; payload is
/// whether the length read so far is odd.
pub fn build_parity_machine(alphabet: usize, parity: Parity) -> Fsm<bool> {
    build_by_exploration(
        alphabet,
        false,
        |&odd, _| Some(!odd),
        move |&odd| odd == (parity == Parity::Odd),
    )
    .expect("two states")
}

/// State of a suffix machine: the shortlex (or geodesic) payload paired with
/// the excluder payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SuffixState {
    pub word: LetterSet,
    pub pending: LetterSet,
}

fn pair_states(m: Fsm<Combined<LetterSet, LetterSet>>) -> Fsm<SuffixState> {
    m.map_payload(|p| match p {
        Combined::Pair(Some(word), Some(pending)) => SuffixState { word, pending },
        other => unreachable!("intersection kept a sink pair: {other:?}"),
    })
}

/// `M_Suff`: shortlex words that cannot be rearranged to begin with a ray letter.
pub fn build_suffix_machine(g: &DefiningGraph, ray: RaySpec) -> Result<Fsm<SuffixState>, FsmError> {
    let lex = build_shortlex_machine(g)?;
    let excl = build_first_letter_excluder(g, ray.letters())?;
    Ok(pair_states(combine(&lex, &excl, CombineMode::Intersection)?))
}

/// `M_GeoSuff`: geodesic words that cannot be rearranged to begin with a ray
/// letter. Every state must have an outgoing transition.
pub fn build_geo_suffix_machine(g: &DefiningGraph, ray: RaySpec) -> Result<Fsm<SuffixState>, MachineError> {
    let geo = build_geodesic_machine(g)?;
    let excl = build_first_letter_excluder(g, ray.letters())?;
    let m = pair_states(combine(&geo, &excl, CombineMode::Intersection)?);
    for s in 0..m.num_states() as u32 {
        if m.is_accepting(s) && m.allowed(s).is_empty() {
            return Err(MachineError::DeadEnd { state: s });
        }
    }
    Ok(m)
}

/// Renders a letter set with vertex names.
pub fn describe_set(g: &DefiningGraph, s: LetterSet) -> String {
    let names: Vec<&str> = s.iter().map(|a| g.name(a)).collect();
    format!("{{{}}}", names.join(","))
}

/// Replaces an arbitrary payload by its debug rendering, without the string
/// quoting that nested erasure would pile up.
pub fn erase<P: Debug>(m: Fsm<P>) -> Fsm<String> {
    m.map_payload(|p| format!("{p:?}").replace(['\\', '"'], ""))
}

/// Number of states of every machine in the family for one ray.
pub fn state_count_report(g: &DefiningGraph, ray: RaySpec) -> Result<Vec<(String, usize)>, MachineError> {
    let mut out = vec![
        ("geodesic".to_string(), build_geodesic_machine(g)?.num_states()),
        ("shortlex".to_string(), build_shortlex_machine(g)?.num_states()),
        ("suffix".to_string(), build_suffix_machine(g, ray)?.num_states()),
        ("geosuffix".to_string(), build_geo_suffix_machine(g, ray)?.num_states()),
    ];
    let h = build_horocyclic_machines(g, ray)?;
    out.push(("horo-1234".into(), h.m1234.num_states()));
    out.push(("horo-1256".into(), h.m1256.num_states()));
    out.push(("horo-odd".into(), h.odd.num_states()));
    out.push(("horo-even".into(), h.even.num_states()));
    let (g1234, g1256) = build_geo_horocyclic_machines(g, ray)?;
    out.push(("geo-horo-1234".into(), g1234.num_states()));
    out.push(("geo-horo-1256".into(), g1256.num_states()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> DefiningGraph {
        DefiningGraph::cycle(5)
    }

    fn words(g: &DefiningGraph, m: &Fsm<impl Clone>, len: usize) -> Vec<String> {
        m.enumerate_language(len).iter().map(|w| g.format_word(w)).collect()
    }

    #[test]
    fn geodesic_single_vertex() {
        let g = DefiningGraph::from_edges(1, &[]).unwrap();
        let m = build_geodesic_machine(&g).unwrap();
        assert_eq!(m.num_states(), 2);
        assert_eq!(m.enumerate_language(4).len(), 2);
    }

    #[test]
    fn geodesic_and_shortlex_examples() {
        let g = c5();
        let geo = build_geodesic_machine(&g).unwrap();
        let lex = build_shortlex_machine(&g).unwrap();
        let w = |s: &str| g.parse_word(s).unwrap();
        assert!(geo.accepts(&w("ab")).accepted);
        assert!(geo.accepts(&w("ba")).accepted);
        assert!(!geo.accepts(&w("bab")).accepted);
        assert!(!geo.accepts(&w("aa")).accepted);
        let s = geo.accepts(&w("ab")).state.unwrap();
        assert_eq!(*geo.payload(s), LetterSet::from_letters([0, 1]));
        assert!(lex.accepts(&w("ab")).accepted);
        assert!(!lex.accepts(&w("ba")).accepted);
        let s = lex.accepts(&w("ab")).state.unwrap();
        assert_eq!(*lex.payload(s), LetterSet::from_letters([0, 1]));
        assert_eq!(*lex.payload(lex.start()), LetterSet::EMPTY);
    }

    #[test]
    fn excluder_examples() {
        let g = c5();
        let f = build_first_letter_excluder(&g, LetterSet::from_letters([0, 2])).unwrap();
        assert!(!f.accepts(&g.parse_word("bc").unwrap()).accepted);
        assert!(f.accepts(&g.parse_word("da").unwrap()).accepted);
        let all = build_first_letter_excluder(&g, LetterSet::EMPTY).unwrap();
        assert_eq!(all.count_by_length(3), vec![1, 5, 25, 125]);
    }

    #[test]
    fn parity_examples() {
        let odd = build_parity_machine(5, Parity::Odd);
        let even = build_parity_machine(5, Parity::Even);
        assert!(even.accepts(&[]).accepted && !odd.accepts(&[]).accepted);
        assert!(odd.accepts(&[2]).accepted && !even.accepts(&[2]).accepted);
        assert!(even.accepts(&[1, 3]).accepted);
    }

    #[test]
    fn suffix_machine_examples() {
        let g = c5();
        let ray = RaySpec::new(&g, 0, 2).unwrap();
        let m = build_suffix_machine(&g, ray).unwrap();
        assert_eq!(words(&g, &m, 1), vec!["", "b", "d", "e"]);
        let two: Vec<String> = words(&g, &m, 2).into_iter().filter(|w| w.len() == 2).collect();
        assert_eq!(two, vec!["bd", "be", "da", "db", "de", "eb", "ec"]);
        let geo = build_geo_suffix_machine(&g, ray).unwrap();
        assert!(geo.accepts(&g.parse_word("bd").unwrap()).accepted);
        assert!(geo.accepts(&g.parse_word("db").unwrap()).accepted);
        assert!(!geo.accepts(&g.parse_word("cb").unwrap()).accepted);
    }

    #[test]
    fn restricted_shortlex() {
        let g = c5();
        let lex = build_shortlex_machine(&g).unwrap();
        let only_a = lex.restrict_alphabet(LetterSet::singleton(0));
        assert_eq!(words(&g, &only_a, 5), vec!["", "a"]);
        let b = lex.restrict_alphabet(LetterSet::singleton(1));
        let d = lex.restrict_alphabet(LetterSet::singleton(3));
        let bd = combine(&b, &d, CombineMode::Concatenation).unwrap();
        assert!(bd.accepts(&g.parse_word("bd").unwrap()).accepted);
        assert!(!bd.accepts(&g.parse_word("db").unwrap()).accepted);
    }
}
