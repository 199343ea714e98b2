//! Word arithmetic in the group: geodesic and shortlex recognition,
//! linear-time insertion and deletion, and normalization.

use crate::graph::DefiningGraph;
use crate::letters::{Letter, LetterSet, Word};
use crate::CoreError;

/// One step of the geodesic rule: the set of letters that would shorten the word.
#[inline]
pub fn geodesic_step(g: &DefiningGraph, last: LetterSet, a: Letter) -> LetterSet {
    (last & g.star(a)).with(a)
}

/// One step of the shortlex rule: the set of letters that may not come next.
#[inline]
pub fn shortlex_step(g: &DefiningGraph, forbidden: LetterSet, a: Letter) -> LetterSet {
    (forbidden & g.star(a)).with(a) | g.star_lt(a)
}

/// Letters `a` with `|wa| < |w|`, assuming `w` is geodesic.
pub fn last_letters(g: &DefiningGraph, w: &[Letter]) -> LetterSet {
    w.iter().fold(LetterSet::EMPTY, |s, &a| geodesic_step(g, s, a))
}

/// Letters that may follow `w` in a shortlex word, assuming `w` is shortlex.
pub fn shortlex_forbidden(g: &DefiningGraph, w: &[Letter]) -> LetterSet {
    w.iter().fold(LetterSet::EMPTY, |s, &a| shortlex_step(g, s, a))
}

pub fn is_geodesic(g: &DefiningGraph, w: &[Letter]) -> bool {
    let mut s = LetterSet::EMPTY;
    for &a in w {
        if s.contains(a) {
            return false;
        }
        s = geodesic_step(g, s, a);
    }
    true
}

pub fn is_shortlex(g: &DefiningGraph, w: &[Letter]) -> bool {
    let mut s = LetterSet::EMPTY;
    for &a in w {
        if s.contains(a) {
            return false;
        }
        s = shortlex_step(g, s, a);
    }
    true
}

/// Position at which `a` enters the shortlex word `w`, or the index of the
/// copy of `a` that cancels it.
enum Placement {
    Insert(usize),
    Cancel(usize),
}

fn place(g: &DefiningGraph, w: &[Letter], a: Letter) -> Placement {
    let mut at = w.len();
    for p in (0..w.len()).rev() {
        let x = w[p];
        if x == a {
            return Placement::Cancel(p);
        }
        if !g.commute(a, x) {
            break;
        }
        if a < x {
            at = p;
        }
    }
    Placement::Insert(at)
}

/// Shortlex form of `w·a` for a shortlex word `w` when `w·a` is geodesic.
///
/// Single right-to-left pass: remember the leftmost position where `a` could
/// sit in front of a larger commuting letter, stop at the first letter that
/// does not commute with `a`.
pub fn shortlex_insert(g: &DefiningGraph, w: &[Letter], a: Letter) -> Result<Word, CoreError> {
    match place(g, w, a) {
        Placement::Cancel(_) => Err(CoreError::InsertCancels(a)),
        Placement::Insert(at) => {
            let mut out = Vec::with_capacity(w.len() + 1);
            out.extend_from_slice(&w[..at]);
            out.push(a);
            out.extend_from_slice(&w[at..]);
            Ok(out)
        }
    }
}

/// Removes the last copy of `a`, which must be a last letter of `w`.
pub fn delete_last_copy(g: &DefiningGraph, w: &[Letter], a: Letter) -> Result<Word, CoreError> {
    match place(g, w, a) {
        Placement::Cancel(p) => {
            let mut out = Vec::with_capacity(w.len().saturating_sub(1));
            out.extend_from_slice(&w[..p]);
            out.extend_from_slice(&w[p + 1..]);
            Ok(out)
        }
        Placement::Insert(_) => Err(CoreError::NotALastLetter(a)),
    }
}

/// Appends `a` to a shortlex word in place, cancelling when possible.
pub fn push_normalized(g: &DefiningGraph, w: &mut Word, a: Letter) {
    match place(g, w, a) {
        Placement::Cancel(p) => {
            w.remove(p);
        }
        Placement::Insert(at) => w.insert(at, a),
    }
}

/// The shortlex normal form of an arbitrary word.
pub fn normalize(g: &DefiningGraph, w: &[Letter]) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &a in w {
        push_normalized(g, &mut out, a);
    }
    out
}

/// Cayley-graph distance between the elements represented by `w` and `v`.
pub fn word_distance(g: &DefiningGraph, w: &[Letter], v: &[Letter]) -> usize {
    let mut out = Vec::with_capacity(w.len() + v.len());
    for &a in w.iter().rev().chain(v.iter()) {
        push_normalized(g, &mut out, a);
    }
    out.len()
}

/// Inverse of a word.
pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> DefiningGraph {
        DefiningGraph::cycle(5)
    }

    fn w(g: &DefiningGraph, s: &str) -> Word {
        g.parse_word(s).unwrap()
    }

    #[test]
    fn normalize_small_cases() {
        let g = c5();
        assert_eq!(normalize(&g, &[]), Vec::<Letter>::new());
        assert_eq!(normalize(&g, &w(&g, "ba")), w(&g, "ab"));
        assert_eq!(normalize(&g, &w(&g, "aa")), Vec::<Letter>::new());
        assert_eq!(normalize(&g, &w(&g, "aba")), w(&g, "b"));
    }

    #[test]
    fn distances() {
        let g = c5();
        let ab = w(&g, "ab");
        assert_eq!(word_distance(&g, &ab, &ab), 0);
        assert_eq!(word_distance(&g, &ab, &w(&g, "ad")), 2);
        assert_eq!(word_distance(&g, &[], &w(&g, "aba")), 1);
    }

    #[test]
    fn insertion_cases() {
        let g = c5();
        assert_eq!(shortlex_insert(&g, &w(&g, "b"), 0).unwrap(), w(&g, "ab"));
        assert_eq!(shortlex_insert(&g, &w(&g, "b"), 3).unwrap(), w(&g, "bd"));
        assert_eq!(shortlex_insert(&g, &w(&g, "da"), 1).unwrap(), w(&g, "dab"));
        assert!(shortlex_insert(&g, &w(&g, "ab"), 0).is_err());
    }

    #[test]
    fn deletion_cases() {
        let g = c5();
        assert_eq!(delete_last_copy(&g, &w(&g, "ab"), 1).unwrap(), w(&g, "a"));
        assert_eq!(delete_last_copy(&g, &w(&g, "ab"), 0).unwrap(), w(&g, "b"));
        assert_eq!(delete_last_copy(&g, &w(&g, "dab"), 1).unwrap(), w(&g, "da"));
        assert!(delete_last_copy(&g, &w(&g, "da"), 3).is_err());
    }

    #[test]
    fn machine_rules() {
        let g = c5();
        assert!(is_geodesic(&g, &w(&g, "ab")));
        assert!(is_geodesic(&g, &w(&g, "ba")));
        assert!(!is_geodesic(&g, &w(&g, "bab")));
        assert!(is_shortlex(&g, &w(&g, "ab")));
        assert!(!is_shortlex(&g, &w(&g, "ba")));
        assert_eq!(shortlex_forbidden(&g, &w(&g, "ab")), LetterSet::from_letters([0, 1]));
        assert_eq!(last_letters(&g, &w(&g, "ab")), LetterSet::from_letters([0, 1]));
    }
}
