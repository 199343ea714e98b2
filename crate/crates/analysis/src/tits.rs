//! Word problem through the contragredient Tits representation.
//!
//! An element `w` is stored as the orbit point `ρ·w` of the all-ones vector;
//! the map is injective, right descents are the negative coordinates, and
//! length is the number of greedy descent steps back to `ρ`. Nothing here
//! uses the combinatorial normal form of the core crate.

use horoforge_core::{DefiningGraph, Letter, LetterSet, Word};

/// Orbit point of a group element; equal keys mean equal elements.
pub type Key = Vec<i128>;

pub fn identity_key(g: &DefiningGraph) -> Key {
    vec![1; g.len()]
}

/// Right multiplication by `a`.
pub fn push(g: &DefiningGraph, key: &mut Key, a: Letter) {
    let xa = key[a as usize];
    for (t, x) in key.iter_mut().enumerate() {
        let t = t as Letter;
        if t == a {
            *x = -xa;
        } else if !g.adjacent(a, t) {
            *x += 2 * xa;
        }
    }
}

pub fn key_of(g: &DefiningGraph, w: &[Letter]) -> Key {
    let mut k = identity_key(g);
    for &a in w {
        push(g, &mut k, a);
    }
    k
}

/// Letters `a` with `|wa| < |w|`.
pub fn right_descents(key: &Key) -> LetterSet {
    key.iter()
        .enumerate()
        .filter(|(_, &x)| x < 0)
        .map(|(a, _)| a as Letter)
        .collect()
}

/// Word length of the element.
pub fn length(g: &DefiningGraph, key: &Key) -> usize {
    let mut k = key.clone();
    let mut n = 0;
    while let Some(a) = right_descents(&k).min() {
        push(g, &mut k, a);
        n += 1;
    }
    n
}

pub fn word_length(g: &DefiningGraph, w: &[Letter]) -> usize {
    length(g, &key_of(g, w))
}

/// Shortlex normal form: repeatedly strip the smallest left descent.
pub fn shortlex(g: &DefiningGraph, w: &[Letter]) -> Word {
    let mut inv: Key = key_of(g, &w.iter().rev().copied().collect::<Word>());
    let mut out = Vec::new();
    while let Some(a) = right_descents(&inv).min() {
        out.push(a);
        push(g, &mut inv, a);
    }
    out
}

pub fn is_reduced(g: &DefiningGraph, w: &[Letter]) -> bool {
    let mut k = identity_key(g);
    for &a in w {
        if k[a as usize] < 0 {
            return false;
        }
        push(g, &mut k, a);
    }
    true
}

pub fn distance(g: &DefiningGraph, w: &[Letter], v: &[Letter]) -> usize {
    let mut k = identity_key(g);
    for &a in w.iter().rev().chain(v) {
        push(g, &mut k, a);
    }
    length(g, &k)
}

/// Calls `f` on every reduced word of length at most `r`, extending words
/// only by letters that are not descents.
pub fn for_each_reduced_word<F: FnMut(&[Letter])>(g: &DefiningGraph, r: usize, mut f: F) {
    fn go<F: FnMut(&[Letter])>(g: &DefiningGraph, r: usize, w: &mut Word, key: &Key, f: &mut F) {
        f(w);
        if w.len() == r {
            return;
        }
        for a in g.letters().filter(|&a| key[a as usize] > 0) {
            let mut k2 = key.clone();
            push(g, &mut k2, a);
            w.push(a);
            go(g, r, w, &k2, f);
            w.pop();
        }
    }
    go(g, r, &mut Vec::new(), &identity_key(g), &mut f);
}
