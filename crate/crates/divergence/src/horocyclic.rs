//! Horocyclic suffixes, kept alongside their deep form
//! `w1 a_j w2 (a_i a_j)^m a_i w3 a_j w4` or `w1 a_j w2 (a_i a_j)^m w5 a_i w6`.
//!
//! Insertion and deletion act on the deep form with a fixed skeleton, so the
//! segmentation is read off again afterwards.

use horoforge_core::word::{is_shortlex, shortlex_forbidden};
use horoforge_core::{
    assemble_word, delete_last_copy, normalize, shortlex_insert, DefiningGraph, Letter, LetterSet, RaySpec, Word,
};
use horoforge_machines::{HorocyclicForm, HorocyclicMachines};
use horoforge_rips::VertexSlots;

use crate::DivergenceError;

/// Exponent of the central `(a_i a_j)` block in deep forms.
pub const CENTRAL_EXPONENT: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HorocyclicSuffix {
    pub word: Word,
    pub form: HorocyclicForm,
    /// End positions of the first three slots.
    pub cuts: [usize; 3],
}

impl HorocyclicSuffix {
    pub fn empty(form: HorocyclicForm) -> Self {
        HorocyclicSuffix {
            word: Vec::new(),
            form,
            cuts: [0; 3],
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    fn bounds(&self) -> [usize; 5] {
        [0, self.cuts[0], self.cuts[1], self.cuts[2], self.word.len()]
    }

    /// Slot `t` in `0..4`.
    pub fn slot(&self, t: usize) -> &[Letter] {
        let b = self.bounds();
        &self.word[b[t]..b[t + 1]]
    }

    /// Slot index in `0..4` of every letter.
    pub fn slot_tags(&self) -> Vec<u8> {
        let b = self.bounds();
        (0..self.word.len())
            .map(|p| (0..4).find(|&t| p < b[t + 1]).unwrap() as u8)
            .collect()
    }

    pub fn vertex_slots(&self) -> VertexSlots {
        VertexSlots {
            form: self.form,
            cuts: self.cuts,
        }
    }

    pub fn describe(&self, g: &DefiningGraph) -> String {
        let names = self.form.slot_names();
        (0..4)
            .map(|t| format!("{}={}", names[t], g.format_word(self.slot(t))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Number of ray letters in the deep form with central exponent `m`.
pub fn skeleton_len(form: HorocyclicForm, m: usize) -> usize {
    match form {
        HorocyclicForm::F1234 => 2 * m + 3,
        HorocyclicForm::F1256 => 2 * m + 2,
    }
}

fn skeleton(ray: RaySpec, len: usize) -> Word {
    ray.alternating(ray.j, len)
}

/// The deep form of `h` with central exponent `m`.
pub fn deep_form(ray: RaySpec, h: &HorocyclicSuffix, m: usize) -> Word {
    deep_form_with_skeleton(ray, h, skeleton_len(h.form, m))
}

/// The deep form of `h` with `n` skeleton letters; `n` must be odd for the
/// first form and even for the second.
pub fn deep_form_with_skeleton(ray: RaySpec, h: &HorocyclicSuffix, n: usize) -> Word {
    let y = skeleton(ray, n);
    let mut out = Vec::with_capacity(n + h.len());
    out.extend_from_slice(h.slot(0));
    out.push(y[0]);
    out.extend_from_slice(h.slot(1));
    out.extend_from_slice(&y[1..n - 1]);
    out.extend_from_slice(h.slot(2));
    out.push(y[n - 1]);
    out.extend_from_slice(h.slot(3));
    out
}

/// Reads a horocyclic suffix off a deep form with `n` skeleton letters.
fn strip(
    g: &DefiningGraph,
    ray: RaySpec,
    form: HorocyclicForm,
    deep: &[Letter],
    n: usize,
) -> Result<HorocyclicSuffix, DivergenceError> {
    let bad = || DivergenceError::NotHorocyclic(g.format_word(deep));
    let mut gap_of = Vec::with_capacity(deep.len());
    let mut seen = 0;
    let mut word = Vec::with_capacity(deep.len().saturating_sub(n));
    for &a in deep {
        if seen < n && ray.letters().contains(a) {
            if a != if seen % 2 == 0 { ray.j } else { ray.i } {
                return Err(bad());
            }
            seen += 1;
        } else {
            word.push(a);
            gap_of.push(seen);
        }
    }
    if seen < n {
        return Err(bad());
    }
    let slot = |gap: usize| -> Option<usize> {
        match gap {
            0 => Some(0),
            1 => Some(1),
            x if x == n - 1 => Some(2),
            x if x == n => Some(3),
            _ => None,
        }
    };
    let tags = gap_of
        .iter()
        .map(|&x| slot(x))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(bad)?;
    let mut out = [0usize; 3];
    for (t, o) in out.iter_mut().enumerate() {
        *o = tags.iter().filter(|&&s| s <= t).count();
    }
    Ok(HorocyclicSuffix { word, form, cuts: out })
}

/// Horocyclic form of the suffix element represented by `w`.
///
/// Fails when `w` does not represent a suffix that can be written in `form`.
pub fn horocyclic_from_word(
    g: &DefiningGraph,
    ray: RaySpec,
    form: HorocyclicForm,
    w: &[Letter],
) -> Result<HorocyclicSuffix, DivergenceError> {
    let n = skeleton_len(form, CENTRAL_EXPONENT);
    let mut y = skeleton(ray, n);
    y.extend_from_slice(w);
    let deep = normalize(g, &y);
    if deep.len() != y.len() {
        return Err(DivergenceError::NotHorocyclic(g.format_word(w)));
    }
    let h = strip(g, ray, form, &deep, n)?;
    let first = horoforge_core::word::last_letters(g, &horoforge_core::inverse(&h.word));
    if !(first & ray.letters()).is_empty() {
        return Err(DivergenceError::NotHorocyclic(g.format_word(w)));
    }
    Ok(h)
}

/// `h·a` on the successor horosphere, in the same form.
pub fn horocyclic_insert(
    g: &DefiningGraph,
    ray: RaySpec,
    h: &HorocyclicSuffix,
    a: Letter,
) -> Result<HorocyclicSuffix, DivergenceError> {
    let n = skeleton_len(h.form, CENTRAL_EXPONENT);
    let deep = deep_form(ray, h, CENTRAL_EXPONENT);
    let inserted = shortlex_insert(g, &deep, a).map_err(|_| DivergenceError::Forbidden(a))?;
    let out = strip(g, ray, h.form, &inserted, n).map_err(|_| DivergenceError::Forbidden(a))?;
    let first = horoforge_core::word::last_letters(g, &horoforge_core::inverse(&out.word));
    if !(first & ray.letters()).is_empty() {
        return Err(DivergenceError::Forbidden(a));
    }
    Ok(out)
}

/// Removes the last copy of a last letter of `h`.
pub fn horocyclic_delete(
    g: &DefiningGraph,
    ray: RaySpec,
    h: &HorocyclicSuffix,
    a: Letter,
) -> Result<HorocyclicSuffix, DivergenceError> {
    if !horoforge_core::last_letters(g, &h.word).contains(a) {
        return Err(DivergenceError::NotALastLetter(a));
    }
    let n = skeleton_len(h.form, CENTRAL_EXPONENT);
    let deep = deep_form(ray, h, CENTRAL_EXPONENT);
    let deleted = delete_last_copy(g, &deep, a).map_err(|_| DivergenceError::NotALastLetter(a))?;
    strip(g, ray, h.form, &deleted, n)
}

/// The limiting lex state `S(h)`: forbidden letters after the deep form.
pub fn s_state(g: &DefiningGraph, ray: RaySpec, h: &HorocyclicSuffix) -> Result<LetterSet, DivergenceError> {
    let at = |m: usize| -> Result<LetterSet, DivergenceError> {
        let deep = deep_form(ray, h, m);
        if !is_shortlex(g, &deep) {
            return Err(DivergenceError::Invariant(format!(
                "deep form {} is not shortlex",
                g.format_word(&deep)
            )));
        }
        Ok(shortlex_forbidden(g, &deep))
    };
    let s = at(CENTRAL_EXPONENT)?;
    if at(CENTRAL_EXPONENT + 1)? != s {
        return Err(DivergenceError::Invariant(format!(
            "lex state of {} depends on the ray exponent",
            g.format_word(&h.word)
        )));
    }
    Ok(s)
}

/// Shortlex word of the horosphere point with horocyclic suffix `h`.
pub fn point_word(g: &DefiningGraph, ray: RaySpec, h: &HorocyclicSuffix, k: i64) -> Word {
    normalize(g, &assemble_word(ray, &h.word, k))
}

/// Horocyclic suffixes of points on horosphere `k` with length at most `max_len`,
/// ordered by length then word.
pub fn enumerate_horocyclic_suffixes(
    g: &DefiningGraph,
    ray: RaySpec,
    machines: &HorocyclicMachines,
    k: i64,
    max_len: usize,
) -> Result<Vec<HorocyclicSuffix>, DivergenceError> {
    let mut words = machines.for_horosphere(k).enumerate_language(max_len);
    words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    words
        .into_iter()
        .map(|w| {
            let form = HorocyclicForm::for_horosphere(k, w.len());
            let h = horocyclic_from_word(g, ray, form, &w)?;
            if h.word != w {
                return Err(DivergenceError::Invariant(format!(
                    "machine word {} is not in horocyclic form",
                    g.format_word(&w)
                )));
            }
            Ok(h)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> (DefiningGraph, RaySpec) {
        let g = DefiningGraph::cycle(5);
        let ray = RaySpec::new(&g, 0, 2).unwrap();
        (g, ray)
    }

    #[test]
    fn deep_form_of_empty() {
        let (g, ray) = c5();
        let h = HorocyclicSuffix::empty(HorocyclicForm::F1256);
        assert_eq!(g.format_word(&deep_form(ray, &h, 2)), "cacaca");
        let h = HorocyclicSuffix::empty(HorocyclicForm::F1234);
        assert_eq!(g.format_word(&deep_form(ray, &h, 2)), "cacacac");
    }

    #[test]
    fn insert_and_delete() {
        let (g, ray) = c5();
        let e = HorocyclicSuffix::empty(HorocyclicForm::F1234);
        let b = horocyclic_insert(&g, ray, &e, 1).unwrap();
        assert_eq!(b.word, vec![1]);
        assert_eq!(b.cuts, [1, 1, 1]);
        let d = horocyclic_insert(&g, ray, &e, 3).unwrap();
        assert_eq!(d.cuts, [0, 0, 0]);
        assert!(horocyclic_insert(&g, ray, &e, 0).is_err());
        assert_eq!(horocyclic_delete(&g, ray, &b, 1).unwrap(), e);
        assert!(horocyclic_delete(&g, ray, &b, 3).is_err());
        let bd = horocyclic_insert(&g, ray, &b, 3).unwrap();
        assert_eq!(horocyclic_delete(&g, ray, &bd, 3).unwrap(), b);
    }

    #[test]
    fn s_state_is_stable() {
        let (g, ray) = c5();
        for form in [HorocyclicForm::F1234, HorocyclicForm::F1256] {
            let e = HorocyclicSuffix::empty(form);
            s_state(&g, ray, &e).unwrap();
        }
    }
}
