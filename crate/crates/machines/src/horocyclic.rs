//! Machines for horocyclic suffixes `w1 w2 w3 w4` and `w1 w2 w5 w6`.
//!
//! Slot alphabets, with `C` the letters commuting with both ray letters and
//! `p` the ray letter closing the third slot (`a_j` for the first form,
//! `a_i` for the second):
//!
//! | slot | alphabet / rule |
//! |------|-----------------|
//! | 1 | `C ∩ Star_<(a_j)` |
//! | 2 | `C ∩ Star_<(a_i)`, minus slot 1 |
//! | 3 | `Star_<(p)`, not starting in `Star(q)` where `q` is the other ray letter |
//! | 4 | anything not starting in `Star_≤(p)` |
//!
//! Slots 3 and 4 together may not start with a ray letter or with a letter
//! of slots 1 and 2.

use horoforge_core::{DefiningGraph, LetterSet, RaySpec};
use horoforge_fsm::{combine, CombineMode, Fsm, FsmError};

use crate::{
    build_first_letter_excluder, build_geodesic_machine, build_parity_machine, build_shortlex_machine, erase, Parity,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HorocyclicForm {
    F1234,
    F1256,
}

impl HorocyclicForm {
    /// The form used on horosphere `k` for suffixes of length `s`.
    pub fn for_horosphere(k: i64, s: usize) -> HorocyclicForm {
        if (k + s as i64).rem_euclid(2) == 1 {
            HorocyclicForm::F1234
        } else {
            HorocyclicForm::F1256
        }
    }

    /// Ray letter separating the third and fourth slots.
    pub fn closing_letter(self, ray: RaySpec) -> horoforge_core::Letter {
        match self {
            HorocyclicForm::F1234 => ray.j,
            HorocyclicForm::F1256 => ray.i,
        }
    }

    /// Slot names, used for display.
    pub fn slot_names(self) -> [&'static str; 4] {
        match self {
            HorocyclicForm::F1234 => ["w1", "w2", "w3", "w4"],
            HorocyclicForm::F1256 => ["w1", "w2", "w5", "w6"],
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            HorocyclicForm::F1234 => "1234",
            HorocyclicForm::F1256 => "1256",
        }
    }
}

/// Letter sets governing the four slots of one form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlotSets {
    pub common: LetterSet,
    pub first: LetterSet,
    pub second: LetterSet,
    pub third: LetterSet,
    pub third_excluded: LetterSet,
    pub fourth_excluded: LetterSet,
    pub tail_excluded: LetterSet,
}

pub fn slot_sets(g: &DefiningGraph, ray: RaySpec, form: HorocyclicForm) -> SlotSets {
    let common = g.link(ray.i) & g.link(ray.j);
    let first = common & g.star_lt(ray.j);
    let second = (common & g.star_lt(ray.i)) - first;
    let p = form.closing_letter(ray);
    let q = ray.partner(p);
    SlotSets {
        common,
        first,
        second,
        third: g.star_lt(p),
        third_excluded: g.star(q),
        fourth_excluded: g.star_le(p),
        tail_excluded: ray.letters() | first | second,
    }
}

#[derive(Clone, Debug)]
pub struct HorocyclicMachines {
    pub m1234: Fsm<String>,
    pub m1256: Fsm<String>,
    /// Suffixes used on odd horospheres.
    pub odd: Fsm<String>,
    /// Suffixes used on even horospheres.
    pub even: Fsm<String>,
}

impl HorocyclicMachines {
    pub fn for_form(&self, form: HorocyclicForm) -> &Fsm<String> {
        match form {
            HorocyclicForm::F1234 => &self.m1234,
            HorocyclicForm::F1256 => &self.m1256,
        }
    }

    pub fn for_horosphere(&self, k: i64) -> &Fsm<String> {
        if k.rem_euclid(2) == 1 {
            &self.odd
        } else {
            &self.even
        }
    }
}

fn inter(a: &Fsm<String>, b: &Fsm<String>) -> Result<Fsm<String>, FsmError> {
    Ok(erase(combine(a, b, CombineMode::Intersection)?))
}

fn concat(a: &Fsm<String>, b: &Fsm<String>) -> Result<Fsm<String>, FsmError> {
    Ok(erase(combine(a, b, CombineMode::Concatenation)?))
}

fn union(a: &Fsm<String>, b: &Fsm<String>) -> Result<Fsm<String>, FsmError> {
    Ok(erase(combine(a, b, CombineMode::Union)?))
}

fn form_machine(g: &DefiningGraph, base: &Fsm<String>, sets: &SlotSets) -> Result<Fsm<String>, FsmError> {
    let excl = |b| build_first_letter_excluder(g, b).map(erase);
    let l1 = base.restrict_alphabet(sets.first);
    let l2 = base.restrict_alphabet(sets.second);
    let l3 = inter(&base.restrict_alphabet(sets.third), &excl(sets.third_excluded)?)?;
    let l4 = inter(base, &excl(sets.fourth_excluded)?)?;
    let l34 = inter(&concat(&l3, &l4)?, &excl(sets.tail_excluded)?)?;
    concat(&concat(&l1, &l2)?, &l34)
}

fn build_pair(g: &DefiningGraph, ray: RaySpec, base: Fsm<String>) -> Result<(Fsm<String>, Fsm<String>), FsmError> {
    let m1234 = form_machine(g, &base, &slot_sets(g, ray, HorocyclicForm::F1234))?;
    let m1256 = form_machine(g, &base, &slot_sets(g, ray, HorocyclicForm::F1256))?;
    Ok((m1234, m1256))
}

/// `M_1234`, `M_1256` and the odd/even horosphere machines built from them.
pub fn build_horocyclic_machines(g: &DefiningGraph, ray: RaySpec) -> Result<HorocyclicMachines, FsmError> {
    let (m1234, m1256) = build_pair(g, ray, erase(build_shortlex_machine(g)?))?;
    let odd_len = erase(build_parity_machine(g.len(), Parity::Odd));
    let even_len = erase(build_parity_machine(g.len(), Parity::Even));
    let odd = union(&inter(&m1234, &even_len)?, &inter(&m1256, &odd_len)?)?;
    let even = union(&inter(&m1234, &odd_len)?, &inter(&m1256, &even_len)?)?;
    Ok(HorocyclicMachines {
        m1234,
        m1256,
        odd,
        even,
    })
}

/// The geodesic variants `M_Geo1234` and `M_Geo1256`.
pub fn build_geo_horocyclic_machines(g: &DefiningGraph, ray: RaySpec) -> Result<(Fsm<String>, Fsm<String>), FsmError> {
    build_pair(g, ray, erase(build_geodesic_machine(g)?))
}
