use std::collections::{BTreeSet, HashMap};

use horoforge_core::word::shortlex_step;
use horoforge_core::{last_letters, DefiningGraph, Letter, LetterSet, RaySpec, Word};
use horoforge_fsm::Fsm;
use horoforge_machines::{build_geo_suffix_machine, HorocyclicForm, SuffixState};

use crate::cancel::{Cancellation, CancellationMachine, Side, Tagged};
use crate::horocyclic::{
    deep_form, deep_form_with_skeleton, horocyclic_delete, horocyclic_from_word, horocyclic_insert, s_state,
    skeleton_len, HorocyclicSuffix, CENTRAL_EXPONENT,
};
use crate::DivergenceError;

fn tagged(h: &HorocyclicSuffix) -> Vec<Tagged> {
    h.word.iter().copied().zip(h.slot_tags()).collect()
}

/// `M_K` input for the shorter word `v` against a word longer by `gap`:
/// its first two slots, then everything after the skeleton letter matching
/// the end of the longer word's skeleton, all read as the last slot.
fn shorter_input(ray: RaySpec, w: &HorocyclicSuffix, v: &HorocyclicSuffix) -> Vec<Tagged> {
    let nw = skeleton_len(w.form, CENTRAL_EXPONENT);
    let gap = w.len() - v.len();
    let deep = deep_form_with_skeleton(ray, v, nw + gap);
    let mut seen = 0;
    let mut rest = Vec::new();
    for &a in &deep {
        if seen >= nw {
            rest.push(a);
        }
        if seen < nw && ray.letters().contains(a) {
            seen += 1;
        }
    }
    let mut out: Vec<Tagged> = Vec::with_capacity(w.len());
    out.extend(v.slot(0).iter().map(|&a| (a, 0)));
    out.extend(v.slot(1).iter().map(|&a| (a, 1)));
    out.extend(rest.into_iter().map(|a| (a, 3)));
    out
}

pub fn run_cancellation_same_length(
    g: &DefiningGraph,
    machine: &mut CancellationMachine,
    w: &HorocyclicSuffix,
    v: &HorocyclicSuffix,
) -> Result<Cancellation, DivergenceError> {
    if w.len() != v.len() || w.form != v.form {
        return Err(DivergenceError::Mismatch);
    }
    Ok(machine.run(g, &tagged(w), &tagged(v)))
}

/// `M_K` for `|w| > |v|`. The caller checks the shortness gates.
pub fn run_cancellation_diff_length(
    g: &DefiningGraph,
    ray: RaySpec,
    machine: &mut CancellationMachine,
    w: &HorocyclicSuffix,
    v: &HorocyclicSuffix,
) -> Result<Cancellation, DivergenceError> {
    if w.len() <= v.len() {
        return Err(DivergenceError::Mismatch);
    }
    let vin = shorter_input(ray, w, v);
    if vin.len() != w.len() {
        return Err(DivergenceError::Invariant("misaligned cancellation input".into()));
    }
    Ok(machine.run(g, &tagged(w), &vin))
}

/// Appends the cancelable word to the deep form of `h` letter by letter
/// along successors; returns the successor's deep form and lex state.
///
/// The successor may extend the ray skeleton, so it is kept as a deep form
/// rather than as a horocyclic suffix of the same form.
pub fn maximal_cancellation_successor(
    g: &DefiningGraph,
    ray: RaySpec,
    h: &HorocyclicSuffix,
    cancelable: &[Letter],
) -> Result<(Word, LetterSet), DivergenceError> {
    let mut s = s_state(g, ray, h)?;
    let mut deep = deep_form(ray, h, CENTRAL_EXPONENT);
    for &a in cancelable {
        if s.contains(a) {
            return Err(DivergenceError::Invariant(format!(
                "cancelable letter {} is not a successor letter of {}",
                g.name(a),
                g.format_word(&deep)
            )));
        }
        s = shortlex_step(g, s, a);
        deep.push(a);
    }
    Ok((deep, s))
}

/// Two non-adjacent letters commuting with all of `k`, one of them allowed
/// after both lex states.
pub fn close_successors_decision(g: &DefiningGraph, s_w: LetterSet, s_v: LetterSet, k: LetterSet) -> bool {
    let cs = g.common_star(k) - k;
    cs.iter()
        .filter(|&a| !s_w.contains(a) && !s_v.contains(a))
        .any(|a| !(cs - g.star(a)).is_empty())
}

/// Per-ray data for divergence edges.
#[derive(Debug)]
pub struct DivergenceContext<'g> {
    pub g: &'g DefiningGraph,
    pub ray: RaySpec,
    pub k: i64,
    pub clique: usize,
    geo_suffix: Fsm<SuffixState>,
    /// Vertices of length at most `clique − 2`, for gaps of two or more.
    short: Vec<HorocyclicSuffix>,
}

impl<'g> DivergenceContext<'g> {
    pub fn new(
        g: &'g DefiningGraph,
        ray: RaySpec,
        k: i64,
        vertices: &[HorocyclicSuffix],
    ) -> Result<Self, DivergenceError> {
        let clique = g.max_clique_size().max(2);
        Ok(DivergenceContext {
            g,
            ray,
            k,
            clique,
            geo_suffix: build_geo_suffix_machine(g, ray)?,
            short: vertices.iter().filter(|v| v.len() + 2 <= clique).cloned().collect(),
        })
    }

    /// `2·Clique − 2`.
    pub fn distance_bound(&self) -> usize {
        2 * self.clique - 2
    }

    fn permitted(&self, w: &[Letter]) -> LetterSet {
        self.geo_suffix
            .run(w)
            .map_or(LetterSet::EMPTY, |s| self.geo_suffix.allowed(s))
    }

    /// Words reached by deleting exactly `t` last letters, for `t` in `0..=depth`.
    fn deletions(
        &self,
        w: &HorocyclicSuffix,
        depth: usize,
    ) -> Result<Vec<BTreeSet<HorocyclicSuffix>>, DivergenceError> {
        let mut levels = vec![BTreeSet::from([w.clone()])];
        for _ in 0..depth.min(w.len()) {
            let mut next = BTreeSet::new();
            for x in levels.last().unwrap() {
                for a in last_letters(self.g, &x.word).iter() {
                    next.insert(horocyclic_delete(self.g, self.ray, x, a)?);
                }
            }
            levels.push(next);
        }
        Ok(levels)
    }

    fn insertions(
        &self,
        from: &HorocyclicSuffix,
        t: usize,
        out: &mut BTreeSet<HorocyclicSuffix>,
    ) -> Result<(), DivergenceError> {
        if t == 0 {
            out.insert(from.clone());
            return Ok(());
        }
        for a in self.permitted(&from.word).iter() {
            let next = horocyclic_insert(self.g, self.ray, from, a)?;
            self.insertions(&next, t - 1, out)?;
        }
        Ok(())
    }

    /// Same-length suffixes within distance `2·Clique − 2` of `w`.
    pub fn same_length_candidates(&self, w: &HorocyclicSuffix) -> Result<BTreeSet<HorocyclicSuffix>, DivergenceError> {
        let levels = self.deletions(w, self.clique - 1)?;
        let mut out = BTreeSet::new();
        for (t, level) in levels.iter().enumerate().skip(1) {
            for x in level {
                self.insertions(x, t, &mut out)?;
            }
        }
        out.remove(w);
        Ok(out)
    }

    /// Whether `w` passes the constant-time gates for shorter neighbours.
    pub fn admits_shorter(&self, w: &HorocyclicSuffix) -> bool {
        let partner = self.ray.partner(w.form.closing_letter(self.ray));
        w.slot(2).is_empty() && w.slot(3).iter().all(|&a| self.g.commute(a, partner))
    }

    /// Candidates with shorter suffixes.
    pub fn shorter_candidates(&self, w: &HorocyclicSuffix) -> Result<BTreeSet<HorocyclicSuffix>, DivergenceError> {
        let mut out = BTreeSet::new();
        if w.is_empty() || !self.admits_shorter(w) {
            return Ok(out);
        }
        // One letter shorter: the prefix gains or loses a ray letter that
        // must commute with the common part.
        let x = horoforge_rips::prefix_exchange_letter(self.ray, self.k, w.len());
        let form = HorocyclicForm::for_horosphere(self.k, w.len() - 1);
        let levels = self.deletions(w, self.clique - 1)?;
        for (t, level) in levels.iter().enumerate().skip(1) {
            for y in level.iter().filter(|y| y.word.iter().all(|&c| self.g.commute(c, x))) {
                let mut grown = BTreeSet::new();
                self.insertions(y, t - 1, &mut grown)?;
                for z in grown {
                    out.insert(horocyclic_from_word(self.g, self.ray, form, &z.word)?);
                }
            }
        }
        if w.slot(3).is_empty() {
            out.extend(self.short.iter().filter(|v| v.len() + 2 <= w.len()).cloned());
        }
        Ok(out)
    }

    /// Decides whether `w` and `v` have close successors.
    pub fn has_edge(
        &self,
        machine: &mut CancellationMachine,
        w: &HorocyclicSuffix,
        v: &HorocyclicSuffix,
    ) -> Result<bool, DivergenceError> {
        if w == v {
            return Ok(false);
        }
        let (w, v) = if w.len() >= v.len() { (w, v) } else { (v, w) };
        let result = if w.len() == v.len() {
            run_cancellation_same_length(self.g, machine, w, v)?
        } else {
            if !self.admits_shorter(w) || (w.len() - v.len() >= 2 && !w.slot(3).is_empty()) {
                return Ok(false);
            }
            run_cancellation_diff_length(self.g, self.ray, machine, w, v)?
        };
        match result {
            Cancellation::UncancelablePair => Ok(false),
            Cancellation::Clique { k, cancelable, owner } => {
                let (own, other) = match owner {
                    Side::W => (w, v),
                    Side::V => (v, w),
                };
                let s_own = s_state(self.g, self.ray, own)?;
                let (_, s_succ) = maximal_cancellation_successor(self.g, self.ray, other, &cancelable)?;
                Ok(close_successors_decision(self.g, s_own, s_succ, k))
            }
        }
    }

    /// Neighbours of `w` among `index`, with suffix length at most `|w|`.
    pub fn neighbours(
        &self,
        machine: &mut CancellationMachine,
        w: &HorocyclicSuffix,
        index: &HashMap<&[Letter], u32>,
    ) -> Result<Vec<u32>, DivergenceError> {
        let mut cands = self.same_length_candidates(w)?;
        cands.extend(self.shorter_candidates(w)?);
        let mut out = Vec::new();
        for v in &cands {
            if let Some(&id) = index.get(v.word.as_slice()) {
                if self.has_edge(machine, w, v)? {
                    out.push(id);
                }
            }
        }
        Ok(out)
    }
}

/// Same-length divergence neighbours of `w`.
pub fn divergence_edges_same_length(
    ctx: &DivergenceContext,
    w: &HorocyclicSuffix,
) -> Result<Vec<HorocyclicSuffix>, DivergenceError> {
    let mut m = CancellationMachine::new();
    let mut out = Vec::new();
    for v in ctx.same_length_candidates(w)? {
        if ctx.has_edge(&mut m, w, &v)? {
            out.push(v);
        }
    }
    Ok(out)
}

/// Divergence neighbours of `w` with shorter suffixes.
pub fn divergence_edges_diff_length(
    ctx: &DivergenceContext,
    w: &HorocyclicSuffix,
) -> Result<Vec<HorocyclicSuffix>, DivergenceError> {
    let mut m = CancellationMachine::new();
    let mut out = Vec::new();
    for v in ctx.shorter_candidates(w)? {
        if ctx.has_edge(&mut m, w, &v)? {
            out.push(v);
        }
    }
    Ok(out)
}
