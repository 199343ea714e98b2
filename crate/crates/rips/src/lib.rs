//! 2-Rips graphs on horospheres.
//!
//! A point of the horosphere `b = k` is determined by its suffix, so
//! vertices are suffix words and edges are generated per vertex from the
//! suffix and `k` alone.

use std::collections::HashMap;

use horoforge_core::{last_letters, DefiningGraph, Letter, LetterSet, RaySpec, Word};
use horoforge_fsm::{Fsm, StateId};
use horoforge_machines::{build_geo_suffix_machine, build_suffix_machine, MachineError, SuffixState};
use rayon::prelude::*;

mod graph;

pub use graph::{GraphKind, HorosphereGraph, VertexSlots};
pub use horoforge_core::{delete_last_copy, shortlex_insert};

/// Suffixes of length at most `max_len`, ordered by length then lexicographically.
pub fn enumerate_suffixes(g: &DefiningGraph, ray: RaySpec, max_len: usize) -> Result<Vec<Word>, MachineError> {
    let m = build_suffix_machine(g, ray)?;
    let mut out = m.enumerate_language(max_len);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

/// The first `cap` suffixes of length at most `max_len` in (length, word)
/// order, generated level by level so the work stays proportional to `cap`.
pub fn enumerate_suffixes_capped(
    g: &DefiningGraph,
    ray: RaySpec,
    max_len: usize,
    cap: usize,
) -> Result<Vec<Word>, MachineError> {
    let m = build_suffix_machine(g, ray)?;
    let mut out: Vec<Word> = Vec::new();
    if cap == 0 {
        return Ok(out);
    }
    if m.is_accepting(m.start()) {
        out.push(Vec::new());
    }
    let mut level: Vec<(Word, StateId)> = vec![(Vec::new(), m.start())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, s) in &level {
            for (a, t) in m.transitions(*s) {
                let mut x = w.clone();
                x.push(a);
                if m.is_accepting(t) {
                    if out.len() == cap {
                        return Ok(out);
                    }
                    out.push(x.clone());
                }
                next.push((x, t));
            }
        }
        level = next;
    }
    Ok(out)
}

/// Ray letter gained (`k ≥ |s|`) or lost (`k < |s|`) by the prefix when the
/// suffix loses one letter at Busemann value `k`.
pub fn prefix_exchange_letter(ray: RaySpec, k: i64, suffix_len: usize) -> Letter {
    let p = k - suffix_len as i64;
    let odd = p.rem_euclid(2) == 1;
    if p >= 0 {
        if odd {
            ray.i
        } else {
            ray.j
        }
    } else if odd {
        ray.i
    } else {
        ray.j
    }
}

/// Per-ray data shared by every vertex during edge generation.
#[derive(Clone, Debug)]
pub struct RipsGenerator<'g> {
    pub g: &'g DefiningGraph,
    pub ray: RaySpec,
    geo_suffix: Fsm<SuffixState>,
}

impl<'g> RipsGenerator<'g> {
    pub fn new(g: &'g DefiningGraph, ray: RaySpec) -> Result<Self, MachineError> {
        Ok(RipsGenerator {
            g,
            ray,
            geo_suffix: build_geo_suffix_machine(g, ray)?,
        })
    }

    /// Letters that may be appended to a suffix while keeping it a geodesic suffix.
    pub fn permitted(&self, w: &[Letter]) -> LetterSet {
        self.geo_suffix
            .run(w)
            .map_or(LetterSet::EMPTY, |s| self.geo_suffix.allowed(s))
    }

    /// Number of delete-then-insert operations tried for `suffix`.
    pub fn candidate_operations(&self, suffix: &[Letter]) -> usize {
        last_letters(self.g, suffix)
            .iter()
            .map(|a| {
                let shorter = delete_last_copy(self.g, suffix, a).expect("last letter");
                self.permitted(&shorter).len()
            })
            .sum()
    }

    /// Neighbours with a suffix of the same length.
    pub fn same_length(&self, suffix: &[Letter]) -> Vec<Word> {
        let mut out = Vec::new();
        for a in last_letters(self.g, suffix).iter() {
            let shorter = delete_last_copy(self.g, suffix, a).expect("last letter");
            for b in self.permitted(&shorter).iter() {
                let v = shortlex_insert(self.g, &shorter, b).expect("permitted letter");
                if v != suffix {
                    out.push(v);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Neighbours whose suffix is one letter shorter.
    pub fn diff_length(&self, suffix: &[Letter], k: i64) -> Vec<Word> {
        if suffix.is_empty() {
            return Vec::new();
        }
        let x = prefix_exchange_letter(self.ray, k, suffix.len());
        let star = self.g.star(x);
        let mut out: Vec<Word> = last_letters(self.g, suffix)
            .iter()
            .map(|a| delete_last_copy(self.g, suffix, a).expect("last letter"))
            .filter(|v| v.iter().all(|&c| star.contains(c)))
            .collect();
        out.sort();
        out
    }
}

pub fn rips_edges_same_length(g: &DefiningGraph, ray: RaySpec, suffix: &[Letter]) -> Result<Vec<Word>, MachineError> {
    Ok(RipsGenerator::new(g, ray)?.same_length(suffix))
}

pub fn rips_edges_diff_length(
    g: &DefiningGraph,
    ray: RaySpec,
    suffix: &[Letter],
    k: i64,
) -> Result<Vec<Word>, MachineError> {
    Ok(RipsGenerator::new(g, ray)?.diff_length(suffix, k))
}

/// Options for [`generate_rips_graph_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct RipsOptions {
    /// Keep only the first `n` suffixes in (length, lexicographic) order.
    pub vertex_cap: Option<usize>,
}

pub fn generate_rips_graph(
    g: &DefiningGraph,
    ray: RaySpec,
    k: i64,
    max_suffix_len: usize,
) -> Result<HorosphereGraph, MachineError> {
    generate_rips_graph_with(g, ray, k, max_suffix_len, RipsOptions::default())
}

/// The 2-Rips graph on suffixes of length at most `max_suffix_len`; edges
/// leaving that set are dropped.
pub fn generate_rips_graph_with(
    g: &DefiningGraph,
    ray: RaySpec,
    k: i64,
    max_suffix_len: usize,
    opts: RipsOptions,
) -> Result<HorosphereGraph, MachineError> {
    let vertices = match opts.vertex_cap {
        Some(n) => enumerate_suffixes_capped(g, ray, max_suffix_len, n)?,
        None => enumerate_suffixes(g, ray, max_suffix_len)?,
    };
    let gen = RipsGenerator::new(g, ray)?;
    let index: HashMap<&[Letter], u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i as u32))
        .collect();
    let mut edges: Vec<(u32, u32)> = vertices
        .par_iter()
        .enumerate()
        .flat_map_iter(|(u, w)| {
            let u = u as u32;
            let mut local = gen.same_length(w);
            local.extend(gen.diff_length(w, k));
            local
                .into_iter()
                .filter_map(|v| index.get(v.as_slice()).copied())
                .map(move |v| (u.min(v), u.max(v)))
                .collect::<Vec<_>>()
        })
        .collect();
    edges.par_sort_unstable();
    edges.dedup();
    Ok(HorosphereGraph {
        kind: GraphKind::Rips2,
        ray,
        k,
        max_suffix_len,
        vertices,
        edges,
        slots: None,
    })
}
