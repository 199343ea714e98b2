//! Divergence graphs: which points of a horosphere have successor rays that
//! stay a bounded distance apart.
//!
//! Vertices are horocyclic suffixes whose limiting lex state is large or
//! pre-large. A pair is an edge when the cancellation machine leaves a clique
//! `K` of uncancelable letters and the lex states still allow a pair of
//! non-adjacent letters commuting with `K`.

use std::collections::HashMap;

use horoforge_core::{DefiningGraph, Letter, LetterSet, RaySpec};
use horoforge_fsm::FsmError;
use horoforge_machines::{build_horocyclic_machines, build_shortlex_machine, MachineError};
use horoforge_rips::{GraphKind, HorosphereGraph};
use rayon::prelude::*;

pub mod cancel;
pub mod classify;
pub mod edges;
pub mod horocyclic;

pub use cancel::{run_cancellation, Cancellation, CancellationMachine, CancellationState, Side};
pub use classify::{check_distance3_condition, classify_states, StateClass, StateClassification};
pub use edges::{
    close_successors_decision, divergence_edges_diff_length, divergence_edges_same_length,
    maximal_cancellation_successor, run_cancellation_diff_length, run_cancellation_same_length, DivergenceContext,
};
pub use horocyclic::{
    deep_form, enumerate_horocyclic_suffixes, horocyclic_delete, horocyclic_from_word, horocyclic_insert, point_word,
    s_state, HorocyclicSuffix,
};
pub use horoforge_machines::HorocyclicForm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivergenceError {
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Fsm(#[from] FsmError),
    #[error("`{0}` is not in horocyclic form")]
    NotHorocyclic(String),
    #[error("letter {0} may not be appended here")]
    Forbidden(Letter),
    #[error("letter {0} is not a last letter")]
    NotALastLetter(Letter),
    #[error("cancellation inputs have mismatched lengths or forms")]
    Mismatch,
    #[error("power iteration did not converge on component {scc}")]
    PowerIteration { scc: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DivergenceOptions {
    /// Keep vertices whose lex state is small instead of dropping them.
    pub allow_small_states: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivergenceReport {
    pub small_states: usize,
    pub dropped_vertices: usize,
}

/// The divergence graph on horocyclic suffixes of length at most `max_suffix_len`.
pub fn generate_divergence_graph(
    g: &DefiningGraph,
    ray: RaySpec,
    k: i64,
    max_suffix_len: usize,
    opts: DivergenceOptions,
) -> Result<(HorosphereGraph, DivergenceReport), DivergenceError> {
    let lex = build_shortlex_machine(g)?;
    let classes = classify_states(&lex)?;
    for (a, b) in &classes.borderline {
        log::warn!("components {a} and {b} have nearly equal growth");
    }
    let small = classes.count(StateClass::Small);
    if small > 0 {
        log::warn!("shortlex machine has {small} small states");
    }
    let state_of: HashMap<LetterSet, u32> = lex.payloads().iter().enumerate().map(|(s, &p)| (p, s as u32)).collect();
    let machines = build_horocyclic_machines(g, ray)?;
    let all = enumerate_horocyclic_suffixes(g, ray, &machines, k, max_suffix_len)?;
    let mut vertices = Vec::with_capacity(all.len());
    for h in all {
        let s = s_state(g, ray, &h)?;
        let class = state_of.get(&s).and_then(|&id| classes.class_of(id));
        if opts.allow_small_states || matches!(class, Some(StateClass::Large | StateClass::Prelarge)) {
            vertices.push(h);
        }
    }
    let report = DivergenceReport {
        small_states: small,
        dropped_vertices: machines.for_horosphere(k).enumerate_language(max_suffix_len).len() - vertices.len(),
    };
    let ctx = DivergenceContext::new(g, ray, k, &vertices)?;
    let index: HashMap<&[Letter], u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, h)| (h.word.as_slice(), i as u32))
        .collect();
    let per_vertex: Vec<Result<Vec<(u32, u32)>, DivergenceError>> = vertices
        .par_iter()
        .enumerate()
        .map_init(CancellationMachine::new, |m, (u, h)| {
            let u = u as u32;
            Ok(ctx
                .neighbours(m, h, &index)?
                .into_iter()
                .map(|v| (u.min(v), u.max(v)))
                .collect())
        })
        .collect();
    let mut edges = Vec::new();
    for r in per_vertex {
        edges.extend(r?);
    }
    edges.sort_unstable();
    edges.dedup();
    let slots = Some(vertices.iter().map(|h| h.vertex_slots()).collect());
    Ok((
        HorosphereGraph {
            kind: GraphKind::Divergence,
            ray,
            k,
            max_suffix_len,
            vertices: vertices.into_iter().map(|h| h.word).collect(),
            edges,
            slots,
        },
        report,
    ))
}
