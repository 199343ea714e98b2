use horoforge_core::{DefiningGraph, Letter};
use horoforge_fsm::{Fsm, StateId};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::DivergenceError;

pub const POWER_TOLERANCE: f64 = 1e-12;
pub const POWER_MAX_ITERATIONS: usize = 100_000;
pub const RADIUS_RELATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StateClass {
    Large,
    Prelarge,
    Small,
}

#[derive(Clone, Debug)]
pub struct StateClassification {
    /// Indexed by machine state; `None` for non-accepting states.
    pub class: Vec<Option<StateClass>>,
    pub scc: Vec<Option<usize>>,
    pub radius: Vec<f64>,
    pub max_radius: f64,
    /// Pairs of components whose radii sit close to the tolerance boundary.
    pub borderline: Vec<(usize, usize)>,
}

impl StateClassification {
    pub fn class_of(&self, s: StateId) -> Option<StateClass> {
        self.class[s as usize]
    }

    pub fn count(&self, c: StateClass) -> usize {
        self.class.iter().filter(|&&x| x == Some(c)).count()
    }
}

/// Perron root of a non-negative irreducible block, by power iteration on
/// `A + I` (primitive, so the iteration converges even for periodic blocks).
fn spectral_radius(block: &[Vec<f64>], id: usize) -> Result<f64, DivergenceError> {
    let n = block.len();
    if n == 1 {
        return Ok(block[0][0]);
    }
    let mut x = vec![1.0; n];
    let mut last = f64::NAN;
    for _ in 0..POWER_MAX_ITERATIONS {
        let mut y: Vec<f64> = x.clone();
        for (r, row) in block.iter().enumerate() {
            y[r] += row.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>();
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        let est = norm / x.iter().cloned().fold(0.0, f64::max);
        for v in &mut y {
            *v /= norm;
        }
        x = y;
        if (est - last).abs() <= POWER_TOLERANCE * est.max(1.0) {
            return Ok(est - 1.0);
        }
        last = est;
    }
    Err(DivergenceError::PowerIteration { scc: id })
}

/// Classifies the accepted states of a machine by the growth of their
/// strongly connected components.
pub fn classify_states<P>(m: &Fsm<P>) -> Result<StateClassification, DivergenceError> {
    let adj = m.adjacency_counts();
    let mut dg: DiGraph<StateId, u32> = DiGraph::new();
    let nodes: Vec<_> = adj.states.iter().map(|&s| dg.add_node(s)).collect();
    for (r, row) in adj.counts.iter().enumerate() {
        for (c, &cnt) in row.iter().enumerate() {
            if cnt > 0 {
                dg.add_edge(nodes[r], nodes[c], cnt);
            }
        }
    }
    let mut comps = tarjan_scc(&dg);
    for c in &mut comps {
        c.sort();
    }
    comps.sort();
    let mut comp_of = vec![0usize; adj.states.len()];
    for (id, c) in comps.iter().enumerate() {
        for n in c {
            comp_of[n.index()] = id;
        }
    }
    let mut radius = Vec::with_capacity(comps.len());
    for (id, c) in comps.iter().enumerate() {
        let block: Vec<Vec<f64>> = c
            .iter()
            .map(|r| c.iter().map(|cc| adj.counts[r.index()][cc.index()] as f64).collect())
            .collect();
        radius.push(spectral_radius(&block, id)?);
    }
    let max_radius = radius.iter().cloned().fold(0.0, f64::max);
    let tol = RADIUS_RELATIVE_TOLERANCE * max_radius.max(1.0);
    let large: Vec<bool> = radius.iter().map(|&r| (max_radius - r).abs() <= tol).collect();
    let mut borderline = Vec::new();
    let top = radius.iter().position(|&r| r == max_radius);
    for (id, &r) in radius.iter().enumerate() {
        let gap = (max_radius - r).abs();
        if gap > 0.0 && gap <= 1e3 * tol {
            borderline.push((top.unwrap_or(0), id));
        }
    }
    // A state is pre-large when some path leads into a large component.
    let mut reaches = large.clone();
    loop {
        let mut changed = false;
        for e in dg.raw_edges() {
            let (a, b) = (comp_of[e.source().index()], comp_of[e.target().index()]);
            if reaches[b] && !reaches[a] {
                reaches[a] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut class = vec![None; m.num_states()];
    let mut scc = vec![None; m.num_states()];
    for (row, &s) in adj.states.iter().enumerate() {
        let c = comp_of[row];
        scc[s as usize] = Some(c);
        class[s as usize] = Some(if large[c] {
            StateClass::Large
        } else if reaches[c] {
            StateClass::Prelarge
        } else {
            StateClass::Small
        });
    }
    Ok(StateClassification {
        class,
        scc,
        radius,
        max_radius,
        borderline,
    })
}

/// Whether every vertex has another vertex at distance at least three;
/// otherwise the first vertex that fails.
pub fn check_distance3_condition(g: &DefiningGraph) -> (bool, Option<Letter>) {
    for a in g.letters() {
        if !g.distances_from(a).iter().any(|&d| d >= 3) {
            return (false, Some(a));
        }
    }
    (true, None)
}
