use std::collections::HashMap;

use horoforge_core::{DefiningGraph, Letter, RaySpec, Word};
use horoforge_machines::HorocyclicForm;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Rips2,
    Divergence,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Rips2 => "rips2",
            GraphKind::Divergence => "divergence",
        }
    }
}

/// Horocyclic segmentation of a divergence-graph vertex: the form and the
/// three cut positions between its four slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexSlots {
    pub form: HorocyclicForm,
    pub cuts: [usize; 3],
}

impl VertexSlots {
    pub fn slot<'w>(&self, w: &'w [Letter], t: usize) -> &'w [Letter] {
        let bounds = [0, self.cuts[0], self.cuts[1], self.cuts[2], w.len()];
        &w[bounds[t]..bounds[t + 1]]
    }
}

/// A graph on the points of one horosphere, labelled by suffix.
///
/// Vertices are sorted by (length, word) and edges are sorted pairs `(u, v)`
/// with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorosphereGraph {
    pub kind: GraphKind,
    pub ray: RaySpec,
    pub k: i64,
    pub max_suffix_len: usize,
    pub vertices: Vec<Word>,
    pub edges: Vec<(u32, u32)>,
    pub slots: Option<Vec<VertexSlots>>,
}

impl HorosphereGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn index(&self) -> HashMap<&[Letter], u32> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_slice(), i as u32))
            .collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    /// Edges as pairs of suffix words.
    pub fn edge_words(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.edges
            .iter()
            .map(|&(u, v)| (&self.vertices[u as usize], &self.vertices[v as usize]))
    }

    /// The shortlex word of the point labelled by vertex `idx`.
    pub fn full_word(&self, g: &DefiningGraph, idx: usize) -> Word {
        horoforge_core::normalize(g, &horoforge_core::assemble_word(self.ray, &self.vertices[idx], self.k))
    }

    pub fn label(&self, g: &DefiningGraph, idx: usize) -> String {
        let w = &self.vertices[idx];
        if w.is_empty() {
            "ε".to_string()
        } else {
            g.format_word(w)
        }
    }
}
