use std::collections::VecDeque;

use horoforge_core::{word_distance, DefiningGraph};
use horoforge_rips::{GraphKind, HorosphereGraph};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed;
/// Largest number of pairs measured exhaustively.
pub const ALL_PAIRS_LIMIT: usize = 20_000;
pub const SAMPLE_SOURCES: usize = 100;
pub const SAMPLE_TARGETS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistortionRow {
    pub u: u32,
    pub v: u32,
    /// Cayley distance between the two points.
    pub d: usize,
    /// Graph distance, `None` across components.
    pub d_h: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMetrics {
    pub components: usize,
    /// Graph distance from the empty-suffix vertex.
    pub bfs_from_root: Vec<Option<usize>>,
    /// `|B(w0, r)|` for `r = 0, 1, ...` until the component is exhausted.
    pub growth: Vec<usize>,
    pub distortion: Vec<DistortionRow>,
}

pub fn bfs(adj: &[Vec<u32>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        let du = dist[u].unwrap();
        for &v in &adj[u] {
            if dist[v as usize].is_none() {
                dist[v as usize] = Some(du + 1);
                q.push_back(v as usize);
            }
        }
    }
    dist
}

pub fn component_count(adj: &[Vec<u32>]) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut count = 0;
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.push(v as usize);
                }
            }
        }
    }
    count
}

fn growth_sequence(dist: &[Option<usize>]) -> Vec<usize> {
    let max = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut per = vec![0usize; max + 1];
    for d in dist.iter().flatten() {
        per[*d] += 1;
    }
    per.iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Pairs to measure: every pair when there are few, otherwise a fixed-seed
/// sample of sources, each paired with a sample of targets.
fn distortion_pairs(n: usize, seed: u64) -> Vec<(usize, Vec<usize>)> {
    if n * n.saturating_sub(1) / 2 <= ALL_PAIRS_LIMIT {
        return (0..n).map(|u| (u, (u + 1..n).collect())).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sources = sample(&mut rng, n, SAMPLE_SOURCES.min(n)).into_vec();
    sources.sort_unstable();
    sources
        .into_iter()
        .map(|u| {
            let mut t = sample(&mut rng, n, SAMPLE_TARGETS.min(n)).into_vec();
            t.retain(|&v| v != u);
            t.sort_unstable();
            (u, t)
        })
        .collect()
}

pub fn graph_metrics(g: &DefiningGraph, h: &HorosphereGraph, seed: u64) -> GraphMetrics {
    let adj = h.adjacency();
    if adj.is_empty() {
        return GraphMetrics {
            components: 0,
            bfs_from_root: Vec::new(),
            growth: Vec::new(),
            distortion: Vec::new(),
        };
    }
    let root = h.vertices.iter().position(|w| w.is_empty()).unwrap_or(0);
    let bfs_from_root = bfs(&adj, root);
    let words: Vec<_> = (0..h.num_vertices()).map(|i| h.full_word(g, i)).collect();
    let mut distortion = Vec::new();
    for (u, targets) in distortion_pairs(h.num_vertices(), seed) {
        let dist = bfs(&adj, u);
        for v in targets {
            distortion.push(DistortionRow {
                u: u as u32,
                v: v as u32,
                d: word_distance(g, &words[u], &words[v]),
                d_h: dist[v],
            });
        }
    }
    GraphMetrics {
        components: component_count(&adj),
        growth: growth_sequence(&bfs_from_root),
        bfs_from_root,
        distortion,
    }
}

/// Factor `c` in the trivial bound `d ≤ c·d_H`.
pub fn edge_length_bound(g: &DefiningGraph, kind: GraphKind) -> usize {
    match kind {
        GraphKind::Rips2 => 2,
        GraphKind::Divergence => 2 * g.max_clique_size().max(2) - 2,
    }
}

/// Rows breaking `d ≤ c·d_H`.
pub fn distortion_violations(rows: &[DistortionRow], factor: usize) -> impl Iterator<Item = &DistortionRow> {
    rows.iter().filter(move |r| r.d_h.is_some_and(|dh| r.d > factor * dh))
}

/// For each even Cayley distance `2r` present, the smallest graph distance.
pub fn distortion_trend(rows: &[DistortionRow]) -> Vec<(usize, usize)> {
    let mut best: std::collections::BTreeMap<usize, usize> = Default::default();
    for r in rows {
        if let Some(dh) = r.d_h {
            if r.d % 2 == 0 {
                let e = best.entry(r.d).or_insert(dh);
                *e = (*e).min(dh);
            }
        }
    }
    best.into_iter().collect()
}
