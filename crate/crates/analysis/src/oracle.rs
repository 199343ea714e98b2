//! Brute-force ground truth on horospheres. Everything is computed from
//! group-element keys; the only borrowed piece of theory is the lex-state
//! update rule used to evolve successor states.

use std::collections::{BTreeSet, HashMap};

use horoforge_core::{DefiningGraph, Letter, LetterSet, RaySpec, Word};
use horoforge_machines::HorocyclicForm;

use crate::ball::for_each_sphere;
use crate::tits::{self, Key};
use crate::OracleError;

fn concat(a: &[Letter], b: &[Letter]) -> Word {
    a.iter().chain(b).copied().collect()
}

fn reversed(w: &[Letter]) -> Word {
    w.iter().rev().copied().collect()
}

/// `d(γ(N), w) − N`, checked for stability between two values of `N`.
pub fn busemann_oracle(g: &DefiningGraph, ray: RaySpec, w: &[Letter]) -> Result<i64, OracleError> {
    let at = |n: usize| tits::distance(g, &ray.point(n), w) as i64 - n as i64;
    let (b1, b2) = (at(w.len() + 2), at(w.len() + 4));
    if b1 != b2 {
        return Err(OracleError::NotStable(g.format_word(w)));
    }
    Ok(b1)
}

/// Distance from `w` to the bi-infinite line through the ray, together with
/// the nearest line point.
pub fn nearest_line_point(g: &DefiningGraph, ray: RaySpec, w: &[Letter]) -> (usize, Word) {
    let mut best = (w.len(), Vec::new());
    for len in 1..=2 * w.len() {
        for first in [ray.i, ray.j] {
            let x = ray.alternating(first, len);
            let d = tits::distance(g, &x, w);
            if d < best.0 {
                best = (d, x);
            }
        }
    }
    best
}

/// The suffix of `w`: shortlex form of `x⁻¹w` for the nearest line point `x`.
pub fn suffix_oracle(g: &DefiningGraph, ray: RaySpec, w: &[Letter]) -> Word {
    let (_, x) = nearest_line_point(g, ray, w);
    tits::shortlex(g, &concat(&reversed(&x), w))
}

/// A point of a horosphere found by brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoroPoint {
    /// Shortlex form of the group element.
    pub word: Word,
    pub key: Key,
    pub suffix: Word,
}

/// All points with Busemann value `k` and suffix length at most `max_suffix`.
///
/// Such a point is `x·y` with `x` on the line and `|y| ≤ max_suffix`, and
/// `|b(x)| ≤ |k| + max_suffix`.
pub fn horosphere_points(
    g: &DefiningGraph,
    ray: RaySpec,
    k: i64,
    max_suffix: usize,
    ceiling: usize,
) -> Result<Vec<HoroPoint>, OracleError> {
    let mut ys: Vec<Word> = Vec::new();
    for_each_sphere(g, max_suffix, ceiling, |_, s| {
        ys.extend(s.iter().map(|(w, _)| w.clone()))
    })?;
    let reach = k.unsigned_abs() as usize + max_suffix;
    let mut xs = vec![Vec::new()];
    for len in 1..=reach {
        xs.push(ray.alternating(ray.i, len));
        xs.push(ray.alternating(ray.j, len));
    }
    let mut seen: HashMap<Key, ()> = HashMap::new();
    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            let xy = concat(x, y);
            let key = tits::key_of(g, &xy);
            if seen.insert(key.clone(), ()).is_some() {
                continue;
            }
            let word = tits::shortlex(g, &xy);
            if busemann_oracle(g, ray, &word)? != k {
                continue;
            }
            let suffix = suffix_oracle(g, ray, &word);
            if suffix.len() <= max_suffix {
                out.push(HoroPoint { word, key, suffix });
            }
        }
    }
    out.sort_by(|a, b| (a.suffix.len(), &a.suffix).cmp(&(b.suffix.len(), &b.suffix)));
    Ok(out)
}

/// Pairs of suffixes whose points are at distance exactly two.
pub fn rips_edges_oracle(
    g: &DefiningGraph,
    ray: RaySpec,
    k: i64,
    max_suffix: usize,
    ceiling: usize,
) -> Result<BTreeSet<(Word, Word)>, OracleError> {
    let points = horosphere_points(g, ray, k, max_suffix, ceiling)?;
    let index: HashMap<&Key, usize> = points.iter().enumerate().map(|(i, p)| (&p.key, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for a in g.letters() {
            for b in g.letters() {
                if a == b {
                    continue;
                }
                let mut key = p.key.clone();
                tits::push(g, &mut key, a);
                tits::push(g, &mut key, b);
                if let Some(&j) = index.get(&key) {
                    if i < j {
                        edges.insert(ordered(&p.suffix, &points[j].suffix));
                    }
                }
            }
        }
    }
    Ok(edges)
}

/// Pairs of suffixes whose points are within distance `radius`.
pub fn krips_edges_oracle(
    g: &DefiningGraph,
    ray: RaySpec,
    k: i64,
    max_suffix: usize,
    radius: usize,
    ceiling: usize,
) -> Result<BTreeSet<(Word, Word)>, OracleError> {
    let points = horosphere_points(g, ray, k, max_suffix, ceiling)?;
    let mut edges = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if tits::distance(g, &p.word, &q.word) <= radius {
                edges.insert(ordered(&p.suffix, &q.suffix));
            }
        }
    }
    Ok(edges)
}

pub(crate) fn ordered(a: &[Letter], b: &[Letter]) -> (Word, Word) {
    let (a, b) = (a.to_vec(), b.to_vec());
    if (a.len(), &a) <= (b.len(), &b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Deep form of a point: the shortlex form of `(a_j a_i)^n · w`.
pub fn deep_word(g: &DefiningGraph, ray: RaySpec, w: &[Letter], n: usize) -> Word {
    tits::shortlex(g, &concat(&ray.alternating(ray.j, 2 * n), w))
}

/// A horocyclic segmentation read off a deep form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segmentation {
    pub form: HorocyclicForm,
    pub slots: [Word; 4],
}

impl Segmentation {
    pub fn word(&self) -> Word {
        self.slots.concat()
    }
}

fn segment_at(g: &DefiningGraph, ray: RaySpec, w: &[Letter], n: usize) -> Result<Segmentation, OracleError> {
    let b = busemann_oracle(g, ray, w)?;
    let s = nearest_line_point(g, ray, w).0 as i64;
    let deep = deep_word(g, ray, w, n);
    let skeleton = 2 * n as i64 + b - s;
    let bad = || OracleError::BadSegmentation(g.format_word(w));
    if skeleton < 3 || deep.len() as i64 != skeleton + s {
        return Err(bad());
    }
    let skeleton = skeleton as usize;
    let mut gaps: Vec<Word> = vec![Vec::new(); skeleton + 1];
    let mut seen = 0;
    for &a in &deep {
        if seen < skeleton && ray.letters().contains(a) {
            let expected = if seen % 2 == 0 { ray.j } else { ray.i };
            if a != expected {
                return Err(bad());
            }
            seen += 1;
        } else {
            gaps[seen].push(a);
        }
    }
    if gaps[2..skeleton - 1].iter().any(|gap| !gap.is_empty()) {
        return Err(bad());
    }
    let form = if skeleton % 2 == 1 {
        HorocyclicForm::F1234
    } else {
        HorocyclicForm::F1256
    };
    Ok(Segmentation {
        form,
        slots: [
            gaps[0].clone(),
            gaps[1].clone(),
            gaps[skeleton - 1].clone(),
            gaps[skeleton].clone(),
        ],
    })
}

/// Horocyclic segmentation of the point `w`, checked for stability in the
/// depth of the ray prefix.
pub fn horocyclic_oracle(g: &DefiningGraph, ray: RaySpec, w: &[Letter]) -> Result<Segmentation, OracleError> {
    let n = w.len() + 3;
    let a = segment_at(g, ray, w, n)?;
    if segment_at(g, ray, w, n + 1)? != a {
        return Err(OracleError::NotStable(g.format_word(w)));
    }
    Ok(a)
}

/// Letters that cannot follow a shortlex word.
pub fn lex_forbidden_oracle(g: &DefiningGraph, w: &[Letter]) -> LetterSet {
    let key = tits::key_of(g, w);
    g.letters()
        .filter(|&a| {
            if key[a as usize] < 0 {
                return true;
            }
            let mut wa = w.to_vec();
            wa.push(a);
            tits::shortlex(g, &wa) != wa
        })
        .collect()
}

/// The limiting lex state of `w`.
pub fn s_state_oracle(g: &DefiningGraph, ray: RaySpec, w: &[Letter]) -> LetterSet {
    lex_forbidden_oracle(g, &deep_word(g, ray, w, w.len() + 3))
}

fn predecessor_at(g: &DefiningGraph, ray: RaySpec, w: &[Letter], n: usize) -> Option<Word> {
    let mut deep = deep_word(g, ray, w, n);
    deep.pop()?;
    Some(tits::shortlex(g, &concat(&ray.alternating(ray.i, 2 * n), &deep)))
}

/// The predecessor `P(w)`: drop the last letter of the deep form and shift back.
pub fn predecessor_map(g: &DefiningGraph, ray: RaySpec, w: &[Letter]) -> Result<Word, OracleError> {
    let prefix = w.len() - nearest_line_point(g, ray, w).0;
    let n = prefix.div_ceil(2) + 2;
    let p = predecessor_at(g, ray, w, n);
    if p.is_none() || p != predecessor_at(g, ray, w, n + 2) {
        return Err(OracleError::NotStable(g.format_word(w)));
    }
    Ok(p.unwrap())
}

/// `P⁻¹(w)`: the shortlex forms of `w·a` for `a` outside the limiting lex state.
pub fn successor_set(g: &DefiningGraph, ray: RaySpec, w: &[Letter]) -> Vec<Word> {
    let forbidden = s_state_oracle(g, ray, w);
    g.letters()
        .filter(|&a| !forbidden.contains(a))
        .map(|a| {
            let mut wa = w.to_vec();
            wa.push(a);
            tits::shortlex(g, &wa)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closeness {
    CloseUpTo(usize),
    DivergedAt(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PairNode {
    sw: LetterSet,
    sv: LetterSet,
    delta: Word,
}

fn pair_successors(g: &DefiningGraph, node: &PairNode, bound: usize) -> Vec<PairNode> {
    let mut out = Vec::new();
    for a in g.letters().filter(|&a| !node.sw.contains(a)) {
        let sw = horoforge_core::word::shortlex_step(g, node.sw, a);
        for b in g.letters().filter(|&b| !node.sv.contains(b)) {
            let mut d = Vec::with_capacity(node.delta.len() + 2);
            d.push(a);
            d.extend_from_slice(&node.delta);
            d.push(b);
            let delta = tits::shortlex(g, &d);
            if delta.len() <= bound {
                out.push(PairNode {
                    sw,
                    sv: horoforge_core::word::shortlex_step(g, node.sv, b),
                    delta,
                });
            }
        }
    }
    out
}

fn start_node(g: &DefiningGraph, ray: RaySpec, w: &[Letter], v: &[Letter]) -> PairNode {
    PairNode {
        sw: s_state_oracle(g, ray, w),
        sv: s_state_oracle(g, ray, v),
        delta: tits::shortlex(g, &concat(&reversed(w), v)),
    }
}

/// Level-by-level comparison of the successor trees of `w` and `v`.
///
/// Level `m` holds the differences `x⁻¹ w⁻¹ v y` over successors `wx`, `vy`
/// of depth `m`; differences longer than `bound + 2` are pruned. The pair
/// diverges at the first level whose shortest difference exceeds `bound`.
pub fn close_successors_oracle(
    g: &DefiningGraph,
    ray: RaySpec,
    w: &[Letter],
    v: &[Letter],
    depth: usize,
    bound: usize,
    ceiling: usize,
) -> Result<Closeness, OracleError> {
    let mut level = BTreeSet::from([start_node(g, ray, w, v)]);
    for m in 0..=depth {
        let min = level.iter().map(|n| n.delta.len()).min().unwrap_or(usize::MAX);
        if min > bound {
            return Ok(Closeness::DivergedAt(m));
        }
        if m == depth {
            break;
        }
        let mut next = BTreeSet::new();
        for node in &level {
            next.extend(pair_successors(g, node, bound + 2));
            if next.len() > ceiling {
                return Err(OracleError::Ceiling { limit: ceiling });
            }
        }
        level = next;
    }
    Ok(Closeness::CloseUpTo(depth))
}

/// Whether `w` and `v` have successor rays staying within distance `bound`
/// forever: an infinite path in the finite graph of bounded differences.
pub fn close_successors_exact(
    g: &DefiningGraph,
    ray: RaySpec,
    w: &[Letter],
    v: &[Letter],
    bound: usize,
    ceiling: usize,
) -> Result<bool, OracleError> {
    let start = start_node(g, ray, w, v);
    if start.delta.len() > bound {
        return Ok(false);
    }
    let mut index: HashMap<PairNode, usize> = HashMap::new();
    let mut nodes = vec![start.clone()];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    index.insert(start, 0);
    let mut i = 0;
    while i < nodes.len() {
        let mut out = Vec::new();
        for n in pair_successors(g, &nodes[i], bound) {
            let id = *index.entry(n.clone()).or_insert_with(|| {
                nodes.push(n);
                nodes.len() - 1
            });
            out.push(id);
        }
        succ.push(out);
        if nodes.len() > ceiling {
            return Err(OracleError::Ceiling { limit: ceiling });
        }
        i += 1;
    }
    // Repeatedly discard nodes with no surviving successor.
    let mut alive = vec![true; nodes.len()];
    loop {
        let mut changed = false;
        for (u, out) in succ.iter().enumerate() {
            if alive[u] && !out.iter().any(|&t| alive[t]) {
                alive[u] = false;
                changed = true;
            }
        }
        if !changed {
            return Ok(alive[0]);
        }
    }
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
    fn busemann_basics() {
        let (g, ray) = c5();
        let w = |s: &str| g.parse_word(s).unwrap();
        assert_eq!(busemann_oracle(&g, ray, &[]).unwrap(), 0);
        assert_eq!(busemann_oracle(&g, ray, &w("a")).unwrap(), -1);
        assert_eq!(busemann_oracle(&g, ray, &w("c")).unwrap(), 1);
        assert_eq!(busemann_oracle(&g, ray, &w("ab")).unwrap(), 0);
        assert_eq!(suffix_oracle(&g, ray, &w("ab")), w("b"));
    }

    #[test]
    fn horosphere_zero_small() {
        let (g, ray) = c5();
        let pts = horosphere_points(&g, ray, 0, 1, 1000).unwrap();
        let sufs: Vec<String> = pts.iter().map(|p| g.format_word(&p.suffix)).collect();
        assert_eq!(sufs, vec!["", "b", "d", "e"]);
    }

    #[test]
    fn segmentation_of_identity() {
        let (g, ray) = c5();
        let s = horocyclic_oracle(&g, ray, &[]).unwrap();
        assert_eq!(s.form, HorocyclicForm::F1256);
        assert!(s.word().is_empty());
        let s = horocyclic_oracle(&g, ray, &[2]).unwrap();
        assert_eq!(s.form, HorocyclicForm::F1234);
    }

    #[test]
    fn closeness_of_identical_points() {
        let (g, ray) = c5();
        let b = g.parse_word("ab").unwrap();
        assert_eq!(
            close_successors_oracle(&g, ray, &b, &b, 4, 2, 100_000).unwrap(),
            Closeness::CloseUpTo(4)
        );
        assert!(close_successors_exact(&g, ray, &b, &b, 2, 100_000).unwrap());
    }
}
