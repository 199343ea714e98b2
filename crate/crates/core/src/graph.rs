//! The defining graph of a right-angled Coxeter group and the checks that
//! make the group hyperbolic with a one-ended, well-behaved boundary.

use std::collections::HashSet;
use std::fmt;

use crate::letters::{Letter, LetterSet, MAX_LETTERS};
use crate::CoreError;

/// A finite simple graph whose vertices are the generators.
///
/// Vertex order is the letter order: letter `0` precedes letter `1`, and so on.
#[derive(Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    link: Vec<LetterSet>,
    star: Vec<LetterSet>,
    star_lt: Vec<LetterSet>,
    star_gt: Vec<LetterSet>,
    max_clique: usize,
}

impl DefiningGraph {
    /// Builds a graph from vertex names and edges given as index pairs.
    pub fn new(names: Vec<String>, edges: &[(Letter, Letter)]) -> Result<Self, CoreError> {
        let n = names.len();
        if n > MAX_LETTERS {
            return Err(CoreError::TooManyLetters(n));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(CoreError::DuplicateName(name.clone()));
            }
        }
        let mut link = vec![LetterSet::EMPTY; n];
        for &(a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(CoreError::LetterOutOfRange(a.max(b), n));
            }
            if a == b {
                return Err(CoreError::SelfLoop(names[a as usize].clone()));
            }
            link[a as usize].insert(b);
            link[b as usize].insert(a);
        }
        let star: Vec<LetterSet> = (0..n).map(|a| link[a].with(a as Letter)).collect();
        let star_lt = (0..n).map(|a| star[a] & LetterSet::full(a)).collect();
        let star_gt = (0..n).map(|a| star[a] - LetterSet::full(a + 1)).collect();
        let mut g = DefiningGraph {
            names,
            link,
            star,
            star_lt,
            star_gt,
            max_clique: 0,
        };
        g.max_clique = g.cliques().iter().map(|c| c.len()).max().unwrap_or(0);
        Ok(g)
    }

    /// Convenience constructor naming vertices `a`, `b`, `c`, ... in order.
    pub fn from_edges(n: usize, edges: &[(Letter, Letter)]) -> Result<Self, CoreError> {
        let names = (0..n).map(default_name).collect();
        DefiningGraph::new(names, edges)
    }

    /// The cycle graph on `n` vertices, `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(Letter, Letter)> = (0..n).map(|i| (i as Letter, ((i + 1) % n) as Letter)).collect();
        DefiningGraph::from_edges(n, &edges).expect("cycle graph is well formed")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a as usize]
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.names.len() as Letter
    }

    pub fn alphabet(&self) -> LetterSet {
        LetterSet::full(self.len())
    }

    #[inline]
    pub fn adjacent(&self, a: Letter, b: Letter) -> bool {
        self.link[a as usize].contains(b)
    }

    /// True when `a` and `b` commute, which includes `a == b`.
    #[inline]
    pub fn commute(&self, a: Letter, b: Letter) -> bool {
        self.star[a as usize].contains(b)
    }

    #[inline]
    pub fn link(&self, a: Letter) -> LetterSet {
        self.link[a as usize]
    }

    #[inline]
    pub fn star(&self, a: Letter) -> LetterSet {
        self.star[a as usize]
    }

    /// Letters of `Star(a)` strictly before `a`.
    #[inline]
    pub fn star_lt(&self, a: Letter) -> LetterSet {
        self.star_lt[a as usize]
    }

    /// Letters of `Star(a)` strictly after `a`.
    #[inline]
    pub fn star_gt(&self, a: Letter) -> LetterSet {
        self.star_gt[a as usize]
    }

    #[inline]
    pub fn star_le(&self, a: Letter) -> LetterSet {
        self.star_lt[a as usize].with(a)
    }

    /// Letters commuting with every letter of `s`.
    pub fn common_star(&self, s: LetterSet) -> LetterSet {
        s.iter().fold(self.alphabet(), |acc, a| acc & self.star(a))
    }

    pub fn is_clique(&self, s: LetterSet) -> bool {
        s.iter().all(|a| s.without(a).is_subset(self.link(a)))
    }

    pub fn edges(&self) -> Vec<(Letter, Letter)> {
        let mut out = Vec::new();
        for a in self.letters() {
            for b in self.link(a).iter().filter(|&b| b > a) {
                out.push((a, b));
            }
        }
        out
    }

    /// Size of the largest clique.
    pub fn max_clique_size(&self) -> usize {
        self.max_clique
    }

    /// Every clique, the empty one included.
    pub fn cliques(&self) -> Vec<LetterSet> {
        fn extend(g: &DefiningGraph, current: LetterSet, candidates: LetterSet, out: &mut Vec<LetterSet>) {
            out.push(current);
            for a in candidates.iter() {
                let rest = (candidates - LetterSet::full(a as usize + 1)) & g.link(a);
                extend(g, current.with(a), rest, out);
            }
        }
        let mut out = Vec::new();
        extend(self, LetterSet::EMPTY, self.alphabet(), &mut out);
        out
    }

    /// Connected components of the subgraph induced on `within`.
    pub fn components(&self, within: LetterSet) -> Vec<LetterSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(seed) = left.min() {
            let mut comp = LetterSet::singleton(seed);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = LetterSet::EMPTY;
                for a in frontier.iter() {
                    next |= self.link(a) & within;
                }
                frontier = next - comp;
                comp |= next;
            }
            left = left - comp;
            out.push(comp);
        }
        out
    }

    /// Graph distances from `a` (unreachable vertices get `usize::MAX`).
    pub fn distances_from(&self, a: Letter) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[a as usize] = 0;
        let mut frontier = LetterSet::singleton(a);
        let mut seen = frontier;
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = LetterSet::EMPTY;
            for b in frontier.iter() {
                next |= self.link(b);
            }
            frontier = next - seen;
            seen |= frontier;
            for b in frontier.iter() {
                dist[b as usize] = d;
            }
        }
        dist
    }

    /// Renders a word using vertex names.
    ///
    /// Names are concatenated when all of them are single characters and
    /// separated by `.` otherwise.
    pub fn format_word(&self, w: &[Letter]) -> String {
        if self.names.iter().all(|n| n.chars().count() == 1) {
            w.iter().map(|&a| self.name(a)).collect()
        } else {
            w.iter().map(|&a| self.name(a)).collect::<Vec<_>>().join(".")
        }
    }

    /// Inverse of [`format_word`](Self::format_word).
    pub fn parse_word(&self, s: &str) -> Result<Vec<Letter>, CoreError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let tokens: Vec<String> = if single && !s.contains('.') {
            s.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
        } else {
            s.split(['.', ' '])
                .filter(|t| !t.is_empty())
                .map(String::from)
                .collect()
        };
        tokens
            .iter()
            .map(|t| self.letter(t).ok_or_else(|| CoreError::UnknownLetter(t.clone())))
            .collect()
    }
}

fn default_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("v{i}")
    }
}

impl fmt::Debug for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|&(a, b)| format!("{}-{}", self.name(a), self.name(b)))
            .collect();
        f.debug_struct("DefiningGraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

/// One of the standing assumptions checked by [`validate_defining_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assumption {
    NoInducedSquare,
    NotComplete,
    Connected,
    NoSeparatingClique,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Assumption::NoInducedSquare => "no induced square",
            Assumption::NotComplete => "not complete",
            Assumption::Connected => "connected",
            Assumption::NoSeparatingClique => "no separating clique",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An induced 4-cycle, listed in cyclic order.
    InducedSquare([Letter; 4]),
    /// The graph is complete; there is nothing more to say.
    Complete,
    /// Two vertices in different components.
    Disconnected(Letter, Letter),
    /// A clique whose removal leaves `a` and `b` in different components.
    SeparatingClique { clique: LetterSet, a: Letter, b: Letter },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub assumption: Assumption,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, a: Assumption) -> &CheckResult {
        self.checks
            .iter()
            .find(|c| c.assumption == a)
            .expect("every assumption is checked")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Multi-line human readable summary using vertex names.
    pub fn describe(&self, g: &DefiningGraph) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("{status}  {}", c.assumption));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  ({})", describe_witness(g, w)));
            }
            out.push('\n');
        }
        out
    }
}

fn describe_witness(g: &DefiningGraph, w: &Witness) -> String {
    match w {
        Witness::InducedSquare(sq) => format!(
            "induced square {}",
            sq.iter().map(|&a| g.name(a)).collect::<Vec<_>>().join("-")
        ),
        Witness::Complete => "graph is complete".to_string(),
        Witness::Disconnected(a, b) => {
            format!("{} and {} lie in different components", g.name(*a), g.name(*b))
        }
        Witness::SeparatingClique { clique, a, b } => format!(
            "removing {{{}}} separates {} from {}",
            clique.iter().map(|x| g.name(x)).collect::<Vec<_>>().join(","),
            g.name(*a),
            g.name(*b)
        ),
    }
}

/// Checks the standing assumptions on a defining graph.
///
/// Every clique, including the empty one, is tried as a separator.
pub fn validate_defining_graph(g: &DefiningGraph) -> ValidationReport {
    let square = find_induced_square(g);
    let complete = g.letters().all(|a| g.star(a) == g.alphabet());
    let comps = g.components(g.alphabet());
    let disconnected = if comps.len() > 1 {
        Some(Witness::Disconnected(comps[0].min().unwrap(), comps[1].min().unwrap()))
    } else {
        None
    };
    let mut separating = None;
    for c in g.cliques() {
        let rest = g.alphabet() - c;
        if rest.is_empty() {
            continue;
        }
        let comps = g.components(rest);
        if comps.len() > 1 {
            separating = Some(Witness::SeparatingClique {
                clique: c,
                a: comps[0].min().unwrap(),
                b: comps[1].min().unwrap(),
            });
            break;
        }
    }
    let checks = vec![
        CheckResult {
            assumption: Assumption::NoInducedSquare,
            passed: square.is_none(),
            witness: square.map(Witness::InducedSquare),
        },
        CheckResult {
            assumption: Assumption::NotComplete,
            passed: !complete,
            witness: complete.then_some(Witness::Complete),
        },
        CheckResult {
            assumption: Assumption::Connected,
            passed: disconnected.is_none(),
            witness: disconnected,
        },
        CheckResult {
            assumption: Assumption::NoSeparatingClique,
            passed: separating.is_none(),
            witness: separating,
        },
    ];
    ValidationReport { checks }
}

fn find_induced_square(g: &DefiningGraph) -> Option<[Letter; 4]> {
    for a in g.letters() {
        for c in g.letters().filter(|&c| c > a && !g.adjacent(a, c)) {
            let common = g.link(a) & g.link(c);
            for b in common.iter() {
                if let Some(d) = (common - g.star(b)).iter().next() {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stars_are_ordered() {
        let g = DefiningGraph::cycle(5);
        assert_eq!(g.star(1), LetterSet::from_letters([0, 1, 2]));
        assert_eq!(g.star_lt(1), LetterSet::from_letters([0]));
        assert_eq!(g.star_gt(1), LetterSet::from_letters([2]));
        assert_eq!(g.star_lt(0), LetterSet::EMPTY);
        assert_eq!(g.star_gt(0), LetterSet::from_letters([1, 4]));
    }

    #[test]
    fn cliques_include_empty() {
        let g = DefiningGraph::cycle(5);
        let cl = g.cliques();
        // empty + 5 vertices + 5 edges
        assert_eq!(cl.len(), 11);
        assert!(cl.contains(&LetterSet::EMPTY));
    }

    #[test]
    fn word_formatting_round_trips() {
        let g = DefiningGraph::cycle(5);
        let w = g.parse_word("dab").unwrap();
        assert_eq!(w, vec![3, 0, 1]);
        assert_eq!(g.format_word(&w), "dab");
        assert!(g.parse_word("dxb").is_err());
    }
}
