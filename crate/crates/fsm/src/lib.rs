//! Deterministic finite-state machines over a small letter alphabet, built by
//! breadth-first exploration of a transition rule, plus the product and
//! concatenation constructions.
//!
//! Missing transitions go to an implicit reject sink that is never stored.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;

use horoforge_core::{Letter, LetterSet, Word};

pub type StateId = u32;

const NONE: StateId = StateId::MAX;

/// Default bound on the number of states any exploration may create.
pub const DEFAULT_STATE_CEILING: usize = 10_000_000;

/// Environment variable overriding [`DEFAULT_STATE_CEILING`].
pub const STATE_CEILING_ENV: &str = "HOROFORGE_STATE_CEILING";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FsmError {
    #[error("state ceiling of {limit} exceeded while building a machine")]
    StateCeiling { limit: usize },
    #[error("alphabet mismatch: {0} vs {1} letters")]
    AlphabetMismatch(usize, usize),
}

/// The state ceiling in effect, honouring the environment override.
pub fn state_ceiling() -> usize {
    std::env::var(STATE_CEILING_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STATE_CEILING)
}

#[derive(Clone, Debug)]
pub struct Fsm<P> {
    alphabet: usize,
    payloads: Vec<P>,
    table: Vec<StateId>,
    accepting: Vec<bool>,
    start: StateId,
}

/// Outcome of running a word: acceptance plus the final state, if the run
/// did not fall into the reject sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub accepted: bool,
    pub state: Option<StateId>,
}

/// Letter-count adjacency between accepted states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyCounts {
    /// Row/column `r` corresponds to state `states[r]`.
    pub states: Vec<StateId>,
    pub counts: Vec<Vec<u32>>,
}

/// Explores a transition rule breadth-first from `seed`.
///
/// `step` returns `None` for a transition into the reject sink. States whose
/// payloads compare equal are merged.
pub fn build_by_exploration<P, F, A>(alphabet: usize, seed: P, mut step: F, accepting: A) -> Result<Fsm<P>, FsmError>
where
    P: Clone + Eq + Hash,
    F: FnMut(&P, Letter) -> Option<P>,
    A: Fn(&P) -> bool,
{
    build_with_ceiling(alphabet, seed, &mut step, &accepting, state_ceiling())
}

pub fn build_with_ceiling<P, F, A>(
    alphabet: usize,
    seed: P,
    step: &mut F,
    accepting: &A,
    ceiling: usize,
) -> Result<Fsm<P>, FsmError>
where
    P: Clone + Eq + Hash,
    F: FnMut(&P, Letter) -> Option<P>,
    A: Fn(&P) -> bool,
{
    let mut index: HashMap<P, StateId> = HashMap::new();
    let mut payloads = vec![seed.clone()];
    index.insert(seed, 0);
    let mut table = Vec::new();
    let mut queue = VecDeque::from([0 as StateId]);
    while let Some(s) = queue.pop_front() {
        table.resize((s as usize + 1) * alphabet, NONE);
        for a in 0..alphabet {
            let Some(next) = step(&payloads[s as usize], a as Letter) else {
                continue;
            };
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if payloads.len() >= ceiling {
                        return Err(FsmError::StateCeiling { limit: ceiling });
                    }
                    let id = payloads.len() as StateId;
                    payloads.push(next.clone());
                    index.insert(next, id);
                    queue.push_back(id);
                    id
                }
            };
            table[s as usize * alphabet + a] = id;
        }
    }
    table.resize(payloads.len() * alphabet, NONE);
    let accepting = payloads.iter().map(accepting).collect();
    Ok(Fsm {
        alphabet,
        payloads,
        table,
        accepting,
        start: 0,
    })
}

impl<P> Fsm<P> {
    pub fn alphabet_size(&self) -> usize {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.payloads.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting[s as usize]
    }

    pub fn payload(&self, s: StateId) -> &P {
        &self.payloads[s as usize]
    }

    pub fn payloads(&self) -> &[P] {
        &self.payloads
    }

    #[inline]
    pub fn next(&self, s: StateId, a: Letter) -> Option<StateId> {
        let t = self.table[s as usize * self.alphabet + a as usize];
        (t != NONE).then_some(t)
    }

    /// Letters with a stored transition out of `s`.
    pub fn allowed(&self, s: StateId) -> LetterSet {
        let row = &self.table[s as usize * self.alphabet..(s as usize + 1) * self.alphabet];
        row.iter()
            .enumerate()
            .filter(|(_, &t)| t != NONE)
            .map(|(a, _)| a as Letter)
            .collect()
    }

    /// Outgoing transitions of `s` in letter order.
    pub fn transitions(&self, s: StateId) -> impl Iterator<Item = (Letter, StateId)> + '_ {
        let row = &self.table[s as usize * self.alphabet..(s as usize + 1) * self.alphabet];
        row.iter()
            .enumerate()
            .filter(|(_, &t)| t != NONE)
            .map(|(a, &t)| (a as Letter, t))
    }

    /// Runs `w` from state `from`.
    pub fn run_from(&self, from: StateId, w: &[Letter]) -> Option<StateId> {
        let mut s = from;
        for &a in w {
            s = self.next(s, a)?;
        }
        Some(s)
    }

    pub fn run(&self, w: &[Letter]) -> Option<StateId> {
        self.run_from(self.start, w)
    }

    pub fn accepts(&self, w: &[Letter]) -> Run {
        let state = self.run(w);
        Run {
            accepted: state.is_some_and(|s| self.is_accepting(s)),
            state,
        }
    }

    /// Minimal number of letters from each state to an accepting state.
    pub fn distance_to_acceptance(&self) -> Vec<usize> {
        let n = self.num_states();
        let mut reverse: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for s in 0..n as StateId {
            for (_, t) in self.transitions(s) {
                reverse[t as usize].push(s);
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for (s, d) in dist.iter_mut().enumerate() {
            if self.accepting[s] {
                *d = 0;
                queue.push_back(s);
            }
        }
        while let Some(t) = queue.pop_front() {
            for &s in &reverse[t] {
                if dist[s as usize] == usize::MAX {
                    dist[s as usize] = dist[t] + 1;
                    queue.push_back(s as usize);
                }
            }
        }
        dist
    }

    /// Calls `f` on every accepted word of length at most `max_len`, depth
    /// first, in lexicographic order by letter index.
    pub fn for_each_word<F: FnMut(&[Letter], StateId)>(&self, max_len: usize, mut f: F) {
        let dist = self.distance_to_acceptance();
        if dist[self.start as usize] > max_len {
            return;
        }
        let mut word = Vec::with_capacity(max_len);
        self.dfs(self.start, max_len, &dist, &mut word, &mut f);
    }

    fn dfs<F: FnMut(&[Letter], StateId)>(
        &self,
        s: StateId,
        max_len: usize,
        dist: &[usize],
        word: &mut Word,
        f: &mut F,
    ) {
        if self.accepting[s as usize] {
            f(word, s);
        }
        if word.len() == max_len {
            return;
        }
        for (a, t) in self.transitions(s) {
            if dist[t as usize] != usize::MAX && word.len() + 1 + dist[t as usize] <= max_len {
                word.push(a);
                self.dfs(t, max_len, dist, word, f);
                word.pop();
            }
        }
    }

    /// All accepted words of length at most `max_len`, in lexicographic order.
    pub fn enumerate_language(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        self.for_each_word(max_len, |w, _| out.push(w.to_vec()));
        out
    }

    /// Number of accepted words of each length `0..=max_len`.
    pub fn count_by_length(&self, max_len: usize) -> Vec<u128> {
        let mut cur = vec![0u128; self.num_states()];
        cur[self.start as usize] = 1;
        let mut out = Vec::with_capacity(max_len + 1);
        for len in 0..=max_len {
            out.push(
                cur.iter()
                    .enumerate()
                    .filter(|(s, _)| self.accepting[*s])
                    .map(|(_, &c)| c)
                    .sum(),
            );
            if len == max_len {
                break;
            }
            let mut next = vec![0u128; self.num_states()];
            for (s, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (_, t) in self.transitions(s as StateId) {
                    next[t as usize] += c;
                }
            }
            cur = next;
        }
        out
    }

    /// Letter counts between accepted states.
    pub fn adjacency_counts(&self) -> AdjacencyCounts {
        let states: Vec<StateId> = (0..self.num_states() as StateId)
            .filter(|&s| self.is_accepting(s))
            .collect();
        let mut row_of = vec![usize::MAX; self.num_states()];
        for (r, &s) in states.iter().enumerate() {
            row_of[s as usize] = r;
        }
        let mut counts = vec![vec![0u32; states.len()]; states.len()];
        for (r, &s) in states.iter().enumerate() {
            for (_, t) in self.transitions(s) {
                let c = row_of[t as usize];
                if c != usize::MAX {
                    counts[r][c] += 1;
                }
            }
        }
        AdjacencyCounts { states, counts }
    }

    /// True when every stored state is reachable from the start.
    pub fn is_accessible(&self) -> bool {
        self.reachable().iter().all(|&r| r)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.start as usize] = true;
        let mut stack = vec![self.start];
        while let Some(s) = stack.pop() {
            for (_, t) in self.transitions(s) {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn map_payload<Q, F: FnMut(P) -> Q>(self, f: F) -> Fsm<Q> {
        Fsm {
            alphabet: self.alphabet,
            payloads: self.payloads.into_iter().map(f).collect(),
            table: self.table,
            accepting: self.accepting,
            start: self.start,
        }
    }

    /// Text dump: one block per state listing payload and transitions.
    pub fn dump<L, D>(&self, letter_name: L, describe: D) -> String
    where
        L: Fn(Letter) -> String,
        D: Fn(&P) -> String,
    {
        let mut out = String::new();
        let accepting = self.accepting.iter().filter(|&&a| a).count();
        let _ = writeln!(
            out,
            "states {} accepting {} alphabet {} start {}",
            self.num_states(),
            accepting,
            self.alphabet,
            self.start
        );
        for s in 0..self.num_states() as StateId {
            let flag = if self.is_accepting(s) { "accept" } else { "reject" };
            let _ = writeln!(out, "state {s} {flag} {}", describe(self.payload(s)));
            for (a, t) in self.transitions(s) {
                let _ = writeln!(out, "  {} -> {t}", letter_name(a));
            }
        }
        out
    }
}

impl<P: Clone> Fsm<P> {
    /// Drops transitions labelled outside `keep` and prunes unreachable states.
    pub fn restrict_alphabet(&self, keep: LetterSet) -> Fsm<P> {
        let mut m = self.clone();
        for s in 0..m.num_states() {
            for a in 0..m.alphabet {
                if !keep.contains(a as Letter) {
                    m.table[s * m.alphabet + a] = NONE;
                }
            }
        }
        m.prune()
    }

    /// Keeps only states reachable from the start, renumbered in BFS order.
    fn prune(self) -> Fsm<P> {
        let mut new_id = vec![NONE; self.num_states()];
        let mut order = vec![self.start];
        new_id[self.start as usize] = 0;
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for (_, t) in self.transitions(s) {
                if new_id[t as usize] == NONE {
                    new_id[t as usize] = order.len() as StateId;
                    order.push(t);
                }
            }
        }
        let alphabet = self.alphabet;
        let mut table = vec![NONE; order.len() * alphabet];
        for (ns, &s) in order.iter().enumerate() {
            for (a, t) in self.transitions(s) {
                table[ns * alphabet + a as usize] = new_id[t as usize];
            }
        }
        Fsm {
            alphabet,
            payloads: order.iter().map(|&s| self.payloads[s as usize].clone()).collect(),
            accepting: order.iter().map(|&s| self.accepting[s as usize]).collect(),
            table,
            start: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineMode {
    Intersection,
    Union,
    Concatenation,
}

/// Payload of a combined machine, carrying the factor payloads.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Combined<P1, P2> {
    /// Product state; `None` stands for the factor's reject sink.
    Pair(Option<P1>, Option<P2>),
    /// Concatenation state: the left factor's state and the set of right
    /// factor states currently active, in state-id order.
    Concat(Option<P1>, Vec<P2>),
}

/// Combines two machines over the same alphabet.
pub fn combine<P1, P2>(m1: &Fsm<P1>, m2: &Fsm<P2>, mode: CombineMode) -> Result<Fsm<Combined<P1, P2>>, FsmError>
where
    P1: Clone,
    P2: Clone,
{
    if m1.alphabet != m2.alphabet {
        return Err(FsmError::AlphabetMismatch(m1.alphabet, m2.alphabet));
    }
    let alphabet = m1.alphabet;
    let ceiling = state_ceiling();
    let ids = match mode {
        CombineMode::Intersection | CombineMode::Union => {
            let union = mode == CombineMode::Union;
            let seed = (Some(m1.start), Some(m2.start));
            let mut step = |&(s1, s2): &(Option<StateId>, Option<StateId>), a: Letter| {
                let t1 = s1.and_then(|s| m1.next(s, a));
                let t2 = s2.and_then(|s| m2.next(s, a));
                let dead = if union {
                    t1.is_none() && t2.is_none()
                } else {
                    t1.is_none() || t2.is_none()
                };
                (!dead).then_some((t1, t2))
            };
            let accept = |&(s1, s2): &(Option<StateId>, Option<StateId>)| {
                let a1 = s1.is_some_and(|s| m1.is_accepting(s));
                let a2 = s2.is_some_and(|s| m2.is_accepting(s));
                if union {
                    a1 || a2
                } else {
                    a1 && a2
                }
            };
            let m = build_with_ceiling(alphabet, seed, &mut step, &accept, ceiling)?;
            m.map_payload(|(s1, s2)| {
                Combined::Pair(s1.map(|s| m1.payload(s).clone()), s2.map(|s| m2.payload(s).clone()))
            })
        }
        CombineMode::Concatenation => {
            let with_start = |s1: Option<StateId>, mut set: Vec<StateId>| {
                if s1.is_some_and(|s| m1.is_accepting(s)) && !set.contains(&m2.start) {
                    set.push(m2.start);
                }
                set.sort_unstable();
                set
            };
            let seed = (Some(m1.start), with_start(Some(m1.start), Vec::new()));
            let mut step = |(s1, set): &(Option<StateId>, Vec<StateId>), a: Letter| {
                let t1 = s1.and_then(|s| m1.next(s, a));
                let mut next: Vec<StateId> = set.iter().filter_map(|&s| m2.next(s, a)).collect();
                next.dedup();
                let next = with_start(t1, next);
                let mut next = next;
                next.dedup();
                (t1.is_some() || !next.is_empty()).then_some((t1, next))
            };
            let accept = |(_, set): &(Option<StateId>, Vec<StateId>)| set.iter().any(|&s| m2.is_accepting(s));
            let m = build_with_ceiling(alphabet, seed, &mut step, &accept, ceiling)?;
            m.map_payload(|(s1, set)| {
                Combined::Concat(
                    s1.map(|s| m1.payload(s).clone()),
                    set.iter().map(|&s| m2.payload(s).clone()).collect(),
                )
            })
        }
    };
    Ok(ids)
}

/// The machine accepting every word.
pub fn universal(alphabet: usize) -> Fsm<()> {
    build_with_ceiling(alphabet, (), &mut |_, _| Some(()), &|_| true, 1).expect("one state")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parity(alphabet: usize, odd: bool) -> Fsm<bool> {
        build_by_exploration(alphabet, false, |&p, _| Some(!p), move |&p| p == odd).unwrap()
    }

    #[test]
    fn empty_alphabet_has_one_state() {
        let m = universal(0);
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.enumerate_language(3), vec![Vec::<Letter>::new()]);
    }

    #[test]
    fn odd_and_even_are_disjoint() {
        let m = combine(&parity(3, true), &parity(3, false), CombineMode::Intersection).unwrap();
        assert!(m.enumerate_language(6).is_empty());
        let u = combine(&parity(3, true), &parity(3, false), CombineMode::Union).unwrap();
        assert_eq!(u.count_by_length(3), vec![1, 3, 9, 27]);
    }

    #[test]
    fn parity_adjacency() {
        let m = parity(4, true);
        let adj = m.adjacency_counts();
        assert_eq!(adj.counts, vec![vec![0]]);
        let all = combine(&parity(4, true), &universal(4), CombineMode::Union).unwrap();
        assert_eq!(all.adjacency_counts().counts, vec![vec![0, 4], vec![4, 0]]);
    }

    #[test]
    fn restricting_prunes() {
        let m = parity(3, false).restrict_alphabet(LetterSet::EMPTY);
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.enumerate_language(4), vec![Vec::<Letter>::new()]);
    }

    #[test]
    fn ceiling_is_enforced() {
        let mut step = |&n: &u32, _: Letter| Some(n + 1);
        let r = build_with_ceiling(1, 0u32, &mut step, &|_| true, 10);
        assert_eq!(r.unwrap_err(), FsmError::StateCeiling { limit: 10 });
    }
}
