//! The cancellation machine `M_K`.
//!
//! Two horocyclic suffixes are read in parallel, one letter pair at a time,
//! each letter tagged with its slot. The state keeps the still-cancelable
//! letters of one word (the adder) per slot, the clique `K` of letters that
//! can never cancel, which word currently adds, and the slot cursors.

use std::collections::HashMap;

use horoforge_core::{DefiningGraph, Letter, LetterSet, Word};

/// Which of the two words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    W,
    V,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::W => Side::V,
            Side::V => Side::W,
        }
    }

    fn idx(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CancellationState {
    pub u: [Word; 4],
    pub k: LetterSet,
    pub b: Side,
    /// Slot cursors of `W` and `V`, in `0..4`.
    pub n: [u8; 2],
}

impl Default for CancellationState {
    fn default() -> Self {
        CancellationState {
            u: Default::default(),
            k: LetterSet::EMPTY,
            b: Side::W,
            n: [0, 0],
        }
    }
}

/// Outcome of a full run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cancellation {
    /// Two non-commuting letters that can never cancel: no close successors.
    UncancelablePair,
    /// The uncancelable clique and the letters of `owner` still to be
    /// cancelled by appending them to the other word.
    Clique {
        k: LetterSet,
        cancelable: Word,
        owner: Side,
    },
}

/// A letter together with its slot in `0..4`.
pub type Tagged = (Letter, u8);

/// Geodesic first letters of a geodesic word, with the position of the copy
/// that can be moved to the front.
fn first_letters(g: &DefiningGraph, u: &[Letter]) -> Vec<(Letter, usize)> {
    let mut seen = LetterSet::EMPTY;
    let mut out = Vec::new();
    for (p, &a) in u.iter().enumerate() {
        if !seen.contains(a) && seen.is_subset(g.star(a)) {
            out.push((a, p));
        }
        seen.insert(a);
    }
    out
}

fn letters(u: &[Letter]) -> LetterSet {
    u.iter().copied().collect()
}

fn commutes_with(g: &DefiningGraph, k: LetterSet, a: Letter) -> bool {
    k.iter().all(|c| g.commute(c, a))
}

/// `K` is a clique commuting with every pending letter and the given letters.
fn consistent(g: &DefiningGraph, st: &CancellationState, extra: &[Letter]) -> bool {
    g.is_clique(st.k) && st.u.iter().flatten().chain(extra).all(|&a| commutes_with(g, st.k, a))
}

/// One letter pair through substeps 1 to 5. `None` certifies an
/// uncancelable pair.
pub fn step(g: &DefiningGraph, st: &CancellationState, w: Tagged, v: Tagged) -> Option<CancellationState> {
    let mut s = st.clone();
    let b = s.b;
    let (add, cancel) = match b {
        Side::W => (w, v),
        Side::V => (v, w),
    };
    if !commutes_with(g, s.k, add.0) || !commutes_with(g, s.k, cancel.0) {
        return None;
    }
    let old_cancel_cursor = s.n[b.other().idx()];
    s.n[Side::W.idx()] = w.1;
    s.n[Side::V.idx()] = v.1;
    let nb = s.n[b.idx()] as usize;
    let nc = s.n[b.other().idx()] as usize;

    // Substep 1: the canceler left earlier subwords behind.
    if nc > old_cancel_cursor as usize {
        for t in 0..nc {
            let gone = std::mem::take(&mut s.u[t]);
            s.k |= letters(&gone);
        }
        if !consistent(g, &s, &[add.0, cancel.0]) {
            return None;
        }
    }

    // Substep 2: the canceler is ahead, so the roles swap.
    if nc > nb {
        s.b = b.other();
        s.k.insert(add.0);
        s.u[nc] = vec![cancel.0];
        return consistent(g, &s, &[]).then_some(s);
    }

    // Substep 3.
    s.u[nb].push(add.0);

    // Substep 4: cancel against a first letter of the matching subword.
    let fl = first_letters(g, &s.u[nc]);
    if let Some(&(_, p)) = fl.iter().find(|&&(a, _)| a == cancel.0) {
        let prior: Word = s.u[nc].drain(..=p).collect();
        s.k |= letters(&prior[..p]);
        return consistent(g, &s, &[]).then_some(s);
    }

    // Step 5: the canceler's letter commutes with and follows the whole
    // adding subword, so that subword is stuck and the roles swap.
    if nb == nc && s.u[nb].iter().all(|&x| g.adjacent(x, cancel.0) && x < cancel.0) {
        let stuck = std::mem::replace(&mut s.u[nb], vec![cancel.0]);
        s.k |= letters(&stuck);
        s.b = b.other();
        return consistent(g, &s, &[]).then_some(s);
    }

    // The canceling letter stays, and blocks the smaller letters it commutes with.
    s.k.insert(cancel.0);
    let blocked = g.star_lt(cancel.0);
    let drop: Vec<Letter> = first_letters(g, &s.u[nc])
        .into_iter()
        .map(|(a, _)| a)
        .filter(|&a| blocked.contains(a))
        .collect();
    for a in drop {
        let p = s.u[nc].iter().position(|&x| x == a).unwrap();
        s.u[nc].remove(p);
        s.k.insert(a);
    }
    consistent(g, &s, &[]).then_some(s)
}

/// The concluding blank-pair step.
pub fn conclude(g: &DefiningGraph, st: &CancellationState) -> Cancellation {
    let mut s = st.clone();
    for t in 0..3 {
        let gone = std::mem::take(&mut s.u[t]);
        s.k |= letters(&gone);
    }
    if !consistent(g, &s, &[]) {
        return Cancellation::UncancelablePair;
    }
    Cancellation::Clique {
        k: s.k,
        cancelable: std::mem::take(&mut s.u[3]),
        owner: s.b,
    }
}

/// Explicit-state `M_K` with a transition table filled on demand.
#[derive(Debug, Default)]
pub struct CancellationMachine {
    table: HashMap<(CancellationState, Tagged, Tagged), Option<CancellationState>>,
}

impl CancellationMachine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoised transitions.
    pub fn transitions(&self) -> usize {
        self.table.len()
    }

    pub fn run(&mut self, g: &DefiningGraph, w: &[Tagged], v: &[Tagged]) -> Cancellation {
        assert_eq!(w.len(), v.len(), "inputs are padded to equal length");
        let mut st = CancellationState::default();
        for (&a, &b) in w.iter().zip(v) {
            let key = (st, a, b);
            let next = match self.table.get(&key) {
                Some(n) => n.clone(),
                None => {
                    let n = step(g, &key.0, a, b);
                    self.table.insert(key, n.clone());
                    n
                }
            };
            match next {
                Some(n) => st = n,
                None => return Cancellation::UncancelablePair,
            }
        }
        conclude(g, &st)
    }
}

/// Runs `M_K` without memoisation.
pub fn run_cancellation(g: &DefiningGraph, w: &[Tagged], v: &[Tagged]) -> Cancellation {
    CancellationMachine::new().run(g, w, v)
}
