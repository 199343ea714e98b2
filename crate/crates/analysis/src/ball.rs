use std::collections::HashMap;

use horoforge_core::{DefiningGraph, Letter, Word};

use crate::tits::{self, Key};
use crate::OracleError;

pub const DEFAULT_BALL_CEILING: usize = 2_000_000;

/// Streams the sphere of each radius `0..=r` in shortlex order.
///
/// Each sphere is produced from the previous one by right multiplication
/// with ascents. Spheres are scanned in lexicographic order, so the first
/// word found for an element is its shortlex representative.
pub fn for_each_sphere(
    g: &DefiningGraph,
    r: usize,
    ceiling: usize,
    mut f: impl FnMut(usize, &[(Word, Key)]),
) -> Result<usize, OracleError> {
    let mut level: Vec<(Word, Key)> = vec![(Vec::new(), tits::identity_key(g))];
    let mut total = 1;
    f(0, &level);
    for n in 1..=r {
        let mut seen: HashMap<Key, ()> = HashMap::new();
        let mut next = Vec::new();
        for (w, k) in &level {
            for a in g.letters() {
                if k[a as usize] < 0 {
                    continue;
                }
                let mut k2 = k.clone();
                tits::push(g, &mut k2, a);
                if seen.insert(k2.clone(), ()).is_none() {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push((w2, k2));
                }
            }
        }
        total += next.len();
        if total > ceiling {
            return Err(OracleError::Ceiling { limit: ceiling });
        }
        f(n, &next);
        level = next;
    }
    Ok(total)
}

/// Every element of the ball of radius `radius`, by shortlex representative.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub radius: usize,
    /// Representatives in shortlex order.
    pub elements: Vec<Word>,
    keys: Vec<Key>,
    index: HashMap<Key, u32>,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn key(&self, idx: usize) -> &Key {
        &self.keys[idx]
    }

    /// Index of the element represented by any word, if it lies in the ball.
    pub fn find(&self, g: &DefiningGraph, w: &[Letter]) -> Option<usize> {
        self.index.get(&tits::key_of(g, w)).map(|&i| i as usize)
    }

    /// Cayley-graph neighbours of element `idx` that lie in the ball.
    pub fn neighbors(&self, g: &DefiningGraph, idx: usize) -> Vec<usize> {
        g.letters()
            .filter_map(|a| {
                let mut k = self.keys[idx].clone();
                tits::push(g, &mut k, a);
                self.index.get(&k).map(|&i| i as usize)
            })
            .collect()
    }
}

pub fn build_cayley_ball(g: &DefiningGraph, r: usize, ceiling: usize) -> Result<CayleyBall, OracleError> {
    let mut elements = Vec::new();
    let mut keys = Vec::new();
    for_each_sphere(g, r, ceiling, |_, sphere| {
        for (w, k) in sphere {
            elements.push(w.clone());
            keys.push(k.clone());
        }
    })?;
    let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
    Ok(CayleyBall {
        radius: r,
        elements,
        keys,
        index,
    })
}
