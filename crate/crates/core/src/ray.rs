//! Rays `(a_i a_j)^∞`, prefix-suffix decomposition and Busemann values.

use crate::graph::DefiningGraph;
use crate::letters::{Letter, LetterSet, Word};
use crate::word::{is_shortlex, normalize};
use crate::CoreError;

/// The geodesic ray `a_i a_j a_i a_j ...` through the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RaySpec {
    pub i: Letter,
    pub j: Letter,
}

impl RaySpec {
    pub fn new(g: &DefiningGraph, i: Letter, j: Letter) -> Result<Self, CoreError> {
        if i as usize >= g.len() || j as usize >= g.len() {
            return Err(CoreError::LetterOutOfRange(i.max(j), g.len()));
        }
        if i == j || g.adjacent(i, j) {
            return Err(CoreError::BadRay(g.name(i).to_string(), g.name(j).to_string()));
        }
        Ok(RaySpec { i, j })
    }

    /// The pair `{a_i, a_j}`.
    pub fn letters(&self) -> LetterSet {
        LetterSet::from_letters([self.i, self.j])
    }

    /// The other ray letter.
    pub fn partner(&self, a: Letter) -> Letter {
        if a == self.i {
            self.j
        } else {
            self.i
        }
    }

    /// Alternating word of length `len` starting with `first`.
    pub fn alternating(&self, first: Letter, len: usize) -> Word {
        let second = self.partner(first);
        (0..len).map(|t| if t % 2 == 0 { first } else { second }).collect()
    }

    /// `γ(n)`, the first `n` letters of the ray.
    pub fn point(&self, n: usize) -> Word {
        self.alternating(self.i, n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixSign {
    /// The prefix starts with `a_j`: the word lies past the start of the ray's reverse.
    Positive,
    /// The prefix starts with `a_i`.
    Negative,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixSuffixDecomposition {
    pub prefix: Word,
    pub suffix: Word,
    pub sign: PrefixSign,
}

impl PrefixSuffixDecomposition {
    /// Busemann value of the decomposed word.
    pub fn busemann(&self) -> i64 {
        let p = self.prefix.len() as i64;
        let s = self.suffix.len() as i64;
        match self.sign {
            PrefixSign::Positive => p + s,
            PrefixSign::Negative => s - p,
            PrefixSign::Empty => s,
        }
    }
}

/// Splits a shortlex word into an alternating ray prefix and a suffix that
/// cannot be rearranged to begin with a ray letter.
pub fn prefix_suffix_decompose(
    g: &DefiningGraph,
    ray: RaySpec,
    w: &[Letter],
) -> Result<PrefixSuffixDecomposition, CoreError> {
    if !is_shortlex(g, w) {
        return Err(CoreError::NotShortlex(g.format_word(w)));
    }
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    let mut suffix_letters = LetterSet::EMPTY;
    for &a in w {
        let ray_letter = a == ray.i || a == ray.j;
        if ray_letter && suffix_letters.is_subset(g.star(a)) {
            prefix.push(a);
        } else {
            suffix.push(a);
            suffix_letters.insert(a);
        }
    }
    let suffix = normalize(g, &suffix);
    let sign = match prefix.first() {
        None => PrefixSign::Empty,
        Some(&a) if a == ray.j => PrefixSign::Positive,
        Some(_) => PrefixSign::Negative,
    };
    Ok(PrefixSuffixDecomposition { prefix, suffix, sign })
}

/// Busemann value of a shortlex word with respect to the ray.
pub fn busemann(g: &DefiningGraph, ray: RaySpec, w: &[Letter]) -> Result<i64, CoreError> {
    Ok(prefix_suffix_decompose(g, ray, w)?.busemann())
}

/// The unique word on horosphere `k` with the given suffix.
pub fn assemble_word(ray: RaySpec, suffix: &[Letter], k: i64) -> Word {
    let s = suffix.len() as i64;
    let mut out = if k > s {
        ray.alternating(ray.j, (k - s) as usize)
    } else if k < s {
        ray.alternating(ray.i, (s - k) as usize)
    } else {
        Vec::new()
    };
    out.extend_from_slice(suffix);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (DefiningGraph, RaySpec) {
        let g = DefiningGraph::cycle(5);
        let ray = RaySpec::new(&g, 0, 2).unwrap();
        (g, ray)
    }

    #[test]
    fn decomposition_examples() {
        let (g, ray) = setup();
        let d = prefix_suffix_decompose(&g, ray, &g.parse_word("bc").unwrap()).unwrap();
        assert_eq!(g.format_word(&d.prefix), "c");
        assert_eq!(g.format_word(&d.suffix), "b");
        let d = prefix_suffix_decompose(&g, ray, &g.parse_word("ca").unwrap()).unwrap();
        assert_eq!(g.format_word(&d.prefix), "ca");
        assert!(d.suffix.is_empty());
        let d = prefix_suffix_decompose(&g, ray, &g.parse_word("d").unwrap()).unwrap();
        assert!(d.prefix.is_empty());
        assert_eq!(d.sign, PrefixSign::Empty);
    }

    #[test]
    fn busemann_examples() {
        let (g, ray) = setup();
        let b = |s: &str| busemann(&g, ray, &g.parse_word(s).unwrap()).unwrap();
        assert_eq!(b("a"), -1);
        assert_eq!(b("ca"), 2);
        assert_eq!(b("bc"), 2);
        assert!(busemann(&g, ray, &g.parse_word("ba").unwrap()).is_err());
    }

    #[test]
    fn assemble_examples() {
        let (g, ray) = setup();
        let f = |s: &str, k| g.format_word(&assemble_word(ray, &g.parse_word(s).unwrap(), k));
        assert_eq!(f("b", 0), "ab");
        assert_eq!(f("", 3), "cac");
        assert_eq!(f("d", 1), "d");
    }

    #[test]
    fn rays_need_non_adjacent_letters() {
        let g = DefiningGraph::cycle(5);
        assert!(RaySpec::new(&g, 0, 1).is_err());
        assert!(RaySpec::new(&g, 2, 2).is_err());
    }
}
