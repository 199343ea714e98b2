//! Right-angled Coxeter groups given by a defining graph: letters, words,
//! normal forms, and Busemann values along alternating rays.
//!
//! Letters are dense indices in the input vertex order, so letter sets are
//! plain bit masks and every commutation query is a single AND.

pub mod graph;
pub mod letters;
pub mod ray;
pub mod word;

pub use graph::{validate_defining_graph, Assumption, CheckResult, DefiningGraph, ValidationReport, Witness};
pub use letters::{Letter, LetterSet, Word, MAX_LETTERS};
pub use ray::{assemble_word, busemann, prefix_suffix_decompose, PrefixSign, PrefixSuffixDecomposition, RaySpec};
pub use word::{
    delete_last_copy, inverse, is_geodesic, is_shortlex, last_letters, normalize, shortlex_forbidden, shortlex_insert,
    word_distance,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("defining graph has {0} vertices; at most 64 are supported")]
    TooManyLetters(usize),
    #[error("duplicate vertex name `{0}`")]
    DuplicateName(String),
    #[error("letter {0} out of range for an alphabet of size {1}")]
    LetterOutOfRange(Letter, usize),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("ray letters `{0}` and `{1}` must be distinct and non-adjacent")]
    BadRay(String, String),
    #[error("word `{0}` is not shortlex")]
    NotShortlex(String),
    #[error("letter {0} cancels instead of inserting")]
    InsertCancels(Letter),
    #[error("letter {0} is not a last letter of the word")]
    NotALastLetter(Letter),
}
