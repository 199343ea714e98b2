//! Brute-force oracles and empirical geometry for horosphere graphs.
//!
//! The oracles solve the word problem with the Tits representation and
//! never call the normal-form code they are meant to check.

pub mod ball;
pub mod fixtures;
pub mod metrics;
pub mod oracle;
pub mod tits;

pub use ball::{build_cayley_ball, for_each_sphere, CayleyBall, DEFAULT_BALL_CEILING};
pub use metrics::{
    component_count, distortion_trend, distortion_violations, edge_length_bound, graph_metrics, DistortionRow,
    GraphMetrics, DEFAULT_SEED,
};
pub use oracle::{
    busemann_oracle, close_successors_exact, close_successors_oracle, deep_word, horocyclic_oracle, horosphere_points,
    krips_edges_oracle, lex_forbidden_oracle, nearest_line_point, predecessor_map, rips_edges_oracle, s_state_oracle,
    successor_set, suffix_oracle, Closeness, HoroPoint, Segmentation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle ceiling of {limit} elements exceeded")]
    Ceiling { limit: usize },
    #[error("value for `{0}` did not stabilise")]
    NotStable(String),
    #[error("deep form of `{0}` is not horocyclic")]
    BadSegmentation(String),
}
