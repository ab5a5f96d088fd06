//! Lamplighter groups A ≀ B, their word metric and dead ends.

mod depth;
mod element;
mod metric;
mod verdict;

pub use depth::{
    ball_witness, depth, depth_profile, enumerate_ball, is_dead_end, retreat_depth, witness_on_set,
    DepthProfile, DepthReport, DepthRow, DepthValue, ShellSummary,
};
pub use element::{LampConfig, Lamplighter, LamplighterSpec, WreathElement, WreathGen};
pub use metric::{MetricBackend, WordLength, WordMetric};
pub use verdict::{
    classify_abelian_free_product, theorem_b_verdict, Classification, DepthVerdict, TheoremVerdict,
};
