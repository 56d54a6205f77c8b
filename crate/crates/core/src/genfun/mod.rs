//! Generating functions of labelled trees: derivative series, exact
//! finite-size moments, profile correlations and an exhaustive oracle.

pub mod engine;
pub mod enumerate;
pub mod moments;
pub mod profile;

pub use engine::{Engine, Statistic};
pub use enumerate::{enumerate_moments, enumerate_trees, DEFAULT_SIZE_CAP};
pub use moments::{
    exact_depth_moment, exact_moment, f_series, float_moment, horizontal_partial_f, partial_f, ExactMoment, MomentRow,
    MomentTable,
};
pub use profile::{fourier_second_moment, lemma_l3_ratio, profile_correlation_series, ProfileCorrelation};
