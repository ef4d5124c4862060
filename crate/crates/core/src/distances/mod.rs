//! Bottleneck distance between diagrams and the weighted matching distance
//! between bifiltered complexes.

pub mod bottleneck;
pub mod matching;

pub use bottleneck::{bottleneck, Diagram};
pub use matching::{
    evaluate_lines, line_grid, matching_distance, matching_distance_over, normalize_pair, weight,
    LineEvaluation, MatchConfig, MatchResult, Normalization,
};
