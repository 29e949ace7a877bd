//! Business-intelligence aggregation: per-entity aspect-based opinion
//! summaries, strength/weakness verdicts, competitor matrices and bi-gram
//! root-cause reports.

mod aos;
mod bigrams;
mod matrix;

pub use aos::{
    aggregate_aos, verdicts, AspectSentimentCounts, LabeledSentence, OpinionSummary, Verdict,
    VerdictClass, DEFAULT_VERDICT_MARGIN,
};
pub use bigrams::{frequent_bigrams, BigramReport, BigramStat, DEFAULT_BIGRAM_THRESHOLD};
pub use matrix::{competitor_matrix, CompetitorMatrix, MatrixCell};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum InsightsError {
    #[error("{0}")]
    Validation(String),
}
