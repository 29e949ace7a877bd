//! Lexicon-based sentence sentiment: three analyzer styles (summed
//! valences, strongest-pair scaling, rule-augmented scoring) combined by
//! plurality voting with a normalized-confidence tie-break.
//!
//! Analyzers consume the raw sentence text, not the stemmed tokens:
//! stemming destroys lexicon matches and the rules need the original
//! punctuation and capitalization.

mod analyzers;
mod ensemble;
mod lexicon;

pub use analyzers::{
    score_rule_augmented, score_scaled, score_sum, Analyzer, AnalyzerKind, RuleConstants,
    SentimentScore, DEFAULT_EXAGGERATION_BOOST,
};
pub use ensemble::{
    calibrate, classify_sentiment_ensemble, to_category, AnalyzerCalibration, Category,
    DecisionPath, SentimentThresholds, SentimentVerdict, ThresholdPair,
};
pub use lexicon::SentimentLexicon;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SentimentError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Validation(String),
}
