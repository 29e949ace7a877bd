//! Review ingestion and preprocessing: sentence splitting, normalization,
//! tokenization, stemming, vocabulary construction and the learning/held-out
//! partition.
//!
//! The stages are pure per-review transformations followed by a single
//! deterministic merge (vocabulary indices follow first-appearance order in
//! sentence order), so re-running the pipeline with identical inputs and
//! seeds yields byte-identical serialized corpora.

mod ingest;
mod normalize;
mod partition;
mod pipeline;
mod split;
mod stem;
mod tokenize;
mod vocab;

pub use ingest::{ingest_reviews, InputFormat, ReviewSet, SkippedRow};
pub use normalize::{normalize, StandardizationMap};
pub use partition::partition;
pub use pipeline::{preprocess, PreparedCorpus, PreprocessOptions, CORPUS_FORMAT_VERSION};
pub use split::{split_sentences, AbbreviationList};
pub use stem::{porter_stem, StemmerKind};
pub use tokenize::{tokenize, StopwordList};
pub use vocab::{build_vocabulary, CorpusMatrix, Vocabulary};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One raw customer review as ingested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Review {
    pub review_id: String,
    /// Key of the airline/brand the review is about.
    pub entity_id: String,
    pub date: Option<String>,
    pub rating: Option<f64>,
    pub text: String,
}

/// One preprocessed sentence of a review.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewSentence {
    /// `"<review_id>:<position>"`; unique within a corpus.
    pub sentence_id: String,
    pub review_id: String,
    pub entity_id: String,
    /// 0-based index within the parent review.
    pub position: usize,
    pub raw_text: String,
    /// Stemmed, lowercase, stopword-free terms in order.
    pub tokens: Vec<String>,
}

impl ReviewSentence {
    pub fn make_id(review_id: &str, position: usize) -> String {
        format!("{review_id}:{position}")
    }
}

/// How many sentences to hold out for extrinsic evaluation, and with
/// which seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub holdout_count: usize,
    pub seed: u64,
}

/// Errors raised by ingestion and preprocessing.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed {format:?} input: {message}")]
    Parse { format: InputFormat, message: String },
    #[error("duplicate review_id {0:?}")]
    DuplicateReviewId(String),
    #[error("empty corpus: no sentences survived preprocessing")]
    EmptyCorpus,
    #[error("holdout_count {requested} exceeds sentence count {available}")]
    InvalidSplit { requested: usize, available: usize },
    #[error("{0}")]
    Validation(String),
}
