//! Extrinsic evaluation: per-class precision, recall and F1 against human
//! annotations, plus the consistency check over the published benchmark
//! tables bundled with the crate.

mod annotations;
mod metrics;
mod published;

pub use annotations::{load_annotations, AnnotatedSentence, DisagreementReport};
pub use metrics::{evaluate, f1_score, ClassMetrics, EvaluationReport, Task};
pub use published::{
    consistency_check, published_aspect_table, published_sentiment_table, ConsistencyReport,
    PublishedRow, F1_CONSISTENCY_TOLERANCE,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("missing predictions for {count} annotated sentences (first ids: {sample:?})")]
    MissingPredictions { count: usize, sample: Vec<String> },
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Validation(String),
}
