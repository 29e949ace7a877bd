//! Aspect catalog construction and sentence-to-aspect classification with
//! the four-branch ensemble of topic models.

mod catalog;
mod classify;
mod wordlist;

pub use catalog::{build_catalog, AspectCatalog, CatalogAspect, MergeEntry, DEFAULT_PREVALENCE_FLOOR};
pub use classify::{
    classify_ensemble, classify_ensemble_mapped, classify_single, map_inference, AspectDecision,
    AspectLabel, EnsembleBranch, EnsembleTopicConfig, MappedInference, DEFAULT_GAMMA,
};
pub use wordlist::{
    build_custom_wordlists, CustomWordList, RelationsResource, WordListCoverage,
    DEFAULT_N_KEYWORDS,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AspectError {
    #[error("merge map references unknown model {0:?}")]
    UnknownModel(String),
    #[error("merge map references unknown raw topic {topic} of model {model}")]
    UnknownRawTopic { model: String, topic: usize },
    #[error("retained raw topic {topic} of model {model} is not mapped to any aspect")]
    UnmappedRawTopic { model: String, topic: usize },
    #[error("{0}")]
    Validation(String),
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
