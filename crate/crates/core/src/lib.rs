//! Unsupervised aspect-based opinion mining for review corpora.
//!
//! The pipeline turns raw customer reviews into per-entity opinion summaries:
//!
//! 1. [`corpus`] — sentence splitting, normalization, tokenization, stemming,
//!    vocabulary construction and learning/held-out partitioning.
//! 2. [`topics`] — three topic models (pLSA via EM, LDA via collapsed Gibbs
//!    sampling, LDA via variational inference), topic coherence and selection
//!    of the number of topics.
//! 3. [`aspects`] — mapping raw topics onto a human-labeled aspect catalog and
//!    classifying each sentence to an aspect (or Null) with an ensemble of
//!    topic models backed by custom word lists.
//! 4. [`sentiment`] — three lexicon-based sentiment analyzers combined by
//!    plurality voting with a confidence tie-break.
//! 5. [`eval`] — precision/recall/F1 scoring against human annotations.
//! 6. [`insights`] — aspect-based opinion summaries, strength/weakness
//!    verdicts, competitor matrices and bi-gram root-cause reports.
//!
//! All randomness is seeded; identical inputs and seeds produce byte-identical
//! serialized artifacts.

pub mod aspects;
pub mod corpus;
pub mod eval;
pub mod insights;
pub mod sentiment;
pub mod synth;
pub mod topics;

mod util;

pub use util::fnv1a64;
