//! Topic models over the sentence corpus: pLSA fitted by EM, LDA fitted by
//! collapsed Gibbs sampling, and LDA fitted by mean-field variational
//! inference, plus coherence scoring and selection of the topic count.

mod coherence;
mod gibbs;
mod infer;
mod model;
mod plsa;
mod select_k;
mod vi;

pub use coherence::{coherence, CoherenceReport, DEFAULT_EPSILON, DEFAULT_N_TOP};
pub use gibbs::fit_lda_gibbs;
pub use infer::{infer_theta, ThetaInference};
pub use model::{FittedTopicModel, MODEL_FORMAT_VERSION};
pub use plsa::fit_plsa;
pub use select_k::{select_k, KSelectionResult, DEFAULT_K_MAX, DEFAULT_K_MIN, DEFAULT_K_STEP};
pub use vi::fit_lda_vi;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::CorpusMatrix;

/// Which fitting algorithm a model configuration drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    PlsaEm,
    LdaVi,
    LdaGs,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::PlsaEm => "plsa_em",
            Algorithm::LdaVi => "lda_vi",
            Algorithm::LdaGs => "lda_gs",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "plsa_em" | "plsa" => Some(Algorithm::PlsaEm),
            "lda_vi" => Some(Algorithm::LdaVi),
            "lda_gs" | "lda_gibbs" => Some(Algorithm::LdaGs),
            _ => None,
        }
    }
}

/// Hyperparameters and stopping rules for one fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub algorithm: Algorithm,
    /// Number of topics K.
    pub k: usize,
    /// Symmetric Dirichlet concentration over sentence-topic mixtures.
    pub alpha: f64,
    /// Symmetric Dirichlet concentration over topic-word distributions.
    pub beta: f64,
    /// EM/VI iterations, or total Gibbs sweeps.
    pub max_iterations: usize,
    /// Relative objective change below which fitting stops.
    pub convergence_tolerance: f64,
    /// Gibbs only: sweeps discarded before sampling starts.
    pub burn_in: usize,
    /// Gibbs only: sweeps between retained samples.
    pub sample_lag: usize,
    pub seed: u64,
}

impl ModelConfig {
    /// Conventional defaults: symmetric alpha = 50/K, beta = 0.01;
    /// 500 iterations at 1e-5 tolerance for EM/VI; 1000 sweeps with 500
    /// burn-in and lag 10 for Gibbs.
    pub fn new(algorithm: Algorithm, k: usize) -> Self {
        let gibbs = algorithm == Algorithm::LdaGs;
        Self {
            algorithm,
            k,
            alpha: 50.0 / k.max(1) as f64,
            beta: 0.01,
            max_iterations: if gibbs { 1000 } else { 500 },
            convergence_tolerance: 1e-5,
            burn_in: if gibbs { 500 } else { 0 },
            sample_lag: if gibbs { 10 } else { 1 },
            seed: 42,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self, matrix: &CorpusMatrix) -> Result<(), TopicError> {
        if self.k < 1 {
            return Err(TopicError::InvalidConfig("k must be >= 1".into()));
        }
        if self.alpha <= 0.0 || self.beta <= 0.0 {
            return Err(TopicError::InvalidConfig(
                "alpha and beta must be positive".into(),
            ));
        }
        if self.max_iterations < 1 {
            return Err(TopicError::InvalidConfig(
                "max_iterations must be >= 1".into(),
            ));
        }
        if self.convergence_tolerance <= 0.0 {
            return Err(TopicError::InvalidConfig(
                "convergence_tolerance must be positive".into(),
            ));
        }
        if matrix.num_sentences() == 0 || matrix.total_tokens() == 0 {
            return Err(TopicError::EmptyCorpus);
        }
        if self.k > matrix.num_terms() {
            return Err(TopicError::InvalidConfig(format!(
                "k = {} exceeds vocabulary size {}",
                self.k,
                matrix.num_terms()
            )));
        }
        if self.algorithm == Algorithm::LdaGs && self.burn_in >= self.max_iterations {
            return Err(TopicError::InvalidConfig(format!(
                "burn_in {} must be smaller than max_iterations {}",
                self.burn_in, self.max_iterations
            )));
        }
        if self.algorithm == Algorithm::LdaGs && self.sample_lag < 1 {
            return Err(TopicError::InvalidConfig("sample_lag must be >= 1".into()));
        }
        Ok(())
    }
}

/// Fit a model with whichever algorithm the config names.
pub fn fit(
    matrix: &CorpusMatrix,
    config: &ModelConfig,
    vocabulary_fingerprint: &str,
) -> Result<FittedTopicModel, TopicError> {
    match config.algorithm {
        Algorithm::PlsaEm => fit_plsa(matrix, config, vocabulary_fingerprint),
        Algorithm::LdaVi => fit_lda_vi(matrix, config, vocabulary_fingerprint),
        Algorithm::LdaGs => fit_lda_gibbs(matrix, config, vocabulary_fingerprint),
    }
}

#[derive(Debug, Error)]
pub enum TopicError {
    #[error("invalid model configuration: {0}")]
    InvalidConfig(String),
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("config algorithm {found:?} does not match {expected:?}")]
    AlgorithmMismatch { expected: Algorithm, found: Algorithm },
    #[error("model was fitted on a different vocabulary (fingerprint {model} vs {corpus})")]
    VocabularyMismatch { model: String, corpus: String },
    #[error("fit failed for K = {k}: {source}")]
    SweepFit {
        k: usize,
        #[source]
        source: Box<TopicError>,
    },
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed model file: {0}")]
    Parse(String),
}

/// Normalize a slice in place to sum to 1; uniform if the mass is zero.
pub(crate) fn normalize_in_place(row: &mut [f64]) {
    let sum: f64 = row.iter().sum();
    if sum > 0.0 && sum.is_finite() {
        for v in row.iter_mut() {
            *v /= sum;
        }
    } else {
        let uniform = 1.0 / row.len() as f64;
        for v in row.iter_mut() {
            *v = uniform;
        }
    }
}

/// Seeded strictly-positive random rows, each normalized to sum to 1.
pub(crate) fn random_stochastic_rows(
    rows: usize,
    cols: usize,
    rng: &mut impl rand::Rng,
) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|_| {
            let mut row: Vec<f64> = (0..cols).map(|_| rng.gen_range(0.01..1.0)).collect();
            normalize_in_place(&mut row);
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CorpusMatrix;

    fn tiny_matrix() -> CorpusMatrix {
        CorpusMatrix::from_rows(vec![vec![(0, 1), (1, 2)], vec![(2, 1)]], 3)
    }

    #[test]
    fn defaults_follow_convention() {
        let c = ModelConfig::new(Algorithm::LdaGs, 25);
        assert!((c.alpha - 2.0).abs() < 1e-12);
        assert!((c.beta - 0.01).abs() < 1e-12);
        assert_eq!(c.max_iterations, 1000);
        assert_eq!(c.burn_in, 500);
        assert_eq!(c.sample_lag, 10);
        let c = ModelConfig::new(Algorithm::PlsaEm, 10);
        assert_eq!(c.max_iterations, 500);
        assert!((c.convergence_tolerance - 1e-5).abs() < 1e-18);
    }

    #[test]
    fn validation_catches_bad_k_and_burn_in() {
        let m = tiny_matrix();
        let mut c = ModelConfig::new(Algorithm::PlsaEm, 4);
        assert!(c.validate(&m).is_err(), "k > U must fail");
        c.k = 2;
        assert!(c.validate(&m).is_ok());
        let mut g = ModelConfig::new(Algorithm::LdaGs, 2);
        g.burn_in = g.max_iterations;
        assert!(g.validate(&m).is_err(), "burn_in >= max_iterations must fail");
    }
}
