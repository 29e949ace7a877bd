//! The fitted-model container shared by all three algorithms, with its
//! versioned serialization.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Algorithm, ModelConfig, TopicError};

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// A fitted topic model: per-topic word distributions, per-sentence topic
/// distributions over the training corpus, and the objective trace of the
/// fit. Immutable once fitted.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedTopicModel {
    pub algorithm: Algorithm,
    /// K x U, row k = P(w | topic k); rows sum to 1.
    pub phi: Vec<Vec<f64>>,
    /// R x K, row r = P(topic | sentence r); rows sum to 1.
    pub theta_train: Vec<Vec<f64>>,
    /// Log-likelihood per iteration (pLSA), pseudo-likelihood per sweep
    /// (Gibbs) or ELBO per iteration (VI).
    pub objective_trace: Vec<f64>,
    pub config: ModelConfig,
    /// Fingerprint of the vocabulary the model was fitted on.
    pub vocabulary_fingerprint: String,
}

impl FittedTopicModel {
    pub fn num_topics(&self) -> usize {
        self.phi.len()
    }

    pub fn num_terms(&self) -> usize {
        self.phi.first().map_or(0, Vec::len)
    }

    /// Term indices of the `n` highest-probability words of `topic`,
    /// ties broken by term index.
    pub fn top_terms(&self, topic: usize, n: usize) -> Vec<usize> {
        let row = &self.phi[topic];
        let mut order: Vec<usize> = (0..row.len()).collect();
        order.sort_by(|&a, &b| {
            row[b]
                .partial_cmp(&row[a])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        order.truncate(n);
        order
    }

    /// Corpus-level mean of each topic's theta mass; used for the
    /// low-prevalence discard rule when building an aspect catalog.
    pub fn mean_topic_mass(&self) -> Vec<f64> {
        let k = self.num_topics();
        let mut mass = vec![0.0; k];
        for row in &self.theta_train {
            for (m, &v) in mass.iter_mut().zip(row.iter()) {
                *m += v;
            }
        }
        let r = self.theta_train.len().max(1) as f64;
        for m in &mut mass {
            *m /= r;
        }
        mass
    }

    pub fn to_json(&self) -> String {
        let theta_sparse: Vec<Vec<(u32, f64)>> = self
            .theta_train
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(_, &v)| v != 0.0)
                    .map(|(k, &v)| (k as u32, v))
                    .collect()
            })
            .collect();
        let file = ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            algorithm: self.algorithm,
            config: self.config.clone(),
            vocabulary_fingerprint: self.vocabulary_fingerprint.clone(),
            num_topics: self.num_topics() as u32,
            phi: self.phi.clone(),
            theta_sparse,
            objective_trace: self.objective_trace.clone(),
        };
        serde_json::to_string_pretty(&file).expect("model serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<Self, TopicError> {
        let file: ModelFile =
            serde_json::from_str(json).map_err(|e| TopicError::Parse(e.to_string()))?;
        if file.format_version != MODEL_FORMAT_VERSION {
            return Err(TopicError::Parse(format!(
                "unsupported model format_version {} (expected {})",
                file.format_version, MODEL_FORMAT_VERSION
            )));
        }
        let k = file.num_topics as usize;
        let theta_train = file
            .theta_sparse
            .into_iter()
            .map(|row| {
                let mut dense = vec![0.0; k];
                for (idx, v) in row {
                    dense[idx as usize] = v;
                }
                dense
            })
            .collect();
        Ok(Self {
            algorithm: file.algorithm,
            phi: file.phi,
            theta_train,
            objective_trace: file.objective_trace,
            config: file.config,
            vocabulary_fingerprint: file.vocabulary_fingerprint,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), TopicError> {
        std::fs::write(path, self.to_json()).map_err(|source| TopicError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, TopicError> {
        let content = std::fs::read_to_string(path).map_err(|source| TopicError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&content)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    algorithm: Algorithm,
    config: ModelConfig,
    vocabulary_fingerprint: String,
    num_topics: u32,
    phi: Vec<Vec<f64>>,
    /// Rows of `(topic, value)` pairs; exact zeros omitted.
    theta_sparse: Vec<Vec<(u32, f64)>>,
    objective_trace: Vec<f64>,
}
