//! Sweep the topic count and pick the smallest K with the best mean
//! coherence.

use serde::{Deserialize, Serialize};

use super::{coherence, fit, Algorithm, ModelConfig, TopicError};
use crate::corpus::CorpusMatrix;

/// Default sweep bounds and step.
pub const DEFAULT_K_MIN: usize = 5;
pub const DEFAULT_K_MAX: usize = 50;
pub const DEFAULT_K_STEP: usize = 1;

/// Outcome of a K sweep: the full table and the chosen K.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KSelectionResult {
    pub algorithm: Algorithm,
    pub k_min: usize,
    pub k_max: usize,
    pub step: usize,
    /// `(K, mean coherence)` for every K in the sweep.
    pub table: Vec<(usize, f64)>,
    /// Smallest K attaining the maximum mean coherence.
    pub chosen_k: usize,
}

/// Fit one model per K in `[k_min, k_max]` (step `step`) from the config
/// template, score each by mean coherence, and return the sweep.
///
/// Every fit reuses the template's seed so the comparison across K is not
/// confounded by initialization noise. Fit failures are annotated with the
/// offending K.
#[allow(clippy::too_many_arguments)]
pub fn select_k(
    matrix: &CorpusMatrix,
    template: &ModelConfig,
    k_min: usize,
    k_max: usize,
    step: usize,
    n_top: usize,
    epsilon: f64,
    fingerprint: &str,
) -> Result<KSelectionResult, TopicError> {
    if k_min < 2 || k_min > k_max {
        return Err(TopicError::InvalidConfig(format!(
            "invalid sweep bounds [{k_min}, {k_max}]"
        )));
    }
    if step < 1 {
        return Err(TopicError::InvalidConfig("step must be >= 1".into()));
    }
    let mut table = Vec::new();
    let mut k = k_min;
    while k <= k_max {
        let mut config = template.clone();
        config.k = k;
        let model = fit(matrix, &config, fingerprint).map_err(|source| {
            TopicError::SweepFit {
                k,
                source: Box::new(source),
            }
        })?;
        let report =
            coherence(&model, matrix, n_top.min(matrix.num_terms()), epsilon).map_err(
                |source| TopicError::SweepFit {
                    k,
                    source: Box::new(source),
                },
            )?;
        table.push((k, report.mean));
        k += step;
    }
    let best = table
        .iter()
        .map(|&(_, c)| c)
        .fold(f64::NEG_INFINITY, f64::max);
    let chosen_k = table
        .iter()
        .find(|&&(_, c)| c == best)
        .map(|&(k, _)| k)
        .expect("sweep table cannot be empty");
    Ok(KSelectionResult {
        algorithm: template.algorithm,
        k_min,
        k_max,
        step,
        table,
        chosen_k,
    })
}
