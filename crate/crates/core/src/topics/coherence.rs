//! Topic coherence: mean log co-occurrence lift over the top keyword pairs
//! of each topic, estimated from sentence-level document frequencies with
//! additive smoothing.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{FittedTopicModel, TopicError};
use crate::corpus::CorpusMatrix;

/// Default number of top words scored per topic.
pub const DEFAULT_N_TOP: usize = 10;
/// Default additive smoothing applied to document frequencies.
pub const DEFAULT_EPSILON: f64 = 1.0;

/// Per-topic coherence values for one fitted model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub per_topic: Vec<f64>,
    pub mean: f64,
    pub n_top: usize,
    pub epsilon: f64,
}

/// Score every topic of `model` against sentence co-occurrence statistics
/// from `matrix`.
///
/// For the `n_top` highest-probability words of a topic, each unordered
/// pair (i < j) contributes `ln(P(wi, wj) / (P(wi) P(wj)))` where
/// `P(w) = (df(w) + eps) / (R + eps)` and `P(wi, wj)` uses the count of
/// sentences containing both words. The topic's coherence is the mean over
/// its `C(n_top, 2)` pairs.
pub fn coherence(
    model: &FittedTopicModel,
    matrix: &CorpusMatrix,
    n_top: usize,
    epsilon: f64,
) -> Result<CoherenceReport, TopicError> {
    if n_top < 2 {
        return Err(TopicError::InvalidConfig("n_top must be >= 2".into()));
    }
    if n_top > matrix.num_terms() {
        return Err(TopicError::InvalidConfig(format!(
            "n_top = {n_top} exceeds vocabulary size {}",
            matrix.num_terms()
        )));
    }
    if epsilon <= 0.0 {
        return Err(TopicError::InvalidConfig("epsilon must be positive".into()));
    }

    let top_words: Vec<Vec<usize>> = (0..model.num_topics())
        .map(|k| model.top_terms(k, n_top))
        .collect();

    // Postings (sets of sentence ids) for just the candidate words.
    let mut postings: HashMap<usize, Vec<u32>> = HashMap::new();
    for words in &top_words {
        for &w in words {
            postings.entry(w).or_default();
        }
    }
    for (r, row) in matrix.rows().iter().enumerate() {
        for &(w, _) in row {
            if let Some(list) = postings.get_mut(&(w as usize)) {
                list.push(r as u32);
            }
        }
    }

    let r_total = matrix.num_sentences() as f64;
    let prob = |count: f64| (count + epsilon) / (r_total + epsilon);
    let mut per_topic = Vec::with_capacity(model.num_topics());
    for words in &top_words {
        let mut sum = 0.0;
        let mut pairs = 0usize;
        for i in 0..words.len() {
            for j in (i + 1)..words.len() {
                let a = &postings[&words[i]];
                let b = &postings[&words[j]];
                let both = sorted_intersection_len(a, b) as f64;
                let p_i = prob(a.len() as f64);
                let p_j = prob(b.len() as f64);
                sum += (prob(both) / (p_i * p_j)).ln();
                pairs += 1;
            }
        }
        per_topic.push(sum / pairs as f64);
    }
    let mean = per_topic.iter().sum::<f64>() / per_topic.len().max(1) as f64;
    Ok(CoherenceReport {
        per_topic,
        mean,
        n_top,
        epsilon,
    })
}

/// Both lists are ascending because rows are visited in order.
fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topics::{Algorithm, ModelConfig};

    /// A model whose phi rows make the top words explicit.
    fn model_with_phi(phi: Vec<Vec<f64>>) -> FittedTopicModel {
        let k = phi.len();
        FittedTopicModel {
            algorithm: Algorithm::PlsaEm,
            phi,
            theta_train: vec![],
            objective_trace: vec![],
            config: ModelConfig::new(Algorithm::PlsaEm, k),
            vocabulary_fingerprint: "fp".into(),
        }
    }

    #[test]
    fn all_words_everywhere_scores_zero() {
        // Both top words occur in every sentence: each pair term is ln 1.
        let matrix = CorpusMatrix::from_rows(
            vec![vec![(0, 1), (1, 1)], vec![(0, 2), (1, 1)], vec![(0, 1), (1, 3)]],
            2,
        );
        let model = model_with_phi(vec![vec![0.6, 0.4]]);
        let report = coherence(&model, &matrix, 2, 1.0).unwrap();
        assert_eq!(report.per_topic.len(), 1);
        assert!(report.per_topic[0].abs() < 1e-12);
        assert!(report.mean.abs() < 1e-12);
    }

    #[test]
    fn never_cooccurring_pair_matches_hand_computation() {
        // 5 sentences; word 0 in sentences {0,1}, word 1 in {2,3}; never
        // together. eps = 1: P(both) = 1/6, P(w0) = P(w1) = 3/6.
        let matrix = CorpusMatrix::from_rows(
            vec![
                vec![(0, 1)],
                vec![(0, 1)],
                vec![(1, 1)],
                vec![(1, 1)],
                vec![(2, 1)],
            ],
            3,
        );
        let model = model_with_phi(vec![vec![0.5, 0.4, 0.1]]);
        let report = coherence(&model, &matrix, 2, 1.0).unwrap();
        let expected = f64::ln((1.0 / 6.0) / (0.5 * 0.5));
        assert!((report.per_topic[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn n_top_two_is_single_pair() {
        let matrix = CorpusMatrix::from_rows(
            vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)]],
            3,
        );
        let model = model_with_phi(vec![vec![0.7, 0.2, 0.1]]);
        let report = coherence(&model, &matrix, 2, 1.0).unwrap();
        // P(w0) = 2/3, P(w1) = 3/3, P(both) = 2/3.
        let expected = f64::ln((2.0 / 3.0) / ((2.0 / 3.0) * 1.0));
        assert!((report.per_topic[0] - expected).abs() < 1e-12);
        assert_eq!(report.n_top, 2);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        let matrix = CorpusMatrix::from_rows(vec![vec![(0, 1), (1, 1)]], 2);
        let model = model_with_phi(vec![vec![0.5, 0.5]]);
        assert!(coherence(&model, &matrix, 1, 1.0).is_err());
        assert!(coherence(&model, &matrix, 3, 1.0).is_err());
        assert!(coherence(&model, &matrix, 2, 0.0).is_err());
    }
}
