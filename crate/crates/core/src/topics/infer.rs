//! Topic inference for sentences outside the training corpus.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{gibbs::gibbs_fold_in, plsa::fold_in, vi::vi_fold_in, Algorithm, FittedTopicModel};
use crate::corpus::{CorpusMatrix, Vocabulary};
use crate::util::fnv1a64_strs;

/// A per-sentence topic distribution plus an out-of-vocabulary marker.
/// When every token is out of vocabulary the distribution is uniform and
/// `oov` is set; the ensemble classifier treats that as a Null signal.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaInference {
    pub theta: Vec<f64>,
    pub oov: bool,
}

/// Infer P(topic | sentence) for a token sequence under a fitted model.
///
/// pLSA folds the sentence in by running EM over theta with phi frozen;
/// LDA-GS runs a short Gibbs chain over the sentence's own assignments with
/// the fitted topic-word distributions frozen; LDA-VI runs the variational
/// E-step for one document. Deterministic: the Gibbs path derives its seed
/// from the model seed and the token content, so results do not depend on
/// call order.
pub fn infer_theta(
    model: &FittedTopicModel,
    tokens: &[String],
    vocabulary: &Vocabulary,
) -> ThetaInference {
    let k = model.num_topics();
    let indices = vocabulary.map_tokens(tokens);
    if indices.is_empty() {
        return ThetaInference {
            theta: vec![1.0 / k as f64; k],
            oov: true,
        };
    }
    let counts = CorpusMatrix::row_from_token_indices(&indices);
    let mut theta = match model.algorithm {
        Algorithm::PlsaEm => fold_in(&model.phi, &counts),
        Algorithm::LdaVi => vi_fold_in(&model.phi, model.config.alpha, &counts),
        Algorithm::LdaGs => {
            let salt = fnv1a64_strs(tokens.iter());
            let mut rng = ChaCha8Rng::seed_from_u64(model.config.seed ^ salt);
            gibbs_fold_in(&model.phi, model.config.alpha, &indices, &mut rng)
        }
    };
    // Guard the normalization contract against numerical drift.
    if theta.iter().any(|v| !v.is_finite()) {
        theta = vec![1.0 / k as f64; k];
    } else {
        super::normalize_in_place(&mut theta);
    }
    ThetaInference { theta, oov: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ReviewSentence;
    use crate::topics::{fit_lda_gibbs, fit_lda_vi, fit_plsa, ModelConfig};

    fn vocab_and_matrix() -> (Vocabulary, CorpusMatrix) {
        let sentences: Vec<ReviewSentence> = [
            vec!["food", "meal"],
            vec!["meal", "snack"],
            vec!["delay", "hour"],
            vec!["hour", "late"],
        ]
        .iter()
        .enumerate()
        .map(|(i, tokens)| ReviewSentence {
            sentence_id: format!("r:{i}"),
            review_id: "r".into(),
            entity_id: "e".into(),
            position: i,
            raw_text: tokens.join(" "),
            tokens: tokens.iter().map(|t| t.to_string()).collect(),
        })
        .collect();
        let (vocab, matrix) = crate::corpus::build_vocabulary(&sentences, 1).unwrap();
        (vocab, matrix)
    }

    fn tokens(words: &[&str]) -> Vec<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn plsa_fold_in_matches_training_theta() {
        let (vocab, matrix) = vocab_and_matrix();
        let mut config = ModelConfig::new(Algorithm::PlsaEm, 2).with_seed(7);
        config.convergence_tolerance = 1e-10;
        let model = fit_plsa(&matrix, &config, &vocab.fingerprint()).unwrap();
        let inferred = infer_theta(&model, &tokens(&["food", "meal"]), &vocab);
        assert!(!inferred.oov);
        let train_row = &model.theta_train[0];
        let tv: f64 = inferred
            .theta
            .iter()
            .zip(train_row)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv < 1e-3, "total variation {tv} too large: {inferred:?} vs {train_row:?}");
    }

    #[test]
    fn oov_sentence_yields_uniform_with_flag() {
        let (vocab, matrix) = vocab_and_matrix();
        let config = ModelConfig::new(Algorithm::PlsaEm, 2).with_seed(7);
        let model = fit_plsa(&matrix, &config, &vocab.fingerprint()).unwrap();
        for words in [vec![], vec!["burger", "stale"]] {
            let inferred = infer_theta(&model, &tokens(&words), &vocab);
            assert!(inferred.oov);
            assert_eq!(inferred.theta, vec![0.5, 0.5]);
        }
    }

    #[test]
    fn k1_model_returns_unit_vector() {
        let (vocab, matrix) = vocab_and_matrix();
        let config = ModelConfig::new(Algorithm::PlsaEm, 1).with_seed(7);
        let model = fit_plsa(&matrix, &config, &vocab.fingerprint()).unwrap();
        let inferred = infer_theta(&model, &tokens(&["food"]), &vocab);
        assert_eq!(inferred.theta, vec![1.0]);
    }

    #[test]
    fn all_algorithms_normalize_and_are_deterministic() {
        let (vocab, matrix) = vocab_and_matrix();
        let fp = vocab.fingerprint();
        let mut gibbs = ModelConfig::new(Algorithm::LdaGs, 2).with_seed(5);
        gibbs.max_iterations = 60;
        gibbs.burn_in = 30;
        gibbs.sample_lag = 5;
        let models = vec![
            fit_plsa(&matrix, &ModelConfig::new(Algorithm::PlsaEm, 2).with_seed(5), &fp).unwrap(),
            fit_lda_vi(&matrix, &ModelConfig::new(Algorithm::LdaVi, 2).with_seed(5), &fp).unwrap(),
            fit_lda_gibbs(&matrix, &gibbs, &fp).unwrap(),
        ];
        let sentence = tokens(&["delay", "late", "hour"]);
        for model in &models {
            let a = infer_theta(model, &sentence, &vocab);
            let b = infer_theta(model, &sentence, &vocab);
            assert_eq!(a, b, "{:?} inference not deterministic", model.algorithm);
            assert!((a.theta.iter().sum::<f64>() - 1.0).abs() < 1e-6);
            assert!(a.theta.iter().all(|v| v.is_finite() && *v >= 0.0));
        }
    }

    #[test]
    fn infer_tracks_dominant_topic_on_separated_corpus() {
        let (vocab, matrix) = vocab_and_matrix();
        let fp = vocab.fingerprint();
        let mut gibbs = ModelConfig::new(Algorithm::LdaGs, 2).with_seed(11);
        gibbs.max_iterations = 200;
        gibbs.burn_in = 100;
        gibbs.sample_lag = 2;
        gibbs.alpha = 0.1;
        let model = fit_lda_gibbs(&matrix, &gibbs, &fp).unwrap();
        let food = infer_theta(&model, &tokens(&["food", "meal", "snack"]), &vocab);
        let delay = infer_theta(&model, &tokens(&["delay", "hour", "late"]), &vocab);
        let argmax = |v: &[f64]| {
            v.iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap()
                .0
        };
        assert_ne!(argmax(&food.theta), argmax(&delay.theta));
    }
}
