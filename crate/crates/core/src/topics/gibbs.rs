//! LDA fitted by collapsed Gibbs sampling.
//!
//! Token-level topic assignments are resampled sweep by sweep from the
//! collapsed conditionals; after burn-in, every `sample_lag`-th sweep
//! contributes its count tables to the posterior estimate. Phi and theta
//! are the smoothed expectations computed from the averaged counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Algorithm, FittedTopicModel, ModelConfig, TopicError};
use crate::corpus::CorpusMatrix;

pub(crate) struct GibbsState {
    num_topics: usize,
    num_terms: usize,
    alpha: f64,
    beta: f64,
    /// Tokens of each sentence, expanded from the sparse counts.
    tokens: Vec<Vec<u32>>,
    /// Current topic of each token, parallel to `tokens`.
    assignments: Vec<Vec<usize>>,
    doc_topic: Vec<Vec<u32>>,
    topic_word: Vec<Vec<u32>>,
    topic_totals: Vec<u32>,
}

impl GibbsState {
    pub(crate) fn init(
        matrix: &CorpusMatrix,
        num_topics: usize,
        alpha: f64,
        beta: f64,
        rng: &mut ChaCha8Rng,
    ) -> Self {
        let num_terms = matrix.num_terms();
        let num_sentences = matrix.num_sentences();
        let mut tokens: Vec<Vec<u32>> = Vec::with_capacity(num_sentences);
        for row in matrix.rows() {
            let mut sentence = Vec::new();
            for &(w, c) in row {
                for _ in 0..c {
                    sentence.push(w);
                }
            }
            tokens.push(sentence);
        }
        let mut doc_topic = vec![vec![0u32; num_topics]; num_sentences];
        let mut topic_word = vec![vec![0u32; num_terms]; num_topics];
        let mut topic_totals = vec![0u32; num_topics];
        let mut assignments: Vec<Vec<usize>> = Vec::with_capacity(num_sentences);
        for (r, sentence) in tokens.iter().enumerate() {
            let mut assigned = Vec::with_capacity(sentence.len());
            for &w in sentence {
                let topic = rng.gen_range(0..num_topics);
                assigned.push(topic);
                doc_topic[r][topic] += 1;
                topic_word[topic][w as usize] += 1;
                topic_totals[topic] += 1;
            }
            assignments.push(assigned);
        }
        Self {
            num_topics,
            num_terms,
            alpha,
            beta,
            tokens,
            assignments,
            doc_topic,
            topic_word,
            topic_totals,
        }
    }

    /// One full sweep over all tokens. Returns the predictive
    /// pseudo-log-likelihood accumulated at the moment each token was
    /// resampled.
    pub(crate) fn sweep(&mut self, rng: &mut ChaCha8Rng) -> f64 {
        let k_alpha = self.num_topics as f64 * self.alpha;
        let u_beta = self.num_terms as f64 * self.beta;
        let mut weights = vec![0.0; self.num_topics];
        let mut pseudo_ll = 0.0;
        for r in 0..self.tokens.len() {
            let doc_len = self.tokens[r].len();
            if doc_len == 0 {
                continue;
            }
            for i in 0..doc_len {
                let w = self.tokens[r][i] as usize;
                let old = self.assignments[r][i];
                self.doc_topic[r][old] -= 1;
                self.topic_word[old][w] -= 1;
                self.topic_totals[old] -= 1;

                let mut total = 0.0;
                for (k, weight) in weights.iter_mut().enumerate() {
                    let doc_part = f64::from(self.doc_topic[r][k]) + self.alpha;
                    let word_part = (f64::from(self.topic_word[k][w]) + self.beta)
                        / (f64::from(self.topic_totals[k]) + u_beta);
                    *weight = doc_part * word_part;
                    total += *weight;
                }
                pseudo_ll += (total / (doc_len as f64 - 1.0 + k_alpha)).ln();

                let mut draw = rng.gen::<f64>() * total;
                let mut new = self.num_topics - 1;
                for (k, &weight) in weights.iter().enumerate() {
                    draw -= weight;
                    if draw <= 0.0 {
                        new = k;
                        break;
                    }
                }
                self.assignments[r][i] = new;
                self.doc_topic[r][new] += 1;
                self.topic_word[new][w] += 1;
                self.topic_totals[new] += 1;
            }
            debug_assert_eq!(
                self.doc_topic[r].iter().map(|&n| u64::from(n)).sum::<u64>(),
                doc_len as u64
            );
        }
        pseudo_ll
    }

    /// Count-conservation identities: per-sentence topic counts sum to the
    /// sentence length and per-topic word counts sum to the topic total.
    pub(crate) fn counts_conserved(&self) -> bool {
        let docs_ok = self
            .tokens
            .iter()
            .zip(&self.doc_topic)
            .all(|(sentence, counts)| {
                counts.iter().map(|&n| n as usize).sum::<usize>() == sentence.len()
            });
        let topics_ok = self
            .topic_word
            .iter()
            .zip(&self.topic_totals)
            .all(|(row, &total)| row.iter().map(|&n| u64::from(n)).sum::<u64>() == u64::from(total));
        let grand: u64 = self.topic_totals.iter().map(|&n| u64::from(n)).sum();
        let tokens: u64 = self.tokens.iter().map(|s| s.len() as u64).sum();
        docs_ok && topics_ok && grand == tokens
    }

    fn accumulate(&self, doc_topic: &mut [Vec<f64>], topic_word: &mut [Vec<f64>]) {
        for (acc, row) in doc_topic.iter_mut().zip(&self.doc_topic) {
            for (a, &n) in acc.iter_mut().zip(row) {
                *a += f64::from(n);
            }
        }
        for (acc, row) in topic_word.iter_mut().zip(&self.topic_word) {
            for (a, &n) in acc.iter_mut().zip(row) {
                *a += f64::from(n);
            }
        }
    }
}

/// Fit LDA with a collapsed Gibbs sampler. Deterministic for a fixed seed.
pub fn fit_lda_gibbs(
    matrix: &CorpusMatrix,
    config: &ModelConfig,
    vocabulary_fingerprint: &str,
) -> Result<FittedTopicModel, TopicError> {
    if config.algorithm != Algorithm::LdaGs {
        return Err(TopicError::AlgorithmMismatch {
            expected: Algorithm::LdaGs,
            found: config.algorithm,
        });
    }
    config.validate(matrix)?;

    let k = config.k;
    let num_terms = matrix.num_terms();
    let num_sentences = matrix.num_sentences();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = GibbsState::init(matrix, k, config.alpha, config.beta, &mut rng);

    let mut trace = Vec::with_capacity(config.max_iterations);
    let mut doc_topic_acc = vec![vec![0.0; k]; num_sentences];
    let mut topic_word_acc = vec![vec![0.0; num_terms]; k];
    let mut samples = 0usize;
    for sweep in 1..=config.max_iterations {
        trace.push(state.sweep(&mut rng));
        if sweep > config.burn_in && (sweep - config.burn_in) % config.sample_lag == 0 {
            state.accumulate(&mut doc_topic_acc, &mut topic_word_acc);
            samples += 1;
        }
    }
    if samples == 0 {
        // Lag larger than the post-burn-in window; fall back to the final
        // state as the single sample.
        state.accumulate(&mut doc_topic_acc, &mut topic_word_acc);
        samples = 1;
    }
    debug_assert!(state.counts_conserved());

    let samples = samples as f64;
    let u_beta = num_terms as f64 * config.beta;
    let k_alpha = k as f64 * config.alpha;
    let phi: Vec<Vec<f64>> = topic_word_acc
        .iter()
        .map(|row| {
            let total: f64 = row.iter().sum::<f64>() / samples;
            row.iter()
                .map(|&n| (n / samples + config.beta) / (total + u_beta))
                .collect()
        })
        .collect();
    let theta: Vec<Vec<f64>> = doc_topic_acc
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let b_r = f64::from(matrix.row_token_count(r));
            row.iter()
                .map(|&n| (n / samples + config.alpha) / (b_r + k_alpha))
                .collect()
        })
        .collect();

    Ok(FittedTopicModel {
        algorithm: Algorithm::LdaGs,
        phi,
        theta_train: theta,
        objective_trace: trace,
        config: config.clone(),
        vocabulary_fingerprint: vocabulary_fingerprint.to_string(),
    })
}

/// Infer theta for an unseen token sequence with the topic-word
/// distributions frozen: a short Gibbs run over the sentence's own
/// assignments only.
pub(crate) fn gibbs_fold_in(
    phi: &[Vec<f64>],
    alpha: f64,
    tokens: &[u32],
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    const BURN_IN: usize = 50;
    const SAMPLES: usize = 25;
    const LAG: usize = 2;

    let k = phi.len();
    let mut counts = vec![0u32; k];
    let mut assignments = Vec::with_capacity(tokens.len());
    for _ in tokens {
        let topic = rng.gen_range(0..k);
        assignments.push(topic);
        counts[topic] += 1;
    }
    let mut acc = vec![0.0; k];
    let mut weights = vec![0.0; k];
    let mut taken = 0usize;
    for sweep in 1..=(BURN_IN + SAMPLES * LAG) {
        for (i, &w) in tokens.iter().enumerate() {
            let old = assignments[i];
            counts[old] -= 1;
            let mut total = 0.0;
            for (topic, weight) in weights.iter_mut().enumerate() {
                *weight = (f64::from(counts[topic]) + alpha) * phi[topic][w as usize];
                total += *weight;
            }
            let mut draw = rng.gen::<f64>() * total;
            let mut new = k - 1;
            for (topic, &weight) in weights.iter().enumerate() {
                draw -= weight;
                if draw <= 0.0 {
                    new = topic;
                    break;
                }
            }
            assignments[i] = new;
            counts[new] += 1;
        }
        if sweep > BURN_IN && (sweep - BURN_IN) % LAG == 0 {
            for (a, &n) in acc.iter_mut().zip(&counts) {
                *a += f64::from(n);
            }
            taken += 1;
        }
    }
    let taken = taken.max(1) as f64;
    let denom = tokens.len() as f64 + k as f64 * alpha;
    acc.iter()
        .map(|&n| (n / taken + alpha) / denom)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gibbs_config(k: usize, seed: u64) -> ModelConfig {
        let mut config = ModelConfig::new(Algorithm::LdaGs, k).with_seed(seed);
        config.max_iterations = 60;
        config.burn_in = 30;
        config.sample_lag = 5;
        config
    }

    #[test]
    fn single_word_rows_normalize_and_average_to_symmetry() {
        // One sentence ["word"]; the vocabulary carries a second unused
        // term so K = 2 stays within the K <= U bound.
        let matrix = CorpusMatrix::from_rows(vec![vec![(0, 1)]], 2);
        let mut sum_first = 0.0;
        for seed in 0..200u64 {
            let mut config = gibbs_config(2, seed);
            config.alpha = 1.0;
            config.beta = 1.0;
            let model = fit_lda_gibbs(&matrix, &config, "fp").unwrap();
            let row = &model.theta_train[0];
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            sum_first += row[0];
        }
        let mean_first = sum_first / 200.0;
        assert!(
            (mean_first - 0.5).abs() <= 0.05,
            "seed-averaged first-topic mass {mean_first} not symmetric"
        );
    }

    #[test]
    fn counts_conserved_across_sweeps() {
        let matrix = CorpusMatrix::from_rows(
            vec![
                vec![(0, 2), (1, 1)],
                vec![(1, 1), (2, 3)],
                vec![(0, 1), (3, 1)],
            ],
            4,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut state = GibbsState::init(&matrix, 3, 0.5, 0.1, &mut rng);
        assert!(state.counts_conserved());
        for _ in 0..20 {
            state.sweep(&mut rng);
            assert!(state.counts_conserved());
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let matrix = CorpusMatrix::from_rows(
            vec![vec![(0, 2), (1, 1)], vec![(1, 2), (2, 1)]],
            3,
        );
        let config = gibbs_config(2, 99);
        let a = fit_lda_gibbs(&matrix, &config, "fp").unwrap();
        let b = fit_lda_gibbs(&matrix, &config, "fp").unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let c = fit_lda_gibbs(&matrix, &gibbs_config(2, 100), "fp").unwrap();
        assert_ne!(a.to_json(), c.to_json());
    }

    #[test]
    fn rows_are_stochastic() {
        let matrix = CorpusMatrix::from_rows(
            vec![vec![(0, 2), (1, 1)], vec![(1, 2), (2, 1)], vec![]],
            3,
        );
        let model = fit_lda_gibbs(&matrix, &gibbs_config(2, 5), "fp").unwrap();
        for row in model.phi.iter().chain(&model.theta_train) {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!(row.iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
        // The empty sentence gets the uniform prior mean.
        let empty_row = &model.theta_train[2];
        assert!((empty_row[0] - 0.5).abs() < 1e-12);
    }
}
