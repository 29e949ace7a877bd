//! pLSA fitted by expectation-maximization.
//!
//! Each EM sweep evaluates the per-(sentence, word) posterior over topics
//! from the current parameters and re-estimates phi and theta from the
//! posterior-weighted counts. The recorded objective is the corpus
//! log-likelihood of the parameters after each update, so the trace is
//! non-decreasing up to floating-point slack.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    normalize_in_place, random_stochastic_rows, Algorithm, FittedTopicModel, ModelConfig,
    TopicError,
};
use crate::corpus::CorpusMatrix;

pub(crate) fn relative_change(current: f64, previous: f64) -> f64 {
    (current - previous).abs() / previous.abs().max(1e-12)
}

/// Corpus log-likelihood of (phi, theta) under the mixture model.
pub(crate) fn corpus_log_likelihood(
    matrix: &CorpusMatrix,
    phi: &[Vec<f64>],
    theta: &[Vec<f64>],
) -> f64 {
    let mut ll = 0.0;
    for (r, row) in matrix.rows().iter().enumerate() {
        for &(w, c) in row {
            let w = w as usize;
            let mix: f64 = phi
                .iter()
                .zip(&theta[r])
                .map(|(phi_k, t)| phi_k[w] * t)
                .sum();
            ll += f64::from(c) * mix.max(f64::MIN_POSITIVE).ln();
        }
    }
    ll
}

/// Fit pLSA with EM until the relative log-likelihood change drops below
/// the configured tolerance or `max_iterations` sweeps have run.
pub fn fit_plsa(
    matrix: &CorpusMatrix,
    config: &ModelConfig,
    vocabulary_fingerprint: &str,
) -> Result<FittedTopicModel, TopicError> {
    if config.algorithm != Algorithm::PlsaEm {
        return Err(TopicError::AlgorithmMismatch {
            expected: Algorithm::PlsaEm,
            found: config.algorithm,
        });
    }
    config.validate(matrix)?;

    let k = config.k;
    let num_terms = matrix.num_terms();
    let num_sentences = matrix.num_sentences();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut phi = random_stochastic_rows(k, num_terms, &mut rng);
    let mut theta = random_stochastic_rows(num_sentences, k, &mut rng);

    let mut trace = Vec::new();
    let mut previous: Option<f64> = None;
    let mut posterior = vec![0.0; k];
    for _ in 0..config.max_iterations {
        let mut phi_acc = vec![vec![0.0; num_terms]; k];
        let mut theta_acc = vec![vec![0.0; k]; num_sentences];
        for (r, row) in matrix.rows().iter().enumerate() {
            for &(w, c) in row {
                let w = w as usize;
                for (p, (phi_k, t)) in posterior.iter_mut().zip(phi.iter().zip(&theta[r])) {
                    *p = phi_k[w] * t;
                }
                normalize_in_place(&mut posterior);
                let c = f64::from(c);
                for ((p, phi_row), t) in
                    posterior.iter().zip(phi_acc.iter_mut()).zip(&mut theta_acc[r])
                {
                    phi_row[w] += c * p;
                    *t += c * p;
                }
            }
        }
        for row in &mut phi_acc {
            normalize_in_place(row);
        }
        for row in &mut theta_acc {
            normalize_in_place(row);
        }
        phi = phi_acc;
        theta = theta_acc;

        let ll = corpus_log_likelihood(matrix, &phi, &theta);
        trace.push(ll);
        if let Some(prev) = previous {
            if relative_change(ll, prev) < config.convergence_tolerance {
                break;
            }
        }
        previous = Some(ll);
    }

    Ok(FittedTopicModel {
        algorithm: Algorithm::PlsaEm,
        phi,
        theta_train: theta,
        objective_trace: trace,
        config: config.clone(),
        vocabulary_fingerprint: vocabulary_fingerprint.to_string(),
    })
}

/// Fold a new sentence into a fitted pLSA model: EM over theta only with
/// phi frozen. Used for held-out inference, which plain pLSA does not
/// otherwise support.
pub(crate) fn fold_in(phi: &[Vec<f64>], counts: &[(u32, u32)]) -> Vec<f64> {
    let k = phi.len();
    let mut theta = vec![1.0 / k as f64; k];
    let mut posterior = vec![0.0; k];
    for _ in 0..200 {
        let mut acc = vec![0.0; k];
        for &(w, c) in counts {
            let w = w as usize;
            for (p, (phi_k, t)) in posterior.iter_mut().zip(phi.iter().zip(&theta)) {
                *p = phi_k[w] * t;
            }
            normalize_in_place(&mut posterior);
            for (a, p) in acc.iter_mut().zip(&posterior) {
                *a += f64::from(c) * p;
            }
        }
        normalize_in_place(&mut acc);
        let delta: f64 = acc
            .iter()
            .zip(&theta)
            .map(|(a, t)| (a - t).abs())
            .sum();
        theta = acc;
        if delta < 1e-10 {
            break;
        }
    }
    theta
}
