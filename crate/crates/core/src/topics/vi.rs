//! LDA fitted by mean-field variational inference.
//!
//! The variational family is a Dirichlet per sentence (gamma), a Dirichlet
//! per topic (lambda) and per-token topic responsibilities. Every update is
//! an exact coordinate-ascent maximizer of the evidence lower bound, and the
//! ELBO is evaluated once per outer iteration at a consistent state, so the
//! recorded trace is non-decreasing up to floating-point slack. Gamma rows
//! warm-start across iterations; re-initializing them would break the
//! ascent guarantee.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::{digamma, ln_gamma};

use super::plsa::relative_change;
use super::{Algorithm, FittedTopicModel, ModelConfig, TopicError};
use crate::corpus::CorpusMatrix;

const INNER_ITERATIONS: usize = 20;
const INNER_TOLERANCE: f64 = 1e-6;

/// Expected log of a Dirichlet-distributed row: psi(x_i) - psi(sum x).
fn expected_log(row: &[f64], out: &mut [f64]) {
    let total: f64 = row.iter().sum();
    let psi_total = digamma(total);
    for (o, &x) in out.iter_mut().zip(row) {
        *o = digamma(x) - psi_total;
    }
}

fn normalize_from_log(log_weights: &mut [f64]) {
    let max = log_weights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    for w in log_weights.iter_mut() {
        *w = (*w - max).exp();
        total += *w;
    }
    for w in log_weights.iter_mut() {
        *w /= total;
    }
}

/// Dirichlet cross-entropy pieces of the ELBO for one row:
/// E[log p(row | concentration)] - E[log q(row)].
fn dirichlet_elbo_terms(row: &[f64], concentration: f64, elog: &[f64]) -> f64 {
    let dim = row.len() as f64;
    let total: f64 = row.iter().sum();
    let mut value = ln_gamma(dim * concentration) - dim * ln_gamma(concentration);
    value -= ln_gamma(total);
    for (&x, &e) in row.iter().zip(elog) {
        value += (concentration - 1.0) * e;
        value += ln_gamma(x);
        value -= (x - 1.0) * e;
    }
    value
}

/// Fit LDA by coordinate-ascent variational inference until the relative
/// ELBO change drops below the configured tolerance.
pub fn fit_lda_vi(
    matrix: &CorpusMatrix,
    config: &ModelConfig,
    vocabulary_fingerprint: &str,
) -> Result<FittedTopicModel, TopicError> {
    if config.algorithm != Algorithm::LdaVi {
        return Err(TopicError::AlgorithmMismatch {
            expected: Algorithm::LdaVi,
            found: config.algorithm,
        });
    }
    config.validate(matrix)?;

    let k = config.k;
    let num_terms = matrix.num_terms();
    let num_sentences = matrix.num_sentences();
    let alpha = config.alpha;
    let beta = config.beta;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    // Seeded positive noise breaks topic symmetry; the first M-step
    // replaces lambda with beta + expected counts.
    let mut lambda: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..num_terms).map(|_| beta + rng.gen_range(0.01..1.0)).collect())
        .collect();
    let mut gamma: Vec<Vec<f64>> = (0..num_sentences)
        .map(|r| {
            let spread = f64::from(matrix.row_token_count(r)) / k as f64;
            vec![alpha + spread; k]
        })
        .collect();
    // Responsibilities per (sentence, distinct word), laid out like the
    // sparse matrix rows.
    let mut resp: Vec<Vec<Vec<f64>>> = matrix
        .rows()
        .iter()
        .map(|row| vec![vec![0.0; k]; row.len()])
        .collect();

    let mut elog_phi = vec![vec![0.0; num_terms]; k];
    let mut elog_theta = vec![0.0; k];
    let mut trace: Vec<f64> = Vec::new();
    let mut previous: Option<f64> = None;

    for _ in 0..config.max_iterations {
        for (row, out) in lambda.iter().zip(elog_phi.iter_mut()) {
            expected_log(row, out);
        }

        // E-step: per sentence, alternate responsibilities and gamma.
        for (r, row) in matrix.rows().iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            for _ in 0..INNER_ITERATIONS {
                expected_log(&gamma[r], &mut elog_theta);
                for (i, &(w, _)) in row.iter().enumerate() {
                    let w = w as usize;
                    for (topic, weight) in resp[r][i].iter_mut().enumerate() {
                        *weight = elog_theta[topic] + elog_phi[topic][w];
                    }
                    normalize_from_log(&mut resp[r][i]);
                }
                let mut new_gamma = vec![alpha; k];
                for (i, &(_, c)) in row.iter().enumerate() {
                    for (g, &p) in new_gamma.iter_mut().zip(&resp[r][i]) {
                        *g += f64::from(c) * p;
                    }
                }
                let change: f64 = new_gamma
                    .iter()
                    .zip(&gamma[r])
                    .map(|(n, o)| (n - o).abs())
                    .sum();
                gamma[r] = new_gamma;
                if change < INNER_TOLERANCE {
                    break;
                }
            }
        }

        // M-step: lambda from expected counts.
        for row in &mut lambda {
            row.iter_mut().for_each(|x| *x = beta);
        }
        for (r, row) in matrix.rows().iter().enumerate() {
            for (i, &(w, c)) in row.iter().enumerate() {
                let w = w as usize;
                for (topic, &p) in resp[r][i].iter().enumerate() {
                    lambda[topic][w] += f64::from(c) * p;
                }
            }
        }

        // ELBO at the current (resp, gamma, lambda).
        for (row, out) in lambda.iter().zip(elog_phi.iter_mut()) {
            expected_log(row, out);
        }
        let mut elbo = 0.0;
        for (row, elog) in lambda.iter().zip(&elog_phi) {
            elbo += dirichlet_elbo_terms(row, beta, elog);
        }
        for (r, row) in matrix.rows().iter().enumerate() {
            expected_log(&gamma[r], &mut elog_theta);
            elbo += dirichlet_elbo_terms(&gamma[r], alpha, &elog_theta);
            for (i, &(w, c)) in row.iter().enumerate() {
                let w = w as usize;
                for (topic, &p) in resp[r][i].iter().enumerate() {
                    if p > 0.0 {
                        elbo += f64::from(c)
                            * p
                            * (elog_theta[topic] + elog_phi[topic][w] - p.ln());
                    }
                }
            }
        }
        trace.push(elbo);
        if let Some(prev) = previous {
            if relative_change(elbo, prev) < config.convergence_tolerance {
                break;
            }
        }
        previous = Some(elbo);
    }

    let phi = lambda
        .into_iter()
        .map(|mut row| {
            super::normalize_in_place(&mut row);
            row
        })
        .collect();
    let theta_train = gamma
        .into_iter()
        .map(|mut row| {
            super::normalize_in_place(&mut row);
            row
        })
        .collect();

    Ok(FittedTopicModel {
        algorithm: Algorithm::LdaVi,
        phi,
        theta_train,
        objective_trace: trace,
        config: config.clone(),
        vocabulary_fingerprint: vocabulary_fingerprint.to_string(),
    })
}

/// Variational E-step for a single unseen token sequence with the fitted
/// topic-word distributions treated as fixed point estimates.
pub(crate) fn vi_fold_in(phi: &[Vec<f64>], alpha: f64, counts: &[(u32, u32)]) -> Vec<f64> {
    let k = phi.len();
    let total: u32 = counts.iter().map(|&(_, c)| c).sum();
    let mut gamma = vec![alpha + f64::from(total) / k as f64; k];
    let mut elog_theta = vec![0.0; k];
    let mut resp = vec![0.0; k];
    for _ in 0..100 {
        expected_log(&gamma, &mut elog_theta);
        let mut new_gamma = vec![alpha; k];
        for &(w, c) in counts {
            let w = w as usize;
            for (topic, weight) in resp.iter_mut().enumerate() {
                *weight = elog_theta[topic] + phi[topic][w].max(f64::MIN_POSITIVE).ln();
            }
            normalize_from_log(&mut resp);
            for (g, &p) in new_gamma.iter_mut().zip(&resp) {
                *g += f64::from(c) * p;
            }
        }
        let change: f64 = new_gamma
            .iter()
            .zip(&gamma)
            .map(|(n, o)| (n - o).abs())
            .sum();
        gamma = new_gamma;
        if change < 1e-8 {
            break;
        }
    }
    super::normalize_in_place(&mut gamma);
    gamma
}
