//! Sentence-to-aspect classification: the single-model threshold rule and
//! the four-branch ensemble.
//!
//! Ensemble order: (1) a unique mode among the member models' argmax
//! aspects wins outright; (2) otherwise the single most confident
//! probability wins if it clears the threshold; (3) otherwise aspects are
//! scored by custom-word-list hits with seeded tie-breaking; (4) otherwise
//! the sentence is Null.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AspectCatalog, CustomWordList};
use crate::corpus::Vocabulary;
use crate::topics::{infer_theta, FittedTopicModel};
use crate::util::fnv1a64_strs;

/// Threshold below which a single model refuses to classify.
pub const DEFAULT_GAMMA: f64 = 0.7;

/// The label a sentence receives: a catalog aspect or Null.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AspectLabel {
    Aspect(usize),
    Null,
}

impl AspectLabel {
    pub fn as_label<'a>(&self, catalog: &'a AspectCatalog) -> Option<&'a str> {
        match self {
            AspectLabel::Aspect(id) => Some(catalog.label(*id)),
            AspectLabel::Null => None,
        }
    }
}

/// Which rule of the ensemble produced the label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleBranch {
    Mode,
    Confidence,
    WordList,
    NullFallback,
}

/// An ensemble decision with the branch that made it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AspectDecision {
    pub label: AspectLabel,
    pub branch: EnsembleBranch,
}

/// Ensemble parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleTopicConfig {
    /// Confidence threshold in (0, 1).
    pub gamma: f64,
    /// Seed for the word-list tie-break.
    pub tie_seed: u64,
}

impl Default for EnsembleTopicConfig {
    fn default() -> Self {
        Self {
            gamma: DEFAULT_GAMMA,
            tie_seed: 0,
        }
    }
}

/// One member model's inference mapped onto catalog aspects.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedInference {
    pub aspect_probs: Vec<f64>,
    pub oov: bool,
}

impl MappedInference {
    fn argmax(&self) -> Option<(usize, f64)> {
        self.aspect_probs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, &p)| (i, p))
    }
}

/// Infer and map one model's aspect distribution for a token sequence.
pub fn map_inference(
    model: &FittedTopicModel,
    model_index: usize,
    tokens: &[String],
    vocabulary: &Vocabulary,
    catalog: &AspectCatalog,
) -> MappedInference {
    let inference = infer_theta(model, tokens, vocabulary);
    MappedInference {
        aspect_probs: catalog.map_distribution(model_index, &inference.theta),
        oov: inference.oov,
    }
}

/// Single-model rule: the argmax aspect if its mapped probability strictly
/// exceeds `gamma`, otherwise Null. Out-of-vocabulary sentences are Null.
pub fn classify_single(
    model: &FittedTopicModel,
    model_index: usize,
    tokens: &[String],
    vocabulary: &Vocabulary,
    catalog: &AspectCatalog,
    gamma: f64,
) -> AspectLabel {
    let mapped = map_inference(model, model_index, tokens, vocabulary, catalog);
    classify_single_mapped(&mapped, gamma)
}

pub(crate) fn classify_single_mapped(mapped: &MappedInference, gamma: f64) -> AspectLabel {
    if mapped.oov {
        return AspectLabel::Null;
    }
    match mapped.argmax() {
        Some((aspect, p)) if p > gamma => AspectLabel::Aspect(aspect),
        _ => AspectLabel::Null,
    }
}

/// Ensemble rule over all member models for one sentence.
pub fn classify_ensemble(
    models: &[FittedTopicModel],
    tokens: &[String],
    vocabulary: &Vocabulary,
    catalog: &AspectCatalog,
    wordlists: &[CustomWordList],
    config: &EnsembleTopicConfig,
) -> AspectDecision {
    let mapped: Vec<MappedInference> = models
        .iter()
        .enumerate()
        .map(|(m, model)| map_inference(model, m, tokens, vocabulary, catalog))
        .collect();
    classify_ensemble_mapped(&mapped, tokens, wordlists, config)
}

/// The ensemble decision rule on already-inferred per-model distributions.
/// Exposed separately so the branch logic can be exercised on crafted
/// fixtures.
pub fn classify_ensemble_mapped(
    per_model: &[MappedInference],
    tokens: &[String],
    wordlists: &[CustomWordList],
    config: &EnsembleTopicConfig,
) -> AspectDecision {
    assert!(per_model.len() >= 2, "ensemble needs at least two models");
    assert!(
        config.gamma > 0.0 && config.gamma < 1.0,
        "gamma must lie in (0, 1)"
    );
    let num_aspects = per_model
        .iter()
        .map(|m| m.aspect_probs.len())
        .max()
        .unwrap_or(0);

    // Branch 1: unique mode of the voting models' argmax aspects.
    let votes: Vec<usize> = per_model
        .iter()
        .filter(|m| !m.oov)
        .filter_map(|m| m.argmax().map(|(aspect, _)| aspect))
        .collect();
    if !votes.is_empty() {
        let mut counts = vec![0usize; num_aspects];
        for &v in &votes {
            counts[v] += 1;
        }
        let best = *counts.iter().max().expect("non-empty counts");
        let modal: Vec<usize> = (0..num_aspects).filter(|&a| counts[a] == best).collect();
        if modal.len() == 1 && best > 0 {
            return AspectDecision {
                label: AspectLabel::Aspect(modal[0]),
                branch: EnsembleBranch::Mode,
            };
        }
    }

    // Branch 2: the most confident model classifies if it clears gamma.
    let mut best: Option<(usize, f64)> = None;
    for mapped in per_model.iter().filter(|m| !m.oov) {
        if let Some((aspect, p)) = mapped.argmax() {
            if best.map_or(true, |(_, bp)| p > bp) {
                best = Some((aspect, p));
            }
        }
    }
    if let Some((aspect, p)) = best {
        if p > config.gamma {
            return AspectDecision {
                label: AspectLabel::Aspect(aspect),
                branch: EnsembleBranch::Confidence,
            };
        }
    }

    // Branch 3: custom-word-list scores, counting token occurrences.
    let mut scores = vec![0usize; wordlists.len()];
    for token in tokens {
        for (list, score) in wordlists.iter().zip(scores.iter_mut()) {
            if list.contains(token) {
                *score += 1;
            }
        }
    }
    let top = scores.iter().copied().max().unwrap_or(0);
    if top > 0 {
        let tied: Vec<usize> = (0..scores.len()).filter(|&a| scores[a] == top).collect();
        let aspect = if tied.len() == 1 {
            tied[0]
        } else {
            // "Arbitrary" tie-break made reproducible: seeded by the
            // configured tie seed and the token content.
            let salt = fnv1a64_strs(tokens.iter());
            let mut rng = ChaCha8Rng::seed_from_u64(config.tie_seed ^ salt);
            tied[rng.gen_range(0..tied.len())]
        };
        return AspectDecision {
            label: AspectLabel::Aspect(aspect),
            branch: EnsembleBranch::WordList,
        };
    }

    AspectDecision {
        label: AspectLabel::Null,
        branch: EnsembleBranch::NullFallback,
    }
}
