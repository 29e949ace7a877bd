//! Frequent-bigram root-cause analysis over sentiment-filtered sentences.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::InsightsError;

/// A bigram is frequent when it appears in more than this share of the
/// analyzed sentences.
pub const DEFAULT_BIGRAM_THRESHOLD: f64 = 0.15;

/// One frequent bigram: adjacent stemmed-token pair, raw occurrence count,
/// containing-sentence count and share.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BigramStat {
    pub first: String,
    pub second: String,
    /// Occurrences with multiplicity, used for ordering.
    pub count: usize,
    /// Distinct sentences containing the pair.
    pub containing: usize,
    /// `containing / analyzed`.
    pub share: f64,
}

/// The frequent bigrams of one (aspect, sentiment) slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BigramReport {
    pub bigrams: Vec<BigramStat>,
    pub threshold: f64,
    pub analyzed_sentences: usize,
}

/// Count adjacent token pairs over the given sentences and keep the pairs
/// whose containing-sentence share strictly exceeds `threshold`, sorted by
/// raw count descending with lexicographic tie-break.
pub fn frequent_bigrams(
    sentences: &[Vec<String>],
    threshold: f64,
) -> Result<BigramReport, InsightsError> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(InsightsError::Validation(format!(
            "threshold {threshold} outside (0, 1]"
        )));
    }
    let analyzed = sentences.len();
    let mut occurrences: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut containing: BTreeMap<(String, String), usize> = BTreeMap::new();
    for tokens in sentences {
        let mut seen_here: Vec<(String, String)> = Vec::new();
        for pair in tokens.windows(2) {
            let key = (pair[0].clone(), pair[1].clone());
            *occurrences.entry(key.clone()).or_default() += 1;
            if !seen_here.contains(&key) {
                *containing.entry(key.clone()).or_default() += 1;
                seen_here.push(key);
            }
        }
    }
    let mut bigrams: Vec<BigramStat> = occurrences
        .into_iter()
        .filter_map(|((first, second), count)| {
            let contained = containing[&(first.clone(), second.clone())];
            let share = if analyzed == 0 {
                0.0
            } else {
                contained as f64 / analyzed as f64
            };
            (share > threshold).then(|| BigramStat {
                first,
                second,
                count,
                containing: contained,
                share,
            })
        })
        .collect();
    bigrams.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then_with(|| a.first.cmp(&b.first))
            .then_with(|| a.second.cmp(&b.second))
    });
    Ok(BigramReport {
        bigrams,
        threshold,
        analyzed_sentences: analyzed,
    })
}
