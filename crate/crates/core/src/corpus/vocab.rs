//! Vocabulary and the sparse word-by-sentence count matrix feeding the
//! topic models.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{CorpusError, ReviewSentence};
use crate::util::fnv1a64_strs;

/// Bijection between terms and dense indices `0..U`, with per-term
/// sentence frequencies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    sentence_frequency: Vec<u32>,
    index: HashMap<String, u32>,
}

impl Vocabulary {
    pub(crate) fn from_parts(terms: Vec<String>, sentence_frequency: Vec<u32>) -> Self {
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        Self {
            terms,
            sentence_frequency,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, index: usize) -> &str {
        &self.terms[index]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn index_of(&self, term: &str) -> Option<u32> {
        self.index.get(term).copied()
    }

    pub fn sentence_frequency(&self, index: usize) -> u32 {
        self.sentence_frequency[index]
    }

    pub fn sentence_frequencies(&self) -> &[u32] {
        &self.sentence_frequency
    }

    /// Stable hash of the term list; fitted models carry it so that a model
    /// is never applied against the wrong vocabulary.
    pub fn fingerprint(&self) -> String {
        format!("{:016x}", fnv1a64_strs(&self.terms))
    }

    /// Map a token sequence onto term indices, dropping out-of-vocabulary
    /// tokens.
    pub fn map_tokens(&self, tokens: &[String]) -> Vec<u32> {
        tokens
            .iter()
            .filter_map(|t| self.index_of(t))
            .collect()
    }
}

/// Sparse term-count matrix: for each sentence, sorted `(term, count)`
/// pairs with counts >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusMatrix {
    rows: Vec<Vec<(u32, u32)>>,
    num_terms: usize,
}

impl CorpusMatrix {
    pub fn from_rows(rows: Vec<Vec<(u32, u32)>>, num_terms: usize) -> Self {
        debug_assert!(rows
            .iter()
            .all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
                && r.iter().all(|&(t, c)| (t as usize) < num_terms && c >= 1)));
        Self { rows, num_terms }
    }

    /// Build one row from an unsorted token-index sequence.
    pub fn row_from_token_indices(tokens: &[u32]) -> Vec<(u32, u32)> {
        let mut sorted = tokens.to_vec();
        sorted.sort_unstable();
        let mut row: Vec<(u32, u32)> = Vec::new();
        for t in sorted {
            match row.last_mut() {
                Some(last) if last.0 == t => last.1 += 1,
                _ => row.push((t, 1)),
            }
        }
        row
    }

    /// Number of sentences R.
    pub fn num_sentences(&self) -> usize {
        self.rows.len()
    }

    /// Number of distinct terms U.
    pub fn num_terms(&self) -> usize {
        self.num_terms
    }

    /// The `(term, count)` pairs of sentence `r`.
    pub fn row(&self, r: usize) -> &[(u32, u32)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<(u32, u32)>] {
        &self.rows
    }

    /// Token count B_r of sentence `r` after vocabulary filtering.
    pub fn row_token_count(&self, r: usize) -> u32 {
        self.rows[r].iter().map(|&(_, c)| c).sum()
    }

    pub fn total_tokens(&self) -> u64 {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|&(_, c)| u64::from(c))
            .sum()
    }

    pub fn count(&self, term: u32, sentence: usize) -> u32 {
        self.rows[sentence]
            .binary_search_by_key(&term, |&(t, _)| t)
            .map(|i| self.rows[sentence][i].1)
            .unwrap_or(0)
    }
}

/// Build the vocabulary and count matrix over preprocessed sentences.
///
/// Terms occurring in fewer than `min_sentence_frequency` distinct sentences
/// are excluded. Term indices follow first-appearance order in sentence
/// order, which makes the construction deterministic regardless of how the
/// per-sentence token work was scheduled.
pub fn build_vocabulary(
    sentences: &[ReviewSentence],
    min_sentence_frequency: u32,
) -> Result<(Vocabulary, CorpusMatrix), CorpusError> {
    if min_sentence_frequency < 1 {
        return Err(CorpusError::Validation(
            "min_sentence_frequency must be >= 1".into(),
        ));
    }
    // First pass: sentence frequency per term, in first-appearance order.
    let mut order: Vec<String> = Vec::new();
    let mut df: HashMap<String, u32> = HashMap::new();
    for sentence in sentences {
        let mut seen_here: Vec<&String> = Vec::new();
        for token in &sentence.tokens {
            if seen_here.iter().any(|t| *t == token) {
                continue;
            }
            seen_here.push(token);
            match df.get_mut(token) {
                Some(n) => *n += 1,
                None => {
                    df.insert(token.clone(), 1);
                    order.push(token.clone());
                }
            }
        }
    }
    let mut terms = Vec::new();
    let mut frequencies = Vec::new();
    for term in order {
        let f = df[&term];
        if f >= min_sentence_frequency {
            terms.push(term);
            frequencies.push(f);
        }
    }
    let vocabulary = Vocabulary::from_parts(terms, frequencies);

    let rows: Vec<Vec<(u32, u32)>> = sentences
        .iter()
        .map(|s| {
            let indices = vocabulary.map_tokens(&s.tokens);
            CorpusMatrix::row_from_token_indices(&indices)
        })
        .collect();
    if rows.iter().all(|r| r.is_empty()) {
        return Err(CorpusError::EmptyCorpus);
    }
    let matrix = CorpusMatrix::from_rows(rows, vocabulary.len());
    Ok((vocabulary, matrix))
}
