//! End-to-end preprocessing: reviews in, prepared corpus out.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    build_vocabulary, normalize, partition, split_sentences, tokenize, AbbreviationList,
    CorpusError, CorpusMatrix, Review, ReviewSentence, SplitSpec, StandardizationMap,
    StemmerKind, StopwordList, Vocabulary,
};

/// Version tag written into serialized corpora.
pub const CORPUS_FORMAT_VERSION: u32 = 1;

/// Knobs for the preprocessing pipeline.
#[derive(Debug, Clone)]
pub struct PreprocessOptions {
    pub stemmer: StemmerKind,
    pub stopwords: StopwordList,
    pub abbreviations: AbbreviationList,
    pub standardization: StandardizationMap,
    /// Terms in fewer distinct sentences than this are dropped from the
    /// vocabulary.
    pub min_sentence_frequency: u32,
    /// Drop exact-duplicate sentence strings within an entity.
    pub dedupe_exact: bool,
    pub split: SplitSpec,
}

impl Default for PreprocessOptions {
    fn default() -> Self {
        Self {
            stemmer: StemmerKind::Porter,
            stopwords: StopwordList::default(),
            abbreviations: AbbreviationList::default(),
            standardization: StandardizationMap::empty(),
            min_sentence_frequency: 3,
            dedupe_exact: true,
            split: SplitSpec {
                holdout_count: 0,
                seed: 17,
            },
        }
    }
}

/// A fully preprocessed corpus: all sentences, the learning/held-out
/// partition, and the vocabulary and count matrix built over the learning
/// half only.
#[derive(Debug, Clone)]
pub struct PreparedCorpus {
    pub sentences: Vec<ReviewSentence>,
    /// Indices into `sentences`; ascending.
    pub learning: Vec<usize>,
    /// Indices into `sentences`; ascending, disjoint from `learning`.
    pub holdout: Vec<usize>,
    pub vocabulary: Vocabulary,
    /// Rows parallel to `learning`.
    pub matrix: CorpusMatrix,
    /// Exact-duplicate sentences dropped per entity.
    pub duplicates_dropped: usize,
}

impl PreparedCorpus {
    pub fn learning_sentences(&self) -> impl Iterator<Item = &ReviewSentence> {
        self.learning.iter().map(|&i| &self.sentences[i])
    }

    pub fn holdout_sentences(&self) -> impl Iterator<Item = &ReviewSentence> {
        self.holdout.iter().map(|&i| &self.sentences[i])
    }
}

/// Run splitting, normalization, tokenization, dedup, partitioning and
/// vocabulary construction over a batch of reviews.
pub fn preprocess(
    reviews: &[Review],
    options: &PreprocessOptions,
) -> Result<PreparedCorpus, CorpusError> {
    let mut sentences: Vec<ReviewSentence> = Vec::new();
    let mut seen: std::collections::HashSet<(String, String)> = std::collections::HashSet::new();
    let mut duplicates_dropped = 0usize;

    for review in reviews {
        if review.text.trim().is_empty() {
            return Err(CorpusError::Validation(format!(
                "review {:?} has empty text",
                review.review_id
            )));
        }
        for (position, raw) in split_sentences(review, &options.abbreviations)
            .into_iter()
            .enumerate()
        {
            if options.dedupe_exact {
                let key = (review.entity_id.clone(), raw.clone());
                if !seen.insert(key) {
                    duplicates_dropped += 1;
                    continue;
                }
            }
            let normalized = normalize(&raw, &options.standardization);
            let tokens = tokenize(&normalized, &options.stopwords, options.stemmer);
            sentences.push(ReviewSentence {
                sentence_id: ReviewSentence::make_id(&review.review_id, position),
                review_id: review.review_id.clone(),
                entity_id: review.entity_id.clone(),
                position,
                raw_text: raw,
                tokens,
            });
        }
    }
    if sentences.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }

    let (learning, holdout) = partition(sentences.len(), &options.split)?;
    let learning_sentences: Vec<ReviewSentence> =
        learning.iter().map(|&i| sentences[i].clone()).collect();
    let (vocabulary, matrix) =
        build_vocabulary(&learning_sentences, options.min_sentence_frequency)?;

    Ok(PreparedCorpus {
        sentences,
        learning,
        holdout,
        vocabulary,
        matrix,
        duplicates_dropped,
    })
}

#[derive(Serialize, Deserialize)]
struct SerializedCorpus {
    format_version: u32,
    vocabulary: Vec<String>,
    sentence_frequency: Vec<u32>,
    sentences: Vec<ReviewSentence>,
    learning: Vec<usize>,
    holdout: Vec<usize>,
    /// Sparse triplets `(learning_row, term, count)` in row-major order.
    counts: Vec<(u32, u32, u32)>,
    num_terms: usize,
    duplicates_dropped: usize,
}

impl PreparedCorpus {
    pub fn to_json(&self) -> String {
        let mut counts = Vec::new();
        for (r, row) in self.matrix.rows().iter().enumerate() {
            for &(t, c) in row {
                counts.push((r as u32, t, c));
            }
        }
        let serialized = SerializedCorpus {
            format_version: CORPUS_FORMAT_VERSION,
            vocabulary: self.vocabulary.terms().to_vec(),
            sentence_frequency: self.vocabulary.sentence_frequencies().to_vec(),
            sentences: self.sentences.clone(),
            learning: self.learning.clone(),
            holdout: self.holdout.clone(),
            counts,
            num_terms: self.matrix.num_terms(),
            duplicates_dropped: self.duplicates_dropped,
        };
        serde_json::to_string_pretty(&serialized).expect("corpus serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<Self, CorpusError> {
        let raw: SerializedCorpus = serde_json::from_str(json).map_err(|e| CorpusError::Parse {
            format: super::InputFormat::Jsonl,
            message: e.to_string(),
        })?;
        if raw.format_version != CORPUS_FORMAT_VERSION {
            return Err(CorpusError::Validation(format!(
                "unsupported corpus format_version {} (expected {})",
                raw.format_version, CORPUS_FORMAT_VERSION
            )));
        }
        let vocabulary = Vocabulary::from_parts(raw.vocabulary, raw.sentence_frequency);
        let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); raw.learning.len()];
        for (r, t, c) in raw.counts {
            let r = r as usize;
            if r >= rows.len() {
                return Err(CorpusError::Validation(format!(
                    "count triplet row {r} out of range"
                )));
            }
            rows[r].push((t, c));
        }
        let matrix = CorpusMatrix::from_rows(rows, raw.num_terms);
        Ok(Self {
            sentences: raw.sentences,
            learning: raw.learning,
            holdout: raw.holdout,
            vocabulary,
            matrix,
            duplicates_dropped: raw.duplicates_dropped,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), CorpusError> {
        std::fs::write(path, self.to_json()).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let content = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&content)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reviews() -> Vec<Review> {
        vec![
            Review {
                review_id: "r1".into(),
                entity_id: "air1".into(),
                date: None,
                rating: Some(2.0),
                text: "The flight was delayed by 2.5 hours. The seats were cramped!".into(),
            },
            Review {
                review_id: "r2".into(),
                entity_id: "air1".into(),
                date: None,
                rating: Some(5.0),
                text: "Great crew. The crew was friendly. The seats were fine.".into(),
            },
            Review {
                review_id: "r3".into(),
                entity_id: "air2".into(),
                date: None,
                rating: None,
                text: "Delayed again. Crew was rude. Seats cramped as always.".into(),
            },
        ]
    }

    fn options() -> PreprocessOptions {
        PreprocessOptions {
            min_sentence_frequency: 1,
            split: SplitSpec {
                holdout_count: 2,
                seed: 7,
            },
            ..PreprocessOptions::default()
        }
    }

    #[test]
    fn preprocess_builds_partitioned_corpus() {
        let corpus = preprocess(&reviews(), &options()).unwrap();
        assert_eq!(corpus.sentences.len(), 8);
        assert_eq!(corpus.holdout.len(), 2);
        assert_eq!(corpus.learning.len(), 6);
        assert_eq!(corpus.matrix.num_sentences(), 6);
        assert!(corpus.vocabulary.index_of("delay").is_some());
        // Column sums equal retained token counts.
        for (row, sentence) in corpus.learning_sentences().enumerate() {
            let retained = corpus.vocabulary.map_tokens(&sentence.tokens).len() as u32;
            assert_eq!(corpus.matrix.row_token_count(row), retained);
        }
    }

    #[test]
    fn serialization_is_byte_identical_across_runs() {
        let a = preprocess(&reviews(), &options()).unwrap().to_json();
        let b = preprocess(&reviews(), &options()).unwrap().to_json();
        assert_eq!(a, b);
        let restored = PreparedCorpus::from_json(&a).unwrap();
        assert_eq!(restored.to_json(), a);
    }

    #[test]
    fn dedupe_drops_repeated_sentences_within_entity() {
        let mut rs = reviews();
        rs.push(Review {
            review_id: "r4".into(),
            entity_id: "air1".into(),
            date: None,
            rating: None,
            text: "Great crew. Great crew.".into(),
        });
        let corpus = preprocess(&rs, &options()).unwrap();
        // "Great crew." appears in r2 (as "Great crew.") and twice in r4.
        assert_eq!(corpus.duplicates_dropped, 2);
    }

    #[test]
    fn format_version_is_checked() {
        let corpus = preprocess(&reviews(), &options()).unwrap();
        let tampered = corpus.to_json().replace(
            "\"format_version\": 1",
            "\"format_version\": 99",
        );
        assert!(PreparedCorpus::from_json(&tampered).is_err());
    }
}
