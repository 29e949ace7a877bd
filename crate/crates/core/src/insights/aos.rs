//! Aspect-based opinion summaries and strength/weakness verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::InsightsError;
use crate::sentiment::Category;

/// Net share beyond which an aspect counts as a strength or weakness.
pub const DEFAULT_VERDICT_MARGIN: f64 = 0.10;

/// A sentence after both classification stages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSentence {
    pub sentence_id: String,
    pub entity_id: String,
    /// Aspect label, or `None` for Null.
    pub aspect: Option<String>,
    pub sentiment: Category,
    /// Stemmed tokens carried through for bi-gram analysis.
    pub tokens: Vec<String>,
}

/// Sentence counts for one aspect of one entity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AspectSentimentCounts {
    pub positive: usize,
    pub neutral: usize,
    pub negative: usize,
}

impl AspectSentimentCounts {
    pub fn total(&self) -> usize {
        self.positive + self.neutral + self.negative
    }

    /// `(positive, neutral, negative)` shares; zero counts give zeros.
    pub fn proportions(&self) -> (f64, f64, f64) {
        let total = self.total();
        if total == 0 {
            return (0.0, 0.0, 0.0);
        }
        let t = total as f64;
        (
            self.positive as f64 / t,
            self.neutral as f64 / t,
            self.negative as f64 / t,
        )
    }

    fn add(&mut self, category: Category) {
        match category {
            Category::Positive => self.positive += 1,
            Category::Neutral => self.neutral += 1,
            Category::Negative => self.negative += 1,
        }
    }
}

/// Per-entity aspect-based opinion summary. Null-labeled sentences are
/// excluded from the aspect counts and reported separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpinionSummary {
    pub entity_id: String,
    pub per_aspect: BTreeMap<String, AspectSentimentCounts>,
    pub total_classified: usize,
    pub null_excluded: usize,
}

impl OpinionSummary {
    pub fn is_empty(&self) -> bool {
        self.per_aspect.is_empty()
    }
}

/// Aggregate one entity's labeled sentences into its opinion summary.
pub fn aggregate_aos(sentences: &[LabeledSentence], entity_id: &str) -> OpinionSummary {
    let mut per_aspect: BTreeMap<String, AspectSentimentCounts> = BTreeMap::new();
    let mut total_classified = 0usize;
    let mut null_excluded = 0usize;
    for sentence in sentences.iter().filter(|s| s.entity_id == entity_id) {
        match &sentence.aspect {
            Some(aspect) => {
                per_aspect
                    .entry(aspect.clone())
                    .or_default()
                    .add(sentence.sentiment);
                total_classified += 1;
            }
            None => null_excluded += 1,
        }
    }
    OpinionSummary {
        entity_id: entity_id.to_string(),
        per_aspect,
        total_classified,
        null_excluded,
    }
}

/// Strength, weakness, or neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictClass {
    Strength,
    Weakness,
    Mixed,
}

impl VerdictClass {
    pub fn glyph(self) -> &'static str {
        match self {
            VerdictClass::Strength => "+",
            VerdictClass::Weakness => "-",
            VerdictClass::Mixed => "~",
        }
    }
}

/// One aspect's verdict for one entity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub aspect: String,
    pub classification: VerdictClass,
    pub positive_share: f64,
    pub negative_share: f64,
    pub margin: f64,
}

/// Classify each aspect of a summary: strength iff the positive share
/// exceeds the negative share by more than `margin`, weakness for the
/// reverse, mixed otherwise (strict inequalities).
pub fn verdicts(summary: &OpinionSummary, margin: f64) -> Result<Vec<Verdict>, InsightsError> {
    if !(0.0..1.0).contains(&margin) {
        return Err(InsightsError::Validation(format!(
            "margin {margin} outside [0, 1)"
        )));
    }
    Ok(summary
        .per_aspect
        .iter()
        .map(|(aspect, counts)| {
            let (pos, _, neg) = counts.proportions();
            let classification = if pos - neg > margin {
                VerdictClass::Strength
            } else if neg - pos > margin {
                VerdictClass::Weakness
            } else {
                VerdictClass::Mixed
            };
            Verdict {
                aspect: aspect.clone(),
                classification,
                positive_share: pos,
                negative_share: neg,
                margin,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentence(id: &str, entity: &str, aspect: Option<&str>, sentiment: Category) -> LabeledSentence {
        LabeledSentence {
            sentence_id: id.to_string(),
            entity_id: entity.to_string(),
            aspect: aspect.map(|a| a.to_string()),
            sentiment,
            tokens: vec![],
        }
    }

    #[test]
    fn proportions_are_simple_shares() {
        use Category::*;
        let mut sentences = Vec::new();
        for (i, cat) in [Positive; 6].iter().enumerate() {
            sentences.push(sentence(&format!("p{i}"), "air1", Some("seat"), *cat));
        }
        sentences.push(sentence("n0", "air1", Some("seat"), Neutral));
        for i in 0..3 {
            sentences.push(sentence(&format!("g{i}"), "air1", Some("seat"), Negative));
        }
        let summary = aggregate_aos(&sentences, "air1");
        let counts = summary.per_aspect["seat"];
        assert_eq!((counts.positive, counts.neutral, counts.negative), (6, 1, 3));
        let (p, n, g) = counts.proportions();
        assert!((p - 0.6).abs() < 1e-9 && (n - 0.1).abs() < 1e-9 && (g - 0.3).abs() < 1e-9);
    }

    #[test]
    fn null_sentences_are_excluded_and_counted() {
        use Category::*;
        let sentences = vec![
            sentence("a", "air1", Some("food"), Positive),
            sentence("b", "air1", None, Negative),
            sentence("c", "air1", None, Neutral),
            sentence("d", "air2", Some("food"), Negative),
        ];
        let summary = aggregate_aos(&sentences, "air1");
        assert_eq!(summary.total_classified, 1);
        assert_eq!(summary.null_excluded, 2);
        // Totals identity: classified + null = entity sentences.
        assert_eq!(summary.total_classified + summary.null_excluded, 3);
        // Other entities are untouched.
        assert!(!summary.per_aspect.contains_key("delay"));
    }

    #[test]
    fn entity_without_sentences_yields_empty_summary() {
        let summary = aggregate_aos(&[], "ghost");
        assert!(summary.is_empty());
        assert_eq!(summary.null_excluded, 0);
    }

    #[test]
    fn aos_matches_brute_force_group_by() {
        use Category::*;
        let mut sentences = Vec::new();
        let cats = [Positive, Negative, Neutral, Positive, Negative];
        let aspects = ["food", "seat", "food", "seat", "food"];
        for i in 0..40 {
            sentences.push(sentence(
                &format!("s{i}"),
                if i % 3 == 0 { "a" } else { "b" },
                Some(aspects[i % aspects.len()]),
                cats[i % cats.len()],
            ));
        }
        let summary = aggregate_aos(&sentences, "b");
        // Independent group-by.
        let mut expected: BTreeMap<(String, u8), usize> = BTreeMap::new();
        for s in sentences.iter().filter(|s| s.entity_id == "b") {
            let code = match s.sentiment {
                Positive => 0,
                Neutral => 1,
                Negative => 2,
            };
            *expected
                .entry((s.aspect.clone().unwrap(), code))
                .or_default() += 1;
        }
        for (aspect, counts) in &summary.per_aspect {
            assert_eq!(
                counts.positive,
                expected.get(&(aspect.clone(), 0)).copied().unwrap_or(0)
            );
            assert_eq!(
                counts.neutral,
                expected.get(&(aspect.clone(), 1)).copied().unwrap_or(0)
            );
            assert_eq!(
                counts.negative,
                expected.get(&(aspect.clone(), 2)).copied().unwrap_or(0)
            );
        }
    }

    fn summary_with(pos: usize, neu: usize, neg: usize) -> OpinionSummary {
        let mut per_aspect = BTreeMap::new();
        per_aspect.insert(
            "seat".to_string(),
            AspectSentimentCounts {
                positive: pos,
                neutral: neu,
                negative: neg,
            },
        );
        OpinionSummary {
            entity_id: "air1".into(),
            per_aspect,
            total_classified: pos + neu + neg,
            null_excluded: 0,
        }
    }

    #[test]
    fn verdict_margin_rule() {
        let strength = verdicts(&summary_with(60, 10, 30), 0.10).unwrap();
        assert_eq!(strength[0].classification, VerdictClass::Strength);
        let mixed = verdicts(&summary_with(42, 13, 45), 0.10).unwrap();
        assert_eq!(mixed[0].classification, VerdictClass::Mixed);
        let weakness = verdicts(&summary_with(20, 10, 70), 0.10).unwrap();
        assert_eq!(weakness[0].classification, VerdictClass::Weakness);
        // Equal shares at margin zero are mixed (strict inequality).
        let boundary = verdicts(&summary_with(35, 30, 35), 0.0).unwrap();
        assert_eq!(boundary[0].classification, VerdictClass::Mixed);
    }

    #[test]
    fn verdicts_are_scale_invariant() {
        for scale in [1usize, 2, 7, 100] {
            let v = verdicts(&summary_with(6 * scale, 1 * scale, 3 * scale), 0.10).unwrap();
            assert_eq!(v[0].classification, VerdictClass::Strength);
        }
    }
}
