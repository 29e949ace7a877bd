//! Threshold conversion, calibration and the voting ensemble.

use serde::{Deserialize, Serialize};

use super::{Analyzer, SentimentError};

/// Sentence sentiment category, ordered Negative < Neutral < Positive so
/// monotonicity of the threshold rule can be asserted directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Negative,
    Neutral,
    Positive,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::Negative => "negative",
            Category::Neutral => "neutral",
            Category::Positive => "positive",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_lowercase().as_str() {
            "negative" | "neg" => Some(Category::Negative),
            "neutral" | "neu" => Some(Category::Neutral),
            "positive" | "pos" => Some(Category::Positive),
            _ => None,
        }
    }
}

/// Per-analyzer positive/negative cutoffs; the closed band between them is
/// Neutral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPair {
    pub minus: f64,
    pub plus: f64,
}

impl ThresholdPair {
    pub fn new(minus: f64, plus: f64) -> Result<Self, SentimentError> {
        if minus > plus {
            return Err(SentimentError::Validation(format!(
                "negative cutoff {minus} exceeds positive cutoff {plus}"
            )));
        }
        Ok(Self { minus, plus })
    }

    /// Defaults for the scaled and rule-augmented styles.
    pub fn scaled_default() -> Self {
        Self {
            minus: -0.05,
            plus: 0.05,
        }
    }

    /// Default for the summation style: a [-1, 1] neutral band.
    pub fn sum_default() -> Self {
        Self {
            minus: -1.0,
            plus: 1.0,
        }
    }
}

/// One threshold pair per analyzer, in analyzer order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentThresholds(pub Vec<ThresholdPair>);

/// Positive above the positive cutoff, Negative below the negative cutoff,
/// Neutral on the closed band in between (boundaries included).
pub fn to_category(value: f64, thresholds: ThresholdPair) -> Category {
    if value > thresholds.plus {
        Category::Positive
    } else if value >= thresholds.minus {
        Category::Neutral
    } else {
        Category::Negative
    }
}

/// Observed raw-score range per analyzer over a calibration corpus; feeds
/// the min-max normalization of the tie-break.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzerCalibration {
    /// `(min, max)` per analyzer, in analyzer order.
    pub ranges: Vec<(f64, f64)>,
    /// Analyzers whose range collapsed to a point; their normalized score
    /// is defined as 0.
    pub degenerate: Vec<String>,
}

impl AnalyzerCalibration {
    /// Min-max normalize a raw score to [-1, 1]; 0 for degenerate ranges.
    pub fn normalize(&self, analyzer_index: usize, value: f64) -> f64 {
        let (min, max) = self.ranges[analyzer_index];
        if max <= min {
            return 0.0;
        }
        2.0 * (value - min) / (max - min) - 1.0
    }

    pub fn is_degenerate(&self, analyzer_index: usize) -> bool {
        let (min, max) = self.ranges[analyzer_index];
        max <= min
    }
}

/// Score every sentence with every analyzer and record the per-analyzer
/// min/max. Required before ensemble classification; the calibration
/// corpus is the set of sentences being classified in the current run.
pub fn calibrate(analyzers: &[Analyzer], sentences: &[String]) -> Result<AnalyzerCalibration, SentimentError> {
    if sentences.is_empty() {
        return Err(SentimentError::Validation(
            "calibration corpus is empty".into(),
        ));
    }
    let mut ranges = Vec::with_capacity(analyzers.len());
    let mut degenerate = Vec::new();
    for analyzer in analyzers {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for sentence in sentences {
            let v = analyzer.score(sentence).value;
            min = min.min(v);
            max = max.max(v);
        }
        if max <= min {
            degenerate.push(analyzer.name.clone());
        }
        ranges.push((min, max));
    }
    Ok(AnalyzerCalibration { ranges, degenerate })
}

/// How the ensemble reached its category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionPath {
    Mode,
    Tiebreak,
}

/// Scores, per-analyzer categories and the ensemble verdict for one
/// sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentVerdict {
    pub scores: Vec<f64>,
    pub categories: Vec<Category>,
    pub ensemble: Category,
    pub decision_path: DecisionPath,
}

/// Classify one sentence with the full ensemble: plurality vote over the
/// per-analyzer categories; if no unique mode exists, the analyzer with
/// the largest normalized |score| decides.
pub fn classify_sentiment_ensemble(
    sentence: &str,
    analyzers: &[Analyzer],
    thresholds: &SentimentThresholds,
    calibration: &AnalyzerCalibration,
) -> SentimentVerdict {
    assert_eq!(analyzers.len(), thresholds.0.len(), "threshold per analyzer");
    assert_eq!(analyzers.len(), calibration.ranges.len(), "calibration per analyzer");
    let scores: Vec<f64> = analyzers.iter().map(|a| a.score(sentence).value).collect();
    let categories: Vec<Category> = scores
        .iter()
        .zip(&thresholds.0)
        .map(|(&v, &t)| to_category(v, t))
        .collect();

    if let Some(mode) = unique_mode(&categories) {
        return SentimentVerdict {
            scores,
            categories,
            ensemble: mode,
            decision_path: DecisionPath::Mode,
        };
    }

    let mut best_index = 0usize;
    let mut best_abs = f64::NEG_INFINITY;
    for (i, &v) in scores.iter().enumerate() {
        let normalized = calibration.normalize(i, v).abs();
        if normalized > best_abs {
            best_abs = normalized;
            best_index = i;
        }
    }
    let ensemble = categories[best_index];
    SentimentVerdict {
        scores,
        categories,
        ensemble,
        decision_path: DecisionPath::Tiebreak,
    }
}

fn unique_mode(categories: &[Category]) -> Option<Category> {
    let all = [Category::Negative, Category::Neutral, Category::Positive];
    let counts: Vec<usize> = all
        .iter()
        .map(|c| categories.iter().filter(|&&x| x == *c).count())
        .collect();
    let best = *counts.iter().max()?;
    let modal: Vec<Category> = all
        .into_iter()
        .zip(&counts)
        .filter(|&(_, &n)| n == best)
        .map(|(c, _)| c)
        .collect();
    (modal.len() == 1 && best > 0).then(|| modal[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sentiment::{AnalyzerKind, SentimentLexicon};

    #[test]
    fn category_boundaries_belong_to_neutral() {
        let t = ThresholdPair::scaled_default();
        assert_eq!(to_category(0.05, t), Category::Neutral);
        assert_eq!(to_category(-0.05, t), Category::Neutral);
        assert_eq!(to_category(0.0500001, t), Category::Positive);
        assert_eq!(to_category(-0.0500001, t), Category::Negative);
        let sum = ThresholdPair::sum_default();
        assert_eq!(to_category(1.0, sum), Category::Neutral);
        assert_eq!(to_category(1.5, sum), Category::Positive);
        assert_eq!(to_category(-2.0, sum), Category::Negative);
    }

    #[test]
    fn to_category_is_monotone() {
        let t = ThresholdPair::scaled_default();
        let mut values: Vec<f64> = (-100..=100).map(|i| i as f64 / 100.0).collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for pair in values.windows(2) {
            assert!(to_category(pair[0], t) <= to_category(pair[1], t));
        }
    }

    #[test]
    fn normalization_formula() {
        let calibration = AnalyzerCalibration {
            ranges: vec![(-2.0, 6.0)],
            degenerate: vec![],
        };
        // v = 2: 2 * (4 / 8) - 1 = 0.
        assert_eq!(calibration.normalize(0, 2.0), 0.0);
        assert_eq!(calibration.normalize(0, -2.0), -1.0);
        assert_eq!(calibration.normalize(0, 6.0), 1.0);
    }

    #[test]
    fn degenerate_range_normalizes_to_zero() {
        let calibration = AnalyzerCalibration {
            ranges: vec![(0.3, 0.3)],
            degenerate: vec!["sum".into()],
        };
        assert_eq!(calibration.normalize(0, 0.3), 0.0);
        assert!(calibration.is_degenerate(0));
    }

    fn test_analyzers() -> Vec<Analyzer> {
        let sum_lexicon = SentimentLexicon::from_entries(
            [("good".to_string(), 3.0), ("bad".to_string(), -3.0)],
            -5.0,
            5.0,
        )
        .unwrap();
        let mut unit = SentimentLexicon::from_entries(
            [("good".to_string(), 0.7), ("bad".to_string(), -0.7)],
            -1.0,
            1.0,
        )
        .unwrap();
        unit.add_negators(["not"]);
        vec![
            Analyzer::new("sum", AnalyzerKind::Sum, sum_lexicon),
            Analyzer::new("scaled", AnalyzerKind::Scaled, unit.clone()),
            Analyzer::new("rule", AnalyzerKind::RuleAugmented, unit),
        ]
    }

    fn test_thresholds() -> SentimentThresholds {
        SentimentThresholds(vec![
            ThresholdPair::sum_default(),
            ThresholdPair::scaled_default(),
            ThresholdPair::scaled_default(),
        ])
    }

    #[test]
    fn calibration_ranges_cover_corpus_extremes() {
        let analyzers = test_analyzers();
        let corpus: Vec<String> = ["good good", "bad bad bad", "so so", "good", "not good"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let calibration = calibrate(&analyzers, &corpus).unwrap();
        for (i, &(min, max)) in calibration.ranges.iter().enumerate() {
            assert!(min < max, "analyzer {i} degenerate unexpectedly");
            let mut attained_min = false;
            let mut attained_max = false;
            for sentence in &corpus {
                let n = calibration.normalize(i, analyzers[i].score(sentence).value);
                assert!((-1.0..=1.0).contains(&n));
                if n == -1.0 {
                    attained_min = true;
                }
                if n == 1.0 {
                    attained_max = true;
                }
            }
            assert!(attained_min && attained_max, "endpoints attained for {i}");
        }
    }

    #[test]
    fn degenerate_analyzer_flagged_with_warning() {
        let analyzers = test_analyzers();
        let corpus: Vec<String> = ["filler words", "nothing scored"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let calibration = calibrate(&analyzers, &corpus).unwrap();
        assert_eq!(calibration.degenerate.len(), 3);
        assert!(calibration.is_degenerate(0));
    }

    #[test]
    fn unanimous_and_two_of_three_take_mode_path() {
        let analyzers = test_analyzers();
        let corpus: Vec<String> = ["good good good", "bad bad", "good", "not good", "meh"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let calibration = calibrate(&analyzers, &corpus).unwrap();
        let verdict = classify_sentiment_ensemble(
            "good good good",
            &analyzers,
            &test_thresholds(),
            &calibration,
        );
        assert_eq!(verdict.ensemble, Category::Positive);
        assert_eq!(verdict.decision_path, DecisionPath::Mode);
    }

    #[test]
    fn full_disagreement_resolved_by_largest_normalized_score() {
        // Three analyzers with deliberately conflicting lexicons so the
        // categories come out Neutral / Positive / Negative.
        let sum_lexicon =
            SentimentLexicon::from_entries([("meh".to_string(), 0.5)], -5.0, 5.0).unwrap();
        let scaled_lexicon =
            SentimentLexicon::from_entries([("meh".to_string(), 0.6)], -1.0, 1.0).unwrap();
        let rule_lexicon =
            SentimentLexicon::from_entries([("meh".to_string(), -0.8)], -1.0, 1.0).unwrap();
        let analyzers = vec![
            Analyzer::new("sum", AnalyzerKind::Sum, sum_lexicon),
            Analyzer::new("scaled", AnalyzerKind::Scaled, scaled_lexicon),
            Analyzer::new("rule", AnalyzerKind::RuleAugmented, rule_lexicon),
        ];
        let calibration = AnalyzerCalibration {
            ranges: vec![(-2.0, 2.0), (-1.0, 1.0), (-1.0, 0.0)],
            degenerate: vec![],
        };
        let verdict =
            classify_sentiment_ensemble("meh", &analyzers, &test_thresholds(), &calibration);
        assert_eq!(
            verdict.categories,
            vec![Category::Neutral, Category::Positive, Category::Negative]
        );
        // Normalized scores: 0.25, 0.6, ~0.596 -> the scaled analyzer wins.
        assert_eq!(verdict.ensemble, Category::Positive);
        assert_eq!(verdict.decision_path, DecisionPath::Tiebreak);
    }

    #[test]
    fn unique_mode_helper() {
        use Category::*;
        assert_eq!(unique_mode(&[Positive, Positive, Negative]), Some(Positive));
        assert_eq!(unique_mode(&[Positive, Neutral, Negative]), None);
        assert_eq!(unique_mode(&[Neutral, Neutral, Neutral]), Some(Neutral));
    }
}
