//! One-vs-rest counting and the harmonic mean.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::EvalError;

/// Which label space is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Aspect,
    Sentiment,
}

/// Harmonic mean of precision and recall.
pub fn f1_score(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        return 0.0;
    }
    2.0 * precision * recall / (precision + recall)
}

/// One-vs-rest counts and derived metrics for one class. Metrics are
/// `None` when their denominator is zero (no support / no predictions),
/// never silently zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub label: String,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

impl ClassMetrics {
    fn from_counts(label: String, tp: usize, fp: usize, fn_: usize) -> Self {
        let precision = (tp + fp > 0).then(|| tp as f64 / (tp + fp) as f64);
        let recall = (tp + fn_ > 0).then(|| tp as f64 / (tp + fn_) as f64);
        let f1 = match (precision, recall) {
            (Some(p), Some(r)) => Some(f1_score(p, r)),
            _ => None,
        };
        Self {
            label,
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_,
            precision,
            recall,
            f1,
        }
    }

    /// Zero-support classes carry no defined recall.
    pub fn undefined_support(&self) -> bool {
        self.true_positives + self.false_negatives == 0
    }
}

/// Per-class metrics plus unweighted macro averages over the classes where
/// the metric is defined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub task: Task,
    pub classes: Vec<ClassMetrics>,
    pub macro_precision: Option<f64>,
    pub macro_recall: Option<f64>,
    pub macro_f1: Option<f64>,
    pub total: usize,
    pub correct: usize,
}

impl EvaluationReport {
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }

    /// Aligned-text rendering in the layout of the benchmark tables.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let width = self
            .classes
            .iter()
            .map(|c| c.label.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let fmt = |v: Option<f64>| match v {
            Some(x) => format!("{x:>9.2}"),
            None => format!("{:>9}", "undef"),
        };
        out.push_str(&format!(
            "{:<width$} {:>9} {:>9} {:>9} {:>8}\n",
            "Class", "R", "P", "F1", "Support"
        ));
        for c in &self.classes {
            out.push_str(&format!(
                "{:<width$} {} {} {} {:>8}\n",
                c.label,
                fmt(c.recall),
                fmt(c.precision),
                fmt(c.f1),
                c.true_positives + c.false_negatives,
            ));
        }
        out.push_str(&format!(
            "{:<width$} {} {} {} {:>8}\n",
            "macro",
            fmt(self.macro_recall),
            fmt(self.macro_precision),
            fmt(self.macro_f1),
            self.total,
        ));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("class,tp,fp,fn,recall,precision,f1\n");
        let cell = |v: Option<f64>| v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.6}"));
        for c in &self.classes {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                csv_escape(&c.label),
                c.true_positives,
                c.false_positives,
                c.false_negatives,
                cell(c.recall),
                cell(c.precision),
                cell(c.f1),
            ));
        }
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Compare predictions against annotated truth, one-vs-rest per class.
///
/// `predictions` maps sentence id to predicted label; `truth` pairs ids
/// with true labels. The Null aspect is an ordinary class ("NULL").
/// Every annotated sentence must have a prediction; extra predictions are
/// ignored. Classes are sorted by label for deterministic output.
pub fn evaluate(
    predictions: &BTreeMap<String, String>,
    truth: &[(String, String)],
    task: Task,
) -> Result<EvaluationReport, EvalError> {
    let missing: Vec<String> = truth
        .iter()
        .filter(|(id, _)| !predictions.contains_key(id))
        .map(|(id, _)| id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(EvalError::MissingPredictions {
            count: missing.len(),
            sample: missing.into_iter().take(10).collect(),
        });
    }

    let mut labels: BTreeSet<String> = BTreeSet::new();
    for (_, t) in truth {
        labels.insert(t.clone());
    }
    for (id, _) in truth {
        labels.insert(predictions[id].clone());
    }

    let mut correct = 0usize;
    let mut counts: BTreeMap<&str, (usize, usize, usize)> =
        labels.iter().map(|l| (l.as_str(), (0, 0, 0))).collect();
    for (id, true_label) in truth {
        let predicted = &predictions[id];
        if predicted == true_label {
            correct += 1;
            counts.get_mut(true_label.as_str()).expect("known label").0 += 1;
        } else {
            counts.get_mut(predicted.as_str()).expect("known label").1 += 1;
            counts.get_mut(true_label.as_str()).expect("known label").2 += 1;
        }
    }

    let classes: Vec<ClassMetrics> = counts
        .into_iter()
        .map(|(label, (tp, fp, fn_))| ClassMetrics::from_counts(label.to_string(), tp, fp, fn_))
        .collect();

    let macro_of = |get: fn(&ClassMetrics) -> Option<f64>| {
        let defined: Vec<f64> = classes.iter().filter_map(get).collect();
        (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64)
    };

    Ok(EvaluationReport {
        task,
        macro_precision: macro_of(|c| c.precision),
        macro_recall: macro_of(|c| c.recall),
        macro_f1: macro_of(|c| c.f1),
        classes,
        total: truth.len(),
        correct,
    })
}
