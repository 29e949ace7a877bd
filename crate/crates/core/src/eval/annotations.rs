//! Human annotation files: adjudicated labels with an optional second
//! annotator whose disagreements are only reported, never resolved here.

use std::path::Path;

use serde::Deserialize;

use super::EvalError;

/// Ground truth for one held-out sentence.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct AnnotatedSentence {
    pub sentence_id: String,
    /// Aspect label or "NULL".
    pub true_aspect: String,
    /// "positive" | "neutral" | "negative".
    pub true_sentiment: String,
    #[serde(default)]
    pub annotator2_aspect: Option<String>,
    #[serde(default)]
    pub annotator2_sentiment: Option<String>,
}

/// Raw disagreement counts between the adjudicated label and the optional
/// second annotator column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DisagreementReport {
    pub with_second_annotator: usize,
    pub aspect_disagreements: usize,
    pub sentiment_disagreements: usize,
}

/// Load `sentence_id,true_aspect,true_sentiment[,annotator2_aspect,annotator2_sentiment]`.
pub fn load_annotations(
    path: &Path,
) -> Result<(Vec<AnnotatedSentence>, DisagreementReport), EvalError> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_path(path)
        .map_err(|e| EvalError::Validation(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    let mut report = DisagreementReport::default();
    for result in reader.deserialize::<AnnotatedSentence>() {
        let row = result.map_err(|e| EvalError::Validation(format!("{}: {e}", path.display())))?;
        if row.annotator2_aspect.is_some() || row.annotator2_sentiment.is_some() {
            report.with_second_annotator += 1;
            if let Some(a2) = &row.annotator2_aspect {
                if !a2.is_empty() && a2 != &row.true_aspect {
                    report.aspect_disagreements += 1;
                }
            }
            if let Some(s2) = &row.annotator2_sentiment {
                if !s2.is_empty() && s2 != &row.true_sentiment {
                    report.sentiment_disagreements += 1;
                }
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(EvalError::Validation(format!(
            "{}: no annotations",
            path.display()
        )));
    }
    Ok((rows, report))
}
