//! The published benchmark tables and the F1 consistency check over them.

use serde::{Deserialize, Serialize};

use super::metrics::f1_score;
use super::EvalError;

/// Recomputed F1 must match the published two-decimal value within this.
pub const F1_CONSISTENCY_TOLERANCE: f64 = 0.01;

const ASPECT_TABLE: &str = include_str!("../../data/published_aspect_metrics.csv");
const SENTIMENT_TABLE: &str = include_str!("../../data/published_sentiment_metrics.csv");

/// One published `(recall, precision, f1)` triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublishedRow {
    pub class: String,
    pub model: String,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
}

fn parse_table(content: &str) -> Vec<PublishedRow> {
    let mut reader = csv::ReaderBuilder::new().from_reader(content.as_bytes());
    reader
        .deserialize::<PublishedRow>()
        .map(|r| r.expect("bundled table is well-formed"))
        .collect()
}

/// The aspect-classification benchmark rows bundled with the crate.
pub fn published_aspect_table() -> Vec<PublishedRow> {
    parse_table(ASPECT_TABLE)
}

/// The sentiment-classification benchmark rows bundled with the crate.
pub fn published_sentiment_table() -> Vec<PublishedRow> {
    parse_table(SENTIMENT_TABLE)
}

/// Outcome of recomputing every row's F1 from its (R, P) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub rows_checked: usize,
    /// `(class, model, published, recomputed)` for rows outside tolerance.
    pub failures: Vec<(String, String, f64, f64)>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Recompute F1 for every row and compare against the published value
/// within [`F1_CONSISTENCY_TOLERANCE`]. A failure lists the offending
/// rows.
pub fn consistency_check(rows: &[PublishedRow]) -> Result<ConsistencyReport, EvalError> {
    if rows.is_empty() {
        return Err(EvalError::Validation("no fixture rows loaded".into()));
    }
    let mut failures = Vec::new();
    for row in rows {
        let recomputed = f1_score(row.precision, row.recall);
        if (recomputed - row.f1).abs() > F1_CONSISTENCY_TOLERANCE + 1e-9 {
            failures.push((row.class.clone(), row.model.clone(), row.f1, recomputed));
        }
    }
    Ok(ConsistencyReport {
        rows_checked: rows.len(),
        failures,
    })
}
