//! Review ingestion from CSV and JSONL files.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CorpusError, Review};

/// Supported input encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Csv,
    Jsonl,
}

/// A row that could not be ingested, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedRow {
    pub line: u64,
    pub reason: String,
}

/// The parseable reviews of one input file plus skipped-row diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewSet {
    pub reviews: Vec<Review>,
    pub skipped: Vec<SkippedRow>,
}

#[derive(Debug, Deserialize)]
struct RawRecord {
    review_id: Option<String>,
    entity_id: Option<String>,
    #[serde(default)]
    date: Option<String>,
    #[serde(default)]
    rating: Option<f64>,
    #[serde(default)]
    text: Option<String>,
}

impl RawRecord {
    /// Validate required fields; a missing field skips the row.
    fn into_review(self) -> Result<Review, String> {
        let review_id = match self.review_id {
            Some(id) if !id.trim().is_empty() => id,
            _ => return Err("missing review_id".into()),
        };
        let entity_id = match self.entity_id {
            Some(id) if !id.trim().is_empty() => id,
            _ => return Err("missing entity_id".into()),
        };
        let text = match self.text {
            Some(t) if !t.trim().is_empty() => t,
            _ => return Err("missing text".into()),
        };
        Ok(Review {
            review_id,
            entity_id,
            date: self.date.filter(|d| !d.trim().is_empty()),
            rating: self.rating,
            text,
        })
    }
}

/// Read all parseable reviews from `path`.
///
/// Rows missing a required field (`review_id`, `entity_id`, `text`) are
/// skipped with a diagnostic; a duplicate `review_id` is a fatal validation
/// error, as is an unreadable or structurally malformed file.
pub fn ingest_reviews(path: &Path, format: InputFormat) -> Result<ReviewSet, CorpusError> {
    let mut reviews: Vec<Review> = Vec::new();
    let mut skipped: Vec<SkippedRow> = Vec::new();

    match format {
        InputFormat::Csv => {
            let mut reader = csv::ReaderBuilder::new()
                .trim(csv::Trim::None)
                .from_path(path)
                .map_err(|e| map_csv_open_error(path, e))?;
            let headers = reader
                .headers()
                .map_err(|e| CorpusError::Parse {
                    format: InputFormat::Csv,
                    message: e.to_string(),
                })?
                .clone();
            for result in reader.records() {
                // csv line numbers are 1-based and include the header.
                match result {
                    Ok(record) => {
                        let line = record.position().map_or(0, csv::Position::line);
                        match record.deserialize::<RawRecord>(Some(&headers)) {
                            Ok(raw) => match raw.into_review() {
                                Ok(review) => reviews.push(review),
                                Err(reason) => skipped.push(SkippedRow { line, reason }),
                            },
                            Err(e) => skipped.push(SkippedRow {
                                line,
                                reason: format!("unparseable row: {e}"),
                            }),
                        }
                    }
                    Err(e) => {
                        let line = e.position().map_or(0, csv::Position::line);
                        skipped.push(SkippedRow {
                            line,
                            reason: format!("unparseable row: {e}"),
                        });
                    }
                }
            }
        }
        InputFormat::Jsonl => {
            let content = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
                path: path.display().to_string(),
                source,
            })?;
            for (i, line) in content.lines().enumerate() {
                let lineno = (i + 1) as u64;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<RawRecord>(line) {
                    Ok(record) => match record.into_review() {
                        Ok(review) => reviews.push(review),
                        Err(reason) => skipped.push(SkippedRow {
                            line: lineno,
                            reason,
                        }),
                    },
                    Err(e) => skipped.push(SkippedRow {
                        line: lineno,
                        reason: format!("unparseable row: {e}"),
                    }),
                }
            }
        }
    }

    let mut seen: HashSet<&str> = HashSet::with_capacity(reviews.len());
    for review in &reviews {
        if !seen.insert(review.review_id.as_str()) {
            return Err(CorpusError::DuplicateReviewId(review.review_id.clone()));
        }
    }
    Ok(ReviewSet { reviews, skipped })
}

fn map_csv_open_error(path: &Path, e: csv::Error) -> CorpusError {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => CorpusError::Io {
            path: path.display().to_string(),
            source,
        },
        other => CorpusError::Parse {
            format: InputFormat::Csv,
            message: format!("{other:?}"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str, ext: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new()
            .suffix(ext)
            .tempfile()
            .expect("create temp file");
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn well_formed_csv() {
        let f = write_temp(
            "review_id,entity_id,date,rating,text\n\
             r1,air1,2019-01-02,4,\"Good flight, nice crew.\"\n\
             r2,air1,,,Terrible delay\n\
             r3,air2,2019-02-03,2,Lost my bag\n",
            ".csv",
        );
        let set = ingest_reviews(f.path(), InputFormat::Csv).unwrap();
        assert_eq!(set.reviews.len(), 3);
        assert!(set.skipped.is_empty());
        assert_eq!(set.reviews[0].text, "Good flight, nice crew.");
        assert_eq!(set.reviews[1].date, None);
    }

    #[test]
    fn missing_text_skips_row_with_line_number() {
        let f = write_temp(
            "review_id,entity_id,date,rating,text\n\
             r1,air1,,,Nice crew\n\
             r2,air1,,,\n\
             r3,air2,,,Late again\n",
            ".csv",
        );
        let set = ingest_reviews(f.path(), InputFormat::Csv).unwrap();
        assert_eq!(set.reviews.len(), 2);
        assert_eq!(set.skipped.len(), 1);
        assert_eq!(set.skipped[0].line, 3);
        assert!(set.skipped[0].reason.contains("text"));
    }

    #[test]
    fn duplicate_review_id_is_fatal() {
        let f = write_temp(
            "review_id,entity_id,date,rating,text\n\
             r1,air1,,,One\n\
             r1,air1,,,Two\n",
            ".csv",
        );
        assert!(matches!(
            ingest_reviews(f.path(), InputFormat::Csv),
            Err(CorpusError::DuplicateReviewId(id)) if id == "r1"
        ));
    }

    #[test]
    fn jsonl_roundtrip() {
        let f = write_temp(
            "{\"review_id\":\"r1\",\"entity_id\":\"air1\",\"text\":\"Great legroom!\"}\n\
             {\"review_id\":\"r2\",\"entity_id\":\"air2\",\"rating\":3.5,\"text\":\"Meh.\"}\n\
             {\"entity_id\":\"air2\",\"text\":\"no id\"}\n",
            ".jsonl",
        );
        let set = ingest_reviews(f.path(), InputFormat::Jsonl).unwrap();
        assert_eq!(set.reviews.len(), 2);
        assert_eq!(set.skipped.len(), 1);
        assert_eq!(set.skipped[0].line, 3);
        assert_eq!(set.reviews[1].rating, Some(3.5));
    }

    #[test]
    fn unreadable_file_is_io_error() {
        let missing = Path::new("/nonexistent/reviews.csv");
        assert!(matches!(
            ingest_reviews(missing, InputFormat::Csv),
            Err(CorpusError::Io { .. })
        ));
    }
}
