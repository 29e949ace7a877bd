//! Rule-based sentence splitting on `.`, `!` and `?` with an abbreviation
//! exception list and decimal-number protection.

use std::collections::BTreeSet;
use std::path::Path;

use super::{CorpusError, Review};

/// Dotted abbreviations whose periods never end a sentence ("p.m.", "mr.").
/// Entries are stored lowercase with their trailing dot.
#[derive(Debug, Clone)]
pub struct AbbreviationList {
    entries: BTreeSet<String>,
}

/// Default exception list shipped with the crate; override with
/// [`AbbreviationList::load`].
const DEFAULT_ABBREVIATIONS: &str = include_str!("../../data/abbreviations_en.txt");

impl Default for AbbreviationList {
    fn default() -> Self {
        Self::from_lines(DEFAULT_ABBREVIATIONS.lines())
    }
}

impl AbbreviationList {
    pub fn empty() -> Self {
        Self {
            entries: BTreeSet::new(),
        }
    }

    pub fn from_lines<'a, I: IntoIterator<Item = &'a str>>(lines: I) -> Self {
        let mut entries = BTreeSet::new();
        for line in lines {
            let line = line.trim().to_lowercase();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = if line.ends_with('.') {
                line
            } else {
                format!("{line}.")
            };
            entries.insert(entry);
        }
        Self { entries }
    }

    /// One abbreviation per line, with or without the trailing dot.
    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let content = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(Self::from_lines(content.lines()))
    }

    fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }
}

/// Split a review into raw sentence strings.
///
/// Boundaries are runs of `.`, `!`, `?`, except periods inside listed
/// abbreviations or between digits ("2.5 hours"). Terminators stay attached
/// to their sentence, so the concatenation of the result covers the input
/// modulo whitespace. Text without a terminator is one sentence.
pub fn split_sentences(review: &Review, abbreviations: &AbbreviationList) -> Vec<String> {
    split_text(&review.text, abbreviations)
}

pub(crate) fn split_text(text: &str, abbreviations: &AbbreviationList) -> Vec<String> {
    let bytes = text.as_bytes();
    let protected = protected_dots(text, abbreviations);

    let mut sentences = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < bytes.len() {
        let b = bytes[i];
        let is_terminator = matches!(b, b'.' | b'!' | b'?');
        if !is_terminator {
            i += 1;
            continue;
        }
        if b == b'.' {
            if protected[i] {
                i += 1;
                continue;
            }
            // A dot between digits is a decimal point, not a boundary.
            let prev_digit = i > 0 && bytes[i - 1].is_ascii_digit();
            let next_digit = i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit();
            if prev_digit && next_digit {
                i += 1;
                continue;
            }
        }
        // Extend through a run of terminators so "?!" stays together.
        let mut end = i + 1;
        while end < bytes.len() && matches!(bytes[end], b'.' | b'!' | b'?') && !protected[end] {
            end += 1;
        }
        push_sentence(&mut sentences, &text[start..end]);
        start = end;
        i = end;
    }
    push_sentence(&mut sentences, &text[start..]);
    sentences
}

/// Keep a candidate only if it carries any word characters; a bare
/// punctuation run (e.g. a leading ellipsis) is not a sentence.
fn push_sentence(sentences: &mut Vec<String>, candidate: &str) {
    let trimmed = candidate.trim();
    if trimmed.chars().any(char::is_alphanumeric) {
        sentences.push(trimmed.to_string());
    }
}

/// Mark the byte positions of periods that belong to an abbreviation.
fn protected_dots(text: &str, abbreviations: &AbbreviationList) -> Vec<bool> {
    let mut protected = vec![false; text.len()];
    if text.is_empty() {
        return protected;
    }
    let lower = text.to_lowercase();
    // Lowercasing can change byte lengths for non-ASCII text; fall back to
    // matching on the original in that case.
    let hay = if lower.len() == text.len() {
        lower
    } else {
        text.to_string()
    };
    let hay_bytes = hay.as_bytes();
    for abbr in abbreviations.iter() {
        let mut from = 0usize;
        while let Some(pos) = hay[from..].find(abbr) {
            let at = from + pos;
            let end = at + abbr.len();
            let starts_word = at == 0 || !hay_bytes[at - 1].is_ascii_alphanumeric();
            let ends_word = end >= hay.len() || !hay_bytes[end].is_ascii_alphanumeric();
            if starts_word && ends_word {
                for (offset, byte) in abbr.bytes().enumerate() {
                    if byte == b'.' {
                        protected[at + offset] = true;
                    }
                }
            }
            from = at + 1;
        }
    }
    protected
}

#[cfg(test)]
mod tests {
    use super::*;

    fn review(text: &str) -> Review {
        Review {
            review_id: "r1".into(),
            entity_id: "e1".into(),
            date: None,
            rating: None,
            text: text.into(),
        }
    }

    #[test]
    fn splits_multi_sentence_review() {
        let text = "...the flight was delayed by 2.5 hours due to mechanical issues. \
                    Besides, the economy seats were small and cramped. \
                    But the crew and pilots were amazing.";
        let got = split_sentences(&review(text), &AbbreviationList::default());
        assert_eq!(got.len(), 3);
        assert!(got[0].contains("the flight was delayed by 2.5 hours"));
        assert!(got[2].starts_with("But the crew"));
    }

    #[test]
    fn no_terminator_is_single_sentence() {
        let got = split_sentences(&review("great crew"), &AbbreviationList::default());
        assert_eq!(got, vec!["great crew".to_string()]);
    }

    #[test]
    fn abbreviation_does_not_split() {
        let got = split_sentences(
            &review("Arrived at 3 p.m. on time!"),
            &AbbreviationList::default(),
        );
        assert_eq!(got, vec!["Arrived at 3 p.m. on time!".to_string()]);
    }

    #[test]
    fn decimal_points_do_not_split() {
        let got = split_sentences(
            &review("Paid 45.50 for bags. Never again!"),
            &AbbreviationList::default(),
        );
        assert_eq!(got.len(), 2);
        assert_eq!(got[0], "Paid 45.50 for bags.");
    }

    #[test]
    fn terminator_runs_stay_together() {
        let got = split_sentences(&review("What a mess?! Still waiting."), &AbbreviationList::empty());
        assert_eq!(got, vec!["What a mess?!".to_string(), "Still waiting.".to_string()]);
    }

    #[test]
    fn coverage_modulo_whitespace() {
        let text = "First one. Second one! Third";
        let got = split_sentences(&review(text), &AbbreviationList::default());
        let rejoined: String = got.join(" ");
        let squash = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
        assert_eq!(squash(&rejoined), squash(text));
    }
}
