//! Tokenization: punctuation stripping, stopword removal and stemming.

use std::collections::BTreeSet;
use std::path::Path;

use super::stem::StemmerKind;
use super::CorpusError;

/// Tokens shorter than this are dropped as punctuation residue.
pub const MIN_TOKEN_LEN: usize = 2;

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords_en.txt");

/// Stopword set; ships with a default English list, overridable by file.
#[derive(Debug, Clone)]
pub struct StopwordList {
    words: BTreeSet<String>,
}

impl Default for StopwordList {
    fn default() -> Self {
        Self::from_lines(DEFAULT_STOPWORDS.lines())
    }
}

impl StopwordList {
    pub fn empty() -> Self {
        Self {
            words: BTreeSet::new(),
        }
    }

    pub fn from_lines<'a, I: IntoIterator<Item = &'a str>>(lines: I) -> Self {
        let words = lines
            .into_iter()
            .map(|l| l.trim().to_lowercase())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Self { words }
    }

    /// One word per line.
    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let content = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(Self::from_lines(content.lines()))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Turn a normalized sentence into ordered stemmed terms.
///
/// Words are maximal alphanumeric runs; anything else is treated as
/// punctuation and dropped. Stopwords are removed before stemming, and a
/// token whose stem lands on a stopword is removed as well, so the output
/// never contains a stopword. Duplicates are kept; counts feed the corpus
/// matrix.
pub fn tokenize(sentence: &str, stopwords: &StopwordList, stemmer: StemmerKind) -> Vec<String> {
    sentence
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| w.chars().count() >= MIN_TOKEN_LEN)
        .filter(|w| !stopwords.contains(w))
        .map(|w| stemmer.stem(w))
        .filter(|s| s.chars().count() >= MIN_TOKEN_LEN && !stopwords.contains(s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stems_and_removes_stopwords() {
        let got = tokenize(
            "the seats were cramped",
            &StopwordList::default(),
            StemmerKind::Porter,
        );
        assert_eq!(got, vec!["seat".to_string(), "cramp".to_string()]);
    }

    #[test]
    fn all_stopwords_yield_empty() {
        let got = tokenize("and the is", &StopwordList::default(), StemmerKind::Porter);
        assert!(got.is_empty());
    }

    #[test]
    fn duplicates_are_kept() {
        let got = tokenize(
            "delayed delayed",
            &StopwordList::default(),
            StemmerKind::Porter,
        );
        assert_eq!(got, vec!["delay".to_string(), "delay".to_string()]);
    }

    #[test]
    fn short_tokens_dropped() {
        let got = tokenize("a 5 pm flight", &StopwordList::default(), StemmerKind::Porter);
        assert_eq!(got, vec!["pm".to_string(), "flight".to_string()]);
    }

    #[test]
    fn stem_landing_on_stopword_is_removed() {
        // "doing" is a stopword itself; "being" stems to "be" which is one.
        let list = StopwordList::from_lines(["be"]);
        let got = tokenize("being late", &list, StemmerKind::Porter);
        assert_eq!(got, vec!["late".to_string()]);
    }
}
