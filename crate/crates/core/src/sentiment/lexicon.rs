//! Sentiment lexicons and modifier lists.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use super::SentimentError;

/// Term valences on a declared scale, plus the negator and
/// booster/dampener lists used by the rule-augmented analyzer.
#[derive(Debug, Clone, Default)]
pub struct SentimentLexicon {
    entries: HashMap<String, f64>,
    pub scale_min: f64,
    pub scale_max: f64,
    negators: HashSet<String>,
    /// Positive multiplier boosts, negative dampens.
    modifiers: HashMap<String, f64>,
}

impl SentimentLexicon {
    pub fn new(scale_min: f64, scale_max: f64) -> Self {
        Self {
            scale_min,
            scale_max,
            ..Self::default()
        }
    }

    pub fn from_entries<I>(entries: I, scale_min: f64, scale_max: f64) -> Result<Self, SentimentError>
    where
        I: IntoIterator<Item = (String, f64)>,
    {
        let mut lexicon = Self::new(scale_min, scale_max);
        for (term, valence) in entries {
            lexicon.insert(term, valence)?;
        }
        Ok(lexicon)
    }

    fn insert(&mut self, term: String, valence: f64) -> Result<(), SentimentError> {
        if !(self.scale_min..=self.scale_max).contains(&valence) {
            return Err(SentimentError::Validation(format!(
                "valence {valence} of {term:?} outside declared scale [{}, {}]",
                self.scale_min, self.scale_max
            )));
        }
        self.entries.insert(term.to_lowercase(), valence);
        Ok(())
    }

    /// Load a TSV lexicon `term<TAB>valence`.
    pub fn load(path: &Path, scale_min: f64, scale_max: f64) -> Result<Self, SentimentError> {
        let content = std::fs::read_to_string(path).map_err(|source| SentimentError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut lexicon = Self::new(scale_min, scale_max);
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (term, valence) = match (fields.next(), fields.next()) {
                (Some(t), Some(v)) => (t, v),
                _ => {
                    return Err(SentimentError::Validation(format!(
                        "{}:{}: expected term<TAB>valence",
                        path.display(),
                        lineno + 1
                    )))
                }
            };
            let valence: f64 = valence.trim().parse().map_err(|_| {
                SentimentError::Validation(format!(
                    "{}:{}: valence {valence:?} is not a number",
                    path.display(),
                    lineno + 1
                ))
            })?;
            lexicon.insert(term.trim().to_string(), valence)?;
        }
        Ok(lexicon)
    }

    /// Load a TSV modifier file `term<TAB>{negate|boost|dampen}<TAB>multiplier`.
    pub fn load_modifiers(&mut self, path: &Path) -> Result<(), SentimentError> {
        let content = std::fs::read_to_string(path).map_err(|source| SentimentError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.parse_modifiers(&content)
            .map_err(|e| SentimentError::Validation(format!("{}: {e}", path.display())))
    }

    pub fn parse_modifiers(&mut self, content: &str) -> Result<(), String> {
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(format!(
                    "line {}: expected term<TAB>kind<TAB>multiplier",
                    lineno + 1
                ));
            }
            let term = fields[0].trim().to_lowercase();
            let multiplier: f64 = fields[2]
                .trim()
                .parse()
                .map_err(|_| format!("line {}: bad multiplier {:?}", lineno + 1, fields[2]))?;
            match fields[1].trim() {
                "negate" => {
                    self.negators.insert(term);
                }
                "boost" => {
                    self.modifiers.insert(term, multiplier.abs());
                }
                "dampen" => {
                    self.modifiers.insert(term, -multiplier.abs());
                }
                other => {
                    return Err(format!(
                        "line {}: unknown modifier kind {other:?}",
                        lineno + 1
                    ))
                }
            }
        }
        Ok(())
    }

    pub fn add_negators<I, S>(&mut self, words: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.negators
            .extend(words.into_iter().map(|w| w.into().to_lowercase()));
    }

    pub fn add_modifier(&mut self, word: &str, effect: f64) {
        self.modifiers.insert(word.to_lowercase(), effect);
    }

    pub fn valence(&self, word: &str) -> Option<f64> {
        self.entries.get(word).copied()
    }

    pub fn is_negator(&self, word: &str) -> bool {
        self.negators.contains(word)
    }

    /// Signed booster/dampener effect of `word`, if it is a modifier.
    pub fn modifier_effect(&self, word: &str) -> Option<f64> {
        self.modifiers.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valences_outside_scale_rejected() {
        let result = SentimentLexicon::from_entries(
            [("great".to_string(), 7.0)],
            -5.0,
            5.0,
        );
        assert!(result.is_err());
    }

    #[test]
    fn lookup_is_lowercased() {
        let lexicon =
            SentimentLexicon::from_entries([("Good".to_string(), 3.0)], -5.0, 5.0).unwrap();
        assert_eq!(lexicon.valence("good"), Some(3.0));
        assert_eq!(lexicon.valence("bad"), None);
    }

    #[test]
    fn modifier_parsing() {
        let mut lexicon = SentimentLexicon::new(-1.0, 1.0);
        lexicon
            .parse_modifiers("not\tnegate\t0.74\nvery\tboost\t0.293\nslightly\tdampen\t0.293\n")
            .unwrap();
        assert!(lexicon.is_negator("not"));
        assert_eq!(lexicon.modifier_effect("very"), Some(0.293));
        assert_eq!(lexicon.modifier_effect("slightly"), Some(-0.293));
        assert!(lexicon.parse_modifiers("x\tshout\t1").is_err());
    }
}
