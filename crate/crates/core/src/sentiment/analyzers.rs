//! The three lexicon analyzer styles.

use serde::{Deserialize, Serialize};

use super::SentimentLexicon;

/// Magnitude multiplier the scaled analyzer applies when the sentence
/// carries exaggerated punctuation ("!!" or longer).
pub const DEFAULT_EXAGGERATION_BOOST: f64 = 1.292;

/// Which scoring style an analyzer runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyzerKind {
    /// Raw sum of matched word valences (integer -5..5 scale).
    Sum,
    /// Strongest positive plus strongest negative, scaled to [-1, 1].
    Scaled,
    /// Valences adjusted by negation/booster/caps/exclamation rules, then
    /// squashed to (-1, 1).
    RuleAugmented,
}

/// Rule constants for the rule-augmented style. Defaults follow the
/// published constants of the social-media rule evaluator this style
/// mirrors; all are configurable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuleConstants {
    /// Multiplier applied when a negator precedes a valenced word.
    pub negation: f64,
    /// Magnitude added when a valenced word is written in ALL CAPS.
    pub caps: f64,
    /// Magnitude added per trailing exclamation mark (capped).
    pub exclaim: f64,
    pub exclaim_cap: usize,
    /// Distance decay for boosters one, two and three tokens back.
    pub decay: [f64; 3],
    /// Normalization constant in s / sqrt(s^2 + alpha).
    pub norm_alpha: f64,
}

impl Default for RuleConstants {
    fn default() -> Self {
        Self {
            negation: -0.74,
            caps: 0.733,
            exclaim: 0.292,
            exclaim_cap: 3,
            decay: [1.0, 0.95, 0.9],
            norm_alpha: 15.0,
        }
    }
}

/// A raw analyzer score with the bounds it can range over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentScore {
    pub analyzer: String,
    pub value: f64,
    pub bounds: (f64, f64),
}

/// One configured analyzer: a style plus its lexicon and constants.
#[derive(Debug, Clone)]
pub struct Analyzer {
    pub name: String,
    pub kind: AnalyzerKind,
    pub lexicon: SentimentLexicon,
    pub exaggeration_boost: f64,
    pub rules: RuleConstants,
}

impl Analyzer {
    pub fn new(name: impl Into<String>, kind: AnalyzerKind, lexicon: SentimentLexicon) -> Self {
        Self {
            name: name.into(),
            kind,
            lexicon,
            exaggeration_boost: DEFAULT_EXAGGERATION_BOOST,
            rules: RuleConstants::default(),
        }
    }

    pub fn score(&self, sentence: &str) -> SentimentScore {
        match self.kind {
            AnalyzerKind::Sum => score_sum(sentence, &self.lexicon, &self.name),
            AnalyzerKind::Scaled => {
                score_scaled(sentence, &self.lexicon, self.exaggeration_boost, &self.name)
            }
            AnalyzerKind::RuleAugmented => {
                score_rule_augmented(sentence, &self.lexicon, &self.rules, &self.name)
            }
        }
    }
}

/// A sentence token prepared for sentiment rules: lowercase form for
/// lexicon lookup, original-capitalization flag, trailing exclamations.
#[derive(Debug, Clone)]
struct SentimentToken {
    lower: String,
    all_caps: bool,
}

fn sentiment_tokens(sentence: &str) -> Vec<SentimentToken> {
    sentence
        .split_whitespace()
        .filter_map(|chunk| {
            let core = chunk.trim_matches(|c: char| !c.is_alphanumeric() && c != '\'');
            if core.is_empty() {
                return None;
            }
            let letters: Vec<char> = core.chars().filter(|c| c.is_alphabetic()).collect();
            let all_caps = letters.len() >= 2 && letters.iter().all(|c| c.is_uppercase());
            Some(SentimentToken {
                lower: core.to_lowercase(),
                all_caps,
            })
        })
        .collect()
}

fn total_exclamations(sentence: &str) -> usize {
    sentence.chars().filter(|&c| c == '!').count()
}

fn has_exaggerated_punctuation(sentence: &str) -> bool {
    let mut run = 0usize;
    for c in sentence.chars() {
        if c == '!' {
            run += 1;
            if run >= 2 {
                return true;
            }
        } else {
            run = 0;
        }
    }
    false
}

/// Summation style: the raw sum of matched valences, with bounds declared
/// as +/- scale_max per token.
pub fn score_sum(sentence: &str, lexicon: &SentimentLexicon, name: &str) -> SentimentScore {
    let tokens = sentiment_tokens(sentence);
    let value: f64 = tokens
        .iter()
        .filter_map(|t| lexicon.valence(&t.lower))
        .sum();
    let span = lexicon.scale_max.abs().max(lexicon.scale_min.abs()) * tokens.len() as f64;
    SentimentScore {
        analyzer: name.to_string(),
        value,
        bounds: (-span, span),
    }
}

/// Scaled style: strongest positive valence plus strongest negative
/// valence, mapped onto [-1, 1] by the declared scale; exaggerated
/// punctuation multiplies the magnitude before clamping.
pub fn score_scaled(
    sentence: &str,
    lexicon: &SentimentLexicon,
    exaggeration_boost: f64,
    name: &str,
) -> SentimentScore {
    let tokens = sentiment_tokens(sentence);
    let mut strongest_positive = 0.0f64;
    let mut strongest_negative = 0.0f64;
    for token in &tokens {
        if let Some(v) = lexicon.valence(&token.lower) {
            if v > strongest_positive {
                strongest_positive = v;
            }
            if v < strongest_negative {
                strongest_negative = v;
            }
        }
    }
    let scale = lexicon.scale_max.abs().max(lexicon.scale_min.abs()).max(1e-12);
    let mut value = (strongest_positive + strongest_negative) / scale;
    if has_exaggerated_punctuation(sentence) {
        value *= exaggeration_boost;
    }
    SentimentScore {
        analyzer: name.to_string(),
        value: value.clamp(-1.0, 1.0),
        bounds: (-1.0, 1.0),
    }
}

/// Rule-augmented style: per-token valences adjusted for ALL-CAPS
/// emphasis, preceding boosters/dampeners (distance-decayed) and negation
/// in a three-token window; the adjusted sum gains exclamation emphasis
/// and is squashed to (-1, 1).
pub fn score_rule_augmented(
    sentence: &str,
    lexicon: &SentimentLexicon,
    rules: &RuleConstants,
    name: &str,
) -> SentimentScore {
    let tokens = sentiment_tokens(sentence);
    let mut total = 0.0f64;
    for (i, token) in tokens.iter().enumerate() {
        let Some(valence) = lexicon.valence(&token.lower) else {
            continue;
        };
        if valence == 0.0 {
            continue;
        }
        let sign = valence.signum();
        let mut adjusted = valence;
        if token.all_caps {
            adjusted += sign * rules.caps;
        }
        let mut negated = false;
        for back in 1..=3usize {
            if back > i {
                break;
            }
            let previous = &tokens[i - back];
            if let Some(effect) = lexicon.modifier_effect(&previous.lower) {
                adjusted += sign * effect * rules.decay[back - 1];
            }
            if lexicon.is_negator(&previous.lower) {
                negated = true;
            }
        }
        if negated {
            adjusted *= rules.negation;
        }
        total += adjusted;
    }
    let emphasis = total_exclamations(sentence).min(rules.exclaim_cap) as f64 * rules.exclaim;
    if total > 0.0 {
        total += emphasis;
    } else if total < 0.0 {
        total -= emphasis;
    }
    let value = total / (total * total + rules.norm_alpha).sqrt();
    SentimentScore {
        analyzer: name.to_string(),
        value,
        bounds: (-1.0, 1.0),
    }
}
