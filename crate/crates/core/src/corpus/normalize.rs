//! Sentence normalization: lowercasing, punctuation/whitespace collapsing and
//! explicit term standardization.

use std::collections::BTreeMap;
use std::path::Path;

use super::CorpusError;

/// User-editable substitution map applied during normalization, e.g.
/// `wi-fi -> wifi`. This is also the hook for spelling fixes; there is no
/// statistical corrector, which keeps normalization deterministic.
///
/// Chains (`a -> b`, `b -> c`) are resolved at load so that a single
/// application reaches the fixed point; cycles are rejected. That makes
/// [`normalize`] idempotent by construction.
#[derive(Debug, Clone, Default)]
pub struct StandardizationMap {
    entries: BTreeMap<String, String>,
}

impl StandardizationMap {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build from `(variant, canonical)` pairs, resolving chains.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, CorpusError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut entries: BTreeMap<String, String> = BTreeMap::new();
        for (variant, canonical) in pairs {
            let variant = collapse_runs(variant.trim());
            let canonical = collapse_runs(canonical.trim());
            if variant.is_empty() || canonical.is_empty() {
                return Err(CorpusError::Validation(
                    "standardization entries must be non-empty".into(),
                ));
            }
            if variant != canonical {
                entries.insert(variant, canonical);
            }
        }
        // Resolve chains to their terminal canonical form.
        let keys: Vec<String> = entries.keys().cloned().collect();
        for key in keys {
            let mut seen = vec![key.clone()];
            let mut target = entries[&key].clone();
            while let Some(next) = entries.get(&target) {
                if seen.contains(&target) || *next == target {
                    return Err(CorpusError::Validation(format!(
                        "standardization map cycle involving {target:?}"
                    )));
                }
                seen.push(target.clone());
                target = next.clone();
            }
            entries.insert(key, target);
        }
        Ok(Self { entries })
    }

    /// Load a TSV file of `variant<TAB>canonical` lines. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn load(path: &Path) -> Result<Self, CorpusError> {
        let content = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut pairs = Vec::new();
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            match (fields.next(), fields.next()) {
                (Some(variant), Some(canonical)) => {
                    pairs.push((variant.to_string(), canonical.to_string()));
                }
                _ => {
                    return Err(CorpusError::Validation(format!(
                        "{}:{}: expected variant<TAB>canonical",
                        path.display(),
                        lineno + 1
                    )));
                }
            }
        }
        Self::from_pairs(pairs)
    }

    fn lookup(&self, word: &str) -> Option<&str> {
        self.entries.get(word).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Lowercase, collapse runs of the same punctuation character, and collapse
/// whitespace runs to a single space.
fn collapse_runs(s: &str) -> String {
    let lower = s.to_lowercase();
    let mut collapsed = String::with_capacity(lower.len());
    let mut prev: Option<char> = None;
    for ch in lower.chars() {
        if ch.is_whitespace() {
            if !matches!(prev, Some(' ')) {
                collapsed.push(' ');
                prev = Some(' ');
            }
            continue;
        }
        if !ch.is_alphanumeric() && prev == Some(ch) {
            continue;
        }
        collapsed.push(ch);
        prev = Some(ch);
    }
    collapsed.trim().to_string()
}

/// Normalize one raw sentence: lowercase, collapse runs of the same
/// punctuation character, collapse whitespace, and replace terms per the
/// standardization map. Idempotent.
pub fn normalize(sentence: &str, map: &StandardizationMap) -> String {
    let collapsed = collapse_runs(sentence);
    if map.is_empty() {
        return collapsed;
    }
    let mut out = String::with_capacity(collapsed.len());
    for (i, word) in collapsed.split(' ').enumerate() {
        if i > 0 {
            out.push(' ');
        }
        // Match the word core with punctuation affixes kept in place.
        let start = word.find(|c: char| c.is_alphanumeric());
        match start {
            Some(start) => {
                let end = word
                    .rfind(|c: char| c.is_alphanumeric())
                    .map(|i| i + word[i..].chars().next().map_or(1, char::len_utf8))
                    .unwrap_or(word.len());
                let core = &word[start..end];
                match map.lookup(core) {
                    Some(canonical) => {
                        out.push_str(&word[..start]);
                        out.push_str(canonical);
                        out.push_str(&word[end..]);
                    }
                    None => out.push_str(word),
                }
            }
            None => out.push_str(word),
        }
    }
    out
}
