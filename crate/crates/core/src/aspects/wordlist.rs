//! Topic-specific custom word lists built from a lexical-relations
//! resource (synonyms, antonyms, hyponyms, hypernyms).
//!
//! The lists rescue sentences whose words are too rare for the topic
//! models: "The burger was stale" reaches the food aspect because "burger"
//! is a hyponym of the keyword "food".

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{AspectCatalog, AspectError};
use crate::corpus::StemmerKind;

/// Keywords taken per member model when seeding a word list.
pub const DEFAULT_N_KEYWORDS: usize = 10;

const RELATION_KINDS: [&str; 4] = ["syn", "ant", "hypo", "hyper"];

/// Flat lexical-relations file: `term<TAB>relation<TAB>related_term` with
/// relation in {syn, ant, hypo, hyper}. Terms are stemmed at load so that
/// stemmed model keywords can be looked up directly.
#[derive(Debug, Clone, Default)]
pub struct RelationsResource {
    related: BTreeMap<String, BTreeSet<String>>,
}

impl RelationsResource {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parse_tsv(content: &str, stemmer: StemmerKind) -> Result<Self, AspectError> {
        let mut related: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(AspectError::Validation(format!(
                    "line {}: expected term<TAB>relation<TAB>related_term",
                    lineno + 1
                )));
            }
            let relation = fields[1].trim();
            if !RELATION_KINDS.contains(&relation) {
                return Err(AspectError::Validation(format!(
                    "line {}: unknown relation {relation:?} (expected syn, ant, hypo or hyper)",
                    lineno + 1
                )));
            }
            let term = stemmer.stem(&fields[0].trim().to_lowercase());
            let other = stemmer.stem(&fields[2].trim().to_lowercase());
            if term.is_empty() || other.is_empty() {
                continue;
            }
            related.entry(term).or_default().insert(other);
        }
        Ok(Self { related })
    }

    pub fn load_tsv(path: &Path, stemmer: StemmerKind) -> Result<Self, AspectError> {
        let content = std::fs::read_to_string(path).map_err(|source| AspectError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_tsv(&content, stemmer)
    }

    pub fn lookup(&self, stemmed_term: &str) -> Option<&BTreeSet<String>> {
        self.related.get(stemmed_term)
    }

    pub fn is_empty(&self) -> bool {
        self.related.is_empty()
    }
}

/// Expansion terms for one aspect; always includes the seed keywords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomWordList {
    pub aspect_id: usize,
    pub words: BTreeSet<String>,
}

impl CustomWordList {
    pub fn contains(&self, stemmed_token: &str) -> bool {
        self.words.contains(stemmed_token)
    }
}

/// How much of the keyword seed set the relations resource covered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordListCoverage {
    pub keywords_total: usize,
    pub keywords_missing: usize,
}

/// Build one word list per catalog aspect: the union over member models of
/// the top `n_keywords` keywords, each expanded with its related terms.
/// Keywords absent from the resource are kept alone and counted in the
/// coverage diagnostic.
pub fn build_custom_wordlists(
    catalog: &AspectCatalog,
    relations: &RelationsResource,
    n_keywords: usize,
    stemmer: StemmerKind,
) -> (Vec<CustomWordList>, WordListCoverage) {
    let mut total = 0usize;
    let mut missing = 0usize;
    let mut lists = Vec::with_capacity(catalog.num_aspects());
    for (aspect_id, aspect) in catalog.aspects.iter().enumerate() {
        let mut seeds: BTreeSet<String> = BTreeSet::new();
        for model_keywords in &aspect.keywords_per_model {
            for keyword in model_keywords.iter().take(n_keywords) {
                seeds.insert(stemmer.stem(&keyword.to_lowercase()));
            }
        }
        let mut words = BTreeSet::new();
        for seed in &seeds {
            total += 1;
            words.insert(seed.clone());
            match relations.lookup(seed) {
                Some(expansion) => words.extend(expansion.iter().cloned()),
                None => missing += 1,
            }
        }
        lists.push(CustomWordList { aspect_id, words });
    }
    (
        lists,
        WordListCoverage {
            keywords_total: total,
            keywords_missing: missing,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aspects::CatalogAspect;
    use std::collections::BTreeMap;

    fn catalog_with_keywords(keywords: Vec<Vec<&str>>) -> AspectCatalog {
        AspectCatalog {
            aspects: keywords
                .into_iter()
                .enumerate()
                .map(|(i, kws)| CatalogAspect {
                    label: format!("aspect{i}"),
                    keywords_per_model: vec![kws.iter().map(|k| k.to_string()).collect()],
                })
                .collect(),
            merge: BTreeMap::new(),
            discarded: vec![],
            prevalence_floor: 0.0,
        }
    }

    #[test]
    fn expands_keyword_with_related_terms() {
        let relations = RelationsResource::parse_tsv(
            "food\tsyn\tmeal\nfood\thypo\tsnack\nfood\thypo\teat\n",
            StemmerKind::Porter,
        )
        .unwrap();
        let catalog = catalog_with_keywords(vec![vec!["food"]]);
        let (lists, coverage) =
            build_custom_wordlists(&catalog, &relations, 10, StemmerKind::Porter);
        let words = &lists[0].words;
        for expected in ["food", "meal", "snack", "eat"] {
            assert!(words.contains(expected), "missing {expected}");
        }
        assert_eq!(coverage.keywords_missing, 0);
    }

    #[test]
    fn empty_resource_keeps_keywords_alone() {
        let catalog = catalog_with_keywords(vec![vec!["seat", "legroom"]]);
        let (lists, coverage) =
            build_custom_wordlists(&catalog, &RelationsResource::empty(), 10, StemmerKind::Porter);
        assert_eq!(
            lists[0].words,
            ["seat", "legroom"].iter().map(|s| s.to_string()).collect()
        );
        assert_eq!(coverage.keywords_total, 2);
        assert_eq!(coverage.keywords_missing, 2);
    }

    #[test]
    fn burger_reaches_food_list_via_hyponym() {
        let relations = RelationsResource::parse_tsv(
            "food\thypo\tburger\nfood\thypo\tsandwich\n",
            StemmerKind::Porter,
        )
        .unwrap();
        let catalog = catalog_with_keywords(vec![vec!["food"]]);
        let (lists, _) = build_custom_wordlists(&catalog, &relations, 10, StemmerKind::Porter);
        assert!(lists[0].contains("burger"));
    }

    #[test]
    fn resource_entries_are_stemmed_for_lookup() {
        // "entertainment" stems to "entertain"; a keyword arriving in
        // stemmed form must still find its expansion.
        let relations = RelationsResource::parse_tsv(
            "entertainment\tsyn\tmovies\n",
            StemmerKind::Porter,
        )
        .unwrap();
        assert!(relations.lookup("entertain").is_some());
        assert!(relations.lookup("entertain").unwrap().contains("movi"));
    }

    #[test]
    fn unknown_relation_kind_is_rejected() {
        assert!(RelationsResource::parse_tsv("a\tmeronym\tb\n", StemmerKind::Porter).is_err());
    }

    #[test]
    fn respects_n_keywords_limit() {
        let catalog = catalog_with_keywords(vec![vec!["one", "two", "three"]]);
        let (lists, _) =
            build_custom_wordlists(&catalog, &RelationsResource::empty(), 2, StemmerKind::None);
        assert_eq!(lists[0].words.len(), 2);
    }
}
