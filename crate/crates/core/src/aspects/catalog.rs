//! Mapping raw model topics onto a human-labeled aspect catalog.
//!
//! Topic models produce anonymous topics; an analyst merges semantically
//! equivalent topics across models under a shared label via a merge-map
//! file, and topics whose corpus-level prevalence falls below a floor are
//! discarded as noise.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::AspectError;
use crate::corpus::Vocabulary;
use crate::topics::FittedTopicModel;

/// Raw topics with mean theta mass below this are discarded (0.05%).
pub const DEFAULT_PREVALENCE_FLOOR: f64 = 0.0005;

/// One line of the merge map: which raw topic of which model belongs to
/// which catalog aspect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeEntry {
    /// Algorithm name of the member model ("plsa_em", "lda_vi", "lda_gs").
    pub model: String,
    pub raw_topic: usize,
    pub aspect_label: String,
}

impl MergeEntry {
    /// Parse TSV lines `model_id<TAB>raw_topic<TAB>aspect_label`.
    pub fn parse_tsv(content: &str) -> Result<Vec<MergeEntry>, AspectError> {
        let mut entries = Vec::new();
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(AspectError::Validation(format!(
                    "line {}: expected model_id<TAB>raw_topic<TAB>aspect_label",
                    lineno + 1
                )));
            }
            let raw_topic = fields[1].trim().parse::<usize>().map_err(|_| {
                AspectError::Validation(format!(
                    "line {}: raw_topic {:?} is not an integer",
                    lineno + 1,
                    fields[1]
                ))
            })?;
            entries.push(MergeEntry {
                model: fields[0].trim().to_string(),
                raw_topic,
                aspect_label: fields[2].trim().to_string(),
            });
        }
        Ok(entries)
    }

    pub fn load_tsv(path: &Path) -> Result<Vec<MergeEntry>, AspectError> {
        let content = std::fs::read_to_string(path).map_err(|source| AspectError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_tsv(&content)
    }
}

/// One catalog aspect: its label and, per member model, its top keywords
/// (stemmed vocabulary terms of the merged phi rows).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogAspect {
    pub label: String,
    /// Indexed by member-model position.
    pub keywords_per_model: Vec<Vec<String>>,
}

/// The shared aspect space of the ensemble: dense aspect ids, the
/// (model, raw topic) -> aspect mapping, and the discarded raw topics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AspectCatalog {
    pub aspects: Vec<CatalogAspect>,
    /// Keys are `(model_index, raw_topic)`.
    pub merge: BTreeMap<(usize, usize), usize>,
    pub discarded: Vec<(usize, usize)>,
    pub prevalence_floor: f64,
}

impl AspectCatalog {
    pub fn num_aspects(&self) -> usize {
        self.aspects.len()
    }

    pub fn label(&self, aspect_id: usize) -> &str {
        &self.aspects[aspect_id].label
    }

    pub fn aspect_id(&self, label: &str) -> Option<usize> {
        self.aspects.iter().position(|a| a.label == label)
    }

    /// Sum a model's raw-topic distribution into catalog-aspect masses.
    /// Mass on discarded topics is dropped, not renormalized, so low
    /// confidence on noise topics stays low.
    pub fn map_distribution(&self, model_index: usize, theta: &[f64]) -> Vec<f64> {
        let mut mapped = vec![0.0; self.aspects.len()];
        for (topic, &p) in theta.iter().enumerate() {
            if let Some(&aspect) = self.merge.get(&(model_index, topic)) {
                mapped[aspect] += p;
            }
        }
        mapped
    }
}

/// Build the catalog from fitted member models and a user merge map.
///
/// Raw topics whose corpus-level mean theta mass is below
/// `prevalence_floor` are discarded; every remaining raw topic must be
/// mapped. Aspect ids follow first appearance of labels in the merge map.
pub fn build_catalog(
    models: &[FittedTopicModel],
    vocabulary: &Vocabulary,
    prevalence_floor: f64,
    entries: &[MergeEntry],
    n_keywords: usize,
) -> Result<AspectCatalog, AspectError> {
    if models.is_empty() {
        return Err(AspectError::Validation("no member models".into()));
    }
    let fingerprint = &models[0].vocabulary_fingerprint;
    if models
        .iter()
        .any(|m| &m.vocabulary_fingerprint != fingerprint)
        || fingerprint != &vocabulary.fingerprint()
    {
        return Err(AspectError::Validation(
            "member models must be fitted on the same vocabulary".into(),
        ));
    }
    if !(0.0..1.0).contains(&prevalence_floor) {
        return Err(AspectError::Validation(
            "prevalence_floor must lie in [0, 1)".into(),
        ));
    }

    let model_index = |name: &str| -> Result<usize, AspectError> {
        models
            .iter()
            .position(|m| m.algorithm.name() == name)
            .ok_or_else(|| AspectError::UnknownModel(name.to_string()))
    };

    // Discard rule first, so mapped-but-discarded entries are ignored.
    let mut retained: Vec<Vec<bool>> = Vec::with_capacity(models.len());
    let mut discarded = Vec::new();
    for (m, model) in models.iter().enumerate() {
        let mass = model.mean_topic_mass();
        let keep: Vec<bool> = mass.iter().map(|&v| v >= prevalence_floor).collect();
        for (topic, &kept) in keep.iter().enumerate() {
            if !kept {
                discarded.push((m, topic));
            }
        }
        retained.push(keep);
    }

    let mut labels: Vec<String> = Vec::new();
    let mut merge: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for entry in entries {
        let m = model_index(&entry.model)?;
        if entry.raw_topic >= models[m].num_topics() {
            return Err(AspectError::UnknownRawTopic {
                model: entry.model.clone(),
                topic: entry.raw_topic,
            });
        }
        if !retained[m][entry.raw_topic] {
            continue;
        }
        let aspect_id = match labels.iter().position(|l| l == &entry.aspect_label) {
            Some(id) => id,
            None => {
                labels.push(entry.aspect_label.clone());
                labels.len() - 1
            }
        };
        if let Some(&existing) = merge.get(&(m, entry.raw_topic)) {
            if existing != aspect_id {
                return Err(AspectError::Validation(format!(
                    "raw topic {} of model {} mapped to two aspects",
                    entry.raw_topic, entry.model
                )));
            }
        }
        merge.insert((m, entry.raw_topic), aspect_id);
    }

    for (m, model) in models.iter().enumerate() {
        for topic in 0..model.num_topics() {
            if retained[m][topic] && !merge.contains_key(&(m, topic)) {
                return Err(AspectError::UnmappedRawTopic {
                    model: model.algorithm.name().to_string(),
                    topic,
                });
            }
        }
    }

    // Per-aspect, per-model top keywords from the merged phi rows.
    let mut aspects: Vec<CatalogAspect> = labels
        .iter()
        .map(|label| CatalogAspect {
            label: label.clone(),
            keywords_per_model: vec![Vec::new(); models.len()],
        })
        .collect();
    for (aspect_id, aspect) in aspects.iter_mut().enumerate() {
        for (m, model) in models.iter().enumerate() {
            let merged_topics: Vec<usize> = (0..model.num_topics())
                .filter(|&t| merge.get(&(m, t)) == Some(&aspect_id))
                .collect();
            if merged_topics.is_empty() {
                continue;
            }
            let mut combined = vec![0.0; model.num_terms()];
            for &t in &merged_topics {
                for (c, &p) in combined.iter_mut().zip(&model.phi[t]) {
                    *c += p;
                }
            }
            let mut order: Vec<usize> = (0..combined.len()).collect();
            order.sort_by(|&a, &b| {
                combined[b]
                    .partial_cmp(&combined[a])
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            });
            aspect.keywords_per_model[m] = order
                .into_iter()
                .take(n_keywords)
                .map(|w| vocabulary.term(w).to_string())
                .collect();
        }
    }

    Ok(AspectCatalog {
        aspects,
        merge,
        discarded,
        prevalence_floor,
    })
}
