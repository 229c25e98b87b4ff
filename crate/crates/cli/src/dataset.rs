//! Seq2seq dataset construction: one task-tagged record per (entry, config),
//! shuffled for multi-task training.

use amr_core::linearize::{self, LinearizationConfig};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::corpus::{entry_id, CorpusEntry};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeqRecord {
    pub id: String,
    pub task: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DatasetError {
    #[error("entry `{id}` has no ::snt sentence")]
    MissingSentence { id: String },
    #[error("no linearization configs given")]
    NoConfigs,
    #[error("multi-task mode needs exactly one Penman and one Triple config")]
    BadMultitask,
}

/// Build one record per (entry, config). Multi-task mode requires exactly
/// one Penman and one Triple config and shuffles the merged records with the
/// seed; single-config output stays in corpus order. Deterministic given the
/// seed.
pub fn build_dataset(
    entries: &[CorpusEntry],
    configs: &[LinearizationConfig],
    multitask: bool,
    seed: u64,
) -> Result<Vec<SeqRecord>, DatasetError> {
    if configs.is_empty() {
        return Err(DatasetError::NoConfigs);
    }
    if multitask {
        let penman = configs
            .iter()
            .filter(|c| matches!(c, LinearizationConfig::Penman(_)))
            .count();
        if configs.len() != 2 || penman != 1 {
            return Err(DatasetError::BadMultitask);
        }
    }

    let mut records = Vec::with_capacity(entries.len() * configs.len());
    for (index, entry) in entries.iter().enumerate() {
        let id = entry_id(entry, index);
        let sentence = entry
            .sentence()
            .filter(|s| !s.trim().is_empty())
            .ok_or_else(|| DatasetError::MissingSentence { id: id.clone() })?;
        let sentence = sentence.split_whitespace().collect::<Vec<_>>().join(" ");
        for config in configs {
            records.push(SeqRecord {
                id: id.clone(),
                task: config.task_tag().to_string(),
                source: format!("{}: {}", config.task_tag(), sentence),
                target: linearize::encode(&entry.graph, config),
            });
        }
    }

    if multitask {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        records.shuffle(&mut rng);
    }
    Ok(records)
}

/// Tab-separated lines: id, task, source, target.
pub fn to_tsv(records: &[SeqRecord]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            record.id, record.task, record.source, record.target
        ));
    }
    out
}

/// One JSON object per line.
pub fn to_jsonl(records: &[SeqRecord]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&serde_json::to_string(record).expect("records serialize"));
        out.push('\n');
    }
    out
}
