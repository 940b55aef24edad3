//! Corpus ingestion and serialization: CSV and JSONL, schema
//! `id,text,label[,group]`, with a configurable label-string mapping.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use textstab_core::corpus::{Corpus, CorpusError, Document, Label};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: unsupported extension (expected .csv, .jsonl, or .ndjson)")]
    UnknownFormat { path: String },
    #[error("{path} row {row}: {message}")]
    Row {
        path: String,
        row: usize,
        message: String,
    },
    #[error("{path} row {row}: label {value:?} matches neither the positive nor the negative mapping")]
    UnmappableLabel {
        path: String,
        row: usize,
        value: String,
    },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("duplicate document id {0:?}")]
    DuplicateId(String),
    #[error("a labeled corpus must label every row; row {row} has no label")]
    PartialLabels { row: usize },
}

/// Label-string mapping applied to the `label` column.
///
/// Matching is case-insensitive after trimming. The canonical forms
/// `positive`/`negative` are always accepted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LabelMapping {
    pub positive: Vec<String>,
    pub negative: Vec<String>,
}

impl Default for LabelMapping {
    fn default() -> Self {
        Self {
            positive: vec!["1".into(), "yes".into(), "moral".into()],
            negative: vec!["0".into(), "no".into(), "other".into()],
        }
    }
}

impl LabelMapping {
    fn map(&self, raw: &str) -> Option<Label> {
        let v = raw.trim().to_lowercase();
        if v == "positive" || self.positive.iter().any(|p| p.to_lowercase() == v) {
            Some(Label::Positive)
        } else if v == "negative" || self.negative.iter().any(|n| n.to_lowercase() == v) {
            Some(Label::Negative)
        } else {
            None
        }
    }
}

/// One input row; `label` and `group` columns/fields are optional.
#[derive(Debug, Serialize, Deserialize)]
struct RawRecord {
    id: String,
    text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Jsonl,
}

fn detect_format(path: &Path) -> Result<Format, IoError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(Format::Csv),
        Some("jsonl") | Some("ndjson") => Ok(Format::Jsonl),
        _ => Err(IoError::UnknownFormat {
            path: path.display().to_string(),
        }),
    }
}

/// Load a corpus, preserving input order. Row numbers in errors are
/// 1-based over data rows (the CSV header is row 0).
pub fn load_corpus(path: &Path, mapping: &LabelMapping) -> Result<Corpus, IoError> {
    let name = path.display().to_string();
    let mut records = match detect_format(path)? {
        Format::Csv => read_csv(path, &name)?,
        Format::Jsonl => read_jsonl(path, &name)?,
    };
    if records.is_empty() {
        return Err(IoError::EmptyCorpus);
    }
    // blank label/group cells (as CSV writes for absent values) mean "none"
    for record in &mut records {
        if record.label.as_deref().is_some_and(|v| v.trim().is_empty()) {
            record.label = None;
        }
        if record.group.as_deref().is_some_and(|v| v.trim().is_empty()) {
            record.group = None;
        }
    }

    let any_labeled = records.iter().any(|r| r.label.is_some());
    let mut documents = Vec::with_capacity(records.len());
    for (i, record) in records.into_iter().enumerate() {
        let row = i + 1;
        let label = match record.label {
            Some(raw) => Some(mapping.map(&raw).ok_or(IoError::UnmappableLabel {
                path: name.clone(),
                row,
                value: raw,
            })?),
            None if any_labeled => return Err(IoError::PartialLabels { row }),
            None => None,
        };
        documents.push(Document {
            id: record.id,
            text: record.text,
            label,
            group: record.group,
        });
    }
    Corpus::new(documents).map_err(|e| match e {
        CorpusError::Empty => IoError::EmptyCorpus,
        CorpusError::DuplicateId(id) => IoError::DuplicateId(id),
    })
}

fn read_csv(path: &Path, name: &str) -> Result<Vec<RawRecord>, IoError> {
    let file = File::open(path).map_err(|source| IoError::Read {
        path: name.to_string(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let mut records = Vec::new();
    for (i, result) in reader.deserialize::<RawRecord>().enumerate() {
        let record = result.map_err(|e| IoError::Row {
            path: name.to_string(),
            row: i + 1,
            message: e.to_string(),
        })?;
        records.push(record);
    }
    Ok(records)
}

fn read_jsonl(path: &Path, name: &str) -> Result<Vec<RawRecord>, IoError> {
    let file = File::open(path).map_err(|source| IoError::Read {
        path: name.to_string(),
        source,
    })?;
    let mut records = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| IoError::Read {
            path: name.to_string(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str::<RawRecord>(&line).map_err(|e| IoError::Row {
            path: name.to_string(),
            row: i + 1,
            message: e.to_string(),
        })?;
        records.push(record);
    }
    Ok(records)
}

fn label_string(label: Label) -> &'static str {
    match label {
        Label::Positive => "positive",
        Label::Negative => "negative",
    }
}

/// Write a corpus in canonical form (labels as `positive`/`negative`);
/// format chosen by extension. `load_corpus(write_corpus(c)) == c`.
pub fn write_corpus(corpus: &Corpus, path: &Path) -> Result<(), IoError> {
    let name = path.display().to_string();
    let records: Vec<RawRecord> = corpus
        .documents()
        .iter()
        .map(|d| RawRecord {
            id: d.id.clone(),
            text: d.text.clone(),
            label: d.label.map(|l| label_string(l).to_string()),
            group: d.group.clone(),
        })
        .collect();
    match detect_format(path)? {
        Format::Csv => {
            let file = File::create(path).map_err(|source| IoError::Write {
                path: name.clone(),
                source,
            })?;
            let mut writer = csv::Writer::from_writer(file);
            // explicit header keeps optional columns present and ordered
            writer
                .write_record(["id", "text", "label", "group"])
                .and_then(|_| {
                    records.iter().try_for_each(|r| {
                        writer.write_record([
                            r.id.as_str(),
                            r.text.as_str(),
                            r.label.as_deref().unwrap_or(""),
                            r.group.as_deref().unwrap_or(""),
                        ])
                    })
                })
                .and_then(|_| writer.flush().map_err(Into::into))
                .map_err(|e| IoError::Row {
                    path: name,
                    row: 0,
                    message: e.to_string(),
                })
        }
        Format::Jsonl => {
            let mut file = File::create(path).map_err(|source| IoError::Write {
                path: name.clone(),
                source,
            })?;
            for record in &records {
                let line = serde_json::to_string(record).expect("record serializes");
                writeln!(file, "{line}").map_err(|source| IoError::Write {
                    path: name.clone(),
                    source,
                })?;
            }
            Ok(())
        }
    }
}
