//! Documents, corpora, and raw-text statistics.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::math;

/// Binary class label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn is_positive(self) -> bool {
        matches!(self, Label::Positive)
    }

    pub fn from_bool(positive: bool) -> Self {
        if positive {
            Label::Positive
        } else {
            Label::Negative
        }
    }
}

/// A single short text with optional label and group tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub label: Option<Label>,
    pub group: Option<String>,
}

/// An ordered, index-addressable collection of documents.
///
/// Ids are unique within a corpus. The corpus is `labeled` when every
/// document carries a label; it is immutable after construction and safe to
/// share across parallel sweep workers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    documents: Vec<Document>,
    labeled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusError {
    Empty,
    DuplicateId(String),
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::Empty => write!(f, "empty corpus"),
            CorpusError::DuplicateId(id) => write!(f, "duplicate document id {id:?}"),
        }
    }
}

impl Corpus {
    pub fn new(documents: Vec<Document>) -> Result<Self, CorpusError> {
        if documents.is_empty() {
            return Err(CorpusError::Empty);
        }
        let mut seen = BTreeSet::new();
        for doc in &documents {
            if !seen.insert(doc.id.as_str()) {
                return Err(CorpusError::DuplicateId(doc.id.clone()));
            }
        }
        let labeled = documents.iter().all(|d| d.label.is_some());
        Ok(Self { documents, labeled })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn labeled(&self) -> bool {
        self.labeled
    }

    /// Labels in document order; `None` unless the corpus is fully labeled.
    pub fn labels(&self) -> Option<Vec<Label>> {
        if !self.labeled {
            return None;
        }
        Some(self.documents.iter().map(|d| d.label.unwrap()).collect())
    }

    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self
            .documents
            .iter()
            .filter(|d| d.label == Some(Label::Positive))
            .count();
        let neg = self
            .documents
            .iter()
            .filter(|d| d.label == Some(Label::Negative))
            .count();
        (pos, neg)
    }
}

/// Raw-text corpus summary.
///
/// Token lengths are whitespace-separated tokens of the raw text, so these
/// statistics are invariant under any preprocessing configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_docs: usize,
    pub n_positive: usize,
    pub n_negative: usize,
    pub n_unlabeled: usize,
    pub mean_token_length: f64,
    /// Sample standard deviation; 0 for a single-document corpus, in which
    /// case `sd_degenerate` is set.
    pub sd_token_length: f64,
    pub sd_degenerate: bool,
}

pub fn corpus_stats(corpus: &Corpus) -> CorpusStats {
    let lengths: Vec<f64> = corpus
        .documents()
        .iter()
        .map(|d| d.text.split_whitespace().count() as f64)
        .collect();
    let n = lengths.len();
    let mean = lengths.iter().sum::<f64>() / n as f64;
    let (sd, degenerate) = if n < 2 {
        (0.0, true)
    } else {
        let ss = lengths.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
        (math::sqrt(ss / (n - 1) as f64), false)
    };
    let (pos, neg) = corpus.class_counts();
    CorpusStats {
        n_docs: n,
        n_positive: pos,
        n_negative: neg,
        n_unlabeled: n - pos - neg,
        mean_token_length: mean,
        sd_token_length: sd,
        sd_degenerate: degenerate,
    }
}
