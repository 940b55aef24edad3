//! Vocabulary and sparse document–term count matrices.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::pipeline::{PipelineConfig, ProcessedCorpus};

/// A term → index map with per-term document frequencies.
///
/// Indices are contiguous `0..len` in sorted-term order. The vocabulary
/// records the pipeline configuration it was built under; vectorizing a
/// corpus processed under a different configuration is rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    terms: Vec<String>,
    df: Vec<u32>,
    index: BTreeMap<String, usize>,
    pub dict_size_before: usize,
    pub dict_size_after: usize,
    config: PipelineConfig,
}

impl Vocabulary {
    pub(crate) fn new(
        terms: Vec<String>,
        df: Vec<u32>,
        dict_size_before: usize,
        config: PipelineConfig,
    ) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] < w[1]), "terms must be sorted");
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let dict_size_after = terms.len();
        Self {
            terms,
            df,
            index,
            dict_size_before,
            dict_size_after,
            config,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, index: usize) -> &str {
        &self.terms[index]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn df(&self, index: usize) -> u32 {
        self.df[index]
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }
}

/// How token occurrences are turned into feature values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Raw occurrence counts (the standard representation here).
    #[default]
    Counts,
    /// 0/1 presence, for sensitivity analysis only.
    Binary,
}

/// Sparse docs × terms count matrix.
///
/// Each row holds `(term index, count)` pairs with strictly increasing
/// indices and positive counts; a row may be empty (a zero-feature document).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocTermMatrix {
    pub n_docs: usize,
    pub n_terms: usize,
    rows: Vec<Vec<(usize, u32)>>,
}

/// A row violated the sparse-matrix invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidRow {
    pub row: usize,
}

impl fmt::Display for InvalidRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {} has out-of-range, unsorted, or zero-count entries",
            self.row
        )
    }
}

impl DocTermMatrix {
    /// Build from sparse rows, validating index bounds, strict ordering,
    /// and positive counts.
    pub fn from_rows(n_terms: usize, rows: Vec<Vec<(usize, u32)>>) -> Result<Self, InvalidRow> {
        for (i, row) in rows.iter().enumerate() {
            let ordered = row.windows(2).all(|w| w[0].0 < w[1].0);
            let in_range = row.iter().all(|&(f, c)| f < n_terms && c > 0);
            if !ordered || !in_range {
                return Err(InvalidRow { row: i });
            }
        }
        Ok(Self {
            n_docs: rows.len(),
            n_terms,
            rows,
        })
    }

    /// Build from dense rows; zeros are dropped. Handy for small fixtures.
    pub fn from_dense(rows: &[&[u32]]) -> Self {
        let n_terms = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let sparse = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(_, &c)| c > 0)
                    .map(|(f, &c)| (f, c))
                    .collect()
            })
            .collect();
        Self {
            n_docs: rows.len(),
            n_terms,
            rows: sparse,
        }
    }

    pub fn rows(&self) -> &[Vec<(usize, u32)>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[(usize, u32)] {
        &self.rows[i]
    }

    /// Number of documents with an empty row.
    pub fn zero_row_count(&self) -> usize {
        self.rows.iter().filter(|r| r.is_empty()).count()
    }
}

/// The vocabulary was built under a different pipeline configuration than
/// the processed corpus being vectorized.
#[derive(Debug, Clone, PartialEq)]
pub struct ProvenanceMismatch;

impl fmt::Display for ProvenanceMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vocabulary and processed corpus were built under different pipeline configurations"
        )
    }
}

/// Count occurrences of vocabulary terms per document.
///
/// Out-of-vocabulary tokens are dropped, which is what produces zero-feature
/// rows when a vocabulary learned on one corpus is applied to another.
pub fn vectorize(
    processed: &ProcessedCorpus,
    vocab: &Vocabulary,
) -> Result<DocTermMatrix, ProvenanceMismatch> {
    vectorize_with_mode(processed, vocab, CountMode::Counts)
}

pub fn vectorize_with_mode(
    processed: &ProcessedCorpus,
    vocab: &Vocabulary,
    mode: CountMode,
) -> Result<DocTermMatrix, ProvenanceMismatch> {
    if processed.config() != vocab.config() {
        return Err(ProvenanceMismatch);
    }
    let rows = processed
        .token_lists()
        .iter()
        .map(|tokens| {
            let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
            for token in tokens {
                if let Some(idx) = vocab.index_of(token) {
                    *counts.entry(idx).or_insert(0) += 1;
                }
            }
            counts
                .into_iter()
                .map(|(idx, c)| match mode {
                    CountMode::Counts => (idx, c),
                    CountMode::Binary => (idx, 1),
                })
                .collect()
        })
        .collect();
    Ok(DocTermMatrix {
        n_docs: processed.len(),
        n_terms: vocab.len(),
        rows,
    })
}
