//! Data-quality diagnostics: sparsity accounting, zero-feature audits,
//! Heaps'-law fits, and per-group positive rates.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand_core::Rng;
use rand_pcg::Pcg32;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Label};
use crate::gbt::{GbtError, GbtModel};
use crate::math;
use crate::matrix::{DocTermMatrix, ProvenanceMismatch, Vocabulary};
use crate::pipeline::ProcessedCorpus;

/// Reserved group key for documents without a group tag.
pub const UNGROUPED_KEY: &str = "(ungrouped)";

/// Zero-row fraction above which bulk-labeling output carries an automatic
/// warning.
pub const ZERO_FEATURE_WARNING_THRESHOLD: f64 = 0.05;

/// Documents bucketed by their number of nonzero features.
///
/// Buckets cover `0..=max` explicitly, including empty ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsityHistogram {
    pub n_docs: usize,
    pub buckets: Vec<SparsityBucket>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsityBucket {
    /// Number of distinct nonzero features.
    pub n: usize,
    pub count: usize,
    pub fraction: f64,
}

/// What to count per document when bucketing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SparsityCount {
    /// Distinct nonzero features (how "words left" tables are usually read).
    #[default]
    DistinctFeatures,
    /// Total retained token occurrences, for sensitivity analysis.
    TotalTokens,
}

pub fn sparsity_histogram(dtm: &DocTermMatrix) -> SparsityHistogram {
    sparsity_histogram_with_count(dtm, SparsityCount::DistinctFeatures)
}

pub fn sparsity_histogram_with_count(
    dtm: &DocTermMatrix,
    mode: SparsityCount,
) -> SparsityHistogram {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for row in dtm.rows() {
        let key = match mode {
            SparsityCount::DistinctFeatures => row.len(),
            SparsityCount::TotalTokens => row.iter().map(|&(_, c)| c as usize).sum(),
        };
        *counts.entry(key).or_insert(0) += 1;
    }
    let max_n = counts.keys().next_back().copied().unwrap_or(0);
    let n_docs = dtm.n_docs;
    let buckets = (0..=max_n)
        .map(|n| {
            let count = counts.get(&n).copied().unwrap_or(0);
            SparsityBucket {
                n,
                count,
                fraction: if n_docs == 0 {
                    0.0
                } else {
                    count as f64 / n_docs as f64
                },
            }
        })
        .collect();
    SparsityHistogram { n_docs, buckets }
}

/// Token counts before stopword/rare filtering versus tokens surviving the
/// full pipeline (those retained in the vocabulary).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenReduction {
    pub token_count_before: usize,
    pub token_count_after: usize,
    pub reduction_fraction: f64,
}

pub fn token_reduction(
    processed: &ProcessedCorpus,
    vocab: &Vocabulary,
) -> Result<TokenReduction, ProvenanceMismatch> {
    if processed.config() != vocab.config() {
        return Err(ProvenanceMismatch);
    }
    let before: usize = processed.normalized_token_counts().iter().sum();
    let after: usize = processed
        .token_lists()
        .iter()
        .map(|tokens| tokens.iter().filter(|t| vocab.index_of(t).is_some()).count())
        .sum();
    let reduction_fraction = if before == 0 {
        0.0
    } else {
        1.0 - after as f64 / before as f64
    };
    Ok(TokenReduction {
        token_count_before: before,
        token_count_after: after,
        reduction_fraction,
    })
}

/// Combined sparsity view: per-document feature-count histogram, dictionary
/// sizes before and after rare-term filtering, and token accounting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsityReport {
    pub histogram: SparsityHistogram,
    pub dict_size_before: usize,
    pub dict_size_after: usize,
    pub token_reduction: TokenReduction,
}

pub fn sparsity_report(
    processed: &ProcessedCorpus,
    vocab: &Vocabulary,
    dtm: &DocTermMatrix,
) -> Result<SparsityReport, ProvenanceMismatch> {
    let reduction = token_reduction(processed, vocab)?;
    Ok(SparsityReport {
        histogram: sparsity_histogram(dtm),
        dict_size_before: vocab.dict_size_before,
        dict_size_after: vocab.dict_size_after,
        token_reduction: reduction,
    })
}

/// What a model does with documents whose every token was removed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroFeatureAudit {
    pub zero_row_count: usize,
    pub zero_row_fraction: f64,
    /// The constant prediction every zero-feature document receives.
    pub predicted_label_for_zero_row: Label,
    pub prob_for_zero_row: f64,
    /// Set when the zero-row fraction exceeds the warning threshold.
    pub warning: Option<String>,
}

pub fn zero_feature_audit(
    model: &GbtModel,
    dtm: &DocTermMatrix,
) -> Result<ZeroFeatureAudit, GbtError> {
    // the prediction is constant over zero rows; evaluate once
    let prob = model.predict_prob(&[])?;
    let label = model.predict_label(&[], 0.5)?;
    let zero_row_count = dtm.zero_row_count();
    let zero_row_fraction = if dtm.n_docs == 0 {
        0.0
    } else {
        zero_row_count as f64 / dtm.n_docs as f64
    };
    let warning = (zero_row_fraction > ZERO_FEATURE_WARNING_THRESHOLD).then(|| {
        alloc::format!(
            "{:.1}% of documents have no non-zero features; their labels are the model's \
constant zero-feature prediction and cannot be trusted",
            zero_row_fraction * 100.0
        )
    });
    Ok(ZeroFeatureAudit {
        zero_row_count,
        zero_row_fraction,
        predicted_label_for_zero_row: label,
        prob_for_zero_row: prob,
        warning,
    })
}

/// Power-law fit of vocabulary growth `V(n) ≈ K·n^β` over token prefixes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeapsFit {
    pub k: f64,
    pub beta: f64,
    pub r_squared: f64,
    /// Sampled `(n, V(n))` curve points.
    pub points: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeapsFitError {
    /// Fewer than 100 tokens in the processed corpus.
    TooFewTokens(usize),
}

impl fmt::Display for HeapsFitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeapsFitError::TooFewTokens(n) => {
                write!(f, "Heaps fit needs at least 100 tokens, got {n}")
            }
        }
    }
}

/// Document order used to form the token stream. Heaps fits are
/// order-sensitive, so a seeded shuffle is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TokenOrder {
    Native,
    Shuffled { seed: u64 },
}

pub fn heaps_fit(processed: &ProcessedCorpus) -> Result<HeapsFit, HeapsFitError> {
    heaps_fit_with_order(processed, TokenOrder::Native)
}

pub fn heaps_fit_with_order(
    processed: &ProcessedCorpus,
    order: TokenOrder,
) -> Result<HeapsFit, HeapsFitError> {
    let mut doc_order: Vec<usize> = (0..processed.len()).collect();
    if let TokenOrder::Shuffled { seed } = order {
        let mut rng = Pcg32::new(seed, 0xa02b_dbf7_bb3c_0a7);
        for i in (1..doc_order.len()).rev() {
            let j = (rng.next_u32() as usize) % (i + 1);
            doc_order.swap(i, j);
        }
    }
    let stream: Vec<&str> = doc_order
        .iter()
        .flat_map(|&d| processed.token_lists()[d].iter().map(|t| t.as_str()))
        .collect();
    let total = stream.len();
    if total < 100 {
        return Err(HeapsFitError::TooFewTokens(total));
    }

    // at least 10 geometrically spaced prefix lengths from 10 to the total
    let n_points = 12usize;
    let lo = 10.0f64;
    let hi = total as f64;
    let mut sample_ns: Vec<usize> = (0..n_points)
        .map(|i| {
            let t = i as f64 / (n_points - 1) as f64;
            libm::round(lo * libm::pow(hi / lo, t)) as usize
        })
        .collect();
    sample_ns.dedup();

    let mut seen: BTreeMap<&str, ()> = BTreeMap::new();
    let mut points = Vec::with_capacity(sample_ns.len());
    let mut next = 0usize;
    for (i, token) in stream.iter().enumerate() {
        seen.entry(token).or_insert(());
        while next < sample_ns.len() && i + 1 == sample_ns[next] {
            points.push((i + 1, seen.len()));
            next += 1;
        }
    }

    // least squares on log V vs log n
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, v)| (math::ln(n as f64), math::ln(v as f64)))
        .collect();
    let m = logs.len() as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    let beta = if denom == 0.0 {
        0.0
    } else {
        (m * sxy - sx * sy) / denom
    };
    let intercept = (sy - beta * sx) / m;
    let k = math::exp(intercept);

    let mean_y = sy / m;
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - mean_y) * (p.1 - mean_y)).sum();
    let ss_res: f64 = logs
        .iter()
        .map(|p| {
            let pred = intercept + beta * p.0;
            (p.1 - pred) * (p.1 - pred)
        })
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };

    Ok(HeapsFit {
        k,
        beta,
        r_squared,
        points,
    })
}

/// Per-group prediction rate, sorted by descending positive fraction (ties
/// broken by group name for determinism).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupRate {
    pub group: String,
    pub count: usize,
    pub positive_fraction: f64,
}

pub fn group_positive_rate(
    corpus: &Corpus,
    predictions: &[Label],
) -> Result<Vec<GroupRate>, crate::eval::LengthMismatch> {
    if predictions.len() != corpus.len() {
        return Err(crate::eval::LengthMismatch {
            predictions: predictions.len(),
            truths: corpus.len(),
        });
    }
    let mut by_group: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (doc, pred) in corpus.documents().iter().zip(predictions) {
        let key = doc.group.as_deref().unwrap_or(UNGROUPED_KEY);
        let entry = by_group.entry(key).or_insert((0, 0));
        entry.0 += 1;
        if pred.is_positive() {
            entry.1 += 1;
        }
    }
    let mut rates: Vec<GroupRate> = by_group
        .into_iter()
        .map(|(group, (count, positives))| GroupRate {
            group: group.to_string(),
            count,
            positive_fraction: positives as f64 / count as f64,
        })
        .collect();
    rates.sort_by(|a, b| {
        b.positive_fraction
            .partial_cmp(&a.positive_fraction)
            .expect("fractions are finite")
            .then_with(|| a.group.cmp(&b.group))
    });
    Ok(rates)
}
