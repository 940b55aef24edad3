//! Seeded train/test splitting and classification metrics.
//!
//! Splits use a fixed, documented PRNG — PCG32 (LCG 64/32 with xorshift
//! output), seeded directly with the integer seed and a fixed stream
//! constant — so seed `k` reproduces the same split on every platform.
//!
//! Following the replicated workflow, the vocabulary and document
//! frequencies are computed on the full labeled corpus *before* splitting.
//! This leaks test-set document-frequency information into the features and
//! is intentionally preserved; reports flag it as a methodological warning.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand_core::Rng;
use rand_pcg::Pcg32;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Label};
use crate::gbt::{train_gbt, GbtError, GbtModel, GbtParams};
use crate::matrix::{vectorize, DocTermMatrix};
use crate::pipeline::{apply_pipeline, build_vocabulary, PipelineConfig};
use crate::stopwords::StopwordList;

/// Stream constant for the split PRNG; fixed so a seed alone identifies a
/// split.
const PCG_STREAM: u64 = 0xa02b_dbf7_bb3c_0a7;

/// Note attached to every evaluation output: the vocabulary is fit on all
/// labeled documents before splitting.
pub const DF_LEAK_WARNING: &str = "vocabulary and document frequencies were computed on the full \
labeled corpus before the train/test split (replicated workflow); test-set information leaks \
into feature selection";

/// Seeded split specification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub seed: u64,
    pub train_fraction: f64,
}

impl SplitSpec {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            train_fraction: 0.7,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SplitError {
    TooFewDocuments(usize),
    FractionOutOfRange(f64),
    /// floor(fraction · n) left an empty train or test side.
    DegenerateSplit { n: usize, train: usize },
}

impl fmt::Display for SplitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitError::TooFewDocuments(n) => write!(f, "need at least 2 documents, got {n}"),
            SplitError::FractionOutOfRange(x) => {
                write!(f, "train fraction {x} not in (0, 1)")
            }
            SplitError::DegenerateSplit { n, train } => {
                write!(f, "split of {n} documents gives train size {train}; both sides must be non-empty")
            }
        }
    }
}

/// Uniform integer in `[0, bound)` by widening multiply with rejection.
fn uniform_u32(rng: &mut Pcg32, bound: u32) -> u32 {
    debug_assert!(bound > 0);
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let x = rng.next_u32();
        let m = (x as u64) * (bound as u64);
        if (m as u32) >= threshold {
            return (m >> 32) as u32;
        }
    }
}

/// Sample `floor(train_fraction · n)` train indices without replacement;
/// the remainder is the test set. Both sides are returned sorted.
pub fn make_split(n: usize, spec: &SplitSpec) -> Result<(Vec<usize>, Vec<usize>), SplitError> {
    if n < 2 {
        return Err(SplitError::TooFewDocuments(n));
    }
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(SplitError::FractionOutOfRange(spec.train_fraction));
    }
    let train_size = libm::floor(spec.train_fraction * n as f64) as usize;
    if train_size == 0 || train_size >= n {
        return Err(SplitError::DegenerateSplit {
            n,
            train: train_size,
        });
    }

    let mut rng = Pcg32::new(spec.seed, PCG_STREAM);
    let mut indices: Vec<usize> = (0..n).collect();
    // partial Fisher-Yates: the first train_size slots become the sample
    for i in 0..train_size {
        let j = i + uniform_u32(&mut rng, (n - i) as u32) as usize;
        indices.swap(i, j);
    }
    let mut train = indices[..train_size].to_vec();
    let mut test = indices[train_size..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

/// 2×2 contingency counts for the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthMismatch {
    pub predictions: usize,
    pub truths: usize,
}

impl fmt::Display for LengthMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} predictions vs {} truths",
            self.predictions, self.truths
        )
    }
}

pub fn confusion(predictions: &[Label], truths: &[Label]) -> Result<ConfusionMatrix, LengthMismatch> {
    if predictions.len() != truths.len() || predictions.is_empty() {
        return Err(LengthMismatch {
            predictions: predictions.len(),
            truths: truths.len(),
        });
    }
    let mut cm = ConfusionMatrix {
        tp: 0,
        fp: 0,
        fn_: 0,
        tn: 0,
    };
    for (p, t) in predictions.iter().zip(truths) {
        match (p.is_positive(), t.is_positive()) {
            (true, true) => cm.tp += 1,
            (true, false) => cm.fp += 1,
            (false, true) => cm.fn_ += 1,
            (false, false) => cm.tn += 1,
        }
    }
    Ok(cm)
}

/// Precision/recall/F1 with explicit undefined sentinels: a zero denominator
/// yields `None`, never a silent 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsPair {
    pub positive: ClassMetrics,
    pub negative: ClassMetrics,
}

fn one_class(tp: usize, fp: usize, fn_: usize) -> ClassMetrics {
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            None
        } else {
            Some(num as f64 / den as f64)
        }
    };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f1 = match (precision, recall) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        _ => None,
    };
    ClassMetrics {
        precision,
        recall,
        f1,
    }
}

pub fn class_metrics(cm: &ConfusionMatrix) -> MetricsPair {
    MetricsPair {
        positive: one_class(cm.tp, cm.fp, cm.fn_),
        // negative-class metrics by symmetric swap
        negative: one_class(cm.tn, cm.fn_, cm.fp),
    }
}

/// One seed's evaluation output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub seed: u64,
    pub confusion: ConfusionMatrix,
    pub metrics: MetricsPair,
    pub support_positive: usize,
    pub support_negative: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    UnlabeledCorpus,
    Pipeline(String),
    Split(SplitError),
    Train(GbtError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnlabeledCorpus => write!(f, "evaluation requires a fully labeled corpus"),
            EvalError::Pipeline(msg) => write!(f, "pipeline error: {msg}"),
            EvalError::Split(e) => write!(f, "split error: {e}"),
            EvalError::Train(e) => write!(f, "training error: {e}"),
        }
    }
}

impl From<SplitError> for EvalError {
    fn from(e: SplitError) -> Self {
        EvalError::Split(e)
    }
}

impl From<GbtError> for EvalError {
    fn from(e: GbtError) -> Self {
        EvalError::Train(e)
    }
}

/// Features and labels computed once per pipeline configuration and shared
/// across all seeds of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedData {
    pub dtm: DocTermMatrix,
    pub labels: Vec<Label>,
}

/// Apply the pipeline and vectorize the full labeled corpus.
pub fn prepare(
    corpus: &Corpus,
    config: &PipelineConfig,
    stopwords: &StopwordList,
) -> Result<PreparedData, EvalError> {
    let labels = corpus.labels().ok_or(EvalError::UnlabeledCorpus)?;
    config
        .validate()
        .map_err(|e| EvalError::Pipeline(alloc::format!("{e}")))?;
    let processed = apply_pipeline(corpus, config, stopwords);
    let vocab = build_vocabulary(&processed, config.rare_term_min_df_fraction)
        .map_err(|e| EvalError::Pipeline(alloc::format!("{e}")))?;
    let dtm = vectorize(&processed, &vocab).map_err(|e| EvalError::Pipeline(alloc::format!("{e}")))?;
    Ok(PreparedData { dtm, labels })
}

/// Split, train on the train rows, evaluate on the test rows.
pub fn evaluate_prepared(
    prepared: &PreparedData,
    params: &GbtParams,
    spec: &SplitSpec,
) -> Result<EvalResult, EvalError> {
    let n = prepared.dtm.n_docs;
    let (train_idx, test_idx) = make_split(n, spec)?;

    let train_rows: Vec<Vec<(usize, u32)>> = train_idx
        .iter()
        .map(|&i| prepared.dtm.row(i).to_vec())
        .collect();
    let train_dtm = DocTermMatrix::from_rows(prepared.dtm.n_terms, train_rows)
        .expect("rows of a valid matrix stay valid");
    let train_labels: Vec<Label> = train_idx.iter().map(|&i| prepared.labels[i]).collect();

    let model = train_gbt(&train_dtm, &train_labels, params)?;

    let mut predictions = Vec::with_capacity(test_idx.len());
    let mut truths = Vec::with_capacity(test_idx.len());
    for &i in &test_idx {
        predictions.push(model.predict_label(prepared.dtm.row(i), 0.5)?);
        truths.push(prepared.labels[i]);
    }
    let cm = confusion(&predictions, &truths).expect("equal non-empty lengths");
    let metrics = class_metrics(&cm);
    Ok(EvalResult {
        seed: spec.seed,
        confusion: cm,
        metrics,
        support_positive: cm.tp + cm.fn_,
        support_negative: cm.fp + cm.tn,
    })
}

/// Full single-seed evaluation from a raw corpus.
pub fn evaluate_run(
    corpus: &Corpus,
    config: &PipelineConfig,
    stopwords: &StopwordList,
    params: &GbtParams,
    spec: &SplitSpec,
) -> Result<EvalResult, EvalError> {
    let prepared = prepare(corpus, config, stopwords)?;
    evaluate_prepared(&prepared, params, spec)
}

/// Predict labels for every row of a matrix with a trained model.
pub fn predict_all(model: &GbtModel, dtm: &DocTermMatrix) -> Result<Vec<Label>, GbtError> {
    dtm.rows()
        .iter()
        .map(|row| model.predict_label(row, 0.5))
        .collect()
}
