//! Multi-seed sweeps, ablation batteries, and distributional aggregation.
//!
//! A sweep repeats the single-seed evaluation over a contiguous seed range
//! with everything else held fixed. Because the split depends only on the
//! seed and the corpus size, sweeps over different pipeline presets are
//! paired by seed. Aggregation excludes undefined metric values from
//! moments and counts them separately; quartiles use inclusive linear
//! interpolation between order statistics.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::eval::{evaluate_prepared, prepare, EvalError, EvalResult, SplitSpec};
use crate::gbt::GbtParams;
use crate::math;
use crate::pipeline::{PipelineConfig, Preset};
use crate::stopwords::StopwordList;

/// Reference positive-class precision reported by the replicated study.
pub const DEFAULT_REFERENCE_PRECISION: f64 = 0.867;

/// Metric axis selectors for aggregation and boxplots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Precision,
    Recall,
    F1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassSide {
    Positive,
    Negative,
}

/// Full sweep configuration: inclusive seed range plus the per-seed
/// settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub seed_start: u64,
    pub seed_end: u64,
    pub pipeline: PipelineConfig,
    pub gbt: GbtParams,
    pub train_fraction: f64,
    pub reference_precision: Option<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            seed_start: 1,
            seed_end: 1000,
            pipeline: PipelineConfig::baseline(),
            gbt: GbtParams::default(),
            train_fraction: 0.7,
            reference_precision: Some(DEFAULT_REFERENCE_PRECISION),
        }
    }
}

impl SweepConfig {
    pub fn seeds(&self) -> impl Iterator<Item = u64> {
        self.seed_start..=self.seed_end
    }

    pub fn seed_count(&self) -> usize {
        if self.seed_end < self.seed_start {
            0
        } else {
            (self.seed_end - self.seed_start + 1) as usize
        }
    }
}

/// Seed-ordered evaluation results plus the configuration that produced
/// them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub results: Vec<EvalResult>,
    pub config: SweepConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepError {
    EmptySeedRange,
    EmptySweep,
    /// A per-seed failure aborts the sweep with the offending seed.
    Seed { seed: u64, error: EvalError },
    Eval(EvalError),
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::EmptySeedRange => write!(f, "empty seed range"),
            SweepError::EmptySweep => write!(f, "empty sweep result"),
            SweepError::Seed { seed, error } => write!(f, "seed {seed}: {error}"),
            SweepError::Eval(e) => write!(f, "{e}"),
        }
    }
}

/// Run the per-seed evaluation over the whole seed range, sequentially.
///
/// Features are prepared once and shared; only the split varies. Parallel
/// execution lives in the companion crate and must produce identical
/// results.
pub fn run_sweep(
    corpus: &Corpus,
    sweep: &SweepConfig,
    stopwords: &StopwordList,
) -> Result<SweepResult, SweepError> {
    if sweep.seed_count() == 0 {
        return Err(SweepError::EmptySeedRange);
    }
    let prepared = prepare(corpus, &sweep.pipeline, stopwords).map_err(SweepError::Eval)?;
    let mut results = Vec::with_capacity(sweep.seed_count());
    for seed in sweep.seeds() {
        let spec = SplitSpec {
            seed,
            train_fraction: sweep.train_fraction,
        };
        let result = evaluate_prepared(&prepared, &sweep.gbt, &spec)
            .map_err(|error| SweepError::Seed { seed, error })?;
        results.push(result);
    }
    Ok(SweepResult {
        results,
        config: sweep.clone(),
    })
}

/// Moments and order statistics over the defined values of one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub defined: usize,
    pub undefined: usize,
    pub mean: Option<f64>,
    /// Sample standard deviation; 0 when only one value is defined.
    pub sd: Option<f64>,
    pub median: Option<f64>,
    pub q1: Option<f64>,
    pub q3: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

impl MetricSummary {
    fn from_values(values: &[Option<f64>]) -> Self {
        let mut defined: Vec<f64> = values.iter().filter_map(|v| *v).collect();
        let undefined = values.len() - defined.len();
        if defined.is_empty() {
            return Self {
                defined: 0,
                undefined,
                mean: None,
                sd: None,
                median: None,
                q1: None,
                q3: None,
                min: None,
                max: None,
            };
        }
        defined.sort_by(|a, b| a.partial_cmp(b).expect("metric values are finite"));
        let n = defined.len();
        let mean = defined.iter().sum::<f64>() / n as f64;
        let sd = if n < 2 {
            0.0
        } else {
            let ss = defined.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
            math::sqrt(ss / (n - 1) as f64)
        };
        Self {
            defined: n,
            undefined,
            mean: Some(mean),
            sd: Some(sd),
            median: Some(quantile_sorted(&defined, 0.5)),
            q1: Some(quantile_sorted(&defined, 0.25)),
            q3: Some(quantile_sorted(&defined, 0.75)),
            min: Some(defined[0]),
            max: Some(defined[n - 1]),
        }
    }
}

/// Inclusive linear interpolation between order statistics
/// (`h = (n−1)·p`), the method boxplot reproduction depends on.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = libm::floor(h) as usize;
    let hi = if lo + 1 < sorted.len() { lo + 1 } else { lo };
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub precision: MetricSummary,
    pub recall: MetricSummary,
    pub f1: MetricSummary,
}

/// Distributional aggregate of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub n_seeds: usize,
    pub positive: ClassSummary,
    pub negative: ClassSummary,
    pub reference_precision: Option<f64>,
    /// Seeds whose positive-class precision matched or beat the reference.
    pub count_ge_reference: Option<usize>,
    pub warnings: Vec<String>,
}

/// Extract one metric across a sweep, in seed order.
pub fn metric_values(result: &SweepResult, class: ClassSide, kind: MetricKind) -> Vec<Option<f64>> {
    result
        .results
        .iter()
        .map(|r| {
            let side = match class {
                ClassSide::Positive => &r.metrics.positive,
                ClassSide::Negative => &r.metrics.negative,
            };
            match kind {
                MetricKind::Precision => side.precision,
                MetricKind::Recall => side.recall,
                MetricKind::F1 => side.f1,
            }
        })
        .collect()
}

pub fn aggregate_sweep(
    result: &SweepResult,
    reference: Option<f64>,
) -> Result<Aggregate, SweepError> {
    if result.results.is_empty() {
        return Err(SweepError::EmptySweep);
    }
    let summarize = |class: ClassSide| ClassSummary {
        precision: MetricSummary::from_values(&metric_values(result, class, MetricKind::Precision)),
        recall: MetricSummary::from_values(&metric_values(result, class, MetricKind::Recall)),
        f1: MetricSummary::from_values(&metric_values(result, class, MetricKind::F1)),
    };
    let positive = summarize(ClassSide::Positive);
    let negative = summarize(ClassSide::Negative);
    let count_ge_reference = reference.map(|r| {
        metric_values(result, ClassSide::Positive, MetricKind::Precision)
            .iter()
            .filter(|v| matches!(v, Some(x) if *x >= r))
            .count()
    });
    let mut warnings = Vec::new();
    warnings.push(String::from(crate::eval::DF_LEAK_WARNING));
    if positive.precision.undefined > 0 {
        warnings.push(alloc::format!(
            "{} of {} seeds had undefined positive precision (no predicted positives); excluded from moments",
            positive.precision.undefined,
            result.results.len()
        ));
    }
    Ok(Aggregate {
        n_seeds: result.results.len(),
        positive,
        negative,
        reference_precision: reference,
        count_ge_reference,
        warnings,
    })
}

/// One preset's sweep plus its aggregate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationEntry {
    pub preset: Preset,
    pub sweep: SweepResult,
    pub aggregate: Aggregate,
}

/// Run one full sweep per preset over the identical seed range, so the
/// resulting distributions are paired by seed.
pub fn run_ablations(
    corpus: &Corpus,
    base: &SweepConfig,
    presets: &[Preset],
) -> Result<Vec<AblationEntry>, SweepError> {
    run_ablations_with(corpus, base, presets, &StopwordList::english())
}

pub fn run_ablations_with(
    corpus: &Corpus,
    base: &SweepConfig,
    presets: &[Preset],
    stopwords: &StopwordList,
) -> Result<Vec<AblationEntry>, SweepError> {
    if presets.is_empty() {
        return Err(SweepError::EmptySweep);
    }
    presets
        .iter()
        .map(|&preset| {
            let mut config = base.clone();
            config.pipeline = preset.config();
            let sweep = run_sweep(corpus, &config, stopwords)?;
            let aggregate = aggregate_sweep(&sweep, config.reference_precision)?;
            Ok(AblationEntry {
                preset,
                sweep,
                aggregate,
            })
        })
        .collect()
}

/// Five-number summary with 1.5·IQR whisker fences and outliers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotStats {
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub lower_fence: f64,
    pub upper_fence: f64,
    /// Extreme values still inside the fences (the drawn whisker ends).
    pub whisker_low: f64,
    pub whisker_high: f64,
    pub outliers: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TooFewValues {
    pub defined: usize,
}

impl fmt::Display for TooFewValues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "boxplot needs at least 5 defined values, got {}",
            self.defined
        )
    }
}

pub fn boxplot_stats(
    result: &SweepResult,
    class: ClassSide,
    kind: MetricKind,
) -> Result<BoxplotStats, TooFewValues> {
    let mut values: Vec<f64> = metric_values(result, class, kind)
        .into_iter()
        .flatten()
        .collect();
    if values.len() < 5 {
        return Err(TooFewValues {
            defined: values.len(),
        });
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("metric values are finite"));
    let q1 = quantile_sorted(&values, 0.25);
    let median = quantile_sorted(&values, 0.5);
    let q3 = quantile_sorted(&values, 0.75);
    let iqr = q3 - q1;
    let lower_fence = q1 - 1.5 * iqr;
    let upper_fence = q3 + 1.5 * iqr;
    let whisker_low = values
        .iter()
        .copied()
        .find(|&v| v >= lower_fence)
        .expect("at least one value inside fences");
    let whisker_high = values
        .iter()
        .rev()
        .copied()
        .find(|&v| v <= upper_fence)
        .expect("at least one value inside fences");
    let outliers = values
        .iter()
        .copied()
        .filter(|&v| v < lower_fence || v > upper_fence)
        .collect();
    Ok(BoxplotStats {
        n: values.len(),
        min: values[0],
        q1,
        median,
        q3,
        max: values[values.len() - 1],
        lower_fence,
        upper_fence,
        whisker_low,
        whisker_high,
        outliers,
    })
}
