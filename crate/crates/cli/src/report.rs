//! Artifact writers: JSONL result streams, summary JSON, boxplot CSV,
//! sparsity CSV, and a markdown stability report. Field order is stable
//! across runs, and every JSON artifact embeds the tool version and the
//! resolved configuration that produced it.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use textstab_core::diagnostics::{HeapsFit, SparsityHistogram, SparsityReport, ZeroFeatureAudit};
use textstab_core::stability::{
    boxplot_stats, AblationEntry, Aggregate, ClassSide, MetricKind, MetricSummary,
    SweepConfig, SweepResult,
};

use crate::VERSION;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("refusing to report on an empty result set")]
    Empty,
    #[error("{0}")]
    TooFewValues(String),
}

fn create(path: &Path) -> Result<BufWriter<File>, ReportError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| ReportError::Write {
            path: path.display().to_string(),
            source,
        })
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> ReportError + '_ {
    move |source| ReportError::Write {
        path: path.display().to_string(),
        source,
    }
}

/// One `EvalResult` JSON object per line, in seed order.
pub fn write_results_jsonl(sweep: &SweepResult, path: &Path) -> Result<(), ReportError> {
    if sweep.results.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut out = create(path)?;
    for result in &sweep.results {
        let line = serde_json::to_string(result).expect("result serializes");
        writeln!(out, "{line}").map_err(io_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

/// Summary artifact: version + resolved sweep config + aggregate.
#[derive(Debug, Serialize)]
pub struct SweepSummary<'a> {
    pub version: &'a str,
    pub config: &'a SweepConfig,
    pub aggregate: &'a Aggregate,
}

pub fn write_summary_json(
    config: &SweepConfig,
    aggregate: &Aggregate,
    path: &Path,
) -> Result<(), ReportError> {
    let summary = SweepSummary {
        version: VERSION,
        config,
        aggregate,
    };
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, &summary).expect("summary serializes");
    writeln!(out).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

/// Boxplot CSV over positive-class precision, one row per preset
/// (the layout of the per-preset ablation panels).
pub fn write_boxplot_csv(entries: &[AblationEntry], path: &Path) -> Result<(), ReportError> {
    if entries.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut out = create(path)?;
    writeln!(out, "preset,metric,min,q1,median,q3,max,outliers").map_err(io_err(path))?;
    for entry in entries {
        let stats = boxplot_stats(&entry.sweep, ClassSide::Positive, MetricKind::Precision)
            .map_err(|e| ReportError::TooFewValues(format!("{}: {e}", entry.preset.name())))?;
        let outliers = stats
            .outliers
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("|");
        writeln!(
            out,
            "{},positive_precision,{},{},{},{},{},{}",
            entry.preset.name(),
            stats.min,
            stats.q1,
            stats.median,
            stats.q3,
            stats.max,
            outliers
        )
        .map_err(io_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

fn fmt2(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.2}"))
}

fn metric_row(name: &str, positive: &MetricSummary, negative: &MetricSummary) -> String {
    let cell = |m: &MetricSummary| format!("{} ({})", fmt2(m.mean), fmt2(m.sd));
    format!("| {name} (sd) | {} | {} |", cell(positive), cell(negative))
}

/// Markdown summary laid out like the classic per-class metrics table:
/// means with standard deviations in parentheses, plus medians.
pub fn markdown_report(sections: &[(String, &Aggregate)]) -> Result<String, ReportError> {
    if sections.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut doc = String::new();
    doc.push_str(&format!("# Stability report (textstab {VERSION})\n"));
    for (title, aggregate) in sections {
        doc.push_str(&format!("\n## {title}\n\n"));
        doc.push_str(&format!("Seeds evaluated: {}\n\n", aggregate.n_seeds));
        doc.push_str("| Metric | Positive class | Negative class |\n");
        doc.push_str("| --- | --- | --- |\n");
        doc.push_str(&metric_row(
            "Precision",
            &aggregate.positive.precision,
            &aggregate.negative.precision,
        ));
        doc.push('\n');
        doc.push_str(&metric_row(
            "Recall",
            &aggregate.positive.recall,
            &aggregate.negative.recall,
        ));
        doc.push('\n');
        doc.push_str(&metric_row("F1", &aggregate.positive.f1, &aggregate.negative.f1));
        doc.push('\n');
        doc.push_str(&format!(
            "| Median precision | {} | {} |\n",
            fmt2(aggregate.positive.precision.median),
            fmt2(aggregate.negative.precision.median)
        ));
        if let (Some(reference), Some(count)) =
            (aggregate.reference_precision, aggregate.count_ge_reference)
        {
            doc.push_str(&format!(
                "\n{count} of {} seeds reached the reference precision of {reference}.\n",
                aggregate.n_seeds
            ));
        }
        for warning in &aggregate.warnings {
            doc.push_str(&format!("\n> Warning: {warning}\n"));
        }
    }
    Ok(doc)
}

pub fn write_markdown_report(
    sections: &[(String, &Aggregate)],
    path: &Path,
) -> Result<(), ReportError> {
    let doc = markdown_report(sections)?;
    let mut out = create(path)?;
    out.write_all(doc.as_bytes()).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

/// Per-document feature-count histogram as `n,count,fraction` rows.
pub fn write_histogram_csv(hist: &SparsityHistogram, path: &Path) -> Result<(), ReportError> {
    let mut out = create(path)?;
    writeln!(out, "n,count,fraction").map_err(io_err(path))?;
    for bucket in &hist.buckets {
        writeln!(out, "{},{},{}", bucket.n, bucket.count, bucket.fraction).map_err(io_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

/// Sparsity artifact for one or two corpora plus the vocabulary-growth fit.
#[derive(Debug, Serialize)]
pub struct SparsityDocument<'a> {
    pub version: &'a str,
    pub config: &'a SweepConfig,
    pub labeled: &'a SparsityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unlabeled: Option<&'a SparsityReport>,
    pub heaps: &'a HeapsFit,
}

/// Bulk-labeling artifact: per-group rates plus the zero-feature audit that
/// qualifies them.
#[derive(Debug, Serialize)]
pub struct LabelDocument<'a> {
    pub version: &'a str,
    pub config: &'a SweepConfig,
    pub n_labeled_train: usize,
    pub n_predicted: usize,
    pub zero_feature_audit: &'a ZeroFeatureAudit,
    pub group_rates: &'a [textstab_core::diagnostics::GroupRate],
    pub warnings: &'a [String],
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), ReportError> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, value).expect("artifact serializes");
    writeln!(out).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}
