//! `textstab` — stability and data-quality audits for small-data short-text
//! classifiers.
//!
//! Exit codes: 0 success, 1 usage error (bad flags or config), 2 data error
//! (unreadable or invalid corpus, failed run).

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use textstab::config::{AuditConfig, ConfigError, Overrides};
use textstab::io::load_corpus;
use textstab::report::{
    write_boxplot_csv, write_histogram_csv, write_json, write_markdown_report, write_results_jsonl,
    write_summary_json, LabelDocument, SparsityDocument,
};
use textstab::runner::{run_ablations_parallel, run_sweep_parallel};
use textstab_core::corpus::Corpus;
use textstab_core::diagnostics::{
    group_positive_rate, heaps_fit, sparsity_report, zero_feature_audit,
};
use textstab_core::eval::{evaluate_prepared, predict_all, prepare, SplitSpec};
use textstab_core::gbt::train_gbt;
use textstab_core::matrix::vectorize;
use textstab_core::pipeline::{apply_pipeline, build_vocabulary, Preset};
use textstab_core::stability::aggregate_sweep;
use textstab_core::stem::stem;

#[derive(Parser)]
#[command(
    name = "textstab",
    version,
    about = "Audit the seed-stability and data-quality of short-text classification pipelines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Audit configuration file (TOML)
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Pipeline preset, overriding the config file
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Train fraction, overriding the config file
    #[arg(long, value_name = "F")]
    fraction: Option<f64>,
    /// Output directory, overriding the config file
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Inclusive seed range, e.g. 1..1000, overriding the config file
    #[arg(long, value_name = "A..B")]
    seeds: Option<String>,
    /// Worker threads (0 = all CPUs), overriding the config file
    #[arg(long, value_name = "N")]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single seed and print the result as JSON
    Run {
        #[command(flatten)]
        config: ConfigArgs,
        /// Split seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the full seed sweep; writes results.jsonl, summary.json, report.md
    Sweep {
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Sweep every preprocessing preset; writes per-preset summaries and a boxplot CSV
    Ablate {
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Emit sparsity, dictionary-size, and vocabulary-growth reports
    Sparsity {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Train on the labeled set, label the unlabeled set, report per-group rates
    Label {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Stem whitespace-separated tokens from stdin, one line at a time
    Stem,
}

/// Usage errors exit 1; data errors exit 2.
enum AppError {
    Usage(String),
    Data(String),
}

impl From<ConfigError> for AppError {
    fn from(e: ConfigError) -> Self {
        match e {
            // a config that points at absent data is a data problem, not a flag problem
            ConfigError::MissingFile(_) => AppError::Data(e.to_string()),
            other => AppError::Usage(other.to_string()),
        }
    }
}

fn data_err<E: std::fmt::Display>(e: E) -> AppError {
    AppError::Data(e.to_string())
}

fn parse_seed_range(text: &str) -> Result<(u64, u64), AppError> {
    let invalid = || AppError::Usage(format!("invalid seed range {text:?}; expected A..B"));
    let (a, b) = text.split_once("..").ok_or_else(invalid)?;
    let start = a.trim().parse().map_err(|_| invalid())?;
    let end = b.trim().parse().map_err(|_| invalid())?;
    if end < start {
        return Err(invalid());
    }
    Ok((start, end))
}

fn resolve(config_args: &ConfigArgs, sweep_args: Option<&SweepArgs>) -> Result<AuditConfig, AppError> {
    let overrides = Overrides {
        seeds: sweep_args
            .and_then(|s| s.seeds.as_deref())
            .map(parse_seed_range)
            .transpose()?,
        preset: config_args.preset.clone(),
        fraction: config_args.fraction,
        workers: sweep_args.and_then(|s| s.workers),
        out: config_args.out.clone(),
    };
    Ok(AuditConfig::load(&config_args.config)?.resolve(&overrides)?)
}

fn load_labeled(config: &AuditConfig) -> Result<Corpus, AppError> {
    let corpus = load_corpus(&config.labeled, &config.labels).map_err(data_err)?;
    if !corpus.labeled() {
        return Err(AppError::Data(format!(
            "{}: corpus must be fully labeled",
            config.labeled.display()
        )));
    }
    Ok(corpus)
}

fn out_dir(config: &AuditConfig) -> Result<&Path, AppError> {
    std::fs::create_dir_all(&config.out_dir).map_err(|e| {
        AppError::Data(format!("cannot create {}: {e}", config.out_dir.display()))
    })?;
    Ok(&config.out_dir)
}

/// Write the fully resolved configuration next to the artifacts it produced.
fn write_resolved_config(config: &AuditConfig, dir: &Path) -> Result<(), AppError> {
    std::fs::write(dir.join("config.toml"), config.to_toml())
        .map_err(|e| AppError::Data(format!("cannot write config.toml: {e}")))
}

fn cmd_run(config_args: &ConfigArgs, seed: u64) -> Result<(), AppError> {
    let config = resolve(config_args, None)?;
    let corpus = load_labeled(&config)?;
    let stopwords = config.stopword_list()?;
    let prepared = prepare(&corpus, &config.pipeline_config(), &stopwords).map_err(data_err)?;
    let spec = SplitSpec {
        seed,
        train_fraction: config.sweep.train_fraction,
    };
    let result = evaluate_prepared(&prepared, &config.gbt, &spec).map_err(data_err)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&result).expect("result serializes")
    );
    Ok(())
}

fn cmd_sweep(config_args: &ConfigArgs, sweep_args: &SweepArgs) -> Result<(), AppError> {
    let config = resolve(config_args, Some(sweep_args))?;
    let corpus = load_labeled(&config)?;
    let stopwords = config.stopword_list()?;
    let sweep_config = config.sweep_config();
    let sweep = run_sweep_parallel(&corpus, &sweep_config, &stopwords, config.workers)
        .map_err(data_err)?;
    let aggregate =
        aggregate_sweep(&sweep, sweep_config.reference_precision).map_err(data_err)?;

    let dir = out_dir(&config)?;
    write_resolved_config(&config, dir)?;
    write_results_jsonl(&sweep, &dir.join("results.jsonl")).map_err(data_err)?;
    write_summary_json(&sweep_config, &aggregate, &dir.join("summary.json")).map_err(data_err)?;
    write_markdown_report(
        &[("Sweep".to_string(), &aggregate)],
        &dir.join("report.md"),
    )
    .map_err(data_err)?;
    eprintln!(
        "swept {} seeds -> {}",
        aggregate.n_seeds,
        dir.join("summary.json").display()
    );
    Ok(())
}

fn cmd_ablate(config_args: &ConfigArgs, sweep_args: &SweepArgs) -> Result<(), AppError> {
    let config = resolve(config_args, Some(sweep_args))?;
    let corpus = load_labeled(&config)?;
    let stopwords = config.stopword_list()?;
    let base = config.sweep_config();
    let entries =
        run_ablations_parallel(&corpus, &base, &Preset::ALL, &stopwords, config.workers)
            .map_err(data_err)?;

    let dir = out_dir(&config)?;
    write_resolved_config(&config, dir)?;
    let mut sections = Vec::new();
    for entry in &entries {
        let name = entry.preset.name();
        write_results_jsonl(&entry.sweep, &dir.join(format!("results-{name}.jsonl")))
            .map_err(data_err)?;
        write_summary_json(
            &entry.sweep.config,
            &entry.aggregate,
            &dir.join(format!("summary-{name}.json")),
        )
        .map_err(data_err)?;
        sections.push((name.to_string(), &entry.aggregate));
    }
    write_boxplot_csv(&entries, &dir.join("boxplot.csv")).map_err(data_err)?;
    write_markdown_report(&sections, &dir.join("report.md")).map_err(data_err)?;
    eprintln!(
        "ablated {} presets -> {}",
        entries.len(),
        dir.join("boxplot.csv").display()
    );
    Ok(())
}

fn cmd_sparsity(config_args: &ConfigArgs) -> Result<(), AppError> {
    let config = resolve(config_args, None)?;
    let corpus = load_labeled(&config)?;
    let stopwords = config.stopword_list()?;
    let pipeline = config.pipeline_config();

    let processed = apply_pipeline(&corpus, &pipeline, &stopwords);
    let vocab =
        build_vocabulary(&processed, pipeline.rare_term_min_df_fraction).map_err(data_err)?;
    let dtm = vectorize(&processed, &vocab).map_err(data_err)?;
    let labeled_report = sparsity_report(&processed, &vocab, &dtm).map_err(data_err)?;
    let heaps = heaps_fit(&processed).map_err(data_err)?;

    // the unlabeled set is vectorized against the labeled vocabulary, which
    // is what produces its zero-feature rows
    let unlabeled_report = match &config.unlabeled {
        None => None,
        Some(path) => {
            let unlabeled = load_corpus(path, &config.labels).map_err(data_err)?;
            let processed_u = apply_pipeline(&unlabeled, &pipeline, &stopwords);
            let dtm_u = vectorize(&processed_u, &vocab).map_err(data_err)?;
            Some(sparsity_report(&processed_u, &vocab, &dtm_u).map_err(data_err)?)
        }
    };

    let dir = out_dir(&config)?;
    write_resolved_config(&config, dir)?;
    write_histogram_csv(&labeled_report.histogram, &dir.join("histogram-labeled.csv"))
        .map_err(data_err)?;
    if let Some(report) = &unlabeled_report {
        write_histogram_csv(&report.histogram, &dir.join("histogram-unlabeled.csv"))
            .map_err(data_err)?;
    }
    let document = SparsityDocument {
        version: textstab::VERSION,
        config: &config.sweep_config(),
        labeled: &labeled_report,
        unlabeled: unlabeled_report.as_ref(),
        heaps: &heaps,
    };
    write_json(&document, &dir.join("sparsity.json")).map_err(data_err)?;
    eprintln!(
        "dictionary {} -> {} terms; report at {}",
        labeled_report.dict_size_before,
        labeled_report.dict_size_after,
        dir.join("sparsity.json").display()
    );
    Ok(())
}

fn cmd_label(config_args: &ConfigArgs) -> Result<(), AppError> {
    let config = resolve(config_args, None)?;
    let unlabeled_path = config.unlabeled.clone().ok_or_else(|| {
        AppError::Usage("`label` needs an `unlabeled` corpus in the config".to_string())
    })?;
    let corpus = load_labeled(&config)?;
    let unlabeled = load_corpus(&unlabeled_path, &config.labels).map_err(data_err)?;
    let stopwords = config.stopword_list()?;
    let pipeline = config.pipeline_config();

    let processed = apply_pipeline(&corpus, &pipeline, &stopwords);
    let vocab =
        build_vocabulary(&processed, pipeline.rare_term_min_df_fraction).map_err(data_err)?;
    let dtm = vectorize(&processed, &vocab).map_err(data_err)?;
    let labels = corpus.labels().expect("labeled corpus");
    // bulk labeling trains on the full labeled set; no split is involved
    let model = train_gbt(&dtm, &labels, &config.gbt).map_err(data_err)?;

    let processed_u = apply_pipeline(&unlabeled, &pipeline, &stopwords);
    let dtm_u = vectorize(&processed_u, &vocab).map_err(data_err)?;
    let predictions = predict_all(&model, &dtm_u).map_err(data_err)?;
    let audit = zero_feature_audit(&model, &dtm_u).map_err(data_err)?;
    let rates = group_positive_rate(&unlabeled, &predictions).map_err(data_err)?;

    let mut warnings: Vec<String> = vec![textstab_core::eval::DF_LEAK_WARNING.to_string()];
    if let Some(w) = &audit.warning {
        warnings.push(w.clone());
    }

    let dir = out_dir(&config)?;
    write_resolved_config(&config, dir)?;
    let document = LabelDocument {
        version: textstab::VERSION,
        config: &config.sweep_config(),
        n_labeled_train: corpus.len(),
        n_predicted: predictions.len(),
        zero_feature_audit: &audit,
        group_rates: &rates,
        warnings: &warnings,
    };
    write_json(&document, &dir.join("labels.json")).map_err(data_err)?;

    let mut csv = String::from("id,predicted_label,group\n");
    for (doc, label) in unlabeled.documents().iter().zip(&predictions) {
        let name = if label.is_positive() { "positive" } else { "negative" };
        csv.push_str(&format!(
            "{},{},{}\n",
            doc.id,
            name,
            doc.group.as_deref().unwrap_or("")
        ));
    }
    std::fs::write(dir.join("predictions.csv"), csv)
        .map_err(|e| AppError::Data(format!("cannot write predictions.csv: {e}")))?;
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }
    eprintln!(
        "labeled {} documents -> {}",
        predictions.len(),
        dir.join("labels.json").display()
    );
    Ok(())
}

fn cmd_stem() -> Result<(), AppError> {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for line in stdin.lock().lines() {
        let line = line.map_err(data_err)?;
        let stemmed: Vec<String> = line.split_whitespace().map(stem).collect();
        writeln!(out, "{}", stemmed.join(" ")).map_err(data_err)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap's own exit code for bad usage is 2; remap to the documented 1
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            // --help / --version go to stdout and exit 0
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let result = match &cli.command {
        Command::Run { config, seed } => cmd_run(config, *seed),
        Command::Sweep { config, sweep } => cmd_sweep(config, sweep),
        Command::Ablate { config, sweep } => cmd_ablate(config, sweep),
        Command::Sparsity { config } => cmd_sparsity(config),
        Command::Label { config } => cmd_label(config),
        Command::Stem => cmd_stem(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(AppError::Data(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
