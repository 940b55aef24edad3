//! Parallel sweep execution. Work is distributed over seeds only; features
//! are prepared once per pipeline, and results are collected in seed order,
//! so output is bit-identical to the core crate's sequential `run_sweep`
//! regardless of worker count.

use rayon::prelude::*;
use textstab_core::corpus::Corpus;
use textstab_core::eval::{evaluate_prepared, prepare, SplitSpec};
use textstab_core::pipeline::Preset;
use textstab_core::stability::{
    aggregate_sweep, AblationEntry, SweepConfig, SweepError, SweepResult,
};
use textstab_core::stopwords::StopwordList;

#[derive(Debug, thiserror::Error)]
pub enum RunnerError {
    #[error("{0}")]
    Sweep(SweepError),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

// SweepError has no std::error::Error impl in the no_std core; wrap by hand
impl From<SweepError> for RunnerError {
    fn from(e: SweepError) -> Self {
        RunnerError::Sweep(e)
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, RunnerError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers) // 0 = one thread per logical CPU
        .build()
        .map_err(|e| RunnerError::Pool(e.to_string()))
}

/// Run a sweep with `workers` threads (0 = all CPUs).
pub fn run_sweep_parallel(
    corpus: &Corpus,
    sweep: &SweepConfig,
    stopwords: &StopwordList,
    workers: usize,
) -> Result<SweepResult, RunnerError> {
    if sweep.seed_count() == 0 {
        return Err(SweepError::EmptySeedRange.into());
    }
    let prepared = prepare(corpus, &sweep.pipeline, stopwords)
        .map_err(|e| RunnerError::Sweep(SweepError::Eval(e)))?;
    let seeds: Vec<u64> = sweep.seeds().collect();
    let results = pool(workers)?.install(|| {
        seeds
            .par_iter()
            .map(|&seed| {
                let spec = SplitSpec {
                    seed,
                    train_fraction: sweep.train_fraction,
                };
                evaluate_prepared(&prepared, &sweep.gbt, &spec)
                    .map_err(|error| SweepError::Seed { seed, error })
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(SweepResult {
        results,
        config: sweep.clone(),
    })
}

/// One parallel sweep per preset over the identical seed range.
pub fn run_ablations_parallel(
    corpus: &Corpus,
    base: &SweepConfig,
    presets: &[Preset],
    stopwords: &StopwordList,
    workers: usize,
) -> Result<Vec<AblationEntry>, RunnerError> {
    if presets.is_empty() {
        return Err(SweepError::EmptySweep.into());
    }
    presets
        .iter()
        .map(|&preset| {
            let mut config = base.clone();
            config.pipeline = preset.config();
            let sweep = run_sweep_parallel(corpus, &config, stopwords, workers)?;
            let aggregate = aggregate_sweep(&sweep, config.reference_precision)
                .map_err(RunnerError::Sweep)?;
            Ok(AblationEntry {
                preset,
                sweep,
                aggregate,
            })
        })
        .collect()
}
