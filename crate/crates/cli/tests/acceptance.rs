//! Acceptance gate. One test per criterion; each prints a single
//! `ACCEPTANCE <nn> <name>: PASS|FAIL|SKIP` line.
//!
//! Criteria 1–6 quantify reproduction against the original 200-tweet
//! labeled / 26,402-tweet uncoded Twitter corpora. Those files are not
//! redistributable and are therefore not part of this repository; the
//! corresponding tests look for them under `$TEXTSTAB_AW_DATA_DIR`
//! (`labeled.csv` and `uncoded.csv`, schema `id,text,label[,group]` /
//! `id,text,group`) and skip — without failing — when absent.
//! Criteria 7–12 are unconditional and run on every build.

use std::path::PathBuf;
use std::time::Instant;

use rand_core::Rng;
use rand_pcg::Pcg32;

use textstab::io::{load_corpus, LabelMapping};
use textstab::runner::run_sweep_parallel;
use textstab_core::corpus::{Corpus, Document, Label};
use textstab_core::diagnostics::{sparsity_histogram, token_reduction};
use textstab_core::eval::{class_metrics, confusion, make_split, SplitSpec};
use textstab_core::gbt::{train_gbt, training_loss_curve, GbtParams, TreeNode};
use textstab_core::matrix::{vectorize, DocTermMatrix};
use textstab_core::pipeline::{apply_pipeline, build_vocabulary, PipelineConfig, Preset};
use textstab_core::stability::{aggregate_sweep, run_ablations, SweepConfig};
use textstab_core::stem::stem;
use textstab_core::stopwords::StopwordList;

const STREAM: u64 = 0xa02b_dbf7_bb3c_0a7;

fn pass(n: u32, name: &str, detail: &str) {
    println!("ACCEPTANCE {n:02} {name}: PASS ({detail})");
}

fn skip(n: u32, name: &str) {
    println!(
        "ACCEPTANCE {n:02} {name}: SKIP (original corpus files not present; \
set TEXTSTAB_AW_DATA_DIR to run)"
    );
}

fn fail(n: u32, name: &str, detail: &str) -> ! {
    println!("ACCEPTANCE {n:02} {name}: FAIL ({detail})");
    panic!("acceptance criterion {n} failed: {detail}");
}

fn check(condition: bool, n: u32, name: &str, detail: &str) {
    if !condition {
        fail(n, name, detail);
    }
}

/// Original-data discovery for criteria 1–6.
fn aw_labeled() -> Option<Corpus> {
    let dir = PathBuf::from(std::env::var_os("TEXTSTAB_AW_DATA_DIR")?);
    let path = dir.join("labeled.csv");
    path.exists()
        .then(|| load_corpus(&path, &LabelMapping::default()).expect("valid labeled corpus"))
}

fn aw_uncoded() -> Option<Corpus> {
    let dir = PathBuf::from(std::env::var_os("TEXTSTAB_AW_DATA_DIR")?);
    let path = dir.join("uncoded.csv");
    path.exists()
        .then(|| load_corpus(&path, &LabelMapping::default()).expect("valid uncoded corpus"))
}

fn baseline_sweep(seed_end: u64) -> SweepConfig {
    SweepConfig {
        seed_start: 1,
        seed_end,
        pipeline: PipelineConfig::baseline(),
        gbt: GbtParams::default(),
        train_fraction: 0.7,
        reference_precision: Some(0.867),
    }
}

#[test]
fn acceptance_01_baseline_sweep_distribution() {
    const NAME: &str = "baseline-sweep-distribution";
    let Some(corpus) = aw_labeled() else {
        return skip(1, NAME);
    };
    let start = Instant::now();
    let config = baseline_sweep(1000);
    let sweep = run_sweep_parallel(&corpus, &config, &StopwordList::english(), 0).unwrap();
    let aggregate = aggregate_sweep(&sweep, config.reference_precision).unwrap();
    let elapsed = start.elapsed();
    let p = &aggregate.positive.precision;
    let (mean, sd, median) = (p.mean.unwrap(), p.sd.unwrap(), p.median.unwrap());
    let ok = (mean - 0.67).abs() <= 0.05
        && (sd - 0.14).abs() <= 0.05
        && (median - 0.69).abs() <= 0.05
        && elapsed.as_secs() < 300;
    // hyperparameters of the original run are unknown; a miss demands a
    // sensitivity report, not a hard failure
    if ok {
        pass(
            1,
            NAME,
            &format!("mean {mean:.3}, sd {sd:.3}, median {median:.3}, {elapsed:.1?}"),
        );
    } else {
        println!(
            "ACCEPTANCE 01 {NAME}: OUT-OF-TOLERANCE (mean {mean:.3}, sd {sd:.3}, \
median {median:.3}); hyperparameter sensitivity follows"
        );
        for rounds in [50, 100, 200] {
            for depth in [3, 6] {
                let mut c = baseline_sweep(200);
                c.gbt.rounds = rounds;
                c.gbt.max_depth = depth;
                let s = run_sweep_parallel(&corpus, &c, &StopwordList::english(), 0).unwrap();
                let a = aggregate_sweep(&s, None).unwrap();
                println!(
                    "  rounds {rounds:3} depth {depth}: precision mean {:.3} sd {:.3}",
                    a.positive.precision.mean.unwrap_or(f64::NAN),
                    a.positive.precision.sd.unwrap_or(f64::NAN),
                );
            }
        }
    }
}

#[test]
fn acceptance_02_table1_shape() {
    const NAME: &str = "per-class-metric-shape";
    let Some(corpus) = aw_labeled() else {
        return skip(2, NAME);
    };
    let config = baseline_sweep(1000);
    let sweep = run_sweep_parallel(&corpus, &config, &StopwordList::english(), 0).unwrap();
    let aggregate = aggregate_sweep(&sweep, None).unwrap();
    let neg_recall = aggregate.negative.recall.mean.unwrap();
    let neg_f1 = aggregate.negative.f1.mean.unwrap();
    let pos_f1 = aggregate.positive.f1.mean.unwrap();
    check(
        neg_recall >= 0.8 && neg_f1 > pos_f1,
        2,
        NAME,
        &format!("neg recall {neg_recall:.3}, neg F1 {neg_f1:.3}, pos F1 {pos_f1:.3}"),
    );
    pass(
        2,
        NAME,
        &format!("neg recall {neg_recall:.3}, neg F1 {neg_f1:.3} > pos F1 {pos_f1:.3}"),
    );
}

#[test]
fn acceptance_03_dictionary_sizes() {
    const NAME: &str = "dictionary-sizes";
    let Some(corpus) = aw_labeled() else {
        return skip(3, NAME);
    };
    let stopwords = StopwordList::english();
    // (preset, expected before, expected after or None)
    let expectations: &[(Preset, usize, Option<usize>)] = &[
        (Preset::AwBaseline, 1473, Some(70)),
        (Preset::NoStopwords, 1529, Some(96)),
        (Preset::NoStemming, 1623, Some(47)),
        (Preset::NoLowercase, 1515, Some(73)),
        (Preset::NoRareRemoval, 1473, None),
    ];
    let mut detail = String::new();
    for &(preset, expected_before, expected_after) in expectations {
        let config = preset.config();
        let processed = apply_pipeline(&corpus, &config, &stopwords);
        let vocab = build_vocabulary(&processed, config.rare_term_min_df_fraction).unwrap();
        let within = |observed: usize, expected: usize| {
            (observed as f64 - expected as f64).abs() <= 0.03 * expected as f64
        };
        check(
            within(vocab.dict_size_before, expected_before),
            3,
            NAME,
            &format!(
                "{}: before {} (expected {expected_before})",
                preset.name(),
                vocab.dict_size_before
            ),
        );
        if let Some(after) = expected_after {
            check(
                within(vocab.dict_size_after, after),
                3,
                NAME,
                &format!(
                    "{}: after {} (expected {after})",
                    preset.name(),
                    vocab.dict_size_after
                ),
            );
        } else {
            check(
                vocab.dict_size_after == vocab.dict_size_before,
                3,
                NAME,
                "no-rare-removal must not shrink the dictionary",
            );
        }
        detail.push_str(&format!(
            "{} {}→{} ",
            preset.name(),
            vocab.dict_size_before,
            vocab.dict_size_after
        ));
    }
    pass(3, NAME, detail.trim());
}

#[test]
fn acceptance_04_sparsity_histogram() {
    const NAME: &str = "sparsity-histogram";
    let Some(corpus) = aw_labeled() else {
        return skip(4, NAME);
    };
    let stopwords = StopwordList::english();
    let config = PipelineConfig::baseline();
    let processed = apply_pipeline(&corpus, &config, &stopwords);
    let vocab = build_vocabulary(&processed, config.rare_term_min_df_fraction).unwrap();
    let dtm = vectorize(&processed, &vocab).unwrap();
    let hist = sparsity_histogram(&dtm);
    let expected = [25usize, 47, 52, 37];
    for (n, &e) in expected.iter().enumerate() {
        let observed = hist.buckets.get(n).map_or(0, |b| b.count);
        check(
            observed.abs_diff(e) <= 2,
            4,
            NAME,
            &format!("labeled n={n}: {observed} docs (expected {e} ± 2)"),
        );
    }
    let mut detail = format!(
        "labeled n=0..3: {:?}",
        hist.buckets.iter().take(4).map(|b| b.count).collect::<Vec<_>>()
    );
    if let Some(uncoded) = aw_uncoded() {
        let processed_u = apply_pipeline(&uncoded, &config, &stopwords);
        let dtm_u = vectorize(&processed_u, &vocab).unwrap();
        let zero_fraction = dtm_u.zero_row_count() as f64 / dtm_u.n_docs as f64;
        check(
            (zero_fraction - 0.25).abs() <= 0.02,
            4,
            NAME,
            &format!("uncoded zero-row fraction {zero_fraction:.3} (expected 0.25 ± 0.02)"),
        );
        detail.push_str(&format!(", uncoded zero fraction {zero_fraction:.3}"));
    }
    pass(4, NAME, &detail);
}

#[test]
fn acceptance_05_token_reduction() {
    const NAME: &str = "token-reduction";
    let Some(corpus) = aw_labeled() else {
        return skip(5, NAME);
    };
    let stopwords = StopwordList::english();
    let config = PipelineConfig::baseline();
    let processed = apply_pipeline(&corpus, &config, &stopwords);
    let vocab = build_vocabulary(&processed, config.rare_term_min_df_fraction).unwrap();
    let tr = token_reduction(&processed, &vocab).unwrap();
    check(
        (tr.reduction_fraction - 0.95).abs() <= 0.02,
        5,
        NAME,
        &format!("reduction {:.3} (expected 0.95 ± 0.02)", tr.reduction_fraction),
    );
    pass(
        5,
        NAME,
        &format!(
            "{} → {} tokens, reduction {:.3}",
            tr.token_count_before, tr.token_count_after, tr.reduction_fraction
        ),
    );
}

#[test]
fn acceptance_06_ablation_medians() {
    const NAME: &str = "ablation-medians";
    let Some(corpus) = aw_labeled() else {
        return skip(6, NAME);
    };
    let base = baseline_sweep(1000);
    let entries = run_ablations(&corpus, &base, &Preset::ALL).unwrap();
    let median_of = |preset: Preset| {
        entries
            .iter()
            .find(|e| e.preset == preset)
            .unwrap()
            .aggregate
            .positive
            .precision
            .median
            .unwrap()
    };
    let baseline_median = median_of(Preset::AwBaseline);
    let mut detail = String::new();
    for entry in &entries {
        let median = entry.aggregate.positive.precision.median.unwrap();
        check(
            (0.55..=0.75).contains(&median),
            6,
            NAME,
            &format!("{} median {median:.3} outside [0.55, 0.75]", entry.preset.name()),
        );
        check(
            median <= baseline_median + 0.05,
            6,
            NAME,
            &format!(
                "{} median {median:.3} beats baseline {baseline_median:.3} by > 0.05",
                entry.preset.name()
            ),
        );
        detail.push_str(&format!("{} {median:.2} ", entry.preset.name()));
    }
    pass(6, NAME, detail.trim());
}

#[test]
fn acceptance_07_stemmer_oracle() {
    const NAME: &str = "stemmer-oracle";
    let fixture = include_str!("../../core/tests/fixtures/porter2_pairs.tsv");
    let start = Instant::now();
    let mut total = 0usize;
    let mut mismatches = 0usize;
    for line in fixture.lines() {
        let (word, expected) = line.split_once('\t').expect("word\\tstem pairs");
        total += 1;
        if stem(word) != expected {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    check(total > 29_000, 7, NAME, &format!("fixture too small: {total}"));
    check(
        mismatches == 0,
        7,
        NAME,
        &format!("{mismatches} of {total} pairs disagree"),
    );
    check(
        elapsed.as_secs() < 5,
        7,
        NAME,
        &format!("took {elapsed:?}, budget 5 s"),
    );
    pass(7, NAME, &format!("{total}/{total} pairs agree in {elapsed:.2?}"));
}

#[test]
fn acceptance_08_metrics_oracle() {
    const NAME: &str = "metrics-oracle";
    let mut rng = Pcg32::new(8, STREAM);
    for case in 0..1000 {
        let n = 1 + (rng.next_u32() as usize) % 50;
        let flip = |rng: &mut Pcg32| Label::from_bool(rng.next_u32() % 2 == 0);
        let preds: Vec<Label> = (0..n).map(|_| flip(&mut rng)).collect();
        let truths: Vec<Label> = (0..n).map(|_| flip(&mut rng)).collect();
        let cm = confusion(&preds, &truths).unwrap();
        let m = class_metrics(&cm);

        // brute-force recount, fully independent of the library path
        let count = |p, t| {
            preds
                .iter()
                .zip(&truths)
                .filter(|&(&a, &b)| (a == Label::Positive) == p && (b == Label::Positive) == t)
                .count()
        };
        let (tp, fp, fn_, tn) = (
            count(true, true),
            count(true, false),
            count(false, true),
            count(false, false),
        );
        let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
        let f1 = |p: Option<f64>, r: Option<f64>| match (p, r) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            _ => None,
        };
        let exact = cm.tp == tp && cm.fp == fp && cm.fn_ == fn_ && cm.tn == tn;
        let pos_ok = m.positive.precision == ratio(tp, tp + fp)
            && m.positive.recall == ratio(tp, tp + fn_)
            && m.positive.f1 == f1(ratio(tp, tp + fp), ratio(tp, tp + fn_));
        let neg_ok = m.negative.precision == ratio(tn, tn + fn_)
            && m.negative.recall == ratio(tn, tn + fp)
            && m.negative.f1 == f1(ratio(tn, tn + fn_), ratio(tn, tn + fp));
        check(
            exact && pos_ok && neg_ok,
            8,
            NAME,
            &format!("divergence on random case {case} (n = {n})"),
        );
    }
    pass(8, NAME, "1000 random vectors, exact agreement");
}

#[test]
fn acceptance_09_split_properties() {
    const NAME: &str = "split-properties";
    let mut checked = 0usize;
    for n in (2..=20).chain([50, 100, 333, 1000]) {
        for fraction in [0.5, 0.7, 0.9] {
            for seed in 1..=100u64 {
                let spec = SplitSpec {
                    seed,
                    train_fraction: fraction,
                };
                let expected = (fraction * n as f64).floor() as usize;
                let result = make_split(n, &spec);
                if expected == 0 || expected == n {
                    check(result.is_err(), 9, NAME, &format!("degenerate split accepted, n = {n}"));
                    continue;
                }
                let (train, test) = result.unwrap();
                let sized = train.len() == expected && test.len() == n - expected;
                let mut all: Vec<usize> = train.iter().chain(test.iter()).copied().collect();
                all.sort_unstable();
                let partitions = all == (0..n).collect::<Vec<_>>();
                let deterministic = make_split(n, &spec).unwrap() == (train, test);
                check(
                    sized && partitions && deterministic,
                    9,
                    NAME,
                    &format!("violation at n = {n}, fraction = {fraction}, seed = {seed}"),
                );
                checked += 1;
            }
        }
    }
    pass(9, NAME, &format!("{checked} grid points"));
}

/// Exhaustive root-split search, mirrored from the documented contract.
fn oracle_root(dense: &[Vec<u32>], labels: &[Label], lambda: f64) -> Option<(usize, f64, f64)> {
    let g: Vec<f64> = labels
        .iter()
        .map(|l| if l.is_positive() { -0.5 } else { 0.5 })
        .collect();
    let h = 0.25f64;
    let (g_tot, h_tot) = (g.iter().sum::<f64>(), h * dense.len() as f64);
    let score = |gs: f64, hs: f64| gs * gs / (hs + lambda);
    let mut best: Option<(usize, f64, f64)> = None;
    for feature in 0..dense[0].len() {
        let mut values: Vec<u32> = dense.iter().map(|r| r[feature]).collect();
        values.sort_unstable();
        values.dedup();
        for pair in values.windows(2) {
            let threshold = (pair[0] as f64 + pair[1] as f64) / 2.0;
            let (mut gl, mut hl) = (0.0, 0.0);
            for (row, gi) in dense.iter().zip(&g) {
                if (row[feature] as f64) < threshold {
                    gl += gi;
                    hl += h;
                }
            }
            let gain = 0.5 * (score(gl, hl) + score(g_tot - gl, h_tot - hl) - score(g_tot, h_tot));
            if best.is_none_or(|(_, _, bg)| gain > bg) {
                best = Some((feature, threshold, gain));
            }
        }
    }
    best.filter(|&(_, _, gain)| gain > 0.0)
}

#[test]
fn acceptance_10_gbt_checks() {
    const NAME: &str = "gbt-training";

    // 10a: gradient of the logistic loss vs central finite differences
    use textstab_core::math::{logistic_loss, sigmoid};
    for &margin in &[-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0] {
        for &label in &[true, false] {
            let eps = 1e-6;
            let numeric =
                (logistic_loss(margin + eps, label) - logistic_loss(margin - eps, label))
                    / (2.0 * eps);
            let analytic = sigmoid(margin) - if label { 1.0 } else { 0.0 };
            let rel = (numeric - analytic).abs() / analytic.abs().max(1e-12);
            check(
                rel < 1e-6,
                10,
                NAME,
                &format!("gradient mismatch at margin {margin}, label {label}: rel err {rel:e}"),
            );
        }
    }

    // 10b: training loss never increases round over round
    let (corpus, labels) = weak_signal_corpus(80, 42);
    let prepared = prepare_dtm(&corpus);
    let params = GbtParams {
        rounds: 40,
        ..GbtParams::default()
    };
    let model = train_gbt(&prepared, &labels, &params).unwrap();
    let curve = training_loss_curve(&model, &prepared, &labels);
    for pair in curve.windows(2) {
        check(
            pair[1] <= pair[0] + 1e-12,
            10,
            NAME,
            &format!("loss increased: {} -> {}", pair[0], pair[1]),
        );
    }

    // 10c: root split equals the exhaustive-gain oracle on 50 random tiny
    // matrices
    let mut rng = Pcg32::new(10, STREAM);
    for case in 0..50 {
        let n = 2 + (rng.next_u32() as usize) % 7;
        let f = 2 + (rng.next_u32() as usize) % 3;
        let dense: Vec<Vec<u32>> = (0..n)
            .map(|_| (0..f).map(|_| rng.next_u32() % 4).collect())
            .collect();
        let labels: Vec<Label> = (0..n)
            .map(|_| Label::from_bool(rng.next_u32() % 2 == 0))
            .collect();
        let refs: Vec<&[u32]> = dense.iter().map(|r| r.as_slice()).collect();
        let dtm = DocTermMatrix::from_dense(&refs);
        let params = GbtParams {
            rounds: 1,
            max_depth: 1,
            min_child_weight: 0.0,
            ..GbtParams::default()
        };
        let model = train_gbt(&dtm, &labels, &params).unwrap();
        match (&model.trees()[0], oracle_root(&dense, &labels, params.l2_lambda)) {
            (TreeNode::Split { feature, threshold, gain, .. }, Some((ef, et, eg))) => check(
                *feature == ef && (threshold - et).abs() < 1e-12 && (gain - eg).abs() < 1e-9,
                10,
                NAME,
                &format!("case {case}: split ({feature},{threshold}) vs oracle ({ef},{et})"),
            ),
            (TreeNode::Leaf { .. }, None) => {}
            (node, oracle) => fail(
                10,
                NAME,
                &format!("case {case}: {node:?} disagrees with oracle {oracle:?}"),
            ),
        }
    }

    // 10d: a separable corpus trains to accuracy 1.0 with sweep sd 0
    let docs = (0..40)
        .map(|i| Document {
            id: i.to_string(),
            text: if i % 2 == 0 { "alpha marker" } else { "beta other" }.to_string(),
            label: Some(Label::from_bool(i % 2 == 0)),
            group: None,
        })
        .collect();
    let corpus = Corpus::new(docs).unwrap();
    let config = SweepConfig {
        seed_start: 1,
        seed_end: 50,
        pipeline: PipelineConfig {
            rare_term_min_df_fraction: None,
            ..PipelineConfig::baseline()
        },
        gbt: GbtParams {
            rounds: 20,
            ..GbtParams::default()
        },
        train_fraction: 0.7,
        reference_precision: None,
    };
    let sweep = run_sweep_parallel(&corpus, &config, &StopwordList::english(), 0).unwrap();
    let aggregate = aggregate_sweep(&sweep, None).unwrap();
    let precision = &aggregate.positive.precision;
    check(
        precision.mean == Some(1.0) && precision.sd == Some(0.0),
        10,
        NAME,
        &format!("separable sweep: mean {:?}, sd {:?}", precision.mean, precision.sd),
    );
    pass(
        10,
        NAME,
        "gradient FD, monotone loss, 50-case split oracle, separable sweep sd 0",
    );
}

fn prepare_dtm(corpus: &Corpus) -> DocTermMatrix {
    let config = PipelineConfig {
        rare_term_min_df_fraction: None,
        ..PipelineConfig::baseline()
    };
    let processed = apply_pipeline(corpus, &config, &StopwordList::english());
    let vocab = build_vocabulary(&processed, None).unwrap();
    vectorize(&processed, &vocab).unwrap()
}

/// Generator for the synthetic stability demonstration: a weak lexical
/// signal under heavy filler noise, 35% positive rate.
fn weak_signal_corpus(n: usize, seed: u64) -> (Corpus, Vec<Label>) {
    let mut rng = Pcg32::new(seed, STREAM);
    let mut roll = move |bound: u32| -> u32 { rng.next_u32() % bound };
    let mut docs = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let positive = roll(100) < 35;
        let mut words: Vec<String> = Vec::new();
        if roll(100) < if positive { 65 } else { 30 } {
            words.push("signal".to_string());
        }
        if roll(100) < if positive { 55 } else { 35 } {
            words.push("cue".to_string());
        }
        for _ in 0..6 {
            words.push(format!("filler{:02}", roll(40)));
        }
        let label = Label::from_bool(positive);
        docs.push(Document {
            id: i.to_string(),
            text: words.join(" "),
            label: Some(label),
            group: None,
        });
        labels.push(label);
    }
    (Corpus::new(docs).unwrap(), labels)
}

fn demo_sweep(seed_end: u64) -> SweepConfig {
    SweepConfig {
        seed_start: 1,
        seed_end,
        pipeline: PipelineConfig::baseline(),
        gbt: GbtParams {
            rounds: 20,
            max_depth: 3,
            ..GbtParams::default()
        },
        train_fraction: 0.7,
        reference_precision: None,
    }
}

#[test]
fn acceptance_11_end_to_end_determinism() {
    const NAME: &str = "end-to-end-determinism";
    let dir = tempfile::tempdir().unwrap();
    let (corpus, _) = weak_signal_corpus(200, 1);
    let corpus_path = dir.path().join("labeled.csv");
    textstab::io::write_corpus(&corpus, &corpus_path).unwrap();
    let config_path = dir.path().join("audit.toml");
    std::fs::write(
        &config_path,
        format!(
            "labeled = {:?}\n\n[gbt]\nrounds = 15\nmax_depth = 3\n\n\
[sweep]\nseed_start = 1\nseed_end = 50\n",
            corpus_path.display().to_string()
        ),
    )
    .unwrap();

    let run = |out: &str| {
        let out_dir = dir.path().join(out);
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_textstab"))
            .args(["sweep", "--config"])
            .arg(&config_path)
            .arg("--out")
            .arg(&out_dir)
            .status()
            .expect("binary runs");
        check(status.success(), 11, NAME, &format!("sweep exited with {status}"));
        std::fs::read(out_dir.join("results.jsonl")).unwrap()
    };
    let first = run("a");
    let second = run("b");
    check(
        first == second,
        11,
        NAME,
        "two identical sweep invocations produced different JSONL bytes",
    );
    pass(
        11,
        NAME,
        &format!("two 50-seed runs byte-identical ({} bytes)", first.len()),
    );
}

#[test]
fn acceptance_12_synthetic_stability_demonstration() {
    const NAME: &str = "synthetic-stability-demonstration";
    let stopwords = StopwordList::english();

    let (small, _) = weak_signal_corpus(200, 3);
    let small_sweep =
        run_sweep_parallel(&small, &demo_sweep(1000), &stopwords, 0).unwrap();
    let small_aggregate = aggregate_sweep(&small_sweep, None).unwrap();
    let sp = &small_aggregate.positive.precision;
    let range = sp.max.unwrap() - sp.min.unwrap();
    check(
        range >= 0.3,
        12,
        NAME,
        &format!("200-doc precision range {range:.3} < 0.3"),
    );

    let (large, _) = weak_signal_corpus(5000, 3);
    let large_sweep =
        run_sweep_parallel(&large, &demo_sweep(150), &stopwords, 0).unwrap();
    let large_aggregate = aggregate_sweep(&large_sweep, None).unwrap();
    let lp = &large_aggregate.positive.precision;
    let (small_sd, large_sd) = (sp.sd.unwrap(), lp.sd.unwrap());
    check(
        large_sd <= 0.5 * small_sd,
        12,
        NAME,
        &format!("sd only fell from {small_sd:.3} to {large_sd:.3}"),
    );
    pass(
        12,
        NAME,
        &format!(
            "200 docs: precision range {range:.3}, sd {small_sd:.3}; \
5000 docs: sd {large_sd:.3} (≥ 50% shrink)"
        ),
    );
}
