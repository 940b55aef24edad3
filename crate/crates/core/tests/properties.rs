//! Property-based checks that pin module behavior against brute-force
//! re-implementations and algebraic invariants.

use proptest::prelude::*;

use textstab_core::corpus::Label;
use textstab_core::eval::{class_metrics, confusion, make_split, SplitSpec};
use textstab_core::matrix::{vectorize, DocTermMatrix};
use textstab_core::pipeline::{
    apply_pipeline, build_vocabulary, normalize_text, tokenize, PipelineConfig, Preset,
    StripClasses,
};
use textstab_core::stopwords::StopwordList;

fn corpus_from_texts(texts: &[String]) -> textstab_core::corpus::Corpus {
    let docs = texts
        .iter()
        .enumerate()
        .map(|(i, t)| textstab_core::corpus::Document {
            id: i.to_string(),
            text: t.clone(),
            label: None,
            group: None,
        })
        .collect();
    textstab_core::corpus::Corpus::new(docs).unwrap()
}

fn arb_config() -> impl Strategy<Value = PipelineConfig> {
    (
        any::<bool>(),
        any::<[bool; 4]>(),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(lowercase, strip, remove_stopwords, stem)| PipelineConfig {
            lowercase,
            strip: StripClasses {
                urls: strip[0],
                punctuation: strip[1],
                numbers: strip[2],
                special_chars: strip[3],
            },
            remove_stopwords,
            stem,
            rare_term_min_df_fraction: None,
        })
}

proptest! {
    #[test]
    fn normalize_is_idempotent(text in ".{0,80}", config in arb_config()) {
        let once = normalize_text(&text, &config);
        let twice = normalize_text(&once, &config);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn normalized_text_has_collapsed_whitespace(text in ".{0,80}", config in arb_config()) {
        let out = normalize_text(&text, &config);
        prop_assert!(!out.starts_with(' '));
        prop_assert!(!out.ends_with(' '));
        prop_assert!(!out.contains("  "));
        prop_assert!(!out.contains('\n'));
        prop_assert!(!out.contains('\t'));
    }

    #[test]
    fn tokens_are_nonempty_and_whitespace_free(text in ".{0,80}") {
        for token in tokenize(&text) {
            prop_assert!(!token.is_empty());
            prop_assert!(!token.chars().any(char::is_whitespace));
        }
    }

    #[test]
    fn vocabulary_shrinks_as_threshold_rises(
        texts in proptest::collection::vec("[a-e ]{0,20}", 2..20),
        f_lo in 0.01f64..0.4,
        f_hi in 0.4f64..0.99,
    ) {
        let corpus = corpus_from_texts(&texts);
        let config = PipelineConfig::identity();
        let processed = apply_pipeline(&corpus, &config, &StopwordList::english());
        let loose = build_vocabulary(&processed, Some(f_lo));
        let strict = build_vocabulary(&processed, Some(f_hi));
        match (loose, strict) {
            (Ok(l), Ok(s)) => {
                prop_assert!(s.len() <= l.len());
                // every surviving strict term also survives the loose filter
                for term in s.terms() {
                    prop_assert!(l.index_of(term).is_some());
                }
            }
            // an all-empty processed corpus fails for both thresholds alike
            (Err(_), Err(_)) => {}
            (l, s) => prop_assert!(false, "inconsistent results: {:?} vs {:?}", l.is_ok(), s.is_ok()),
        }
    }

    #[test]
    fn splits_partition_and_size_correctly(
        n in 2usize..400,
        seed in any::<u64>(),
        frac_idx in 0usize..3,
    ) {
        let fraction = [0.5, 0.7, 0.9][frac_idx];
        let spec = SplitSpec { seed, train_fraction: fraction };
        let expected_train = (fraction * n as f64).floor() as usize;
        if expected_train == 0 || expected_train == n {
            prop_assert!(make_split(n, &spec).is_err());
            return Ok(());
        }
        let (train, test) = make_split(n, &spec).unwrap();
        prop_assert_eq!(train.len(), expected_train);
        prop_assert_eq!(test.len(), n - expected_train);
        prop_assert!(train.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(test.windows(2).all(|w| w[0] < w[1]));
        let mut all: Vec<usize> = train.iter().chain(test.iter()).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());

        let (train2, test2) = make_split(n, &spec).unwrap();
        prop_assert_eq!(train, train2);
        prop_assert_eq!(test, test2);
    }

    #[test]
    fn metrics_match_naive_recount(
        pairs in proptest::collection::vec((any::<bool>(), any::<bool>()), 1..60),
    ) {
        let to_label = |b: bool| if b { Label::Positive } else { Label::Negative };
        let preds: Vec<Label> = pairs.iter().map(|&(p, _)| to_label(p)).collect();
        let truths: Vec<Label> = pairs.iter().map(|&(_, t)| to_label(t)).collect();
        let cm = confusion(&preds, &truths).unwrap();

        let count = |p: bool, t: bool| pairs.iter().filter(|&&x| x == (p, t)).count();
        prop_assert_eq!(cm.tp, count(true, true));
        prop_assert_eq!(cm.fp, count(true, false));
        prop_assert_eq!(cm.fn_, count(false, true));
        prop_assert_eq!(cm.tn, count(false, false));

        let m = class_metrics(&cm);
        let naive = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
        prop_assert_eq!(m.positive.precision, naive(cm.tp, cm.tp + cm.fp));
        prop_assert_eq!(m.positive.recall, naive(cm.tp, cm.tp + cm.fn_));
        prop_assert_eq!(m.negative.precision, naive(cm.tn, cm.tn + cm.fn_));
        prop_assert_eq!(m.negative.recall, naive(cm.tn, cm.tn + cm.fp));
        match (m.positive.precision, m.positive.recall) {
            (Some(p), Some(r)) if p + r > 0.0 => {
                let f1 = m.positive.f1.unwrap();
                prop_assert!((f1 - 2.0 * p * r / (p + r)).abs() < 1e-12);
            }
            _ => prop_assert_eq!(m.positive.f1, None),
        }
    }

    #[test]
    fn vectorize_matches_dense_counting(
        texts in proptest::collection::vec("[a-d ]{0,15}", 1..12),
    ) {
        let corpus = corpus_from_texts(&texts);
        let config = PipelineConfig::identity();
        let processed = apply_pipeline(&corpus, &config, &StopwordList::english());
        let Ok(vocab) = build_vocabulary(&processed, None) else {
            return Ok(()); // all documents empty after tokenization
        };
        let dtm = vectorize(&processed, &vocab).unwrap();
        for (row, tokens) in dtm.rows().iter().zip(processed.token_lists()) {
            let mut dense = vec![0u32; vocab.len()];
            for token in tokens {
                dense[vocab.index_of(token).unwrap()] += 1;
            }
            let mut rebuilt = vec![0u32; vocab.len()];
            for &(f, c) in row {
                rebuilt[f] = c;
            }
            prop_assert_eq!(dense, rebuilt);
        }
    }
}

#[test]
fn presets_differ_from_baseline_exactly_where_named() {
    let base = Preset::AwBaseline.config();
    assert!(base.lowercase && base.remove_stopwords && base.stem);
    assert_eq!(base.rare_term_min_df_fraction, Some(0.02));

    let cases: &[(Preset, fn(&PipelineConfig) -> bool)] = &[
        (Preset::NoStopwords, |c| !c.remove_stopwords),
        (Preset::NoStemming, |c| !c.stem),
        (Preset::NoLowercase, |c| !c.lowercase),
        (Preset::NoRareRemoval, |c| c.rare_term_min_df_fraction.is_none()),
        (Preset::NoStemNoRare, |c| {
            !c.stem && c.rare_term_min_df_fraction.is_none()
        }),
        (Preset::NoLowerNoRare, |c| {
            !c.lowercase && c.rare_term_min_df_fraction.is_none()
        }),
    ];
    for &(preset, toggled_off) in cases {
        let c = preset.config();
        assert!(toggled_off(&c), "{} missing its ablation", preset.name());
        assert_eq!(c.strip, base.strip, "{} changed stripping", preset.name());
    }
}

#[test]
fn dtm_rejects_malformed_rows() {
    // unsorted
    assert!(DocTermMatrix::from_rows(3, vec![vec![(1, 1), (0, 1)]]).is_err());
    // zero count
    assert!(DocTermMatrix::from_rows(3, vec![vec![(0, 0)]]).is_err());
    // out of range
    assert!(DocTermMatrix::from_rows(3, vec![vec![(3, 1)]]).is_err());
    assert!(DocTermMatrix::from_rows(3, vec![vec![(0, 1), (2, 4)]]).is_ok());
}
