//! The preprocessing pipeline and its ablation presets.
//!
//! Fixed order of operations: URL strip → character strip → lowercase →
//! tokenize → stopword removal → stemming → rare-term filtering. Stopword
//! matching happens before stemming, since stemming a stopword could
//! un-match it. Rare-term filtering is not part of [`apply_pipeline`]; it
//! happens in [`build_vocabulary`], so the same processed corpus can be
//! vectorized against vocabularies built with different thresholds.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::matrix::Vocabulary;
use crate::stem::stem;
use crate::stopwords::StopwordList;

/// Which character classes are deleted during normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripClasses {
    pub urls: bool,
    pub punctuation: bool,
    pub numbers: bool,
    pub special_chars: bool,
}

impl StripClasses {
    pub fn all() -> Self {
        Self {
            urls: true,
            punctuation: true,
            numbers: true,
            special_chars: true,
        }
    }

    pub fn none() -> Self {
        Self {
            urls: false,
            punctuation: false,
            numbers: false,
            special_chars: false,
        }
    }
}

/// The full preprocessing recipe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub lowercase: bool,
    pub strip: StripClasses,
    pub remove_stopwords: bool,
    pub stem: bool,
    /// Keep a term iff its document frequency is at least
    /// `ceil(fraction · n_docs)`. `None` disables rare-term removal.
    pub rare_term_min_df_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PipelineConfigError {
    /// The rare-term fraction must lie in the open interval (0, 1).
    FractionOutOfRange(f64),
}

impl fmt::Display for PipelineConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineConfigError::FractionOutOfRange(x) => {
                write!(f, "rare-term min-df fraction {x} not in (0, 1)")
            }
        }
    }
}

impl PipelineConfig {
    /// All steps on, 2% rare-term threshold.
    pub fn baseline() -> Self {
        Self {
            lowercase: true,
            strip: StripClasses::all(),
            remove_stopwords: true,
            stem: true,
            rare_term_min_df_fraction: Some(0.02),
        }
    }

    /// Everything off: tokens are the whitespace split of the raw text.
    pub fn identity() -> Self {
        Self {
            lowercase: false,
            strip: StripClasses::none(),
            remove_stopwords: false,
            stem: false,
            rare_term_min_df_fraction: None,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineConfigError> {
        if let Some(f) = self.rare_term_min_df_fraction {
            if !(f > 0.0 && f < 1.0) {
                return Err(PipelineConfigError::FractionOutOfRange(f));
            }
        }
        Ok(())
    }
}

/// The seven named pipeline variants: the baseline plus six single- or
/// double-step ablations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    AwBaseline,
    NoStopwords,
    NoStemming,
    NoLowercase,
    NoRareRemoval,
    NoStemNoRare,
    NoLowerNoRare,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::AwBaseline,
        Preset::NoStopwords,
        Preset::NoStemming,
        Preset::NoLowercase,
        Preset::NoRareRemoval,
        Preset::NoStemNoRare,
        Preset::NoLowerNoRare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::AwBaseline => "aw-baseline",
            Preset::NoStopwords => "no-stopwords",
            Preset::NoStemming => "no-stemming",
            Preset::NoLowercase => "no-lowercase",
            Preset::NoRareRemoval => "no-rare-removal",
            Preset::NoStemNoRare => "no-stem-no-rare",
            Preset::NoLowerNoRare => "no-lower-no-rare",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|p| p.name() == name)
    }

    pub fn config(self) -> PipelineConfig {
        let mut c = PipelineConfig::baseline();
        match self {
            Preset::AwBaseline => {}
            Preset::NoStopwords => c.remove_stopwords = false,
            Preset::NoStemming => c.stem = false,
            Preset::NoLowercase => c.lowercase = false,
            Preset::NoRareRemoval => c.rare_term_min_df_fraction = None,
            Preset::NoStemNoRare => {
                c.stem = false;
                c.rare_term_min_df_fraction = None;
            }
            Preset::NoLowerNoRare => {
                c.lowercase = false;
                c.rare_term_min_df_fraction = None;
            }
        }
        c
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn is_url_token(token: &str) -> bool {
    let lower: String = token.chars().flat_map(|c| c.to_lowercase()).collect();
    lower.starts_with("http://")
        || lower.starts_with("https://")
        || lower.starts_with("www.")
        || lower.starts_with("t.co/")
        || lower == "<url>"
}

/// Normalize raw text: URL tokens first, then character classes, then case,
/// then whitespace collapse. Total function; never fails.
pub fn normalize_text(text: &str, config: &PipelineConfig) -> String {
    let mut s = String::with_capacity(text.len());
    if config.strip.urls {
        for token in text.split_whitespace() {
            if !is_url_token(token) {
                if !s.is_empty() {
                    s.push(' ');
                }
                s.push_str(token);
            }
        }
    } else {
        s.push_str(text);
    }

    let strip = &config.strip;
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        let dropped = (strip.numbers && c.is_numeric())
            || (strip.punctuation && c.is_ascii_punctuation())
            || (strip.special_chars
                && !c.is_alphanumeric()
                && !c.is_whitespace()
                && !c.is_ascii_punctuation());
        if !dropped {
            if config.lowercase {
                out.extend(c.to_lowercase());
            } else {
                out.push(c);
            }
        }
    }

    // whitespace collapse
    let mut collapsed = String::with_capacity(out.len());
    for token in out.split_whitespace() {
        if !collapsed.is_empty() {
            collapsed.push(' ');
        }
        collapsed.push_str(token);
    }
    collapsed
}

/// Split on whitespace, dropping empty tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().map(|t| t.to_string()).collect()
}

/// Per-document token lists after normalization, stopword removal, and
/// stemming — before rare-term filtering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessedCorpus {
    token_lists: Vec<Vec<String>>,
    /// Token count per document after normalization but before stopword
    /// removal and stemming; the "before" side of token-reduction accounting.
    normalized_token_counts: Vec<usize>,
    config: PipelineConfig,
}

impl ProcessedCorpus {
    pub fn token_lists(&self) -> &[Vec<String>] {
        &self.token_lists
    }

    pub fn normalized_token_counts(&self) -> &[usize] {
        &self.normalized_token_counts
    }

    pub fn len(&self) -> usize {
        self.token_lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.token_lists.is_empty()
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }
}

/// Run normalize → tokenize → stopwords → stemming over every document.
pub fn apply_pipeline(
    corpus: &Corpus,
    config: &PipelineConfig,
    stopwords: &StopwordList,
) -> ProcessedCorpus {
    let mut token_lists = Vec::with_capacity(corpus.len());
    let mut normalized_token_counts = Vec::with_capacity(corpus.len());
    for doc in corpus.documents() {
        let normalized = normalize_text(&doc.text, config);
        let mut tokens = tokenize(&normalized);
        normalized_token_counts.push(tokens.len());
        if config.remove_stopwords {
            tokens.retain(|t| !stopwords.contains(t));
        }
        if config.stem {
            tokens = tokens.iter().map(|t| stem(t)).collect();
        }
        token_lists.push(tokens);
    }
    ProcessedCorpus {
        token_lists,
        normalized_token_counts,
        config: config.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyProcessedCorpus;

impl fmt::Display for EmptyProcessedCorpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot build a vocabulary from an empty processed corpus")
    }
}

/// Collect distinct terms and document frequencies, keeping a term iff
/// `df(t) ≥ ceil(min_df_fraction · n_docs)`. `None` keeps everything.
pub fn build_vocabulary(
    processed: &ProcessedCorpus,
    min_df_fraction: Option<f64>,
) -> Result<Vocabulary, EmptyProcessedCorpus> {
    if processed.is_empty() {
        return Err(EmptyProcessedCorpus);
    }
    let mut df: BTreeMap<&str, u32> = BTreeMap::new();
    for tokens in processed.token_lists() {
        let mut seen: Vec<&str> = tokens.iter().map(|t| t.as_str()).collect();
        seen.sort_unstable();
        seen.dedup();
        for term in seen {
            *df.entry(term).or_insert(0) += 1;
        }
    }
    let dict_size_before = df.len();
    let min_df = match min_df_fraction {
        Some(f) => libm::ceil(f * processed.len() as f64) as u32,
        None => 0,
    };
    let mut terms = Vec::new();
    let mut kept_df = Vec::new();
    for (term, d) in df {
        if d >= min_df {
            terms.push(term.to_string());
            kept_df.push(d);
        }
    }
    Ok(Vocabulary::new(
        terms,
        kept_df,
        dict_size_before,
        processed.config().clone(),
    ))
}
