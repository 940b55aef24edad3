//! Stopword lists.
//!
//! Ships a pinned 174-entry English list (the list standard in text-mining
//! toolkits) and parses user-supplied lists in the same plain-text format:
//! one lowercase term per line, `#` starting a comment line.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use core::fmt;

const DEFAULT_ENGLISH: &str = include_str!("stopwords_en.txt");

/// Identifier recorded for the bundled English list.
pub const DEFAULT_ENGLISH_SOURCE: &str = "builtin-english-v1";

/// A set of lowercase stopword terms plus a source identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList {
    terms: BTreeSet<String>,
    source: String,
}

/// A non-lowercase entry was found while parsing a list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordParseError {
    pub line: usize,
    pub term: String,
}

impl fmt::Display for StopwordParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stopword list line {}: entry {:?} is not lowercase",
            self.line, self.term
        )
    }
}

impl StopwordList {
    /// The bundled English list.
    pub fn english() -> Self {
        Self::parse(DEFAULT_ENGLISH, DEFAULT_ENGLISH_SOURCE)
            .expect("bundled stopword list is valid")
    }

    /// Parse the plain-text format. Entries must already be lowercase.
    pub fn parse(text: &str, source: &str) -> Result<Self, StopwordParseError> {
        let mut terms = BTreeSet::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.chars().any(|c| c.is_uppercase()) {
                return Err(StopwordParseError {
                    line: i + 1,
                    term: line.to_string(),
                });
            }
            terms.insert(line.to_string());
        }
        Ok(Self {
            terms,
            source: source.to_string(),
        })
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.contains(term)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|s| s.as_str())
    }
}
