//! Algorithmic core for auditing the stability of small-data short-text
//! classification pipelines.
//!
//! The crate covers the full modeling path from raw documents to per-seed
//! evaluation results:
//!
//! - [`corpus`] — document and corpus types plus raw-text statistics
//! - [`stem`] — the Snowball English (Porter2) stemmer
//! - [`pipeline`] — normalization, tokenization, stopword removal, stemming,
//!   and document-frequency vocabulary filtering, with named ablation presets
//! - [`matrix`] — sparse document–term count matrices
//! - [`gbt`] — gradient boosted regression trees with logistic loss
//! - [`eval`] — seeded train/test splits and classification metrics
//! - [`stability`] — multi-seed sweeps and distributional aggregation
//! - [`diagnostics`] — sparsity, token-reduction, zero-feature, Heaps'-law,
//!   and per-group analyses
//!
//! Everything here is pure and deterministic: all randomness flows through
//! explicit integer seeds, and repeated runs with identical inputs produce
//! bit-identical outputs. The crate is `no_std` (with `alloc`); file formats,
//! parallel sweep execution, and the command-line surface live in the
//! companion `textstab` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod corpus;
pub mod diagnostics;
pub mod eval;
pub mod gbt;
pub mod matrix;
pub mod pipeline;
pub mod stability;
pub mod stem;
pub mod stopwords;

pub mod math;
