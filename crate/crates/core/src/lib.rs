//! Deterministic Arabic sentiment classification.
//!
//! Everything is built from scratch on dense `f64` tensors: text
//! normalization and vocabulary indexing, BiLSTM and CNN-BiLSTM networks
//! with a Gaussian-noise regularization layer, mini-batch Adam training
//! with binary cross-entropy, and perturbation-based local surrogate
//! explanations for individual predictions.
//!
//! All randomness flows from a single seed through named sub-streams
//! ([`rng::SeededRng`]), so every run is bit-reproducible. Batch-level work
//! is data-parallel via [`exec`] when the `parallel` feature is enabled;
//! results are combined in index order and therefore identical with or
//! without it.

pub mod adam;
pub mod checkpoint;
pub mod config;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod ingest;
pub mod layers;
pub mod lime;
pub mod lstm;
pub mod manifest;
pub mod metrics;
pub mod model;
pub mod network;
pub mod report;
pub mod rng;
pub mod synth;
pub mod tensor;
pub mod text;
pub mod train;

pub use error::{Error, Result};
