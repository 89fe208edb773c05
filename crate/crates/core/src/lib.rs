//! Building blocks for an audio-visual scene-aware dialog system.
//!
//! The crate covers the full experimental loop at desk scale: parsing
//! dialog datasets and analysis subsets ([`corpus`]), seeded and standard
//! topic models ([`topics`]), a small dense-tensor layer library with
//! hand-derived gradients ([`numerics`]), the encoder/attention/decoder
//! dialog model itself ([`model`]), caption-style evaluation metrics
//! ([`metrics`]), and a raw-waveform audio classifier whose embeddings
//! feed the dialog model ([`audio`]).

pub mod audio;
pub mod corpus;
pub mod error;
pub mod metrics;
pub mod model;
pub mod numerics;
pub mod topics;

pub use error::{Error, Result};
