//! # degreescope
//!
//! Symbolic harmonic analysis of piano corpora. Note or chord events go in;
//! per-composer scale-degree distributions and their information-theoretic
//! profiles come out.
//!
//! The pipeline:
//!
//! ```text
//! SMF / note JSONL / chord stream
//!   -> key estimate (pitch-class profile correlation)
//!   -> chord labels (triad templates) -> 15-symbol degree sequence
//!   -> marginal + transition counts per piece, summed per composer
//!   -> additive smoothing -> entropy, KL, JS, Zipf fits
//!   -> seeded bootstrap intervals, robustness sweeps, era pools
//! ```
//!
//! Each stage is a plain function over immutable data, so per-piece work
//! parallelizes freely. The `degreescope` binary wires the stages together;
//! the crate's `examples/` show each capability on its own.
//!
//! ```
//! use degreescope::harmony::{degree_sequence, ScaleDegree};
//! use degreescope::ingest::ChordEvent;
//!
//! let chords = vec![
//!     ChordEvent::new(0.0, "C").unwrap(),
//!     ChordEvent::new(1.0, "C").unwrap(),
//!     ChordEvent::new(2.0, "G").unwrap(),
//! ];
//! let seq = degree_sequence(&chords, 0);
//! assert_eq!(seq.degrees, vec![ScaleDegree::I, ScaleDegree::V]);
//! ```

pub mod counts;
pub mod error;
pub mod harmony;
pub mod infotheory;
pub mod ingest;
pub mod report;
pub mod resampling;
pub mod tonality;

pub use counts::{CountProfile, EraPool};
pub use error::{Error, Result};
pub use harmony::{DegreeSequence, ScaleDegree};
pub use infotheory::{MeasureResult, SmoothedDistribution, ZipfFit};
pub use ingest::{ChordEvent, NoteEvent};
pub use tonality::{KeyEstimate, KeyProfile, Mode};
