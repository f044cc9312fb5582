//! Event ingestion: Standard MIDI Files, note JSONL, chord streams, and
//! corpus manifests.

mod manifest;
mod smf;
mod text;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use manifest::{load_manifest, parse_manifest, CorpusManifest, Group, ManifestEntry};
pub use smf::parse_smf;
pub use text::{load_piece, parse_chord_stream, parse_note_jsonl, PieceInput};

/// One sounding note. Times are in seconds from the start of the piece.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoteEvent {
    pub onset_s: f64,
    pub offset_s: f64,
    pub pitch: u8,
    pub velocity: u8,
}

impl NoteEvent {
    pub fn new(onset_s: f64, offset_s: f64, pitch: u8, velocity: u8) -> Result<Self> {
        let note = NoteEvent {
            onset_s,
            offset_s,
            pitch,
            velocity,
        };
        note.validate().map_err(Error::Input)?;
        Ok(note)
    }

    pub(crate) fn validate(&self) -> std::result::Result<(), String> {
        if !self.onset_s.is_finite() || self.onset_s < 0.0 {
            return Err(format!("onset_s must be a non-negative number, got {}", self.onset_s));
        }
        if !self.offset_s.is_finite() || self.offset_s <= self.onset_s {
            return Err(format!(
                "offset_s ({}) must be greater than onset_s ({})",
                self.offset_s, self.onset_s
            ));
        }
        if self.pitch > 127 {
            return Err(format!("pitch {} outside 0..=127", self.pitch));
        }
        if self.velocity > 127 {
            return Err(format!("velocity {} outside 0..=127", self.velocity));
        }
        Ok(())
    }

    pub fn duration_s(&self) -> f64 {
        self.offset_s - self.onset_s
    }

    pub fn pitch_class(&self) -> usize {
        usize::from(self.pitch % 12)
    }
}

/// A timestamped chord label: a root with optional `m`, or `N` for no chord.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordEvent {
    pub onset_s: f64,
    pub label: String,
}

impl ChordEvent {
    pub fn new(onset_s: f64, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if !is_valid_chord_label(&label) {
            return Err(Error::Input(format!("invalid chord label {label:?}")));
        }
        if !onset_s.is_finite() || onset_s < 0.0 {
            return Err(Error::Input(format!("invalid chord onset {onset_s}")));
        }
        Ok(ChordEvent { onset_s, label })
    }

    pub fn is_no_chord(&self) -> bool {
        self.label == NO_CHORD
    }
}

/// The no-chord symbol.
pub const NO_CHORD: &str = "N";

/// `ROOT := [A-G] ('#' | 'b')? ; LABEL := ROOT 'm'? | 'N'`
pub fn is_valid_chord_label(label: &str) -> bool {
    if label == NO_CHORD {
        return true;
    }
    let mut bytes = label.bytes();
    match bytes.next() {
        Some(b'A'..=b'G') => {}
        _ => return false,
    }
    let rest: Vec<u8> = bytes.collect();
    matches!(
        rest.as_slice(),
        [] | [b'#'] | [b'b'] | [b'm'] | [b'#', b'm'] | [b'b', b'm']
    )
}
