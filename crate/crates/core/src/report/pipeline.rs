use std::collections::BTreeMap;
use std::str::FromStr;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counts::{count_piece, CountProfile};
use crate::error::{Error, Result};
use crate::harmony::{
    chord_stream_notes, degree_sequence, detect_chords, DegreeSequence, ScaleDegree, DEFAULT_HOP_S,
    DEFAULT_WINDOW_S,
};
use crate::ingest::{load_piece, CorpusManifest, ManifestEntry, PieceInput};
use crate::report::json::to_canonical_line;
use crate::tonality::{estimate_key, KeyEstimate, KeyProfile, Mode};

/// A forced key for one piece, written `<piece_id>=<pc>,<mode>`. The pitch
/// class may be a number 0–11 or a note name (`C`, `F#`, `Bb`).
#[derive(Debug, Clone, PartialEq)]
pub struct KeyOverride {
    pub piece_id: String,
    pub tonic_pc: u8,
    pub mode: Mode,
}

impl FromStr for KeyOverride {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("key override {s:?}: expected <piece_id>=<pc>,<mode>"));
        let (piece_id, key) = s.rsplit_once('=').ok_or_else(bad)?;
        let (pc, mode) = key.split_once(',').ok_or_else(bad)?;
        let pc = pc.trim();
        let tonic_pc = match pc.parse::<u8>() {
            Ok(n) if n < 12 => n,
            Ok(_) => return Err(bad()),
            Err(_) => match crate::harmony::parse_chord_label(pc) {
                Ok(Some(chord)) if !pc.ends_with('m') => chord.root_pc,
                _ => return Err(bad()),
            },
        };
        if piece_id.is_empty() {
            return Err(bad());
        }
        Ok(KeyOverride {
            piece_id: piece_id.to_string(),
            tonic_pc,
            mode: mode.parse()?,
        })
    }
}

/// Settings for turning one piece into a degree sequence.
#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub key_profile: KeyProfile,
    pub key_overrides: BTreeMap<String, (u8, Mode)>,
    pub chord_window_s: f64,
    pub chord_hop_s: f64,
    pub keep_going: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            key_profile: KeyProfile::default(),
            key_overrides: BTreeMap::new(),
            chord_window_s: DEFAULT_WINDOW_S,
            chord_hop_s: DEFAULT_HOP_S,
            keep_going: false,
        }
    }
}

impl PipelineOptions {
    pub fn with_overrides(mut self, overrides: impl IntoIterator<Item = KeyOverride>) -> Self {
        for o in overrides {
            self.key_overrides.insert(o.piece_id, (o.tonic_pc, o.mode));
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PieceResult {
    pub piece_id: String,
    pub composer: String,
    /// `None` when the piece has nothing to estimate a key from (and so no
    /// chord with a root either).
    pub key: Option<KeyEstimate>,
    pub sequence: DegreeSequence,
    pub counts: CountProfile,
}

/// Parse, key, label and map one manifest entry.
pub fn process_piece(entry: &ManifestEntry, opts: &PipelineOptions) -> Result<PieceResult> {
    let input = load_piece(&entry.path)?;
    let forced = opts.key_overrides.get(&entry.piece_id).map(|&(tonic_pc, mode)| KeyEstimate {
        tonic_pc,
        mode,
        score: 0.0,
    });
    let (key, chords) = match input {
        PieceInput::Notes(notes) => {
            let key = match forced {
                Some(k) => Some(k),
                None if notes.is_empty() => None,
                None => Some(estimate_key(&notes, &opts.key_profile)?),
            };
            (key, detect_chords(&notes, opts.chord_window_s, opts.chord_hop_s)?)
        }
        PieceInput::Chords(chords) => {
            let key = match forced {
                Some(k) => Some(k),
                None => {
                    let notes = chord_stream_notes(&chords);
                    if notes.is_empty() {
                        None
                    } else {
                        Some(estimate_key(&notes, &opts.key_profile)?)
                    }
                }
            };
            (key, chords)
        }
    };
    let sequence = degree_sequence(&chords, key.map_or(0, |k| k.tonic_pc));
    let counts = count_piece(&sequence);
    Ok(PieceResult {
        piece_id: entry.piece_id.clone(),
        composer: entry.composer.clone(),
        key,
        sequence,
        counts,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PieceFailure {
    pub piece_id: String,
    pub error: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusRun {
    /// Successful pieces in manifest order.
    pub pieces: Vec<PieceResult>,
    pub failures: Vec<PieceFailure>,
}

impl CorpusRun {
    /// Per-composer piece profiles.
    pub fn by_composer(&self) -> BTreeMap<String, Vec<CountProfile>> {
        let mut map: BTreeMap<String, Vec<CountProfile>> = BTreeMap::new();
        for p in &self.pieces {
            map.entry(p.composer.clone()).or_default().push(p.counts.clone());
        }
        map
    }

    /// Error out on failed pieces unless `keep_going` is set.
    pub fn check(&self, keep_going: bool) -> Result<()> {
        match self.failures.first() {
            Some(first) if !keep_going => Err(Error::Input(format!(
                "{} piece(s) failed; first: {}: {}",
                self.failures.len(),
                first.piece_id,
                first.error
            ))),
            _ => Ok(()),
        }
    }
}

/// Process every manifest entry in parallel. Failures are logged and
/// collected, never fatal here.
pub fn run_corpus(manifest: &CorpusManifest, opts: &PipelineOptions) -> CorpusRun {
    let results: Vec<(String, Result<PieceResult>)> = manifest
        .entries
        .par_iter()
        .map(|e| (e.piece_id.clone(), process_piece(e, opts)))
        .collect();
    let mut run = CorpusRun::default();
    for (piece_id, r) in results {
        match r {
            Ok(p) => run.pieces.push(p),
            Err(e) => {
                warn!("skipping {piece_id}: {e}");
                run.failures.push(PieceFailure {
                    piece_id,
                    error: e.to_string(),
                    exit_code: e.exit_code(),
                });
            }
        }
    }
    run
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub piece_id: String,
    pub degrees: Vec<ScaleDegree>,
    pub dropped_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreesOutput {
    /// One JSON object per piece, manifest order.
    pub lines: Vec<String>,
    pub records: Vec<DegreeRecord>,
    /// Dropped events over all events, corpus-wide.
    pub dropped_fraction: f64,
    pub failures: Vec<PieceFailure>,
}

impl DegreesOutput {
    pub fn to_jsonl(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

/// Degree sequence of every piece as JSON lines.
pub fn cmd_degrees(manifest: &CorpusManifest, opts: &PipelineOptions) -> Result<DegreesOutput> {
    let run = run_corpus(manifest, opts);
    run.check(opts.keep_going)?;
    let records: Vec<DegreeRecord> = run
        .pieces
        .iter()
        .map(|p| DegreeRecord {
            piece_id: p.piece_id.clone(),
            degrees: p.sequence.degrees.clone(),
            dropped_fraction: p.sequence.dropped_fraction,
        })
        .collect();
    let lines = records.iter().map(to_canonical_line).collect::<Result<Vec<_>>>()?;
    let dropped: usize = run.pieces.iter().map(|p| p.sequence.dropped).sum();
    let total: usize = run.pieces.iter().map(|p| p.sequence.total_events).sum();
    Ok(DegreesOutput {
        lines,
        records,
        dropped_fraction: if total == 0 { 0.0 } else { dropped as f64 / total as f64 },
        failures: run.failures,
    })
}
