//! Per-piece key estimation by pitch-class profile correlation.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::NoteEvent;

/// Krumhansl–Kessler probe-tone ratings, C major and C minor.
const KK_MAJOR: [f64; 12] = [
    6.35, 2.23, 3.48, 2.33, 4.38, 4.09, 2.52, 5.19, 2.39, 3.66, 2.29, 2.88,
];
const KK_MINOR: [f64; 12] = [
    6.33, 2.68, 3.52, 5.38, 2.60, 3.53, 2.54, 4.75, 3.98, 2.69, 3.34, 3.17,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Major,
    Minor,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Major => "major",
            Mode::Minor => "minor",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "major" | "maj" => Ok(Mode::Major),
            "minor" | "min" => Ok(Mode::Minor),
            other => Err(Error::Parameter(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeyEstimate {
    /// 0 = C, 11 = B.
    pub tonic_pc: u8,
    pub mode: Mode,
    pub score: f64,
}

/// Twelve weights per mode, indexed by interval above the tonic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyProfile {
    pub name: String,
    pub major: [f64; 12],
    pub minor: [f64; 12],
}

impl KeyProfile {
    pub fn new(name: impl Into<String>, major: [f64; 12], minor: [f64; 12]) -> Result<Self> {
        let profile = KeyProfile {
            name: name.into(),
            major,
            minor,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn krumhansl_kessler() -> Self {
        KeyProfile {
            name: "kk".to_string(),
            major: KK_MAJOR,
            minor: KK_MINOR,
        }
    }

    /// Look up a built-in profile by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "kk" | "krumhansl-kessler" | "krumhansl_kessler" => Some(Self::krumhansl_kessler()),
            _ => None,
        }
    }

    /// Parse `{"name": ..., "major": [12], "minor": [12]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let profile: KeyProfile =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("key profile: {e}")))?;
        profile.validate()?;
        Ok(profile)
    }

    /// A built-in name, or else a path to a profile JSON file.
    pub fn resolve(spec: &str) -> Result<Self> {
        if let Some(p) = Self::builtin(spec) {
            return Ok(p);
        }
        let path = Path::new(spec);
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<()> {
        for (mode, w) in [("major", &self.major), ("minor", &self.minor)] {
            if w.iter().any(|x| !x.is_finite()) {
                return Err(Error::Config(format!("{}: non-finite {mode} weight", self.name)));
            }
            if w.iter().all(|&x| x == w[0]) {
                return Err(Error::Config(format!(
                    "{}: {mode} weights have zero variance",
                    self.name
                )));
            }
        }
        Ok(())
    }

    fn weights(&self, mode: Mode) -> &[f64; 12] {
        match mode {
            Mode::Major => &self.major,
            Mode::Minor => &self.minor,
        }
    }
}

impl Default for KeyProfile {
    fn default() -> Self {
        Self::krumhansl_kessler()
    }
}

/// Total sounding duration per pitch class, unnormalized.
pub fn pitch_class_histogram(notes: &[NoteEvent]) -> [f64; 12] {
    let mut hist = [0.0; 12];
    for note in notes {
        hist[note.pitch_class()] += note.duration_s();
    }
    hist
}

/// Best of the 24 rotations of `profile` against the note histogram.
///
/// A histogram with a single active pitch class has no meaningful
/// correlation; it returns that class, major, with score 0. A flat
/// histogram returns C major with score 0.
pub fn estimate_key(notes: &[NoteEvent], profile: &KeyProfile) -> Result<KeyEstimate> {
    if notes.is_empty() {
        return Err(Error::Input("no notes".to_string()));
    }
    Ok(estimate_key_from_histogram(&pitch_class_histogram(notes), profile))
}

pub fn estimate_key_from_histogram(hist: &[f64; 12], profile: &KeyProfile) -> KeyEstimate {
    let active: Vec<usize> = (0..12).filter(|&pc| hist[pc] > 0.0).collect();
    if active.len() == 1 {
        return KeyEstimate {
            tonic_pc: active[0] as u8,
            mode: Mode::Major,
            score: 0.0,
        };
    }
    let mut best: Option<KeyEstimate> = None;
    for tonic in 0..12u8 {
        for mode in [Mode::Major, Mode::Minor] {
            let Some(score) = rotated_correlation(hist, profile.weights(mode), usize::from(tonic))
            else {
                continue;
            };
            if best.is_none_or(|b| score > b.score) {
                best = Some(KeyEstimate {
                    tonic_pc: tonic,
                    mode,
                    score,
                });
            }
        }
    }
    best.unwrap_or(KeyEstimate {
        tonic_pc: 0,
        mode: Mode::Major,
        score: 0.0,
    })
}

/// Pearson correlation between `hist[(i + tonic) % 12]` and `weights[i]`.
///
/// Terms are accumulated in interval order, so transposing the histogram
/// and the tonic together reproduces the same value bit for bit.
fn rotated_correlation(hist: &[f64; 12], weights: &[f64; 12], tonic: usize) -> Option<f64> {
    let h = |i: usize| hist[(i + tonic) % 12];
    let mean_h = (0..12).map(h).sum::<f64>() / 12.0;
    let mean_w = weights.iter().sum::<f64>() / 12.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (i, &w) in weights.iter().enumerate() {
        let dx = h(i) - mean_h;
        let dy = w - mean_w;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx.sqrt() * syy.sqrt()))
}
