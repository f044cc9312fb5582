//! Chord labelling and the mapping from chords to scale degrees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ingest::{is_valid_chord_label, ChordEvent, NoteEvent, NO_CHORD};

/// Number of symbols in the degree alphabet.
pub const N_DEGREES: usize = 15;

/// Chord root relative to the tonic. Major/minor quality is kept only on
/// the tonic, subdominant and dominant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScaleDegree {
    I,
    MinorI,
    FlatII,
    II,
    FlatIII,
    III,
    IV,
    MinorIV,
    SharpIV,
    V,
    MinorV,
    FlatVI,
    VI,
    FlatVII,
    VII,
}

impl ScaleDegree {
    /// All symbols in canonical index order.
    pub const ALL: [ScaleDegree; N_DEGREES] = [
        ScaleDegree::I,
        ScaleDegree::MinorI,
        ScaleDegree::FlatII,
        ScaleDegree::II,
        ScaleDegree::FlatIII,
        ScaleDegree::III,
        ScaleDegree::IV,
        ScaleDegree::MinorIV,
        ScaleDegree::SharpIV,
        ScaleDegree::V,
        ScaleDegree::MinorV,
        ScaleDegree::FlatVI,
        ScaleDegree::VI,
        ScaleDegree::FlatVII,
        ScaleDegree::VII,
    ];

    const SYMBOLS: [&'static str; N_DEGREES] = [
        "I", "i", "bII", "II", "bIII", "III", "IV", "iv", "#IV", "V", "v", "bVI", "VI", "bVII", "VII",
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    /// ASCII spelling used in every file format (`bII`, `#IV`, ...).
    pub fn symbol(self) -> &'static str {
        Self::SYMBOLS[self.index()]
    }
}

impl fmt::Display for ScaleDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for ScaleDegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::SYMBOLS
            .iter()
            .position(|&sym| sym == s)
            .map(|i| Self::ALL[i])
            .ok_or_else(|| Error::Input(format!("unknown scale degree {s:?}")))
    }
}

impl Serialize for ScaleDegree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for ScaleDegree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quality {
    Major,
    Minor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParsedChord {
    pub root_pc: u8,
    pub quality: Quality,
}

const ROOT_NAMES: [&str; 12] = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"];

impl ParsedChord {
    /// Canonical label, sharps for accidentals.
    pub fn label(&self) -> String {
        let root = ROOT_NAMES[usize::from(self.root_pc)];
        match self.quality {
            Quality::Major => root.to_string(),
            Quality::Minor => format!("{root}m"),
        }
    }

    fn tones(&self) -> [u8; 3] {
        let third = match self.quality {
            Quality::Major => 4,
            Quality::Minor => 3,
        };
        [self.root_pc, (self.root_pc + third) % 12, (self.root_pc + 7) % 12]
    }
}

/// Parse a chord label. `Ok(None)` is the no-chord symbol.
pub fn parse_chord_label(label: &str) -> Result<Option<ParsedChord>> {
    if !is_valid_chord_label(label) {
        return Err(Error::Input(format!("invalid chord label {label:?}")));
    }
    if label == NO_CHORD {
        return Ok(None);
    }
    let bytes = label.as_bytes();
    let natural: i32 = match bytes[0] {
        b'C' => 0,
        b'D' => 2,
        b'E' => 4,
        b'F' => 5,
        b'G' => 7,
        b'A' => 9,
        b'B' => 11,
        _ => unreachable!("validated root letter"),
    };
    let (shift, rest) = match bytes.get(1) {
        Some(b'#') => (1, &bytes[2..]),
        Some(b'b') => (-1, &bytes[2..]),
        _ => (0, &bytes[1..]),
    };
    let quality = if rest == b"m" {
        Quality::Minor
    } else {
        Quality::Major
    };
    Ok(Some(ParsedChord {
        root_pc: (natural + shift).rem_euclid(12) as u8,
        quality,
    }))
}

/// Scale degree of `chord` against `tonic_pc`.
pub fn degree_of(chord: ParsedChord, tonic_pc: u8) -> ScaleDegree {
    use ScaleDegree::*;
    let interval = (i32::from(chord.root_pc) - i32::from(tonic_pc)).rem_euclid(12);
    let minor = chord.quality == Quality::Minor;
    match interval {
        0 if minor => MinorI,
        0 => I,
        1 => FlatII,
        2 => II,
        3 => FlatIII,
        4 => III,
        5 if minor => MinorIV,
        5 => IV,
        6 => SharpIV,
        7 if minor => MinorV,
        7 => V,
        8 => FlatVI,
        9 => VI,
        10 => FlatVII,
        _ => VII,
    }
}

/// Degree stream of one piece after dropping no-chord events and collapsing
/// repeats.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DegreeSequence {
    pub degrees: Vec<ScaleDegree>,
    pub dropped: usize,
    pub total_events: usize,
    pub dropped_fraction: f64,
}

/// Map chords to degrees. No-chord (and otherwise unparseable) events are
/// removed first, then runs of the same degree collapse to one symbol, so
/// `C, N, C` yields a single `I`.
pub fn degree_sequence(chords: &[ChordEvent], tonic_pc: u8) -> DegreeSequence {
    let mut degrees: Vec<ScaleDegree> = Vec::with_capacity(chords.len());
    let mut dropped = 0;
    for chord in chords {
        match parse_chord_label(&chord.label) {
            Ok(Some(parsed)) => {
                let d = degree_of(parsed, tonic_pc);
                if degrees.last() != Some(&d) {
                    degrees.push(d);
                }
            }
            _ => dropped += 1,
        }
    }
    let total_events = chords.len();
    DegreeSequence {
        degrees,
        dropped,
        total_events,
        dropped_fraction: if total_events == 0 {
            0.0
        } else {
            dropped as f64 / total_events as f64
        },
    }
}

pub const DEFAULT_WINDOW_S: f64 = 2.0;
pub const DEFAULT_HOP_S: f64 = 1.0;

/// Label fixed windows of a note stream with the best-matching triad.
///
/// Windows `[t, t + window_s)` start at the first onset and advance by
/// `hop_s` until the last offset. Each window's duration-weighted
/// pitch-class histogram is compared with the 24 major/minor triad templates
/// by cosine similarity; ties go to the lower root, then to major. Windows
/// with nothing sounding get `N`. Runs of equal labels are merged into one
/// event at the first window's start.
pub fn detect_chords(notes: &[NoteEvent], window_s: f64, hop_s: f64) -> Result<Vec<ChordEvent>> {
    if !(window_s > 0.0 && window_s.is_finite()) {
        return Err(Error::Parameter(format!("chord window must be positive, got {window_s}")));
    }
    if !(hop_s > 0.0 && hop_s.is_finite()) {
        return Err(Error::Parameter(format!("chord hop must be positive, got {hop_s}")));
    }
    if notes.is_empty() {
        return Ok(Vec::new());
    }
    let mut sorted = notes.to_vec();
    sorted.sort_by(|a, b| a.onset_s.total_cmp(&b.onset_s));
    let start = sorted[0].onset_s;
    let end = sorted.iter().map(|n| n.offset_s).fold(f64::MIN, f64::max);

    let mut out: Vec<ChordEvent> = Vec::new();
    let mut active: Vec<NoteEvent> = Vec::new();
    let mut next = 0;
    let mut k: u64 = 0;
    loop {
        let t = start + k as f64 * hop_s;
        if t >= end {
            break;
        }
        let t_end = t + window_s;
        while next < sorted.len() && sorted[next].onset_s < t_end {
            active.push(sorted[next]);
            next += 1;
        }
        active.retain(|n| n.offset_s > t);

        let mut hist = [0.0f64; 12];
        for n in &active {
            let overlap = n.offset_s.min(t_end) - n.onset_s.max(t);
            if overlap > 0.0 {
                hist[n.pitch_class()] += overlap;
            }
        }
        let label = best_triad(&hist).map_or_else(|| NO_CHORD.to_string(), |c| c.label());
        if out.last().map(|c| c.label.as_str()) != Some(label.as_str()) {
            out.push(ChordEvent { onset_s: t, label });
        }
        k += 1;
    }
    Ok(out)
}

fn best_triad(hist: &[f64; 12]) -> Option<ParsedChord> {
    let norm = hist.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let template_norm = 3f64.sqrt();
    let mut best: Option<(f64, ParsedChord)> = None;
    for root_pc in 0..12u8 {
        for quality in [Quality::Major, Quality::Minor] {
            let chord = ParsedChord { root_pc, quality };
            let dot: f64 = chord.tones().iter().map(|&pc| hist[usize::from(pc)]).sum();
            let score = dot / (norm * template_norm);
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, chord));
            }
        }
    }
    best.map(|(_, c)| c)
}

/// Synthetic note stream for a chord stream: each chord's triad sounds
/// until the next event. The final chord lasts the mean inter-onset gap
/// (one second when there is no gap to measure).
///
/// Used to estimate a key for pieces that arrive as chord labels only.
pub fn chord_stream_notes(chords: &[ChordEvent]) -> Vec<NoteEvent> {
    let gaps: Vec<f64> = chords
        .windows(2)
        .map(|w| w[1].onset_s - w[0].onset_s)
        .filter(|g| *g > 0.0)
        .collect();
    let tail = if gaps.is_empty() {
        1.0
    } else {
        gaps.iter().sum::<f64>() / gaps.len() as f64
    };
    let mut notes = Vec::new();
    for (idx, chord) in chords.iter().enumerate() {
        let Ok(Some(parsed)) = parse_chord_label(&chord.label) else {
            continue;
        };
        let end = chords
            .get(idx + 1)
            .map_or(chord.onset_s + tail, |next| next.onset_s);
        if end <= chord.onset_s {
            continue;
        }
        for pc in parsed.tones() {
            notes.push(NoteEvent {
                onset_s: chord.onset_s,
                offset_s: end,
                pitch: 60 + pc,
                velocity: 64,
            });
        }
    }
    notes
}

#[cfg(test)]
mod tests {
    use super::*;
    use ScaleDegree::*;

    fn chords(labels: &[&str]) -> Vec<ChordEvent> {
        labels
            .iter()
            .enumerate()
            .map(|(idx, l)| ChordEvent::new(idx as f64, *l).unwrap())
            .collect()
    }

    #[test]
    fn alphabet_is_a_bijection() {
        for (idx, d) in ScaleDegree::ALL.iter().enumerate() {
            assert_eq!(d.index(), idx);
            assert_eq!(ScaleDegree::from_index(idx), Some(*d));
            assert_eq!(d.symbol().parse::<ScaleDegree>().unwrap(), *d);
        }
        assert_eq!(ScaleDegree::from_index(15), None);
        assert_eq!(serde_json::to_string(&SharpIV).unwrap(), "\"#IV\"");
    }

    #[test]
    fn label_parsing() {
        assert_eq!(
            parse_chord_label("G").unwrap(),
            Some(ParsedChord { root_pc: 7, quality: Quality::Major })
        );
        assert_eq!(
            parse_chord_label("F#m").unwrap(),
            Some(ParsedChord { root_pc: 6, quality: Quality::Minor })
        );
        assert_eq!(parse_chord_label("Cb").unwrap().unwrap().root_pc, 11);
        assert_eq!(parse_chord_label("N").unwrap(), None);
        assert!(parse_chord_label("X").is_err());
    }

    #[test]
    fn degree_examples() {
        let g = |root_pc, quality| ParsedChord { root_pc, quality };
        assert_eq!(degree_of(g(7, Quality::Major), 0), V);
        assert_eq!(degree_of(g(7, Quality::Minor), 0), MinorV);
        assert_eq!(degree_of(g(2, Quality::Minor), 0), II);
        assert_eq!(degree_of(g(5, Quality::Major), 9), FlatVI);
    }

    #[test]
    fn degree_map_is_surjective() {
        let mut hit = [false; N_DEGREES];
        for interval in 0..12u8 {
            for quality in [Quality::Major, Quality::Minor] {
                hit[degree_of(ParsedChord { root_pc: interval, quality }, 0).index()] = true;
            }
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn sequence_collapse_and_drop() {
        assert_eq!(degree_sequence(&chords(&["C", "C", "G"]), 0).degrees, vec![I, V]);

        let all_n = degree_sequence(&chords(&["N", "N"]), 0);
        assert!(all_n.degrees.is_empty());
        assert_eq!(all_n.dropped_fraction, 1.0);

        let seq = degree_sequence(&chords(&["C", "N", "C"]), 0);
        assert_eq!(seq.degrees, vec![I]);
        assert!((seq.dropped_fraction - 1.0 / 3.0).abs() < 1e-15);

        let empty = degree_sequence(&[], 0);
        assert!(empty.degrees.is_empty());
        assert_eq!(empty.dropped_fraction, 0.0);
    }

    fn notes(pitches: &[u8], onset: f64, dur: f64) -> Vec<NoteEvent> {
        pitches
            .iter()
            .map(|&p| NoteEvent::new(onset, onset + dur, p, 80).unwrap())
            .collect()
    }

    #[test]
    fn detects_triads() {
        let c = detect_chords(&notes(&[60, 64, 67], 0.0, 2.0), 2.0, 2.0).unwrap();
        assert_eq!(c, vec![ChordEvent::new(0.0, "C").unwrap()]);
        let cm = detect_chords(&notes(&[60, 63, 67], 0.0, 2.0), 2.0, 2.0).unwrap();
        assert_eq!(cm[0].label, "Cm");
    }

    #[test]
    fn silent_window_is_no_chord_and_runs_merge() {
        let mut ns = notes(&[60, 64, 67], 0.0, 1.0);
        ns.extend(notes(&[62, 66, 69], 3.0, 1.0));
        let c = detect_chords(&ns, 1.0, 1.0).unwrap();
        let labels: Vec<&str> = c.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["C", "N", "D"]);
        assert_eq!(c[1].onset_s, 1.0);
        assert_eq!(c[2].onset_s, 3.0);
    }

    #[test]
    fn detect_rejects_bad_params() {
        let ns = notes(&[60], 0.0, 1.0);
        assert!(matches!(detect_chords(&ns, 0.0, 1.0), Err(Error::Parameter(_))));
        assert!(matches!(detect_chords(&ns, 1.0, -1.0), Err(Error::Parameter(_))));
    }

    #[test]
    fn chord_stream_to_notes() {
        let ns = chord_stream_notes(&chords(&["C", "N", "Am"]));
        assert_eq!(ns.len(), 6);
        assert_eq!(ns[0].offset_s, 1.0);
        assert_eq!(ns[3].onset_s, 2.0);
        assert_eq!(ns[3].offset_s, 3.0);
    }
}
