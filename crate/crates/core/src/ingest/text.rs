use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::ingest::{is_valid_chord_label, parse_smf, ChordEvent, NoteEvent};

/// Parse line-delimited JSON note records (`onset_s`, `offset_s`, `pitch`,
/// `velocity`). Blank lines are skipped; line numbers in errors are 1-based.
pub fn parse_note_jsonl(text: &str) -> Result<Vec<NoteEvent>> {
    let mut notes = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let obj = parse_object(line, lineno)?;
        let note = NoteEvent {
            onset_s: number_field(&obj, "onset_s", lineno)?,
            offset_s: number_field(&obj, "offset_s", lineno)?,
            pitch: midi_byte_field(&obj, "pitch", lineno)?,
            velocity: midi_byte_field(&obj, "velocity", lineno)?,
        };
        note.validate().map_err(|m| Error::line(lineno, m))?;
        notes.push(note);
    }
    Ok(notes)
}

/// Parse a chord stream, one event per line, either CSV (`onset_s,label`,
/// optional header row) or JSON objects with `onset_s` and `label`.
///
/// The result is sorted by onset; equal onsets keep their input order.
pub fn parse_chord_stream(text: &str) -> Result<Vec<ChordEvent>> {
    let mut chords = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (onset_s, label) = if line.starts_with('{') {
            let obj = parse_object(line, lineno)?;
            let onset = number_field(&obj, "onset_s", lineno)?;
            let label = match obj.get("label") {
                Some(Value::String(s)) => s.clone(),
                Some(_) => return Err(Error::line(lineno, "field `label` must be a string")),
                None => return Err(Error::line(lineno, "missing field `label`")),
            };
            (onset, label)
        } else {
            let (onset, label) = line
                .split_once(',')
                .ok_or_else(|| Error::line(lineno, "expected `onset_s,label`"))?;
            let (onset, label) = (onset.trim(), label.trim());
            if chords.is_empty() && onset == "onset_s" {
                continue;
            }
            let onset: f64 = onset
                .parse()
                .map_err(|_| Error::line(lineno, format!("onset {onset:?} is not a number")))?;
            (onset, label.to_string())
        };
        if !onset_s.is_finite() || onset_s < 0.0 {
            return Err(Error::line(lineno, format!("invalid onset {onset_s}")));
        }
        if !is_valid_chord_label(&label) {
            return Err(Error::line(lineno, format!("invalid chord label {label:?}")));
        }
        chords.push(ChordEvent { onset_s, label });
    }
    chords.sort_by(|a, b| a.onset_s.total_cmp(&b.onset_s));
    Ok(chords)
}

fn parse_object(line: &str, lineno: usize) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(line) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(Error::line(lineno, "expected a JSON object")),
        Err(e) => Err(Error::line(lineno, format!("malformed JSON: {e}"))),
    }
}

fn number_field(obj: &Map<String, Value>, key: &str, lineno: usize) -> Result<f64> {
    match obj.get(key) {
        Some(Value::Number(n)) => n
            .as_f64()
            .ok_or_else(|| Error::line(lineno, format!("field `{key}` is not representable"))),
        Some(other) => Err(Error::line(
            lineno,
            format!("field `{key}` must be numeric, got {other}"),
        )),
        None => Err(Error::line(lineno, format!("missing field `{key}`"))),
    }
}

fn midi_byte_field(obj: &Map<String, Value>, key: &str, lineno: usize) -> Result<u8> {
    let v = number_field(obj, key, lineno)?;
    if v.fract() != 0.0 || !(0.0..=127.0).contains(&v) {
        return Err(Error::line(
            lineno,
            format!("field `{key}` must be an integer in 0..=127, got {v}"),
        ));
    }
    Ok(v as u8)
}

/// Events of one piece, as found on disk.
#[derive(Debug, Clone, PartialEq)]
pub enum PieceInput {
    Notes(Vec<NoteEvent>),
    Chords(Vec<ChordEvent>),
}

/// Load a piece file. `.mid`/`.midi`/`.smf` are read as SMF, `.csv` as a
/// chord stream; JSON lines are sniffed from the first record (`label`
/// means chords, `pitch` means notes).
pub fn load_piece(path: &Path) -> Result<PieceInput> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    match ext.as_str() {
        "mid" | "midi" | "smf" => {
            let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
            Ok(PieceInput::Notes(parse_smf(&bytes)?))
        }
        _ => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            if ext == "csv" {
                return Ok(PieceInput::Chords(parse_chord_stream(&text)?));
            }
            let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
            match first {
                None => Ok(PieceInput::Notes(Vec::new())),
                Some(l) if l.starts_with('{') && l.contains("\"label\"") => {
                    Ok(PieceInput::Chords(parse_chord_stream(&text)?))
                }
                Some(l) if l.starts_with('{') => Ok(PieceInput::Notes(parse_note_jsonl(&text)?)),
                Some(_) => Ok(PieceInput::Chords(parse_chord_stream(&text)?)),
            }
        }
    }
}
