#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use degreescope::counts::{count_degrees, CountProfile};
use degreescope::ScaleDegree;
use serde_json::Value;

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

pub fn fixture(rel: &str) -> Value {
    let text = std::fs::read_to_string(fixture_path(rel)).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: got {actual}, expected {expected} (tol {tol})"
    );
}

/// Degree indices or symbols from a JSON array.
pub fn degrees(v: &Value) -> Vec<ScaleDegree> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|d| match d {
            Value::String(s) => s.parse().unwrap(),
            other => ScaleDegree::from_index(other.as_u64().unwrap() as usize).unwrap(),
        })
        .collect()
}

/// `{composer: [[degree, ...], ...]}` as per-piece profiles.
pub fn corpus(v: &Value) -> BTreeMap<String, Vec<CountProfile>> {
    v.as_object()
        .unwrap()
        .iter()
        .map(|(name, pieces)| {
            let profiles = pieces.as_array().unwrap().iter().map(|p| count_degrees(&degrees(p))).collect();
            (name.clone(), profiles)
        })
        .collect()
}

/// Minimal SMF writer, independent of the parser: format 0 or 1, one
/// channel per track, notes given in ticks.
pub mod smf_writer {
    #[derive(Debug, Clone)]
    pub struct Note {
        pub on_tick: u32,
        pub off_tick: u32,
        pub pitch: u8,
        pub velocity: u8,
    }

    fn vlq(mut v: u32, out: &mut Vec<u8>) {
        let mut stack = vec![(v & 0x7f) as u8];
        v >>= 7;
        while v > 0 {
            stack.push((v & 0x7f) as u8 | 0x80);
            v >>= 7;
        }
        out.extend(stack.iter().rev());
    }

    /// Track body from notes; `tempo` (us per quarter) is set at tick 0.
    pub fn track(notes: &[Note], channel: u8, tempo: Option<u32>) -> Vec<u8> {
        // (tick, order, bytes): offs sort before ons at equal ticks
        let mut events: Vec<(u32, u8, Vec<u8>)> = Vec::new();
        if let Some(t) = tempo {
            events.push((0, 0, vec![0xff, 0x51, 0x03, (t >> 16) as u8, (t >> 8) as u8, t as u8]));
        }
        for n in notes {
            events.push((n.on_tick, 2, vec![0x90 | channel, n.pitch, n.velocity]));
            events.push((n.off_tick, 1, vec![0x80 | channel, n.pitch, 0x40]));
        }
        events.sort_by_key(|e| (e.0, e.1));
        let mut body = Vec::new();
        let mut now = 0;
        for (tick, _, bytes) in events {
            vlq(tick - now, &mut body);
            body.extend(bytes);
            now = tick;
        }
        body.extend([0x00, 0xff, 0x2f, 0x00]);
        body
    }

    pub fn file(format: u16, division: u16, tracks: &[Vec<u8>]) -> Vec<u8> {
        let mut out = b"MThd".to_vec();
        out.extend(6u32.to_be_bytes());
        out.extend(format.to_be_bytes());
        out.extend((tracks.len() as u16).to_be_bytes());
        out.extend(division.to_be_bytes());
        for t in tracks {
            out.extend(b"MTrk");
            out.extend((t.len() as u32).to_be_bytes());
            out.extend(t);
        }
        out
    }
}
