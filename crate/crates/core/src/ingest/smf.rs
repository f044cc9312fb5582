//! Standard MIDI File reader (formats 0 and 1, ticks-per-quarter timing).

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::ingest::NoteEvent;

const DEFAULT_TEMPO_US: u32 = 500_000;

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn new(data: &'a [u8], pos: usize, end: usize) -> Self {
        Cursor { data, pos, end }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.end
    }

    fn u8(&mut self) -> Result<u8> {
        if self.pos >= self.end {
            return Err(Error::smf(self.pos, "unexpected end of chunk"));
        }
        let b = self.data[self.pos];
        self.pos += 1;
        Ok(b)
    }

    fn bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.end - self.pos < n {
            return Err(Error::smf(self.pos, format!("truncated: need {n} bytes")));
        }
        let s = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u16(&mut self) -> Result<u16> {
        let b = self.bytes(2)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32> {
        let b = self.bytes(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    /// Variable-length quantity, at most four bytes.
    fn vlq(&mut self) -> Result<u32> {
        let start = self.pos;
        let mut value: u32 = 0;
        for _ in 0..4 {
            let b = self.u8()?;
            value = (value << 7) | u32::from(b & 0x7f);
            if b & 0x80 == 0 {
                return Ok(value);
            }
        }
        Err(Error::smf(start, "variable-length quantity longer than 4 bytes"))
    }
}

#[derive(Debug, Clone, Copy)]
struct RawNote {
    on_tick: u64,
    off_tick: u64,
    pitch: u8,
    velocity: u8,
    track: usize,
    seq: usize,
}

#[derive(Debug, Clone, Copy)]
struct TempoChange {
    tick: u64,
    us_per_quarter: u32,
}

#[derive(Default)]
struct TrackData {
    notes: Vec<RawNote>,
    tempos: Vec<TempoChange>,
}

/// Parse a Standard MIDI File into note events.
///
/// Tracks of a format-1 file are merged into one stream ordered by onset,
/// then track index, then order of appearance within the track. Note-On with
/// velocity 0 closes a note; overlapping notes of the same channel and pitch
/// are closed first-in first-out; notes still open at the end of a track are
/// closed there. Zero-length notes are discarded. Controller data (including
/// the sustain pedal) is read but not returned.
pub fn parse_smf(bytes: &[u8]) -> Result<Vec<NoteEvent>> {
    let mut cur = Cursor::new(bytes, 0, bytes.len());
    let magic = cur
        .bytes(4)
        .map_err(|_| Error::smf(0, "file too short for MThd header"))?;
    if magic != b"MThd" {
        return Err(Error::smf(0, "missing MThd header magic"));
    }
    let header_len = cur.u32()? as usize;
    if header_len < 6 {
        return Err(Error::smf(4, format!("header length {header_len} < 6")));
    }
    let header_start = cur.pos;
    if bytes.len() - header_start < header_len {
        return Err(Error::smf(header_start, "truncated header chunk"));
    }
    let format = cur.u16()?;
    let n_tracks = cur.u16()? as usize;
    let division = cur.u16()?;
    match format {
        0 | 1 => {}
        2 => return Err(Error::smf(8, "format 2 (sequential tracks) is not supported")),
        other => return Err(Error::smf(8, format!("unknown SMF format {other}"))),
    }
    if division & 0x8000 != 0 {
        return Err(Error::smf(12, "SMPTE time division is not supported"));
    }
    if division == 0 {
        return Err(Error::smf(12, "division of zero ticks per quarter"));
    }
    cur.pos = header_start + header_len;

    let mut tracks: Vec<TrackData> = Vec::with_capacity(n_tracks);
    while tracks.len() < n_tracks {
        if cur.at_end() {
            return Err(Error::smf(
                cur.pos,
                format!("expected {n_tracks} tracks, found {}", tracks.len()),
            ));
        }
        let chunk_start = cur.pos;
        let kind: [u8; 4] = cur
            .bytes(4)
            .map_err(|_| Error::smf(chunk_start, "truncated chunk header"))?
            .try_into()
            .expect("four bytes");
        let len = cur
            .u32()
            .map_err(|_| Error::smf(chunk_start, "truncated chunk header"))? as usize;
        let body = cur.pos;
        if bytes.len() - body < len {
            return Err(Error::smf(
                chunk_start,
                format!("truncated chunk: declares {len} bytes, {} available", bytes.len() - body),
            ));
        }
        if &kind == b"MTrk" {
            let index = tracks.len();
            tracks.push(parse_track(bytes, body, body + len, index)?);
        }
        cur.pos = body + len;
    }

    let tempo_map = TempoMap::new(&tracks, division);
    let mut raw: Vec<RawNote> = tracks.into_iter().flat_map(|t| t.notes).collect();
    raw.sort_by_key(|n| (n.on_tick, n.track, n.seq));
    Ok(raw
        .into_iter()
        .map(|n| NoteEvent {
            onset_s: tempo_map.seconds(n.on_tick),
            offset_s: tempo_map.seconds(n.off_tick),
            pitch: n.pitch,
            velocity: n.velocity,
        })
        .collect())
}

/// (channel, pitch) of a sounding note.
type NoteKey = (u8, u8);
/// Onset tick, velocity and event sequence number.
type OpenNote = (u64, u8, usize);

fn parse_track(data: &[u8], start: usize, end: usize, track: usize) -> Result<TrackData> {
    let mut cur = Cursor::new(data, start, end);
    let mut out = TrackData::default();
    let mut open: HashMap<NoteKey, VecDeque<OpenNote>> = HashMap::new();
    let mut tick: u64 = 0;
    let mut running: Option<u8> = None;
    let mut seq = 0usize;

    while !cur.at_end() {
        tick += u64::from(cur.vlq()?);
        let status_pos = cur.pos;
        let first = cur.u8()?;
        let (status, first_data) = if first & 0x80 != 0 {
            (first, None)
        } else {
            match running {
                Some(s) => (s, Some(first)),
                None => {
                    return Err(Error::smf(status_pos, "data byte without running status"));
                }
            }
        };

        match status {
            0xff => {
                running = None;
                let kind = cur.u8()?;
                let len = cur.vlq()? as usize;
                let payload = cur.bytes(len)?;
                match kind {
                    0x51 => {
                        if len != 3 {
                            return Err(Error::smf(status_pos, "tempo meta event must be 3 bytes"));
                        }
                        let us = u32::from_be_bytes([0, payload[0], payload[1], payload[2]]);
                        out.tempos.push(TempoChange {
                            tick,
                            us_per_quarter: us,
                        });
                    }
                    0x2f => break,
                    _ => {}
                }
            }
            0xf0 | 0xf7 => {
                running = None;
                let len = cur.vlq()? as usize;
                cur.bytes(len)?;
            }
            0xf1..=0xfe => {
                return Err(Error::smf(
                    status_pos,
                    format!("system message 0x{status:02x} not allowed in a track"),
                ));
            }
            _ => {
                running = Some(status);
                let d1 = match first_data {
                    Some(b) => b,
                    None => cur.u8()?,
                };
                let kind = status & 0xf0;
                let channel = status & 0x0f;
                let d2 = match kind {
                    0xc0 | 0xd0 => 0,
                    _ => cur.u8()?,
                };
                if d1 > 127 || d2 > 127 {
                    return Err(Error::smf(status_pos, "data byte has its high bit set"));
                }
                match kind {
                    0x90 if d2 > 0 => {
                        open.entry((channel, d1))
                            .or_default()
                            .push_back((tick, d2, seq));
                        seq += 1;
                    }
                    0x80 | 0x90 => {
                        if let Some((on_tick, velocity, s)) =
                            open.get_mut(&(channel, d1)).and_then(VecDeque::pop_front)
                        {
                            push_note(&mut out.notes, on_tick, tick, d1, velocity, track, s);
                        }
                    }
                    // Controllers (sustain pedal included), program change,
                    // pressure and pitch bend do not enter the note stream.
                    _ => {}
                }
            }
        }
    }

    let mut leftovers: Vec<(NoteKey, OpenNote)> = open
        .into_iter()
        .flat_map(|(key, q)| q.into_iter().map(move |n| (key, n)))
        .collect();
    leftovers.sort_by_key(|(_, (_, _, s))| *s);
    for ((_, pitch), (on_tick, velocity, s)) in leftovers {
        push_note(&mut out.notes, on_tick, tick, pitch, velocity, track, s);
    }
    Ok(out)
}

fn push_note(
    notes: &mut Vec<RawNote>,
    on_tick: u64,
    off_tick: u64,
    pitch: u8,
    velocity: u8,
    track: usize,
    seq: usize,
) {
    if off_tick > on_tick {
        notes.push(RawNote {
            on_tick,
            off_tick,
            pitch,
            velocity,
            track,
            seq,
        });
    }
}

/// Piecewise-linear tick to seconds conversion.
struct TempoMap {
    /// (start tick, seconds at start tick, microseconds per quarter)
    segments: Vec<(u64, f64, u32)>,
    division: f64,
}

impl TempoMap {
    fn new(tracks: &[TrackData], division: u16) -> Self {
        let mut changes: Vec<TempoChange> = tracks.iter().flat_map(|t| t.tempos.iter().copied()).collect();
        changes.sort_by_key(|c| c.tick);
        let division = f64::from(division);
        let mut segments: Vec<(u64, f64, u32)> = vec![(0, 0.0, DEFAULT_TEMPO_US)];
        for change in changes {
            let &(tick, secs, us) = segments.last().expect("non-empty");
            if change.tick == tick {
                // Later change at the same tick wins.
                segments.last_mut().expect("non-empty").2 = change.us_per_quarter;
            } else {
                let at = secs + (change.tick - tick) as f64 * f64::from(us) / (1e6 * division);
                segments.push((change.tick, at, change.us_per_quarter));
            }
        }
        TempoMap { segments, division }
    }

    fn seconds(&self, tick: u64) -> f64 {
        let idx = self.segments.partition_point(|s| s.0 <= tick) - 1;
        let (start, secs, us) = self.segments[idx];
        secs + (tick - start) as f64 * f64::from(us) / (1e6 * self.division)
    }
}
