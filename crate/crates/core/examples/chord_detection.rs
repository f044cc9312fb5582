//! Label windows of a note stream with major/minor triads.

use degreescope::harmony::detect_chords;
use degreescope::ingest::NoteEvent;

fn block(start: f64, pitches: &[u8]) -> Vec<NoteEvent> {
    pitches.iter().map(|&p| NoteEvent::new(start, start + 1.9, p, 70).unwrap()).collect()
}

fn main() -> degreescope::Result<()> {
    // I - vi - IV - V in C, two seconds per chord.
    let mut notes = Vec::new();
    for (i, chord) in [[48, 64, 67, 72], [45, 60, 64, 69], [41, 60, 65, 69], [43, 62, 67, 71]]
        .iter()
        .enumerate()
    {
        notes.extend(block(2.0 * i as f64, chord));
    }

    let chords = detect_chords(&notes, 2.0, 1.0)?;
    for c in &chords {
        println!("{:>5.1}s  {}", c.onset_s, c.label);
    }
    Ok(())
}
