//! Estimate the key of a short passage with the Krumhansl-Kessler profiles.

use degreescope::ingest::NoteEvent;
use degreescope::tonality::{estimate_key, pitch_class_histogram};
use degreescope::KeyProfile;

const NAMES: [&str; 12] = ["C", "C#", "D", "Eb", "E", "F", "F#", "G", "Ab", "A", "Bb", "B"];

fn melody(pitches: &[u8]) -> Vec<NoteEvent> {
    pitches
        .iter()
        .enumerate()
        .map(|(i, &p)| NoteEvent::new(i as f64 * 0.5, i as f64 * 0.5 + 0.45, p, 80).unwrap())
        .collect()
}

fn main() -> degreescope::Result<()> {
    let profile = KeyProfile::krumhansl_kessler();
    let passages = [
        ("C major scale", melody(&[60, 62, 64, 65, 67, 69, 71, 72])),
        ("A harmonic minor", melody(&[57, 59, 60, 62, 64, 65, 68, 69, 64, 57])),
        ("E major arpeggios", melody(&[64, 68, 71, 76, 71, 68, 66, 71, 75, 64])),
    ];
    for (name, notes) in &passages {
        let key = estimate_key(notes, &profile)?;
        println!(
            "{name:<18} -> {} {:?} (r = {:.3})",
            NAMES[usize::from(key.tonic_pc)],
            key.mode,
            key.score
        );
    }

    // Histograms are duration-weighted.
    let hist = pitch_class_histogram(&passages[0].1);
    println!("C major histogram: {hist:?}");
    Ok(())
}
