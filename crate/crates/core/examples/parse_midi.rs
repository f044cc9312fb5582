//! Parse a Standard MIDI File from memory and print its notes.
//!
//! Pass a path to read a file instead: `cargo run --example parse_midi -- song.mid`.

use degreescope::ingest::parse_smf;

/// Format 0, 480 ticks per quarter, 120 bpm: a C major triad then G.
fn tiny_file() -> Vec<u8> {
    let mut track = Vec::new();
    for (delta, status, pitch, vel) in [
        (0u8, 0x90u8, 60u8, 90u8),
        (0, 0x90, 64, 80),
        (0, 0x90, 67, 80),
        (0x60, 0x80, 60, 0),
        (0, 0x80, 64, 0),
        (0, 0x80, 67, 0),
        (0, 0x90, 67, 100),
        (0x60, 0x90, 67, 0),
    ] {
        track.extend([delta, status, pitch, vel]);
    }
    track.extend([0x00, 0xFF, 0x2F, 0x00]);

    let mut bytes = b"MThd".to_vec();
    bytes.extend(6u32.to_be_bytes());
    bytes.extend([0, 0, 0, 1, 0x01, 0xE0]);
    bytes.extend(b"MTrk");
    bytes.extend((track.len() as u32).to_be_bytes());
    bytes.extend(track);
    bytes
}

fn main() -> degreescope::Result<()> {
    let bytes = match std::env::args().nth(1) {
        Some(path) => std::fs::read(&path).map_err(|e| degreescope::Error::io(std::path::Path::new(&path), e))?,
        None => tiny_file(),
    };
    let notes = parse_smf(&bytes)?;
    println!("{:>8} {:>8} {:>5} {:>3}", "onset", "offset", "pitch", "vel");
    for n in &notes {
        println!("{:>8.3} {:>8.3} {:>5} {:>3}", n.onset_s, n.offset_s, n.pitch, n.velocity);
    }

    // Damaged input reports the byte offset of the problem.
    let mut broken = tiny_file();
    broken.truncate(20);
    if let Err(e) = parse_smf(&broken) {
        println!("truncated copy: {e}");
    }
    Ok(())
}
