//! Build a small corpus on disk, then run the same steps as
//! `degreescope degrees` and `degreescope analyze`.

use std::path::Path;

use degreescope::ingest::parse_manifest;
use degreescope::report::{cmd_analyze, cmd_degrees, AnalyzeOptions, PipelineOptions};
use degreescope::resampling::BootstrapConfig;

const PROGRESSIONS: [(&str, &[&str]); 3] = [
    ("plain", &["C", "F", "G", "C", "Am", "Dm", "G", "C"]),
    ("modal", &["C", "Bb", "F", "C", "Ab", "Bb", "C", "Gm"]),
    ("minor", &["Am", "Dm", "E", "Am", "F", "E", "Am", "C"]),
];

fn write_corpus(dir: &Path) -> std::io::Result<String> {
    let mut entries = Vec::new();
    for (composer, chords) in PROGRESSIONS {
        for k in 0..4 {
            let mut text = String::from("onset_s,label\n");
            // Rotate so pieces differ.
            for (i, c) in chords.iter().cycle().skip(k).take(chords.len() + k).enumerate() {
                text.push_str(&format!("{i},{c}\n"));
            }
            let file = format!("{composer}_{k}.csv");
            std::fs::write(dir.join(&file), text)?;
            entries.push(format!(
                r#"{{"piece_id":"{composer}-{k}","path":"{file}","composer":"{composer}","era":"modern","group":"historical"}}"#
            ));
        }
    }
    Ok(format!(r#"{{"entries":[{}]}}"#, entries.join(",")))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("degreescope-full-pipeline");
    std::fs::create_dir_all(&dir)?;
    let manifest = parse_manifest(&write_corpus(&dir)?, &dir)?;

    let degrees = cmd_degrees(&manifest, &PipelineOptions::default())?;
    print!("{}", degrees.to_jsonl());

    let opts = AnalyzeOptions {
        min_pieces: 4,
        bootstrap: BootstrapConfig { iterations: 200, ..Default::default() },
        ..Default::default()
    };
    let out = dir.join("out");
    for path in cmd_analyze(&manifest, &opts, &out)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
