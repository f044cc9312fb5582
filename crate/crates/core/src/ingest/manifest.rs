use std::collections::BTreeSet;
use std::fs::File;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Historical,
    Neoclassical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub piece_id: String,
    pub path: PathBuf,
    pub composer: String,
    pub era: String,
    pub group: Group,
}

/// Pieces of a corpus with their attribution.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub entries: Vec<ManifestEntry>,
}

impl CorpusManifest {
    /// Distinct composer names, sorted.
    pub fn composers(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| e.composer.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// Parse a manifest document. Relative paths are resolved against `base_dir`;
/// every path must open for reading and every `piece_id` must be unique.
pub fn parse_manifest(text: &str, base_dir: &Path) -> Result<CorpusManifest> {
    let mut manifest: CorpusManifest =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("manifest: {e}")))?;
    let mut seen = BTreeSet::new();
    for entry in &mut manifest.entries {
        if !seen.insert(entry.piece_id.clone()) {
            return Err(Error::Input(format!(
                "manifest: duplicate piece_id {:?}",
                entry.piece_id
            )));
        }
        if entry.path.is_relative() {
            entry.path = base_dir.join(&entry.path);
        }
        File::open(&entry.path).map_err(|e| Error::io(&entry.path, e))?;
    }
    Ok(manifest)
}

pub fn load_manifest(path: &Path) -> Result<CorpusManifest> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_manifest(&text, base)
}
