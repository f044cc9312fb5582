use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::pipeline::{run_corpus, PipelineOptions};
use super::SCHEMA_VERSION;
use crate::counts::{aggregate, build_era_pools_with_pieces, Basis, CountProfile, EraPool, PoolSpec};
use crate::error::{Error, Result};
use crate::infotheory::DEFAULT_ALPHA;
use crate::ingest::{CorpusManifest, Group};
use crate::resampling::{era_assignment, subsample_concordance, ConcordanceReport, GENERATOR_NAME};

#[derive(Debug, Clone)]
pub struct PoolsOptions {
    pub pipeline: PipelineOptions,
    pub alpha: f64,
    /// Pieces per oversized pool in each subsample; defaults to the
    /// smallest pool.
    pub subsample_size: Option<usize>,
    /// Zero leaves out the concordance section.
    pub subsample_count: usize,
    pub seed: u64,
}

impl Default for PoolsOptions {
    fn default() -> Self {
        PoolsOptions {
            pipeline: PipelineOptions::default(),
            alpha: DEFAULT_ALPHA,
            subsample_size: None,
            subsample_count: 100,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoolSummary {
    pub era: String,
    pub members: Vec<String>,
    pub n_pieces: u64,
    pub total_events: u64,
}

/// KL from one artist to every era on one basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisRow {
    pub kl_bits: BTreeMap<String, f64>,
    /// Era with the smallest divergence.
    pub min_era: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArtistEraRow {
    pub artist: String,
    pub n_pieces: u64,
    pub marginal: BasisRow,
    pub transitions: BasisRow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoolsConfig {
    pub alpha: f64,
    pub seed: u64,
    pub subsample_size: Option<usize>,
    pub subsample_count: usize,
    pub key_profile: String,
    pub chord_window: f64,
    pub chord_hop: f64,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoolsReport {
    pub schema_version: String,
    pub config: PoolsConfig,
    pub pools: Vec<PoolSummary>,
    pub artists: Vec<ArtistEraRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub concordance: Option<Vec<ConcordanceReport>>,
}

fn basis_row(artist: &CountProfile, pools: &[EraPool], alpha: f64, basis: Basis) -> Result<BasisRow> {
    let a = era_assignment(artist, pools, alpha, basis)?;
    Ok(BasisRow {
        kl_bits: a.kl_bits,
        min_era: a.era,
    })
}

/// Era table and concordance for given artists against pools built from
/// `corpus`.
pub fn pools_from_profiles(
    corpus: &BTreeMap<String, Vec<CountProfile>>,
    artists: &[String],
    spec: &PoolSpec,
    opts: &PoolsOptions,
) -> Result<PoolsReport> {
    if !(opts.alpha > 0.0 && opts.alpha.is_finite()) {
        return Err(Error::Parameter(format!("alpha must be positive, got {}", opts.alpha)));
    }
    if spec.is_empty() {
        return Err(Error::Config("pool spec names no eras".to_string()));
    }
    let pools = build_era_pools_with_pieces(corpus, spec)?;
    let target_size = match opts.subsample_size {
        Some(n) => n,
        None => pools.iter().map(|p| p.pieces.len()).min().unwrap_or(0),
    };

    let mut rows = Vec::new();
    let mut concordance = Vec::new();
    for name in artists {
        let pieces = corpus
            .get(name)
            .ok_or_else(|| Error::Config(format!("artist {name:?} has no processed pieces")))?;
        let profile = aggregate(pieces);
        rows.push(ArtistEraRow {
            artist: name.clone(),
            n_pieces: profile.n_pieces,
            marginal: basis_row(&profile, &pools, opts.alpha, Basis::Marginal)?,
            transitions: basis_row(&profile, &pools, opts.alpha, Basis::Transitions)?,
        });
        if opts.subsample_count > 0 {
            concordance.push(subsample_concordance(
                name,
                &profile,
                &pools,
                target_size,
                opts.subsample_count,
                opts.seed,
                opts.alpha,
            )?);
        }
    }

    Ok(PoolsReport {
        schema_version: SCHEMA_VERSION.to_string(),
        config: PoolsConfig {
            alpha: opts.alpha,
            seed: opts.seed,
            subsample_size: (opts.subsample_count > 0).then_some(target_size),
            subsample_count: opts.subsample_count,
            key_profile: opts.pipeline.key_profile.name.clone(),
            chord_window: opts.pipeline.chord_window_s,
            chord_hop: opts.pipeline.chord_hop_s,
            generator: GENERATOR_NAME.to_string(),
        },
        pools: pools
            .iter()
            .map(|p| PoolSummary {
                era: p.era.clone(),
                members: p.members.clone(),
                n_pieces: p.profile.n_pieces,
                total_events: p.profile.total_events,
            })
            .collect(),
        artists: rows,
        concordance: (opts.subsample_count > 0).then_some(concordance),
    })
}

/// Run the corpus and compare every neoclassical composer with the era
/// pools of `spec`.
pub fn cmd_pools(manifest: &CorpusManifest, spec: &PoolSpec, opts: &PoolsOptions) -> Result<PoolsReport> {
    let run = run_corpus(manifest, &opts.pipeline);
    run.check(opts.pipeline.keep_going)?;
    let artists: Vec<String> = manifest
        .entries
        .iter()
        .filter(|e| e.group == Group::Neoclassical)
        .map(|e| e.composer.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    pools_from_profiles(&run.by_composer(), &artists, spec, opts)
}
