//! Command-level orchestration and file output.
//!
//! Each `cmd_*` function is what the matching `degreescope` subcommand runs.
//! Outputs are canonical JSON (sorted keys, 12 significant digits) so that
//! reruns are byte-identical, and every file carries the configuration that
//! produced it.

mod analyze;
pub mod json;
mod pipeline;
mod plot;
mod pools;

use serde::{Deserialize, Serialize};

pub use analyze::{
    analyze_profiles, cmd_analyze, load_analysis_report, load_matrix_file, AnalysisReport,
    AnalyzeOptions, AnalyzeOutput, ClosestPair, ClosestPairsFile, ComposerSummary, Intervals,
    LabeledProb, MatrixFile, RobustnessFile, ShannonFile, ShannonRow, ZipfFile, ZipfInputs,
    ZipfTransitionRow,
};
pub use pipeline::{
    cmd_degrees, process_piece, run_corpus, CorpusRun, DegreeRecord, DegreesOutput, KeyOverride,
    PieceFailure, PieceResult, PipelineOptions,
};
pub use plot::{cmd_plotdata, ComposerSeries, PlotData, RankSeries, TOP_N};
pub use pools::{
    cmd_pools, pools_from_profiles, ArtistEraRow, BasisRow, PoolSummary, PoolsConfig, PoolsOptions,
    PoolsReport,
};

/// Version tag written into every output file.
pub const SCHEMA_VERSION: &str = "1";

/// Settings echoed into every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub alpha: f64,
    pub min_pieces: usize,
    pub seed: u64,
    #[serde(rename = "B")]
    pub iterations: usize,
    pub percentiles: (f64, f64),
    pub key_profile: String,
    pub chord_window: f64,
    pub chord_hop: f64,
    pub generator: String,
    pub zipf_exclude_diagonal: bool,
    pub zipf_raw: bool,
}
