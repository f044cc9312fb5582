use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::json::write_json;
use super::pipeline::{run_corpus, PipelineOptions};
use super::{Provenance, SCHEMA_VERSION};
use crate::counts::{select_high_sample, Basis, CountProfile, ExcludedComposer, DEFAULT_MIN_PIECES};
use crate::error::{Error, Result};
use crate::harmony::{ScaleDegree, N_DEGREES};
use crate::infotheory::{
    fit_rank_frequency, js_divergence, kl_divergence, shannon_entropy, smooth, MeasureResult,
    SmoothedDistribution, ZipfFit, DEFAULT_ALPHA,
};
use crate::ingest::CorpusManifest;
use crate::resampling::{
    bootstrap_replicates, kl_js_crosscheck, smoothing_robustness, summarize_replicates,
    BootstrapConfig, RobustnessRow, GENERATOR_NAME,
};

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub pipeline: PipelineOptions,
    pub alpha: f64,
    pub min_pieces: usize,
    pub bootstrap: BootstrapConfig,
    /// Fit transitions on the 210 off-diagonal cells instead of all 225.
    pub zipf_exclude_diagonal: bool,
    /// Fit raw relative frequencies (zero cells dropped) instead of
    /// smoothed probabilities.
    pub zipf_raw: bool,
    /// Smoothing values for the robustness sweep; fewer than two skips it.
    pub robustness_alphas: Vec<f64>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            pipeline: PipelineOptions::default(),
            alpha: DEFAULT_ALPHA,
            min_pieces: DEFAULT_MIN_PIECES,
            bootstrap: BootstrapConfig::default(),
            zipf_exclude_diagonal: false,
            zipf_raw: false,
            robustness_alphas: vec![0.1, 0.5, 1.0],
        }
    }
}

impl AnalyzeOptions {
    pub fn provenance(&self) -> Provenance {
        Provenance {
            alpha: self.alpha,
            min_pieces: self.min_pieces,
            seed: self.bootstrap.base_seed,
            iterations: self.bootstrap.iterations,
            percentiles: self.bootstrap.percentiles,
            key_profile: self.pipeline.key_profile.name.clone(),
            chord_window: self.pipeline.chord_window_s,
            chord_hop: self.pipeline.chord_hop_s,
            generator: GENERATOR_NAME.to_string(),
            zipf_exclude_diagonal: self.zipf_exclude_diagonal,
            zipf_raw: self.zipf_raw,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::Parameter(format!("alpha must be positive, got {}", self.alpha)));
        }
        if let Some(a) = self.robustness_alphas.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(Error::Parameter(format!("robustness alpha must be positive, got {a}")));
        }
        self.bootstrap.validate()
    }
}

/// One probability fed to a Zipf fit, with the cell it belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledProb {
    pub cell: String,
    pub p: f64,
}

/// Exactly the vectors the Zipf fits consumed, in cell order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZipfInputs {
    pub marginal: Vec<LabeledProb>,
    pub transitions: Vec<LabeledProb>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComposerSummary {
    pub name: String,
    pub n_pieces: u64,
    pub total_events: u64,
    pub shannon: MeasureResult,
    /// `None` when a raw fit has fewer than three nonzero cells.
    pub zipf_marginal: Option<ZipfFit>,
    pub zipf_transitions: Option<ZipfFit>,
    /// Smoothed marginal, in alphabet order.
    pub marginal_probs: Vec<f64>,
    pub zipf_inputs: ZipfInputs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShannonFile {
    pub schema_version: String,
    pub config: Provenance,
    pub alphabet: Vec<ScaleDegree>,
    pub composers: Vec<ShannonRow>,
    pub excluded: Vec<ExcludedComposer>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShannonRow {
    pub name: String,
    pub n_pieces: u64,
    pub total_events: u64,
    pub shannon: MeasureResult,
    pub zipf_marginal: Option<ZipfFit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Intervals {
    pub low: Vec<Vec<f64>>,
    pub high: Vec<Vec<f64>>,
}

/// A composer-by-composer divergence matrix with bootstrap intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub schema_version: String,
    pub config: Provenance,
    /// `"kl"` (row ‖ column) or `"js"`.
    pub measure: String,
    pub basis: Basis,
    pub units: String,
    pub names: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub bootstrap_ci: Intervals,
}

const DIAGONAL_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;

fn check_square(name: &str, m: &[Vec<f64>], n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::Invariant(format!("{name} is not {n}x{n}")));
    }
    if m.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Invariant(format!("{name} has a non-finite entry")));
    }
    Ok(())
}

fn check_kl(m: &[Vec<f64>]) -> Result<()> {
    for (i, row) in m.iter().enumerate() {
        if row[i].abs() > DIAGONAL_TOL {
            return Err(Error::Invariant(format!("KL diagonal [{i}] = {}", row[i])));
        }
        if let Some(v) = row.iter().find(|v| **v < 0.0) {
            return Err(Error::Invariant(format!("negative KL {v} in row {i}")));
        }
    }
    Ok(())
}

fn check_js(m: &[Vec<f64>]) -> Result<()> {
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if (v - m[j][i]).abs() > SYMMETRY_TOL {
                return Err(Error::Invariant(format!("JS asymmetric at [{i}][{j}]")));
            }
            if !(0.0..=1.0).contains(v) {
                return Err(Error::Invariant(format!("JS {v} outside [0, 1] at [{i}][{j}]")));
            }
        }
    }
    Ok(())
}

impl MatrixFile {
    pub fn validate(&self) -> Result<()> {
        let n = self.names.len();
        check_square("matrix", &self.matrix, n)?;
        check_square("bootstrap_ci.low", &self.bootstrap_ci.low, n)?;
        check_square("bootstrap_ci.high", &self.bootstrap_ci.high, n)?;
        match self.measure.as_str() {
            "kl" => check_kl(&self.matrix)?,
            "js" => check_js(&self.matrix)?,
            other => return Err(Error::Invariant(format!("unknown measure {other:?}"))),
        }
        let low = self.bootstrap_ci.low.iter().flatten();
        let high = self.bootstrap_ci.high.iter().flatten();
        if low.zip(high).any(|(l, h)| l > h) {
            return Err(Error::Invariant("bootstrap interval with low > high".to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZipfTransitionRow {
    pub name: String,
    pub fit: Option<ZipfFit>,
    /// Bootstrap interval for the exponent; `value` is the full-sample fit.
    pub slope_alpha: Option<MeasureResult>,
    pub r_squared: Option<MeasureResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZipfFile {
    pub schema_version: String,
    pub config: Provenance,
    pub n_cells: usize,
    pub composers: Vec<ZipfTransitionRow>,
    /// Composer names by descending R²; undefined R² last.
    pub ranking: Vec<String>,
}

/// One directed pair, `source ‖ target`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosestPair {
    pub source: String,
    pub target: String,
    pub kl_bits: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosestPairsFile {
    pub schema_version: String,
    pub config: Provenance,
    pub basis: Basis,
    pub pairs: Vec<ClosestPair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessFile {
    pub schema_version: String,
    pub config: Provenance,
    pub alphas: Vec<f64>,
    pub smoothing: Option<BTreeMap<String, RobustnessRow>>,
    /// Per-row ρ between symmetrized KL and JS orderings; needs three
    /// composers.
    pub kl_js: Option<BTreeMap<String, Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub config: Provenance,
    pub alphabet: Vec<ScaleDegree>,
    pub composers: Vec<ComposerSummary>,
    pub names: Vec<String>,
    pub kl_matrix: Vec<Vec<f64>>,
    pub js_matrix: Vec<Vec<f64>>,
    pub bootstrap_ci: Intervals,
    pub excluded: Vec<ExcludedComposer>,
}

impl AnalysisReport {
    pub fn validate(&self) -> Result<()> {
        let n = self.composers.len();
        if self.names.len() != n || self.composers.iter().zip(&self.names).any(|(c, m)| &c.name != m) {
            return Err(Error::Invariant("names do not match composers".to_string()));
        }
        check_square("kl_matrix", &self.kl_matrix, n)?;
        check_square("js_matrix", &self.js_matrix, n)?;
        check_kl(&self.kl_matrix)?;
        check_js(&self.js_matrix)?;
        check_square("bootstrap_ci.low", &self.bootstrap_ci.low, n)?;
        check_square("bootstrap_ci.high", &self.bootstrap_ci.high, n)
    }

    pub fn composer(&self, name: &str) -> Option<&ComposerSummary> {
        self.composers.iter().find(|c| c.name == name)
    }
}

/// Everything `analyze` writes, before it is written.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOutput {
    pub shannon: ShannonFile,
    pub kl_marginal: MatrixFile,
    pub kl_transitions: MatrixFile,
    pub js_marginal: MatrixFile,
    pub zipf_transitions: ZipfFile,
    pub closest_pairs: ClosestPairsFile,
    pub robustness: RobustnessFile,
    pub report: AnalysisReport,
}

impl AnalyzeOutput {
    /// Write every file into `dir`; returns the paths in write order.
    pub fn write_all(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let n = self.report.names.len();
        let mut written = vec![write_shannon(&self.shannon, dir)?];
        let files = [
            (format!("kl_scale_degrees_{n}x{n}.json"), value(&self.kl_marginal)?),
            (format!("kl_transitions_{n}x{n}.json"), value(&self.kl_transitions)?),
            (format!("js_scale_degrees_{n}x{n}.json"), value(&self.js_marginal)?),
            (format!("zipf_transitions_{n}.json"), value(&self.zipf_transitions)?),
            (format!("closest_pairs_{n}.json"), value(&self.closest_pairs)?),
            (format!("robustness_{n}.json"), value(&self.robustness)?),
            ("analysis_report.json".to_string(), value(&self.report)?),
        ];
        for (name, v) in files {
            let path = dir.join(name);
            write_json(&path, &v)?;
            written.push(path);
        }
        Ok(written)
    }
}

fn value<T: Serialize>(v: &T) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Invariant(format!("serialize: {e}")))
}

fn write_shannon(file: &ShannonFile, dir: &Path) -> Result<PathBuf> {
    let path = dir.join(format!("shannon_scale_degrees_{}.json", file.composers.len()));
    write_json(&path, file)?;
    Ok(path)
}

fn marginal_labels() -> Vec<String> {
    ScaleDegree::ALL.iter().map(|d| d.symbol().to_string()).collect()
}

fn transition_labels(exclude_diagonal: bool) -> Vec<String> {
    let mut out = Vec::new();
    for a in ScaleDegree::ALL {
        for b in ScaleDegree::ALL {
            if !(exclude_diagonal && a == b) {
                out.push(format!("{a}>{b}"));
            }
        }
    }
    out
}

/// Per-composer state shared by every statistic.
struct ComposerData {
    name: String,
    total: CountProfile,
    marginal: SmoothedDistribution,
    transitions: SmoothedDistribution,
    rep_marginal: Vec<SmoothedDistribution>,
    rep_transitions: Vec<SmoothedDistribution>,
    rep_profiles: Vec<CountProfile>,
}

impl AnalyzeOptions {
    fn zipf_cells(&self, profile: &CountProfile, basis: Basis) -> Vec<u64> {
        match basis {
            Basis::Marginal => profile.marginal.to_vec(),
            Basis::Transitions if self.zipf_exclude_diagonal => profile.transitions_off_diagonal(),
            Basis::Transitions => profile.transitions_flat(),
        }
    }

    /// The labelled probabilities a Zipf fit on `basis` consumes.
    fn zipf_input(&self, profile: &CountProfile, basis: Basis) -> Result<Vec<LabeledProb>> {
        let cells = self.zipf_cells(profile, basis);
        let labels = match basis {
            Basis::Marginal => marginal_labels(),
            Basis::Transitions => transition_labels(self.zipf_exclude_diagonal),
        };
        if self.zipf_raw {
            let total: u64 = cells.iter().sum();
            Ok(labels
                .into_iter()
                .zip(cells)
                .filter(|(_, c)| *c > 0)
                .map(|(cell, c)| LabeledProb { cell, p: c as f64 / total as f64 })
                .collect())
        } else {
            let p = smooth(&cells, self.alpha)?;
            Ok(labels
                .into_iter()
                .zip(p.probs())
                .map(|(cell, &p)| LabeledProb { cell, p })
                .collect())
        }
    }

    fn zipf(&self, profile: &CountProfile, basis: Basis) -> Result<Option<ZipfFit>> {
        let input = self.zipf_input(profile, basis)?;
        if self.zipf_raw && input.len() < 3 {
            return Ok(None);
        }
        let probs: Vec<f64> = input.iter().map(|l| l.p).collect();
        fit_rank_frequency(&probs).map(Some)
    }
}

fn composer_data(
    name: &str,
    pieces: &[CountProfile],
    total: &CountProfile,
    opts: &AnalyzeOptions,
) -> Result<ComposerData> {
    let rep_profiles = bootstrap_replicates(pieces, &opts.bootstrap)?;
    let smooth_all = |basis: Basis| -> Result<Vec<SmoothedDistribution>> {
        rep_profiles
            .par_iter()
            .map(|r| smooth(&r.cells(basis), opts.alpha))
            .collect()
    };
    Ok(ComposerData {
        name: name.to_string(),
        total: total.clone(),
        marginal: smooth(&total.marginal, opts.alpha)?,
        transitions: smooth(&total.transitions_flat(), opts.alpha)?,
        rep_marginal: smooth_all(Basis::Marginal)?,
        rep_transitions: smooth_all(Basis::Transitions)?,
        rep_profiles,
    })
}

fn gather(
    corpus: &BTreeMap<String, Vec<CountProfile>>,
    opts: &AnalyzeOptions,
) -> Result<(Vec<ComposerData>, Vec<ExcludedComposer>)> {
    opts.validate()?;
    let selection = select_high_sample(corpus, opts.min_pieces)?;
    let data = selection
        .included
        .iter()
        .map(|(name, total)| composer_data(name, &corpus[name], total, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok((data, selection.excluded))
}

fn shannon_file(data: &[ComposerData], excluded: &[ExcludedComposer], opts: &AnalyzeOptions) -> Result<ShannonFile> {
    let composers = data
        .iter()
        .map(|c| {
            let reps = c.rep_marginal.iter().map(shannon_entropy).collect();
            Ok(ShannonRow {
                name: c.name.clone(),
                n_pieces: c.total.n_pieces,
                total_events: c.total.total_events,
                shannon: summarize_replicates(shannon_entropy(&c.marginal), reps, &opts.bootstrap)
                    .with_alpha(opts.alpha),
                zipf_marginal: opts.zipf(&c.total, Basis::Marginal)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShannonFile {
        schema_version: SCHEMA_VERSION.to_string(),
        config: opts.provenance(),
        alphabet: ScaleDegree::ALL.to_vec(),
        composers,
        excluded: excluded.to_vec(),
    })
}

type Divergence = fn(&SmoothedDistribution, &SmoothedDistribution) -> Result<f64>;

fn divergence_matrix(
    data: &[ComposerData],
    basis: Basis,
    measure: &str,
    opts: &AnalyzeOptions,
) -> Result<MatrixFile> {
    let f: Divergence = if measure == "kl" { kl_divergence } else { js_divergence };
    let n = data.len();
    fn pick(c: &ComposerData, basis: Basis) -> (&SmoothedDistribution, &[SmoothedDistribution]) {
        match basis {
            Basis::Marginal => (&c.marginal, &c.rep_marginal),
            Basis::Transitions => (&c.transitions, &c.rep_transitions),
        }
    }
    let cells = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (a, b) = (k / n, k % n);
            let (pa, ra) = pick(&data[a], basis);
            let (pb, rb) = pick(&data[b], basis);
            let reps = ra.iter().zip(rb).map(|(x, y)| f(x, y)).collect::<Result<Vec<_>>>()?;
            Ok(summarize_replicates(f(pa, pb)?, reps, &opts.bootstrap))
        })
        .collect::<Result<Vec<MeasureResult>>>()?;
    let grid = |g: fn(&MeasureResult) -> f64| -> Vec<Vec<f64>> {
        cells.chunks(n.max(1)).map(|row| row.iter().map(g).collect()).collect()
    };
    let file = MatrixFile {
        schema_version: SCHEMA_VERSION.to_string(),
        config: opts.provenance(),
        measure: measure.to_string(),
        basis,
        units: "bits".to_string(),
        names: data.iter().map(|c| c.name.clone()).collect(),
        matrix: grid(|m| m.value),
        bootstrap_ci: Intervals {
            low: grid(|m| m.ci_low.unwrap_or(f64::NAN)),
            high: grid(|m| m.ci_high.unwrap_or(f64::NAN)),
        },
    };
    file.validate()?;
    Ok(file)
}

fn zipf_file(data: &[ComposerData], opts: &AnalyzeOptions) -> Result<ZipfFile> {
    let composers = data
        .iter()
        .map(|c| {
            let fit = opts.zipf(&c.total, Basis::Transitions)?;
            let reps = c
                .rep_profiles
                .par_iter()
                .map(|r| opts.zipf(r, Basis::Transitions))
                .collect::<Result<Vec<_>>>()?;
            let summarize = |get: fn(&ZipfFit) -> Option<f64>| {
                let point = fit.as_ref().and_then(get)?;
                let values = reps.iter().map(|r| r.as_ref().and_then(get).unwrap_or(f64::NAN)).collect();
                Some(summarize_replicates(point, values, &opts.bootstrap).with_alpha(opts.alpha))
            };
            Ok(ZipfTransitionRow {
                name: c.name.clone(),
                slope_alpha: summarize(|f| Some(f.slope_alpha)),
                r_squared: summarize(|f| f.r_squared),
                fit,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ranking: Vec<(String, Option<f64>)> = composers
        .iter()
        .map(|c| (c.name.clone(), c.fit.and_then(|f| f.r_squared)))
        .collect();
    ranking.sort_by(|a, b| match (a.1, b.1) {
        (Some(x), Some(y)) => y.total_cmp(&x).then(a.0.cmp(&b.0)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.0.cmp(&b.0),
    });
    let n_cells = match (opts.zipf_raw, opts.zipf_exclude_diagonal) {
        (true, _) => 0,
        (false, true) => N_DEGREES * (N_DEGREES - 1),
        (false, false) => N_DEGREES * N_DEGREES,
    };
    Ok(ZipfFile {
        schema_version: SCHEMA_VERSION.to_string(),
        config: opts.provenance(),
        n_cells,
        composers,
        ranking: ranking.into_iter().map(|(n, _)| n).collect(),
    })
}

fn closest_pairs(kl: &MatrixFile, opts: &AnalyzeOptions) -> ClosestPairsFile {
    let mut pairs = Vec::new();
    for (i, source) in kl.names.iter().enumerate() {
        for (j, target) in kl.names.iter().enumerate() {
            if i != j {
                pairs.push(ClosestPair {
                    source: source.clone(),
                    target: target.clone(),
                    kl_bits: kl.matrix[i][j],
                    ci_low: kl.bootstrap_ci.low[i][j],
                    ci_high: kl.bootstrap_ci.high[i][j],
                });
            }
        }
    }
    pairs.sort_by(|a, b| {
        a.kl_bits
            .total_cmp(&b.kl_bits)
            .then_with(|| a.source.cmp(&b.source))
            .then_with(|| a.target.cmp(&b.target))
    });
    ClosestPairsFile {
        schema_version: SCHEMA_VERSION.to_string(),
        config: opts.provenance(),
        basis: kl.basis,
        pairs,
    }
}

fn robustness_file(data: &[ComposerData], opts: &AnalyzeOptions) -> Result<RobustnessFile> {
    let corpus: BTreeMap<String, CountProfile> =
        data.iter().map(|c| (c.name.clone(), c.total.clone())).collect();
    let smoothing = if opts.robustness_alphas.len() >= 2 {
        Some(smoothing_robustness(&corpus, &opts.robustness_alphas)?)
    } else {
        None
    };
    let kl_js = if corpus.len() >= 3 {
        Some(kl_js_crosscheck(&corpus, opts.alpha)?)
    } else {
        None
    };
    Ok(RobustnessFile {
        schema_version: SCHEMA_VERSION.to_string(),
        config: opts.provenance(),
        alphas: opts.robustness_alphas.clone(),
        smoothing,
        kl_js,
    })
}

/// Every analysis artifact for a corpus of per-piece profiles.
///
/// Fails with a configuration error when fewer than two composers pass
/// the piece threshold.
pub fn analyze_profiles(
    corpus: &BTreeMap<String, Vec<CountProfile>>,
    opts: &AnalyzeOptions,
) -> Result<AnalyzeOutput> {
    let (data, excluded) = gather(corpus, opts)?;
    let shannon = shannon_file(&data, &excluded, opts)?;
    finish(data, shannon, opts)
}

fn too_few(n: usize, opts: &AnalyzeOptions) -> Error {
    Error::Config(format!(
        "{n} composer(s) with at least {} pieces; matrix outputs need 2",
        opts.min_pieces
    ))
}

fn finish(data: Vec<ComposerData>, shannon: ShannonFile, opts: &AnalyzeOptions) -> Result<AnalyzeOutput> {
    if data.len() < 2 {
        return Err(too_few(data.len(), opts));
    }
    let kl_marginal = divergence_matrix(&data, Basis::Marginal, "kl", opts)?;
    let kl_transitions = divergence_matrix(&data, Basis::Transitions, "kl", opts)?;
    let js_marginal = divergence_matrix(&data, Basis::Marginal, "js", opts)?;
    let zipf_transitions = zipf_file(&data, opts)?;
    let closest_pairs = closest_pairs(&kl_marginal, opts);
    let robustness = robustness_file(&data, opts)?;

    let composers = data
        .iter()
        .zip(&shannon.composers)
        .zip(&zipf_transitions.composers)
        .map(|((c, s), z)| {
            Ok(ComposerSummary {
                name: c.name.clone(),
                n_pieces: c.total.n_pieces,
                total_events: c.total.total_events,
                shannon: s.shannon,
                zipf_marginal: s.zipf_marginal,
                zipf_transitions: z.fit,
                marginal_probs: c.marginal.probs().to_vec(),
                zipf_inputs: ZipfInputs {
                    marginal: opts.zipf_input(&c.total, Basis::Marginal)?,
                    transitions: opts.zipf_input(&c.total, Basis::Transitions)?,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = AnalysisReport {
        schema_version: SCHEMA_VERSION.to_string(),
        config: opts.provenance(),
        alphabet: ScaleDegree::ALL.to_vec(),
        composers,
        names: kl_marginal.names.clone(),
        kl_matrix: kl_marginal.matrix.clone(),
        js_matrix: js_marginal.matrix.clone(),
        bootstrap_ci: kl_marginal.bootstrap_ci.clone(),
        excluded: shannon.excluded.clone(),
    };
    report.validate()?;
    Ok(AnalyzeOutput {
        shannon,
        kl_marginal,
        kl_transitions,
        js_marginal,
        zipf_transitions,
        closest_pairs,
        robustness,
        report,
    })
}

/// Run the corpus, write every artifact into `out_dir`, return the paths.
///
/// The entropy file is written even when too few composers remain for the
/// matrix outputs; the error is returned afterwards.
pub fn cmd_analyze(manifest: &CorpusManifest, opts: &AnalyzeOptions, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let run = run_corpus(manifest, &opts.pipeline);
    run.check(opts.pipeline.keep_going)?;
    let (data, excluded) = gather(&run.by_composer(), opts)?;
    let shannon = shannon_file(&data, &excluded, opts)?;
    if data.len() < 2 {
        write_shannon(&shannon, out_dir)?;
        return Err(too_few(data.len(), opts));
    }
    finish(data, shannon, opts)?.write_all(out_dir)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Read and validate `analysis_report.json`.
pub fn load_analysis_report(path: &Path) -> Result<AnalysisReport> {
    let report: AnalysisReport = read_json(path)?;
    report.validate()?;
    Ok(report)
}

/// Read and validate one of the matrix files.
pub fn load_matrix_file(path: &Path) -> Result<MatrixFile> {
    let file: MatrixFile = read_json(path)?;
    file.validate()?;
    Ok(file)
}
