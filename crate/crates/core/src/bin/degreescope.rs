use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use degreescope::counts::{parse_pool_spec, DEFAULT_MIN_PIECES};
use degreescope::harmony::{DEFAULT_HOP_S, DEFAULT_WINDOW_S};
use degreescope::infotheory::DEFAULT_ALPHA;
use degreescope::ingest::load_manifest;
use degreescope::report::json::{to_canonical_string, write_atomic, write_json};
use degreescope::report::{
    cmd_analyze, cmd_degrees, cmd_plotdata, cmd_pools, load_analysis_report, AnalyzeOptions,
    KeyOverride, PipelineOptions, PoolsOptions,
};
use degreescope::resampling::BootstrapConfig;
use degreescope::{Error, KeyProfile, Result};

#[derive(Parser)]
#[command(name = "degreescope", version, about = "Scale-degree statistics for symbolic music corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write each piece's degree sequence as JSON lines.
    Degrees {
        #[command(flatten)]
        input: InputArgs,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy, divergence matrices, Zipf fits and robustness checks.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        stats: StatsArgs,
        #[arg(long, default_value_t = DEFAULT_MIN_PIECES)]
        min_pieces: usize,
        #[arg(long, default_value_t = 1000)]
        bootstrap_iters: usize,
        /// Fit transition Zipf laws on the 210 off-diagonal cells.
        #[arg(long)]
        zipf_exclude_diagonal: bool,
        /// Fit Zipf laws on raw frequencies, zero cells dropped.
        #[arg(long)]
        zipf_raw: bool,
        /// Smoothing values for the robustness sweep.
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.5,1.0")]
        alphas: Vec<f64>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Distance from each neoclassical composer to era pools.
    Pools {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        stats: StatsArgs,
        /// JSON object mapping era to member composers.
        #[arg(long)]
        pools: PathBuf,
        /// Pieces per oversized pool; defaults to the smallest pool.
        #[arg(long)]
        subsample_size: Option<usize>,
        /// Number of seeded subsamples; 0 skips concordance.
        #[arg(long, default_value_t = 100)]
        subsample_count: usize,
        #[arg(long, default_value = "pools_report.json")]
        out: PathBuf,
    },
    /// Rank-frequency series from an analysis report.
    Plotdata {
        #[arg(long, default_value = "analysis_report.json")]
        report: PathBuf,
        /// Composer to include; repeatable. All when omitted.
        #[arg(long)]
        composer: Vec<String>,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Built-in profile name or path to a profile JSON file.
    #[arg(long, default_value = "kk")]
    key_profile: String,
    /// Force a key, `<piece_id>=<pc>,<mode>`; repeatable.
    #[arg(long)]
    key_override: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_WINDOW_S)]
    chord_window: f64,
    #[arg(long, default_value_t = DEFAULT_HOP_S)]
    chord_hop: f64,
    /// Skip pieces that fail instead of exiting.
    #[arg(long)]
    keep_going: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

impl InputArgs {
    fn pipeline(&self) -> Result<PipelineOptions> {
        let overrides = self
            .key_override
            .iter()
            .map(|s| s.parse::<KeyOverride>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PipelineOptions {
            key_profile: KeyProfile::resolve(&self.key_profile)?,
            chord_window_s: self.chord_window,
            chord_hop_s: self.chord_hop,
            keep_going: self.keep_going,
            ..Default::default()
        }
        .with_overrides(overrides))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::io(Path::new("<stdout>"), e)),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Degrees { input, out } => {
            let manifest = load_manifest(&input.manifest)?;
            let result = cmd_degrees(&manifest, &input.pipeline()?)?;
            emit(out.as_deref(), &result.to_jsonl())?;
            eprintln!(
                "{{\"dropped_fraction\":{},\"failed\":{},\"pieces\":{}}}",
                degreescope::report::json::round_sig12(result.dropped_fraction),
                result.failures.len(),
                result.records.len()
            );
        }
        Command::Analyze {
            input,
            stats,
            min_pieces,
            bootstrap_iters,
            zipf_exclude_diagonal,
            zipf_raw,
            alphas,
            out_dir,
        } => {
            let manifest = load_manifest(&input.manifest)?;
            let opts = AnalyzeOptions {
                pipeline: input.pipeline()?,
                alpha: stats.alpha,
                min_pieces,
                bootstrap: BootstrapConfig {
                    iterations: bootstrap_iters,
                    base_seed: stats.seed,
                    ..Default::default()
                },
                zipf_exclude_diagonal,
                zipf_raw,
                robustness_alphas: alphas,
            };
            for path in cmd_analyze(&manifest, &opts, &out_dir)? {
                println!("{}", path.display());
            }
        }
        Command::Pools {
            input,
            stats,
            pools,
            subsample_size,
            subsample_count,
            out,
        } => {
            let manifest = load_manifest(&input.manifest)?;
            let text = std::fs::read_to_string(&pools).map_err(|e| Error::io(&pools, e))?;
            let spec = parse_pool_spec(&text)?;
            let opts = PoolsOptions {
                pipeline: input.pipeline()?,
                alpha: stats.alpha,
                subsample_size,
                subsample_count,
                seed: stats.seed,
            };
            write_json(&out, &cmd_pools(&manifest, &spec, &opts)?)?;
            println!("{}", out.display());
        }
        Command::Plotdata { report, composer, out } => {
            let report = load_analysis_report(&report)?;
            let data = cmd_plotdata(&report, &composer)?;
            emit(out.as_deref(), &to_canonical_string(&data)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Some(n) = std::env::var("DEGREESCOPE_THREADS").ok().and_then(|v| v.parse().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("DEGREESCOPE_THREADS ignored: {e}");
        }
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("degreescope: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
