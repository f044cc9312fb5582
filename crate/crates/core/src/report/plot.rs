use serde::{Deserialize, Serialize};

use super::analyze::{AnalysisReport, LabeledProb};
use crate::error::{Error, Result};
use crate::infotheory::{rank_order, ZipfFit};

/// Points kept in the `top` subset of each series.
pub const TOP_N: usize = 30;

/// A rank-frequency series, most probable first, with its log-log form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankSeries {
    pub cell: Vec<String>,
    pub rank: Vec<usize>,
    pub probability: Vec<f64>,
    pub ln_rank: Vec<f64>,
    pub ln_probability: Vec<f64>,
    /// Number of leading points that make up the top subset.
    pub top: usize,
    pub fit: Option<ZipfFit>,
}

impl RankSeries {
    fn new(input: &[LabeledProb], fit: Option<ZipfFit>) -> Self {
        let probs: Vec<f64> = input.iter().map(|l| l.p).collect();
        let order = rank_order(&probs);
        let probability: Vec<f64> = order.iter().map(|&i| probs[i]).collect();
        let n = probability.len();
        RankSeries {
            cell: order.iter().map(|&i| input[i].cell.clone()).collect(),
            rank: (1..=n).collect(),
            ln_rank: (1..=n).map(|r| (r as f64).ln()).collect(),
            ln_probability: probability.iter().map(|p| p.ln()).collect(),
            probability,
            top: n.min(TOP_N),
            fit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComposerSeries {
    pub name: String,
    pub marginal: RankSeries,
    pub transitions: RankSeries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotData {
    pub schema_version: String,
    pub composers: Vec<ComposerSeries>,
}

/// Plot series for `composers` (all when empty) from a loaded report.
pub fn cmd_plotdata(report: &AnalysisReport, composers: &[String]) -> Result<PlotData> {
    let chosen: Vec<&str> = if composers.is_empty() {
        report.names.iter().map(String::as_str).collect()
    } else {
        composers.iter().map(String::as_str).collect()
    };
    let series = chosen
        .into_iter()
        .map(|name| {
            let c = report
                .composer(name)
                .ok_or_else(|| Error::Input(format!("composer {name:?} is not in the report")))?;
            Ok(ComposerSeries {
                name: c.name.clone(),
                marginal: RankSeries::new(&c.zipf_inputs.marginal, c.zipf_marginal),
                transitions: RankSeries::new(&c.zipf_inputs.transitions, c.zipf_transitions),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlotData {
        schema_version: report.schema_version.clone(),
        composers: series,
    })
}
