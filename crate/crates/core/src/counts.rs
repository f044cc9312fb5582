//! Marginal and transition counts, corpus thresholds, and era pools.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmony::{DegreeSequence, ScaleDegree, N_DEGREES};

pub const DEFAULT_MIN_PIECES: usize = 10;

/// Degree counts for one piece or a sum of pieces.
///
/// `transitions[a][b]` counts `a` immediately followed by `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountProfile {
    pub marginal: [u64; N_DEGREES],
    pub transitions: [[u64; N_DEGREES]; N_DEGREES],
    pub n_pieces: u64,
    pub total_events: u64,
}

impl Default for CountProfile {
    fn default() -> Self {
        CountProfile {
            marginal: [0; N_DEGREES],
            transitions: [[0; N_DEGREES]; N_DEGREES],
            n_pieces: 0,
            total_events: 0,
        }
    }
}

/// Which count object a measure reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// The 15-cell degree marginal.
    Marginal,
    /// The 15x15 transition matrix, flattened row-major.
    Transitions,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Marginal => "marginal",
            Basis::Transitions => "transitions",
        }
    }
}

impl CountProfile {
    /// Count cells for `basis`.
    pub fn cells(&self, basis: Basis) -> Vec<u64> {
        match basis {
            Basis::Marginal => self.marginal.to_vec(),
            Basis::Transitions => self.transitions_flat(),
        }
    }

    /// Off-diagonal transition cells, row-major (210 cells).
    pub fn transitions_off_diagonal(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(N_DEGREES * (N_DEGREES - 1));
        for (a, row) in self.transitions.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if a != b {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Transition counts flattened row-major (225 cells).
    pub fn transitions_flat(&self) -> Vec<u64> {
        self.transitions.iter().flatten().copied().collect()
    }

    pub fn transition_total(&self) -> u64 {
        self.transitions.iter().flatten().sum()
    }

    pub fn add(&mut self, other: &CountProfile) {
        for (a, b) in self.marginal.iter_mut().zip(&other.marginal) {
            *a += b;
        }
        for (ra, rb) in self.transitions.iter_mut().zip(&other.transitions) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += b;
            }
        }
        self.n_pieces += other.n_pieces;
        self.total_events += other.total_events;
    }

    /// Structural checks: marginal sums to `total_events`, empty diagonal,
    /// and one transition fewer than events for a single piece (at most
    /// that many for an aggregate).
    pub fn validate(&self) -> Result<()> {
        let sum: u64 = self.marginal.iter().sum();
        if sum != self.total_events {
            return Err(Error::Invariant(format!(
                "marginal sums to {sum}, total_events is {}",
                self.total_events
            )));
        }
        if let Some(d) = (0..N_DEGREES).find(|&d| self.transitions[d][d] != 0) {
            return Err(Error::Invariant(format!(
                "self-transition count on {}",
                ScaleDegree::ALL[d]
            )));
        }
        let transitions = self.transition_total();
        let expected_single = self.total_events.saturating_sub(1);
        if (self.n_pieces == 1 && transitions != expected_single) || transitions > expected_single {
            return Err(Error::Invariant(format!(
                "{transitions} transitions for {} events in {} pieces",
                self.total_events, self.n_pieces
            )));
        }
        Ok(())
    }
}

/// Counts for one piece's degree sequence.
pub fn count_piece(seq: &DegreeSequence) -> CountProfile {
    count_degrees(&seq.degrees)
}

/// Counts for a raw degree list. Runs of one degree count once, as in a
/// [`DegreeSequence`].
pub fn count_degrees(degrees: &[ScaleDegree]) -> CountProfile {
    let mut degrees = degrees.to_vec();
    degrees.dedup();
    let mut p = CountProfile {
        n_pieces: 1,
        total_events: degrees.len() as u64,
        ..CountProfile::default()
    };
    for d in &degrees {
        p.marginal[d.index()] += 1;
    }
    for pair in degrees.windows(2) {
        p.transitions[pair[0].index()][pair[1].index()] += 1;
    }
    p
}

/// Field-wise sum.
pub fn aggregate<'a, I>(profiles: I) -> CountProfile
where
    I: IntoIterator<Item = &'a CountProfile>,
{
    profiles.into_iter().fold(CountProfile::default(), |mut acc, p| {
        acc.add(p);
        acc
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedComposer {
    pub composer: String,
    pub n_pieces: u64,
}

/// Composers retained by the piece-count threshold, and those left out.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub included: BTreeMap<String, CountProfile>,
    pub excluded: Vec<ExcludedComposer>,
}

/// Aggregate each composer and keep those with at least `min_pieces`.
pub fn select_high_sample(
    corpus: &BTreeMap<String, Vec<CountProfile>>,
    min_pieces: usize,
) -> Result<Selection> {
    if min_pieces == 0 {
        return Err(Error::Parameter("min_pieces must be at least 1".to_string()));
    }
    let mut selection = Selection::default();
    for (composer, pieces) in corpus {
        let total = aggregate(pieces);
        if total.n_pieces >= min_pieces as u64 {
            selection.included.insert(composer.clone(), total);
        } else {
            selection.excluded.push(ExcludedComposer {
                composer: composer.clone(),
                n_pieces: total.n_pieces,
            });
        }
    }
    Ok(selection)
}

/// Era name to member composers.
pub type PoolSpec = BTreeMap<String, Vec<String>>;

pub fn parse_pool_spec(text: &str) -> Result<PoolSpec> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("pool spec: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EraPool {
    pub era: String,
    pub members: Vec<String>,
    pub profile: CountProfile,
    /// Per-piece counts of all members, in member order. Needed for
    /// subsampling; empty when the pool was built from aggregates.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pieces: Vec<CountProfile>,
}

/// One pool per era, summing raw counts of its members.
pub fn build_era_pools(
    corpus: &BTreeMap<String, CountProfile>,
    spec: &PoolSpec,
) -> Result<Vec<EraPool>> {
    spec.iter()
        .map(|(era, members)| {
            let profiles = members
                .iter()
                .map(|m| {
                    corpus.get(m).ok_or_else(|| {
                        Error::Config(format!("era pool {era:?}: unknown composer {m:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(EraPool {
                era: era.clone(),
                members: members.clone(),
                profile: aggregate(profiles),
                pieces: Vec::new(),
            })
        })
        .collect()
}

/// Like [`build_era_pools`], keeping each member's per-piece profiles.
pub fn build_era_pools_with_pieces(
    corpus: &BTreeMap<String, Vec<CountProfile>>,
    spec: &PoolSpec,
) -> Result<Vec<EraPool>> {
    spec.iter()
        .map(|(era, members)| {
            let mut pieces = Vec::new();
            for m in members {
                let ps = corpus.get(m).ok_or_else(|| {
                    Error::Config(format!("era pool {era:?}: unknown composer {m:?}"))
                })?;
                pieces.extend(ps.iter().cloned());
            }
            Ok(EraPool {
                era: era.clone(),
                members: members.clone(),
                profile: aggregate(&pieces),
                pieces,
            })
        })
        .collect()
}
