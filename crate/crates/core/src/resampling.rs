//! Seeded resampling: piece-level bootstrap intervals, smoothing robustness,
//! era-pool assignment and subsampling concordance, rank cross-checks.
//!
//! # Random numbers
//!
//! Every random stream is xoshiro256** whose 256-bit state is filled by
//! SplitMix64 from a 64-bit seed (`rand_xoshiro::Xoshiro256StarStar::
//! seed_from_u64`). Replicate or subsample `i` always uses seed
//! `base_seed + i` (wrapping), so results do not depend on scheduling.
//! Bounded integers in `[0, n)` come from Lemire's multiply-and-reject
//! method on one `next_u64` per attempt: with `m = x * n` as a 128-bit
//! product, `m` is rejected while `(m mod 2^64) < (2^64 - n) mod n`, and the
//! draw is `m >> 64`.

use std::collections::BTreeMap;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::counts::{aggregate, Basis, CountProfile, EraPool};
use crate::error::{Error, Result};
use crate::infotheory::{
    cosine_similarity, fractional_ranks, js_divergence, kl_divergence, smooth, spearman_rho,
    MeasureResult, SmoothedDistribution,
};

/// Name recorded in output provenance.
pub const GENERATOR_NAME: &str = "xoshiro256** (SplitMix64 seeding), seed = base + index";

pub fn seeded_rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Unbiased draw from `[0, n)`.
pub fn uniform_index<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    assert!(n > 0, "uniform_index on an empty range");
    let range = n as u64;
    let threshold = range.wrapping_neg() % range;
    loop {
        let m = u128::from(rng.next_u64()) * u128::from(range);
        if (m as u64) >= threshold {
            return (m >> 64) as usize;
        }
    }
}

/// First `k` entries of a seeded partial Fisher–Yates shuffle of `0..n`.
pub fn sample_without_replacement<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let k = k.min(n);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + uniform_index(rng, n - i);
        idx.swap(i, j);
    }
    idx.truncate(k);
    idx
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    #[serde(rename = "B")]
    pub iterations: usize,
    pub base_seed: u64,
    pub percentiles: (f64, f64),
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            iterations: 1000,
            base_seed: 42,
            percentiles: (2.5, 97.5),
        }
    }
}

impl BootstrapConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Parameter("bootstrap needs at least one iteration".to_string()));
        }
        let (lo, hi) = self.percentiles;
        if !(0.0 < lo && lo < hi && hi < 100.0) {
            return Err(Error::Parameter(format!("invalid percentiles ({lo}, {hi})")));
        }
        Ok(())
    }
}

/// Linear interpolation between the closest order statistics of an
/// ascending slice, `p` in percent.
pub fn percentile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p / 100.0;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Aggregated resamples of one composer's pieces; replicate `i` draws
/// `pieces.len()` indices with replacement from seed `base_seed + i`.
pub fn bootstrap_replicates(pieces: &[CountProfile], cfg: &BootstrapConfig) -> Result<Vec<CountProfile>> {
    cfg.validate()?;
    if pieces.is_empty() {
        return Err(Error::Input("bootstrap over an empty piece list".to_string()));
    }
    Ok((0..cfg.iterations)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(cfg.base_seed.wrapping_add(i as u64));
            let mut acc = CountProfile::default();
            for _ in 0..pieces.len() {
                acc.add(&pieces[uniform_index(&mut rng, pieces.len())]);
            }
            acc
        })
        .collect())
}

/// Percentile interval over replicate values. Non-finite values are left
/// out; `None` when nothing finite remains.
pub fn percentile_interval(mut values: Vec<f64>, cfg: &BootstrapConfig) -> Option<(f64, f64)> {
    values.retain(|v| v.is_finite());
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    Some((
        percentile(&values, cfg.percentiles.0),
        percentile(&values, cfg.percentiles.1),
    ))
}

/// Point estimate plus the percentile interval of precomputed replicate
/// values.
pub fn summarize_replicates(value: f64, replicates: Vec<f64>, cfg: &BootstrapConfig) -> MeasureResult {
    let interval = percentile_interval(replicates, cfg);
    MeasureResult {
        value,
        ci_low: interval.map(|i| i.0),
        ci_high: interval.map(|i| i.1),
        alpha: None,
        seed: Some(cfg.base_seed),
        iterations: Some(cfg.iterations),
    }
}

/// Point estimate on all pieces plus the bootstrap percentile interval.
///
/// `statistic` sees aggregated counts and does its own smoothing.
pub fn bootstrap_ci<F>(pieces: &[CountProfile], cfg: &BootstrapConfig, statistic: F) -> Result<MeasureResult>
where
    F: Fn(&CountProfile) -> f64 + Sync,
{
    let replicates = bootstrap_replicates(pieces, cfg)?;
    let point = statistic(&aggregate(pieces));
    let values: Vec<f64> = replicates.par_iter().map(&statistic).collect();
    Ok(summarize_replicates(point, values, cfg))
}

/// Bootstrap for a statistic of two composers. Replicate `i` pairs the
/// `i`-th resample of each side.
pub fn bootstrap_ci_pair<F>(
    a: &[CountProfile],
    b: &[CountProfile],
    cfg: &BootstrapConfig,
    statistic: F,
) -> Result<MeasureResult>
where
    F: Fn(&CountProfile, &CountProfile) -> f64 + Sync,
{
    let ra = bootstrap_replicates(a, cfg)?;
    let rb = bootstrap_replicates(b, cfg)?;
    let point = statistic(&aggregate(a), &aggregate(b));
    let values: Vec<f64> = ra.par_iter().zip(&rb).map(|(x, y)| statistic(x, y)).collect();
    Ok(summarize_replicates(point, values, cfg))
}

/// Rank agreement of two orderings: Spearman rho, except that identical
/// rankings (ties included) count as full agreement.
pub fn ordering_agreement(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() == y.len() && fractional_ranks(x) == fractional_ranks(y) {
        return Ok(Some(1.0));
    }
    spearman_rho(x, y)
}

fn smoothed_all(
    corpus: &BTreeMap<String, CountProfile>,
    basis: Basis,
    alpha: f64,
) -> Result<Vec<SmoothedDistribution>> {
    corpus.values().map(|p| smooth(&p.cells(basis), alpha)).collect()
}

/// `KL(row || column)` over a named corpus, names in map order.
pub fn kl_matrix(dists: &[SmoothedDistribution]) -> Result<Vec<Vec<f64>>> {
    dists
        .iter()
        .map(|p| dists.iter().map(|q| kl_divergence(p, q)).collect())
        .collect()
}

pub fn js_matrix(dists: &[SmoothedDistribution]) -> Result<Vec<Vec<f64>>> {
    dists
        .iter()
        .map(|p| dists.iter().map(|q| js_divergence(p, q)).collect())
        .collect()
}

fn off_diagonal_row(matrix: &[Vec<f64>], row: usize) -> Vec<f64> {
    matrix[row]
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != row)
        .map(|(_, v)| *v)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessRow {
    /// `rho[i][j]`: agreement of this row's KL ordering at `alphas[i]` and
    /// `alphas[j]`.
    pub rho: Vec<Vec<Option<f64>>>,
    /// Smallest defined off-diagonal entry of `rho`.
    pub min_rho: Option<f64>,
}

/// Per composer row of the marginal KL matrix, agreement of the ordering of
/// all other composers across smoothing strengths.
pub fn smoothing_robustness(
    corpus: &BTreeMap<String, CountProfile>,
    alphas: &[f64],
) -> Result<BTreeMap<String, RobustnessRow>> {
    if corpus.len() < 2 {
        return Err(Error::Parameter("robustness sweep needs at least 2 composers".to_string()));
    }
    if alphas.len() < 2 {
        return Err(Error::Parameter("robustness sweep needs at least 2 alphas".to_string()));
    }
    let matrices = alphas
        .iter()
        .map(|&a| kl_matrix(&smoothed_all(corpus, Basis::Marginal, a)?))
        .collect::<Result<Vec<_>>>()?;

    let mut out = BTreeMap::new();
    for (row, name) in corpus.keys().enumerate() {
        let orderings: Vec<Vec<f64>> = matrices.iter().map(|m| off_diagonal_row(m, row)).collect();
        let mut rho = vec![vec![None; alphas.len()]; alphas.len()];
        let mut min_rho: Option<f64> = None;
        for i in 0..alphas.len() {
            for j in 0..alphas.len() {
                let r = ordering_agreement(&orderings[i], &orderings[j])?;
                rho[i][j] = r;
                if i < j {
                    if let Some(r) = r {
                        min_rho = Some(min_rho.map_or(r, |m: f64| m.min(r)));
                    }
                }
            }
        }
        out.insert(name.clone(), RobustnessRow { rho, min_rho });
    }
    Ok(out)
}

/// Per composer row, agreement between the symmetrized-KL ordering and the
/// JS ordering of all other composers.
pub fn kl_js_crosscheck(
    corpus: &BTreeMap<String, CountProfile>,
    alpha: f64,
) -> Result<BTreeMap<String, Option<f64>>> {
    if corpus.len() < 3 {
        return Err(Error::Parameter("KL/JS cross-check needs at least 3 composers".to_string()));
    }
    let dists = smoothed_all(corpus, Basis::Marginal, alpha)?;
    let kl = kl_matrix(&dists)?;
    let js = js_matrix(&dists)?;
    let n = dists.len();
    let sym: Vec<Vec<f64>> = (0..n)
        .map(|a| (0..n).map(|b| 0.5 * (kl[a][b] + kl[b][a])).collect())
        .collect();
    corpus
        .keys()
        .enumerate()
        .map(|(row, name)| {
            let rho = ordering_agreement(&off_diagonal_row(&sym, row), &off_diagonal_row(&js, row))?;
            Ok((name.clone(), rho))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EraAssignment {
    pub era: String,
    pub kl_bits: BTreeMap<String, f64>,
}

/// Closest era pool by `KL(artist || pool)`; ties go to the era name that
/// sorts first.
pub fn era_assignment(
    artist: &CountProfile,
    pools: &[EraPool],
    alpha: f64,
    basis: Basis,
) -> Result<EraAssignment> {
    let profiles: Vec<(&str, &CountProfile)> = pools.iter().map(|p| (p.era.as_str(), &p.profile)).collect();
    assign_profiles(artist, &profiles, alpha, basis)
}

fn assign_profiles(
    artist: &CountProfile,
    pools: &[(&str, &CountProfile)],
    alpha: f64,
    basis: Basis,
) -> Result<EraAssignment> {
    if pools.is_empty() {
        return Err(Error::Config("era assignment needs at least one pool".to_string()));
    }
    let p = smooth(&artist.cells(basis), alpha)?;
    let mut kl_bits = BTreeMap::new();
    for (era, profile) in pools {
        let q = smooth(&profile.cells(basis), alpha)?;
        kl_bits.insert(era.to_string(), kl_divergence(&p, &q)?);
    }
    let era = kl_bits
        .iter()
        .fold(None::<(&String, f64)>, |best, (era, &v)| match best {
            Some((_, b)) if b <= v => best,
            _ => Some((era, v)),
        })
        .map(|(e, _)| e.clone())
        .expect("non-empty");
    Ok(EraAssignment { era, kl_bits })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcordanceReport {
    pub artist: String,
    /// Closest era on the full pools, marginal basis.
    pub full_sample_argmin_era: String,
    /// Closest era on the full pools, transition basis.
    pub full_sample_argmin_era_transitions: String,
    pub concordance_marginal: f64,
    pub concordance_transitions: f64,
    pub n_subsamples: usize,
    pub target_size: usize,
}

/// Re-run the era assignment with every pool larger than `target_size`
/// cut down to `target_size` pieces.
///
/// Subsample `s` seeds one generator with `base_seed + s`; oversized pools
/// draw their pieces without replacement from it in the order given.
/// Concordance on each basis is the fraction of subsamples whose closest
/// era matches the full-pool answer on that basis.
pub fn subsample_concordance(
    artist_name: &str,
    artist: &CountProfile,
    pools: &[EraPool],
    target_size: usize,
    n_subsamples: usize,
    base_seed: u64,
    alpha: f64,
) -> Result<ConcordanceReport> {
    if target_size == 0 {
        return Err(Error::Config("subsample size must be at least 1".to_string()));
    }
    if n_subsamples == 0 {
        return Err(Error::Config("subsample count must be at least 1".to_string()));
    }
    if pools.is_empty() {
        return Err(Error::Config("no era pools".to_string()));
    }
    if pools.iter().all(|p| p.pieces.len() < target_size) {
        return Err(Error::Config(format!(
            "subsample size {target_size} exceeds every pool"
        )));
    }
    for pool in pools {
        let n = pool.pieces.len() as u64;
        if n != pool.profile.n_pieces {
            return Err(Error::Config(format!(
                "pool {:?} carries {} piece profiles for {} pieces",
                pool.era, n, pool.profile.n_pieces
            )));
        }
    }

    let full_m = era_assignment(artist, pools, alpha, Basis::Marginal)?.era;
    let full_t = era_assignment(artist, pools, alpha, Basis::Transitions)?.era;

    let hits = (0..n_subsamples)
        .into_par_iter()
        .map(|s| -> Result<(bool, bool)> {
            let mut rng = seeded_rng(base_seed.wrapping_add(s as u64));
            let reduced: Vec<CountProfile> = pools
                .iter()
                .map(|pool| {
                    if pool.pieces.len() > target_size {
                        let pick = sample_without_replacement(&mut rng, pool.pieces.len(), target_size);
                        aggregate(pick.iter().map(|&i| &pool.pieces[i]))
                    } else {
                        pool.profile.clone()
                    }
                })
                .collect();
            let named: Vec<(&str, &CountProfile)> =
                pools.iter().map(|p| p.era.as_str()).zip(reduced.iter()).collect();
            let m = assign_profiles(artist, &named, alpha, Basis::Marginal)?.era;
            let t = assign_profiles(artist, &named, alpha, Basis::Transitions)?.era;
            Ok((m == full_m, t == full_t))
        })
        .collect::<Result<Vec<_>>>()?;

    let n = n_subsamples as f64;
    Ok(ConcordanceReport {
        artist: artist_name.to_string(),
        full_sample_argmin_era: full_m,
        full_sample_argmin_era_transitions: full_t,
        concordance_marginal: hits.iter().filter(|h| h.0).count() as f64 / n,
        concordance_transitions: hits.iter().filter(|h| h.1).count() as f64 / n,
        n_subsamples,
        target_size,
    })
}

/// Two-sided p-value of a correlation `rho` over `n` pairs via
/// `t = rho * sqrt((n - 2) / (1 - rho^2))` on `n - 2` degrees of freedom.
pub fn correlation_p_value(rho: f64, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Input("p-value needs at least 3 pairs".to_string()));
    }
    if rho.abs() >= 1.0 {
        return Ok(0.0);
    }
    let df = (n - 2) as f64;
    let t = rho * (df / (1.0 - rho * rho)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| Error::Invariant(e.to_string()))?;
    Ok((2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CosineCrosscheck {
    pub rho: f64,
    pub p_value: f64,
    pub n_targets: usize,
}

/// Agreement between ranking targets by ascending KL and by descending
/// cosine similarity of their feature vectors to the artist's.
pub fn kl_cosine_crosscheck(
    kl_ranking: &BTreeMap<String, f64>,
    feature_vectors: &BTreeMap<String, Vec<f64>>,
    artist_vector: &[f64],
) -> Result<CosineCrosscheck> {
    if kl_ranking.len() < 3 {
        return Err(Error::Input(format!(
            "need at least 3 targets, got {}",
            kl_ranking.len()
        )));
    }
    let mut kl = Vec::with_capacity(kl_ranking.len());
    let mut neg_cos = Vec::with_capacity(kl_ranking.len());
    for (target, &bits) in kl_ranking {
        let v = feature_vectors
            .get(target)
            .ok_or_else(|| Error::Input(format!("no feature vector for {target:?}")))?;
        if v.len() != artist_vector.len() {
            return Err(Error::Input(format!(
                "feature vector for {target:?} has length {}, artist has {}",
                v.len(),
                artist_vector.len()
            )));
        }
        let c = cosine_similarity(artist_vector, v)?
            .ok_or_else(|| Error::Input(format!("zero feature vector ({target:?} or artist)")))?;
        kl.push(bits);
        neg_cos.push(-c);
    }
    if feature_vectors.len() != kl_ranking.len() {
        return Err(Error::Input("feature vectors and KL ranking cover different targets".to_string()));
    }
    let rho = spearman_rho(&kl, &neg_cos)?
        .ok_or_else(|| Error::Input("a ranking has no variance".to_string()))?;
    Ok(CosineCrosscheck {
        rho,
        p_value: correlation_p_value(rho, kl.len())?,
        n_targets: kl.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::count_degrees;
    use crate::harmony::ScaleDegree::*;
    use crate::infotheory::shannon_entropy;

    #[test]
    fn lemire_draw_stays_in_range() {
        let mut rng = seeded_rng(7);
        for n in [1usize, 2, 3, 7, 1000] {
            for _ in 0..200 {
                assert!(uniform_index(&mut rng, n) < n);
            }
        }
    }

    #[test]
    fn without_replacement_is_a_subset() {
        let mut rng = seeded_rng(1);
        let mut pick = sample_without_replacement(&mut rng, 10, 4);
        pick.sort();
        pick.dedup();
        assert_eq!(pick.len(), 4);
        assert!(pick.iter().all(|&i| i < 10));
    }

    #[test]
    fn percentile_interpolates() {
        let vals = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&vals, 0.0), 1.0);
        assert_eq!(percentile(&vals, 100.0), 4.0);
        assert_eq!(percentile(&vals, 50.0), 2.5);
        assert!((percentile(&vals, 2.5) - 1.075).abs() < 1e-15);
    }

    fn entropy_stat(p: &CountProfile) -> f64 {
        shannon_entropy(&smooth(&p.cells(Basis::Marginal), 0.5).unwrap())
    }

    #[test]
    fn identical_pieces_zero_width() {
        let pieces = vec![count_degrees(&[I, V, I, IV]); 6];
        let r = bootstrap_ci(&pieces, &BootstrapConfig::default(), entropy_stat).unwrap();
        assert_eq!(r.ci_low, Some(r.value));
        assert_eq!(r.ci_high, Some(r.value));
        assert_eq!(r.seed, Some(42));
        assert_eq!(r.iterations, Some(1000));
    }

    #[test]
    fn bootstrap_is_repeatable() {
        let pieces = vec![count_degrees(&[I, V]), count_degrees(&[I, IV, V, I]), count_degrees(&[VI, II, V])];
        let cfg = BootstrapConfig { iterations: 50, ..Default::default() };
        let a = bootstrap_ci(&pieces, &cfg, entropy_stat).unwrap();
        let b = bootstrap_ci(&pieces, &cfg, entropy_stat).unwrap();
        assert_eq!(a, b);
        assert!(a.ci_low.unwrap() <= a.ci_high.unwrap());
        assert!(bootstrap_ci(&[], &cfg, entropy_stat).is_err());
        let bad = BootstrapConfig { iterations: 0, ..Default::default() };
        assert!(bootstrap_ci(&pieces, &bad, entropy_stat).is_err());
    }

    fn corpus(named: &[(&str, &[crate::harmony::ScaleDegree])]) -> BTreeMap<String, CountProfile> {
        named.iter().map(|(n, d)| (n.to_string(), count_degrees(d))).collect()
    }

    #[test]
    fn robustness_forced_orderings() {
        let c = corpus(&[("A", &[I, V, I, V, IV]), ("B", &[I, V, I, V, IV]), ("C", &[VI, II, FlatVII])]);
        let rows = smoothing_robustness(&c, &[0.1, 0.5, 1.0]).unwrap();
        for row in rows.values() {
            assert_eq!(row.min_rho, Some(1.0));
        }
        let same = smoothing_robustness(&c, &[0.5, 0.5]).unwrap();
        assert!(same.values().all(|r| r.min_rho == Some(1.0)));
        assert!(smoothing_robustness(&c, &[0.5]).is_err());
    }

    #[test]
    fn crosscheck_with_twins() {
        let c = corpus(&[("A", &[I, V, I, V, IV]), ("B", &[I, V, I, V, IV]), ("C", &[VI, II, FlatVII])]);
        let rows = kl_js_crosscheck(&c, 0.5).unwrap();
        assert!(rows.values().all(|r| *r == Some(1.0)));
    }

    fn pool(era: &str, pieces: Vec<CountProfile>) -> EraPool {
        EraPool {
            era: era.to_string(),
            members: vec![era.to_string()],
            profile: aggregate(&pieces),
            pieces,
        }
    }

    #[test]
    fn era_assignment_prefers_self() {
        let artist = count_degrees(&[I, V, I, IV, V]);
        let pools = vec![pool("Y", vec![count_degrees(&[VI, II, FlatVII])]), pool("X", vec![artist.clone()])];
        let a = era_assignment(&artist, &pools, 0.5, Basis::Marginal).unwrap();
        assert_eq!(a.era, "X");
        assert_eq!(a.kl_bits["X"], 0.0);
        let single = era_assignment(&artist, &pools[..1], 0.5, Basis::Transitions).unwrap();
        assert_eq!(single.era, "Y");
    }

    #[test]
    fn era_tie_goes_to_first_name() {
        let artist = count_degrees(&[I, V]);
        let other = vec![count_degrees(&[VI, II])];
        let pools = vec![pool("Zeta", other.clone()), pool("Alpha", other)];
        assert_eq!(era_assignment(&artist, &pools, 0.5, Basis::Marginal).unwrap().era, "Alpha");
    }

    #[test]
    fn concordance_without_subsampling() {
        let artist = count_degrees(&[I, V, I, IV]);
        let pools = vec![
            pool("A", vec![count_degrees(&[I, V, I]); 3]),
            pool("B", vec![count_degrees(&[VI, II]); 2]),
        ];
        let r = subsample_concordance("x", &artist, &pools, 3, 5, 42, 0.5).unwrap();
        assert_eq!((r.concordance_marginal, r.concordance_transitions), (1.0, 1.0));
        assert!(subsample_concordance("x", &artist, &pools, 4, 5, 42, 0.5).is_err());
        let one = subsample_concordance("x", &artist, &pools, 2, 1, 42, 0.5).unwrap();
        assert!([0.0, 1.0].contains(&one.concordance_marginal));
    }

    #[test]
    fn p_value_matches_reported_pair() {
        let p = correlation_p_value(0.601, 23).unwrap();
        assert!((0.0015..=0.0035).contains(&p), "{p}");
        assert_eq!(correlation_p_value(1.0, 10).unwrap(), 0.0);
        assert!(correlation_p_value(0.5, 2).is_err());
    }

    #[test]
    fn cosine_crosscheck_extremes() {
        let artist = vec![1.0, 0.0];
        let feats: BTreeMap<String, Vec<f64>> = [
            ("a".to_string(), vec![1.0, 0.1]),
            ("b".to_string(), vec![1.0, 1.0]),
            ("c".to_string(), vec![0.1, 1.0]),
        ]
        .into();
        let agree: BTreeMap<String, f64> = [("a".into(), 0.1), ("b".into(), 0.2), ("c".into(), 0.3)].into();
        assert_eq!(kl_cosine_crosscheck(&agree, &feats, &artist).unwrap().rho, 1.0);
        let reverse: BTreeMap<String, f64> = [("a".into(), 0.3), ("b".into(), 0.2), ("c".into(), 0.1)].into();
        assert_eq!(kl_cosine_crosscheck(&reverse, &feats, &artist).unwrap().rho, -1.0);
        let two: BTreeMap<String, f64> = [("a".into(), 0.3), ("b".into(), 0.2)].into();
        assert!(kl_cosine_crosscheck(&two, &feats, &artist).is_err());
    }
}
