//! Additive smoothing and the scalar measures computed on smoothed
//! distributions: entropy, KL, Jensen–Shannon, Zipf fits. Also the rank and
//! cosine helpers used by cross-checks.
//!
//! Entropy, KL and JS only accept a [`SmoothedDistribution`], which can only
//! be built by [`smooth`]. Every cell is therefore strictly positive and the
//! logarithms are always finite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Jeffreys prior.
pub const DEFAULT_ALPHA: f64 = 0.5;

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Probabilities `(count + alpha) / (total + alpha * K)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothedDistribution {
    probs: Vec<f64>,
    alpha: f64,
}

impl SmoothedDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }
}

pub fn smooth(counts: &[u64], alpha: f64) -> Result<SmoothedDistribution> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Parameter(format!("smoothing alpha must be positive, got {alpha}")));
    }
    if counts.len() < 2 {
        return Err(Error::Parameter(format!(
            "support must have at least 2 cells, got {}",
            counts.len()
        )));
    }
    let total: u64 = counts.iter().sum();
    let denom = total as f64 + alpha * counts.len() as f64;
    let probs = counts.iter().map(|&c| (c as f64 + alpha) / denom).collect();
    Ok(SmoothedDistribution { probs, alpha })
}

/// Shannon entropy in bits.
pub fn shannon_entropy(p: &SmoothedDistribution) -> f64 {
    let h = -compensated_sum(p.probs.iter().map(|&x| x * x.log2()));
    h.max(0.0)
}

fn check_support(p: &SmoothedDistribution, q: &SmoothedDistribution) -> Result<()> {
    if p.support_size() != q.support_size() {
        return Err(Error::Input(format!(
            "support size mismatch: {} vs {}",
            p.support_size(),
            q.support_size()
        )));
    }
    Ok(())
}

fn kl_raw(p: &[f64], q: &[f64]) -> f64 {
    compensated_sum(p.iter().zip(q).map(|(&a, &b)| a * (a / b).log2())).max(0.0)
}

/// `D(p || q)` in bits.
pub fn kl_divergence(p: &SmoothedDistribution, q: &SmoothedDistribution) -> Result<f64> {
    check_support(p, q)?;
    Ok(kl_raw(&p.probs, &q.probs))
}

/// Jensen–Shannon divergence in bits, in `[0, 1]`.
pub fn js_divergence(p: &SmoothedDistribution, q: &SmoothedDistribution) -> Result<f64> {
    check_support(p, q)?;
    let m: Vec<f64> = p.probs.iter().zip(&q.probs).map(|(a, b)| 0.5 * (a + b)).collect();
    let js = 0.5 * kl_raw(&p.probs, &m) + 0.5 * kl_raw(&q.probs, &m);
    Ok(js.clamp(0.0, 1.0))
}

/// Least-squares power law fitted in log-log space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZipfFit {
    /// Negated log-log slope.
    pub slope_alpha: f64,
    /// Natural-log intercept.
    #[serde(rename = "intercept_logC")]
    pub intercept_log_c: f64,
    /// `None` when every probability is equal.
    pub r_squared: Option<f64>,
    pub n_points: usize,
}

/// Zipf fit over all cells of a smoothed distribution.
pub fn zipf_fit(p: &SmoothedDistribution) -> Result<ZipfFit> {
    fit_rank_frequency(&p.probs)
}

/// Zipf fit on unsmoothed relative frequencies, zero cells left out.
pub fn zipf_fit_raw(counts: &[u64]) -> Result<ZipfFit> {
    let total: u64 = counts.iter().sum();
    let probs: Vec<f64> = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| c as f64 / total as f64)
        .collect();
    fit_rank_frequency(&probs)
}

/// Order `probs` most to least probable (equal values keep cell order)
/// and regress `ln p` on `ln rank` over ranks `1..=K`.
pub fn fit_rank_frequency(probs: &[f64]) -> Result<ZipfFit> {
    if probs.len() < 3 {
        return Err(Error::Parameter(format!(
            "Zipf fit needs at least 3 points, got {}",
            probs.len()
        )));
    }
    if probs.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
        return Err(Error::Input("Zipf fit needs positive finite probabilities".to_string()));
    }
    let ys: Vec<f64> = rank_order(probs).into_iter().map(|i| probs[i].ln()).collect();
    let n = ys.len();
    let xs: Vec<f64> = (1..=n).map(|r| (r as f64).ln()).collect();
    let mean_x = compensated_sum(xs.iter().copied()) / n as f64;
    let mean_y = compensated_sum(ys.iter().copied()) / n as f64;

    if ys.iter().all(|&y| y == ys[0]) {
        return Ok(ZipfFit {
            slope_alpha: 0.0,
            intercept_log_c: ys[0],
            r_squared: None,
            n_points: n,
        });
    }

    let sxy = compensated_sum(xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)));
    let sxx = compensated_sum(xs.iter().map(|x| (x - mean_x) * (x - mean_x)));
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot = compensated_sum(ys.iter().map(|y| (y - mean_y) * (y - mean_y)));
    let ss_res = compensated_sum(xs.iter().zip(&ys).map(|(x, y)| {
        let r = y - (intercept + slope * x);
        r * r
    }));
    Ok(ZipfFit {
        slope_alpha: -slope,
        intercept_log_c: intercept,
        r_squared: Some((1.0 - ss_res / ss_tot).clamp(0.0, 1.0)),
        n_points: n,
    })
}

/// Cell indices sorted by descending probability, ties by index.
pub fn rank_order(probs: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..probs.len()).collect();
    idx.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]));
    idx
}

/// 1-based ranks with ties sharing their mean rank.
pub fn fractional_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && values[idx[end]] == values[idx[start]] {
            end += 1;
        }
        // ranks start+1 ..= end, mean of the run
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = compensated_sum(x.iter().copied()) / n;
    let my = compensated_sum(y.iter().copied()) / n;
    let sxy = compensated_sum(x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)));
    let sxx = compensated_sum(x.iter().map(|a| (a - mx) * (a - mx)));
    let syy = compensated_sum(y.iter().map(|b| (b - my) * (b - my)));
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman rank correlation with average ranks for ties. `None` when
/// either input has no rank variance.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() != y.len() {
        return Err(Error::Input(format!("length mismatch: {} vs {}", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::Input("Spearman rho needs at least 2 observations".to_string()));
    }
    Ok(pearson(&fractional_ranks(x), &fractional_ranks(y)))
}

/// `None` when either vector is all zeros.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<Option<f64>> {
    if u.len() != v.len() {
        return Err(Error::Input(format!("length mismatch: {} vs {}", u.len(), v.len())));
    }
    let dot = compensated_sum(u.iter().zip(v).map(|(a, b)| a * b));
    let nu = compensated_sum(u.iter().map(|a| a * a));
    let nv = compensated_sum(v.iter().map(|b| b * b));
    if nu == 0.0 || nv == 0.0 {
        return Ok(None);
    }
    Ok(Some((dot / (nu * nv).sqrt()).clamp(-1.0, 1.0)))
}

/// A measured value with optional bootstrap interval and provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureResult {
    pub value: f64,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub alpha: Option<f64>,
    pub seed: Option<u64>,
    #[serde(rename = "B")]
    pub iterations: Option<usize>,
}

impl MeasureResult {
    pub fn point(value: f64) -> Self {
        MeasureResult {
            value,
            ci_low: None,
            ci_high: None,
            alpha: None,
            seed: None,
            iterations: None,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothing_examples() {
        let u = smooth(&[0; 15], 0.5).unwrap();
        assert!(u.probs().iter().all(|&p| (p - 1.0 / 15.0).abs() < 1e-16));
        assert_eq!(smooth(&[1, 0], 0.5).unwrap().probs(), &[0.75, 0.25]);
        assert!(matches!(smooth(&[1, 2], 0.0), Err(Error::Parameter(_))));
        assert!(matches!(smooth(&[1, 2], -1.0), Err(Error::Parameter(_))));
        assert!(smooth(&[1], 0.5).is_err());
    }

    #[test]
    fn entropy_of_uniforms() {
        assert!((shannon_entropy(&smooth(&[0; 15], 0.5).unwrap()) - 15f64.log2()).abs() < 1e-12);
        assert!((shannon_entropy(&smooth(&[3, 3], 0.5).unwrap()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kl_basics() {
        let p = smooth(&[1, 0], 0.5).unwrap();
        let q = smooth(&[0, 0], 0.5).unwrap();
        assert_eq!(kl_divergence(&p, &p).unwrap(), 0.0);
        let identity = kl_divergence(&p, &q).unwrap() + shannon_entropy(&p);
        assert!((identity - 1.0).abs() < 1e-12);
        let longer = smooth(&[0, 0, 0], 0.5).unwrap();
        assert!(kl_divergence(&p, &longer).is_err());
        assert!(js_divergence(&p, &longer).is_err());
    }

    #[test]
    fn js_basics() {
        let p = smooth(&[5, 1, 0], 0.5).unwrap();
        let q = smooth(&[0, 2, 9], 0.5).unwrap();
        assert_eq!(js_divergence(&p, &p).unwrap(), 0.0);
        assert_eq!(js_divergence(&p, &q).unwrap(), js_divergence(&q, &p).unwrap());
    }

    #[test]
    fn zipf_uniform_is_degenerate() {
        let fit = zipf_fit(&smooth(&[0; 15], 0.5).unwrap()).unwrap();
        assert_eq!(fit.slope_alpha, 0.0);
        assert_eq!(fit.r_squared, None);
        assert_eq!(fit.n_points, 15);
    }

    #[test]
    fn zipf_raw_skips_zero_cells() {
        let fit = zipf_fit_raw(&[8, 0, 4, 2, 0, 1]).unwrap();
        assert_eq!(fit.n_points, 4);
        assert!(zipf_fit_raw(&[5, 0, 1]).is_err());
    }

    #[test]
    fn ranks_with_ties() {
        assert_eq!(fractional_ranks(&[1.0, 2.0, 2.0, 4.0]), vec![1.0, 2.5, 2.5, 4.0]);
        assert_eq!(fractional_ranks(&[3.0, 1.0, 2.0]), vec![3.0, 1.0, 2.0]);
    }

    #[test]
    fn spearman_examples() {
        assert_eq!(spearman_rho(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), Some(1.0));
        assert_eq!(spearman_rho(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(), Some(-1.0));
        assert_eq!(spearman_rho(&[1.0, 1.0], &[1.0, 2.0]).unwrap(), None);
        assert!(spearman_rho(&[1.0, 2.0], &[1.0]).is_err());
    }

    #[test]
    fn cosine_examples() {
        assert_eq!(cosine_similarity(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), Some(1.0));
        assert_eq!(cosine_similarity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), Some(0.0));
        let c = cosine_similarity(&[1.0, 2.0], &[2.0, 1.0]).unwrap().unwrap();
        assert!((c - 0.8).abs() < 1e-15);
        assert_eq!(cosine_similarity(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), None);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let vals = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(vals), 2.0);
    }
}
