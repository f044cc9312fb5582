//! Compare a KL ranking of targets with a ranking by cosine similarity of
//! externally supplied feature vectors.

use std::collections::BTreeMap;

use degreescope::resampling::{correlation_p_value, kl_cosine_crosscheck};

fn main() -> degreescope::Result<()> {
    let kl: BTreeMap<String, f64> = [("a", 0.08), ("b", 0.15), ("c", 0.22), ("d", 0.31), ("e", 0.47), ("f", 0.52)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let features: BTreeMap<String, Vec<f64>> = [
        ("a", vec![0.9, 0.1, 0.3]),
        ("b", vec![0.8, 0.3, 0.3]),
        ("c", vec![0.6, 0.2, 0.7]),
        ("d", vec![0.5, 0.6, 0.4]),
        ("e", vec![0.2, 0.9, 0.3]),
        ("f", vec![0.1, 0.7, 0.8]),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    let artist = [1.0, 0.1, 0.2];

    let r = kl_cosine_crosscheck(&kl, &features, &artist)?;
    println!("rho = {:.3}, p = {:.4}, targets = {}", r.rho, r.p_value, r.n_targets);

    // The p-value alone, for a published correlation.
    println!("p(rho = 0.601, n = 23) = {:.4}", correlation_p_value(0.601, 23)?);
    Ok(())
}
