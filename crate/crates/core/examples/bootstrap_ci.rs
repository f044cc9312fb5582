//! Piece-level bootstrap intervals for entropy and for a KL cell.

use degreescope::counts::count_degrees;
use degreescope::infotheory::{kl_divergence, shannon_entropy, smooth};
use degreescope::resampling::{bootstrap_ci, bootstrap_ci_pair, BootstrapConfig};
use degreescope::CountProfile;
use degreescope::ScaleDegree::{self, *};

fn pieces(progressions: &[&[ScaleDegree]]) -> Vec<CountProfile> {
    progressions.iter().map(|p| count_degrees(p)).collect()
}

fn main() -> degreescope::Result<()> {
    let a = pieces(&[
        &[I, IV, V, I],
        &[I, VI, II, V, I],
        &[I, V, VI, IV, I, V],
        &[I, IV, I, V, I],
        &[I, II, V, I, IV, V, I],
    ]);
    let b = pieces(&[
        &[MinorI, FlatVI, FlatVII, MinorI],
        &[MinorI, MinorIV, V, MinorI],
        &[I, FlatVI, FlatVII, I],
        &[MinorI, FlatIII, FlatVII, MinorIV, V, MinorI],
    ]);

    let cfg = BootstrapConfig::default();
    let entropy = |c: &CountProfile| shannon_entropy(&smooth(&c.marginal, 0.5).unwrap());
    for (name, set) in [("a", &a), ("b", &b)] {
        let m = bootstrap_ci(set, &cfg, entropy)?;
        println!("H({name}) = {:.3} bits, 95% CI [{:.3}, {:.3}]", m.value, m.ci_low.unwrap(), m.ci_high.unwrap());
    }

    let kl = |x: &CountProfile, y: &CountProfile| {
        kl_divergence(&smooth(&x.marginal, 0.5).unwrap(), &smooth(&y.marginal, 0.5).unwrap()).unwrap()
    };
    let m = bootstrap_ci_pair(&a, &b, &cfg, kl)?;
    println!("KL(a || b) = {:.3} bits, 95% CI [{:.3}, {:.3}]", m.value, m.ci_low.unwrap(), m.ci_high.unwrap());

    // Same seed, same interval.
    let again = bootstrap_ci_pair(&a, &b, &cfg, kl)?;
    assert_eq!(m, again);
    println!("B = {}, base seed = {}", cfg.iterations, cfg.base_seed);
    Ok(())
}
