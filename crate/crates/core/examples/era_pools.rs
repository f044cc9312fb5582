//! Assign an artist to the closest era pool and check how stable that
//! assignment is under pool subsampling.

use std::collections::BTreeMap;

use degreescope::counts::{aggregate, build_era_pools_with_pieces, count_degrees, parse_pool_spec, Basis};
use degreescope::resampling::{era_assignment, subsample_concordance};
use degreescope::CountProfile;
use degreescope::ScaleDegree::*;

fn main() -> degreescope::Result<()> {
    let mut corpus: BTreeMap<String, Vec<CountProfile>> = BTreeMap::new();
    corpus.insert(
        "bach".into(),
        vec![
            count_degrees(&[I, IV, V, I]),
            count_degrees(&[I, II, V, I]),
            count_degrees(&[I, VI, IV, V, I]),
        ],
    );
    corpus.insert(
        "mozart".into(),
        vec![count_degrees(&[I, V, I, IV, V, I]), count_degrees(&[I, II, V, VI])],
    );
    corpus.insert(
        "chopin".into(),
        vec![
            count_degrees(&[MinorI, FlatVI, V, MinorI]),
            count_degrees(&[I, FlatVI, FlatIII, V, I]),
            count_degrees(&[MinorI, MinorIV, FlatVII, FlatIII]),
            count_degrees(&[I, FlatII, V, I]),
        ],
    );
    let artist = aggregate(&[
        count_degrees(&[MinorI, FlatVI, FlatVII, MinorI]),
        count_degrees(&[I, IV, V, I, FlatVI, V]),
    ]);

    let spec = parse_pool_spec(r#"{"Baroque": ["bach"], "Classical": ["mozart"], "Romantic": ["chopin"]}"#)?;
    let pools = build_era_pools_with_pieces(&corpus, &spec)?;

    for basis in [Basis::Marginal, Basis::Transitions] {
        let a = era_assignment(&artist, &pools, 0.5, basis)?;
        let row: Vec<String> = a.kl_bits.iter().map(|(e, v)| format!("{e} {v:.3}")).collect();
        println!("{:<11} closest {:<9} | {}", basis.name(), a.era, row.join(", "));
    }

    let c = subsample_concordance("artist", &artist, &pools, 2, 100, 42, 0.5)?;
    println!(
        "concordance over {} subsamples of {} pieces: marginal {:.2}, transitions {:.2}",
        c.n_subsamples, c.target_size, c.concordance_marginal, c.concordance_transitions
    );
    Ok(())
}
