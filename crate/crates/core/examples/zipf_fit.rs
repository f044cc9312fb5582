//! Rank-frequency fits on smoothed and raw transition counts.

use degreescope::infotheory::{smooth, zipf_fit, zipf_fit_raw};

fn main() -> degreescope::Result<()> {
    // 225 transition cells, a few heavy ones and a long sparse tail.
    let counts: Vec<u64> = (0..225u64).map(|i| if i % 16 == 0 { 0 } else { 2000 / (1 + i) }).collect();

    let smoothed = zipf_fit(&smooth(&counts, 0.5)?)?;
    let raw = zipf_fit_raw(&counts)?;
    for (name, fit) in [("smoothed", smoothed), ("raw", raw)] {
        println!(
            "{name:<9} alpha = {:.3}  ln C = {:.3}  R^2 = {}  points = {}",
            fit.slope_alpha,
            fit.intercept_log_c,
            fit.r_squared.map_or("undefined".to_string(), |r| format!("{r:.3}")),
            fit.n_points
        );
    }
    Ok(())
}
