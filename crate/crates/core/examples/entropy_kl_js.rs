//! Entropy, KL and Jensen-Shannon divergence between two smoothed
//! degree distributions.

use degreescope::infotheory::{js_divergence, kl_divergence, shannon_entropy, smooth, DEFAULT_ALPHA};

fn main() -> degreescope::Result<()> {
    // Marginal counts over the 15 degrees.
    let diatonic = [40, 0, 6, 0, 3, 18, 0, 25, 9, 0, 0, 0, 0, 0, 1];
    let chromatic = [22, 5, 8, 6, 4, 12, 7, 16, 6, 3, 5, 4, 2, 6, 3];

    let p = smooth(&diatonic, DEFAULT_ALPHA)?;
    let q = smooth(&chromatic, DEFAULT_ALPHA)?;

    println!("alpha = {DEFAULT_ALPHA}");
    println!("H(diatonic)  = {:.4} bits", shannon_entropy(&p));
    println!("H(chromatic) = {:.4} bits", shannon_entropy(&q));
    println!("max          = {:.4} bits", (15f64).log2());
    println!("KL(d || c)   = {:.4} bits", kl_divergence(&p, &q)?);
    println!("KL(c || d)   = {:.4} bits", kl_divergence(&q, &p)?);
    println!("JS(d, c)     = {:.4} bits", js_divergence(&p, &q)?);
    Ok(())
}
