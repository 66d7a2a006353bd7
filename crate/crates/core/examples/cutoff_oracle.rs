//! Brute-force cutoff integration: classify the divergence of each loop
//! integral and recover the log structure from finite-Λ data.

use loopreg::oracle::{asymptote_constant, divergence_signature, CutoffProbe};

pub fn run() -> loopreg::Result<()> {
    for n in 1..=3 {
        let probe = CutoffProbe::decades(n, 1.0, 2, 5)?;
        let sig = divergence_signature(&probe)?;
        let last = probe.sweep()?.last().copied().expect("non-empty grid");
        println!(
            "n = {n}: {} (exponent {:+.3}), loop value at Λ = 1e5: {:.6e}",
            sig.class.as_str(),
            sig.exponent,
            last.loop_value(n)
        );
    }
    for m_sq in [0.5, 1.0, 2.0] {
        let a = asymptote_constant(&CutoffProbe::decades(2, m_sq, 1, 5)?)?;
        println!("M² = {m_sq}: lim R(Λ) − ln Λ = {a:.9} (−½ ln M² − ½ = {:.9})", -0.5 * f64::ln(m_sq) - 0.5);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> loopreg::Result<()> {
    run()
}
