//! Broken-symmetry vacuum of λΦ⁴, its one-loop coupling, and the mass ratio
//! that fixes λ independently of loop corrections.

use loopreg::phi4::{lambda_invariant_ratio, lambda_renormalized, SsbPotential, HIGGS_REFERENCE};

pub fn run() -> loopreg::Result<()> {
    for (sigma, lambda) in [(1.0, 6.0), (2.0, 6.0), (8000.0, 0.5)] {
        let p = SsbPotential::new(sigma, lambda)?;
        let v = p.vacuum();
        println!(
            "σ = {sigma}, λ = {lambda}: Φ₁ = {:.6}, m_σ = {:.6}, V(Φ₁) = {:.4}, λ_R = {:.6}, 3(m_σ/Φ₁)² = {:.6}",
            v.phi1,
            v.m_sigma,
            p.eval(v.phi1),
            lambda_renormalized(lambda)?,
            lambda_invariant_ratio(v.m_sigma, v.phi1)?,
        );
    }
    let h = HIGGS_REFERENCE;
    println!("Higgs reference: {} < {} < {} GeV", h.lower_bound, h.predicted, h.upper_bound);
    Ok(())
}

#[allow(dead_code)]
fn main() -> loopreg::Result<()> {
    run()
}
