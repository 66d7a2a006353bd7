//! Running coupling from the resummed chain: truncations stay finite while the
//! full sum hits a pole at the critical scale.

use loopreg::phi4::{ResummationState, ResummedCoupling};

pub fn run() -> loopreg::Result<()> {
    let state = ResummationState::with_default_beta(1.0, 1.0)?;
    let mu_c = state.critical_scale();
    println!("critical scale μ_c = {mu_c:.4e} GeV");
    for f in [1e-6, 1e-2, 0.5, 0.999, 1.001, 10.0] {
        let mu = f * mu_c;
        let full = match state.resum_chain(mu)? {
            ResummedCoupling::Finite(v) => format!("{v:.6}"),
            ResummedCoupling::Pole => "pole".to_string(),
        };
        println!(
            "μ = {f:>8} μ_c: resummed {full:>12}, first order {:.6}, order 20 {:.6}, {:?}",
            state.first_order(mu)?,
            state.truncated(mu, 20)?,
            state.phase(mu)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> loopreg::Result<()> {
    run()
}
