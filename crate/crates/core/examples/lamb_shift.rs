//! Leading-log 2S–2P splitting in hydrogen and its sensitivity to the
//! Bethe logarithm.

use loopreg::qed::{
    lamb_shift_estimate, BETHE_LOG_2S, ELECTRON_MASS_GEV, FINE_STRUCTURE, LAMB_SHIFT_MEASURED_MHZ,
};

pub fn run() -> loopreg::Result<()> {
    let shift = lamb_shift_estimate(FINE_STRUCTURE, ELECTRON_MASS_GEV, BETHE_LOG_2S)?;
    println!("estimate {shift:.1} MHz, measured {LAMB_SHIFT_MEASURED_MHZ} MHz");
    for bethe in [2.6, 2.8118, 3.0] {
        println!("  ln k₀ = {bethe}: {:.1} MHz", lamb_shift_estimate(FINE_STRUCTURE, ELECTRON_MASS_GEV, bethe)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> loopreg::Result<()> {
    run()
}
