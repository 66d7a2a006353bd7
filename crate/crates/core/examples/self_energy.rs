//! Electron mass shift: exact x-integration against the closed formula, and
//! its dependence on the subtraction scale.

use loopreg::qed::{
    on_shell_mass_shift, on_shell_mass_shift_pipeline, pipeline_coefficients, ELECTRON_MASS_GEV, FINE_STRUCTURE,
};

pub fn run() -> loopreg::Result<()> {
    let c = pipeline_coefficients();
    println!("slash channel: ({}, {})", c.slash.constant, c.slash.log);
    println!("scalar channel: ({}, {})", c.scalar.constant, c.scalar.log);
    println!("δm = (αm/4π)·(c + l·ln(m²/μ₁²)) with c = {}, l = {}", c.constant, c.log);

    let m = ELECTRON_MASS_GEV;
    for ratio in [0.25, 0.5, 1.0, 2.0] {
        let direct = on_shell_mass_shift(m, FINE_STRUCTURE, ratio * m)?.delta_m;
        let pipeline = on_shell_mass_shift_pipeline(m, FINE_STRUCTURE, ratio * m)?.delta_m;
        println!("μ₁ = {ratio:>4} m: δm = {direct:+.6e} GeV (pipeline {pipeline:+.6e})");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> loopreg::Result<()> {
    run()
}
