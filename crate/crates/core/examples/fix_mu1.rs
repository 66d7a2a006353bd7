//! Fix the scale by demanding no on-shell mass shift, for a few leptons.

use loopreg::qed::{solve_mu1, solve_mu1_numeric, FINE_STRUCTURE};

pub fn run() -> loopreg::Result<()> {
    for (name, m) in [("electron", 0.000_510_998_95), ("muon", 0.105_658_375), ("tau", 1.776_86)] {
        let closed = solve_mu1(m)?;
        let root = solve_mu1_numeric(m, FINE_STRUCTURE)?;
        println!("{name:>8}: μ₁ = {closed:.9e} GeV, root finder {root:.9e}, μ₁/m = {:.12}", closed / m);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> loopreg::Result<()> {
    run()
}
