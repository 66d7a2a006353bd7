//! Each example runs to completion.

#[path = "../examples/regularize_log.rs"]
mod regularize_log;

#[test]
fn regularize_log_runs() {
    regularize_log::run().unwrap();
}

#[path = "../examples/self_energy.rs"]
mod self_energy;

#[test]
fn self_energy_runs() {
    self_energy::run().unwrap();
}

#[path = "../examples/fix_mu1.rs"]
mod fix_mu1;

#[test]
fn fix_mu1_runs() {
    fix_mu1::run().unwrap();
}

#[path = "../examples/lamb_shift.rs"]
mod lamb_shift;

#[test]
fn lamb_shift_runs() {
    lamb_shift::run().unwrap();
}

#[path = "../examples/ssb_vacuum.rs"]
mod ssb_vacuum;

#[test]
fn ssb_vacuum_runs() {
    ssb_vacuum::run().unwrap();
}

#[path = "../examples/resummation_pole.rs"]
mod resummation_pole;

#[test]
fn resummation_pole_runs() {
    resummation_pole::run().unwrap();
}

#[path = "../examples/cutoff_oracle.rs"]
mod cutoff_oracle;

#[test]
fn cutoff_oracle_runs() {
    cutoff_oracle::run().unwrap();
}

#[path = "../examples/walkthrough.rs"]
mod walkthrough;

#[test]
fn walkthrough_runs() {
    walkthrough::run().unwrap();
}
