//! Every cross-check of the library, in order.

use loopreg::demo::walkthrough;

pub fn run() -> loopreg::Result<()> {
    let outcomes = walkthrough();
    for c in &outcomes {
        println!("[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    match outcomes.iter().find(|c| !c.passed) {
        Some(c) => Err(loopreg::Error::InvalidInput(format!("check {} failed", c.name))),
        None => Ok(()),
    }
}

#[allow(dead_code)]
fn main() -> loopreg::Result<()> {
    run()
}
