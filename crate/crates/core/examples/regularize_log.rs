//! Regularize the logarithmic and quadratic loop integrals, then fix `C₁`
//! through a scale.

use loopreg::ScalarLoopIntegral;

pub fn run() -> loopreg::Result<()> {
    for n in [3, 2, 1] {
        let integral = ScalarLoopIntegral::new(n)?;
        let value = integral.regularize();
        println!(
            "n = {n}: D = {}, {} derivative(s), {value}",
            integral.superficial_degree(),
            integral.differentiation_count()
        );
        for c in value.constants().iter() {
            println!("    C{} has mass dimension {}", c.index, c.mass_dimension);
        }
    }

    let mu1 = 0.5;
    let log = ScalarLoopIntegral::new(2)?.regularize().with_scale(1, mu1)?;
    for m_sq in [0.1, 0.25, 1.0] {
        println!("M² = {m_sq}: {:+.6} × i/(16π²)", log.evaluate(m_sq)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> loopreg::Result<()> {
    run()
}
