//! Evaluates the m-function of a period exactly through the monodromy fixed point
//! and compares it with resolvents of growing truncations.

use num_complex::Complex64;
use pellab::exactpoly::rat;
use pellab::gjm::resolvent_m;
use pellab::pfrac::PStep;
use pellab::spectral::m_eval;
use pellab::{PeriodData, Poly};

fn main() -> pellab::Result<()> {
    let period = PeriodData::new(vec![PStep::new(Poly::from_ints(&[0, 1]), 1, rat(1))?])?;
    let z = Complex64::new(0.3, 2.5);
    let m = m_eval(&period, z, 1e-10)?;
    // closed form for the free operator: (√(z² - 4) - z)/2
    let free = ((z * z - 4.0).sqrt() - z) / 2.0;
    println!("m({z}) = {m:.15}");
    println!("closed form = {free:.15}");
    for n in [4, 8, 16, 32] {
        let r = resolvent_m(&period, n, z)?;
        println!("N = {n:2}: |m - m_N| = {:.3e}", (m - r).norm());
    }
    match m_eval(&period, Complex64::new(1.0, 0.0), 1e-10) {
        Ok(v) => println!("on the band: {v}"),
        Err(e) => println!("on the band: {} ({})", e.kind(), e),
    }
    Ok(())
}
