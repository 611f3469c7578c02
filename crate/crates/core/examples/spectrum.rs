//! Band endpoints, arcs and isolated eigenvalues of a period with a spectral gap.

use pellab::exactpoly::rat;
use pellab::pfrac::PStep;
use pellab::spectral::bands;
use pellab::{PeriodData, Poly};

fn main() -> pellab::Result<()> {
    let x = Poly::from_ints(&[0, 1]);
    let period = PeriodData::new(vec![
        PStep::new(x.clone(), 1, rat(1))?,
        PStep::new(x, -1, rat(4))?,
    ])?;
    let spec = bands(&period, 256, 1e-10)?;
    println!("endpoints:");
    for z in &spec.band_endpoints {
        println!("  {:+.12} {:+.12}i", z.re, z.im);
    }
    println!("{} arcs, lengths {:?}", spec.arcs.len(), spec.arcs.iter().map(Vec::len).collect::<Vec<_>>());
    for z in &spec.eigenvalues {
        println!("eigenvalue {:+.12} {:+.12}i", z.re, z.im);
    }
    Ok(())
}
