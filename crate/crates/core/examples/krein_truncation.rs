//! Dense truncations `H_N` with Gram matrices `G_N` and their characteristic polynomials.

use pellab::exactpoly::{format_rat, rat};
use pellab::gjm::{charpoly, truncate};
use pellab::pfrac::{recurrence, PStep};
use pellab::{PeriodData, Poly};

fn main() -> pellab::Result<()> {
    let period = PeriodData::new(vec![
        PStep::new(Poly::from_ints(&[-1, 0, 1]), 1, rat(4))?,
        PStep::new(Poly::from_ints(&[0, 1]), -1, rat(1))?,
    ])?;
    for n in 1..=4 {
        let pair = truncate(&period, n)?;
        let steps: Vec<PStep> = (0..n).map(|j| period.block(j).clone()).collect();
        let rec = recurrence(&steps);
        println!("N = {n}, dim {}, Krein symmetric: {}", pair.dim(), pair.is_krein_symmetric());
        println!("  det(λ - H_N) = {}", charpoly(&pair.h));
        println!("  P̂_N           = {}", rec.phat[n]);
    }
    let pair = truncate(&period, 1)?;
    for row in &pair.h {
        println!("{}", row.iter().map(format_rat).collect::<Vec<_>>().join("  "));
    }
    Ok(())
}
