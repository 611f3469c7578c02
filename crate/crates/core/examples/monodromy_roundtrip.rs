//! Builds the monodromy of a mixed-sign period and recovers the period from it.

use pellab::exactpoly::{format_rat, rat};
use pellab::monodromy::{check_admissible, monodromy, reconstruct};
use pellab::pfrac::PStep;
use pellab::{PeriodData, Poly};

fn main() -> pellab::Result<()> {
    let period = PeriodData::new(vec![
        PStep::new(Poly::from_ints(&[1, 1]), 1, rat(2))?,
        PStep::new(Poly::from_ints(&[0, 0, 1]), -1, rat(3))?,
    ])?;
    let t = monodromy(&period);
    println!("D = {}", format_rat(&t.d));
    for i in 0..2 {
        println!("[{}, {}]", t.entry(i, 0), t.entry(i, 1));
    }
    println!("det(M) = D: {}, J-unitary: {}", t.det_is_scale(), t.is_j_unitary());
    println!("{:?}", check_admissible(&t));

    let back = reconstruct(&t)?;
    for s in back.blocks() {
        println!("p = {}, eps = {:+}, beta = {}", s.p, s.epsilon, format_rat(&s.beta));
    }
    Ok(())
}
