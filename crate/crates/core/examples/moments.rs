//! Moments of a periodic P-fraction, the normal indices of its Hankel sequence and
//! re-expansion from the moments alone.

use pellab::exactpoly::{format_rat, normal_indices, rat};
use pellab::pfrac::{expand, to_series, PStep, Tail};
use pellab::{PeriodData, Poly};

fn main() -> pellab::Result<()> {
    let period = PeriodData::new(vec![
        PStep::new(Poly::from_ints(&[0, 0, 1]), 1, rat(1))?,
        PStep::new(Poly::from_ints(&[1, 1]), -1, rat(3))?,
    ])?;
    let k: Vec<PStep> = (0..6).map(|j| period.block(j).clone()).collect();
    let s = to_series(&k, 24);
    println!("moments: {}", s.iter().map(format_rat).collect::<Vec<_>>().join(" "));
    println!("normal indices: {:?}", normal_indices(&s, 12));

    let again = expand(&Tail::from_moments(&s)?, 16)?;
    for st in &again.steps {
        println!("p = {}, eps = {:+}, beta = {}", st.p, st.epsilon, format_rat(&st.beta));
    }
    println!("{:?}", again.terminal);
    Ok(())
}
