//! Expands `(√(λ² + 4) - λ)/(-2)` into a P-fraction and prints the period it settles into.

use pellab::exactpoly::format_rat;
use pellab::pfrac::{expand, Tail};
use pellab::Poly;

fn main() -> pellab::Result<()> {
    // (a + b√R)/d with a = -λ, b = 1, d = -2
    let r = Poly::from_ints(&[4, 0, 1]);
    let tail = Tail::surd(Poly::from_ints(&[0, -1]), Poly::one(), Poly::from_ints(&[-2]), r)?;
    let frac = expand(&tail, 16)?;
    for (j, s) in frac.steps.iter().enumerate() {
        println!("step {j}: p = {}, eps = {:+}, beta = {}", s.p, s.epsilon, format_rat(&s.beta));
    }
    println!("{:?}", frac.terminal);
    Ok(())
}
