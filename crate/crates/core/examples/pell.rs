//! Fundamental solutions of `X² - R Y² = const` for a few radicands.

use pellab::pellabel::{pell_fundamental, pell_power};
use pellab::Poly;

fn main() -> pellab::Result<()> {
    let radicands = [
        Poly::from_ints(&[-1, 0, 1]),
        Poly::from_ints(&[9, 0, 10, 0, 1]),
        Poly::from_ints(&[1, 1, 0, 0, 1]),
    ];
    for r in &radicands {
        match pell_fundamental(r, 32)? {
            Some(sol) => {
                println!("R = {r}");
                println!("  X = {}\n  Y = {}", sol.0, sol.1);
                let (x2, y2) = pell_power(&sol, r, 2);
                println!("  squared: X = {x2}, Y = {y2}");
            }
            None => println!("R = {r}: no solution within 32 steps"),
        }
    }
    Ok(())
}
