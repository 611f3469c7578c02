//! Decides whether `(√R - U)/V` is the m-function of a periodic operator.

use pellab::exactpoly::{format_rat, parse_rat};
use pellab::monodromy::AlgebraicForm;
use pellab::pellabel::{realize, RealizeStatus};
use pellab::Poly;

fn poly(c: &[&str]) -> Poly {
    Poly::new(c.iter().map(|s| parse_rat(s).unwrap()).collect())
}

fn main() -> pellab::Result<()> {
    let forms = [
        ("mixed signs", AlgebraicForm { r: poly(&["4", "0", "1"]), u: poly(&["0", "1"]), v: poly(&["-2"]) }),
        ("no Pell solution", AlgebraicForm { r: poly(&["1", "1", "0", "0", "1"]), u: poly(&["0", "0", "1"]), v: poly(&["-1/2", "-1/2"]) }),
        ("obstructed", AlgebraicForm { r: poly(&["4", "0", "1"]), u: poly(&["0", "1"]), v: poly(&["-1"]) }),
    ];
    for (name, form) in &forms {
        let rep = realize(form, 32, 8)?;
        println!("{name}: {:?}", rep.status);
        if rep.status == RealizeStatus::Realized {
            for s in rep.period.as_ref().unwrap().blocks() {
                println!("  p = {}, eps = {:+}, beta = {}", s.p, s.epsilon, format_rat(&s.beta));
            }
            let c = rep.certificate.as_ref().unwrap();
            println!("  X = {}, Y = {}, Z = {}, D = {}", c.x, c.y, c.z, format_rat(&c.sqrt_scale));
            println!("  routes agree: {}", rep.cross_check);
        }
    }
    Ok(())
}
