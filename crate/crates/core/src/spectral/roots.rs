//! Roots of exact polynomials: companion-matrix seeds refined by Newton steps
//! with the polynomial evaluated in double-double arithmetic.

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::exactpoly::{to_f64, Poly, Rat};

type DdComplex = Complex<TwoFloat>;

const MAX_NEWTON: usize = 100;

fn rat_to_dd(r: &Rat) -> TwoFloat {
    let hi = to_f64(r);
    if !hi.is_finite() {
        return TwoFloat::from(hi);
    }
    let rest = r - BigRational::from_float(hi).expect("finite float");
    TwoFloat::new_add(hi, rest.to_f64().unwrap_or(0.0))
}

/// Polynomial with double-double coefficients for accurate evaluation.
#[derive(Clone, Debug)]
pub(crate) struct DdPoly {
    coeffs: Vec<TwoFloat>,
    deriv: Vec<f64>,
}

impl DdPoly {
    pub(crate) fn new(p: &Poly) -> Self {
        let coeffs = p.coeffs().iter().map(rat_to_dd).collect();
        let deriv = p.derivative().to_f64_coeffs();
        Self { coeffs, deriv }
    }

    pub(crate) fn eval_dd(&self, z: Complex64) -> DdComplex {
        let zz = DdComplex::new(TwoFloat::from(z.re), TwoFloat::from(z.im));
        self.coeffs
            .iter()
            .rev()
            .fold(DdComplex::zero(), |acc, c| acc * zz + DdComplex::new(*c, TwoFloat::zero()))
    }

    pub(crate) fn eval(&self, z: Complex64) -> Complex64 {
        let v = self.eval_dd(z);
        Complex64::new(v.re.hi() + v.re.lo(), v.im.hi() + v.im.lo())
    }

    fn eval_deriv(&self, z: Complex64) -> Complex64 {
        horner(&self.deriv, z)
    }
}

pub(crate) fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c)
}

/// Eigenvalues of the companion matrix of `coeffs` (lowest degree first).
pub(crate) fn companion_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let c = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    c.complex_eigenvalues().iter().copied().collect()
}

/// Roots of a float polynomial, polished by a few plain Newton steps.
pub(crate) fn float_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deriv: Vec<f64> = coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
    companion_roots(coeffs)
        .into_iter()
        .map(|mut z| {
            for _ in 0..3 {
                let d = horner(&deriv, z);
                if d.norm() == 0.0 {
                    break;
                }
                let step = horner(coeffs, z) / d;
                if !step.is_finite() {
                    break;
                }
                z -= step;
            }
            z
        })
        .collect()
}

fn refine(f: &DdPoly, mut z: Complex64, tol: f64) -> Result<Complex64> {
    for _ in 0..MAX_NEWTON {
        let v = f.eval(z);
        if v.norm() == 0.0 {
            return Ok(z);
        }
        let step = v / f.eval_deriv(z);
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= tol * z.norm().max(1.0) * 1e-3 {
            return Ok(z);
        }
    }
    // accept if the last correction is already within tolerance
    let v = f.eval(z);
    let step = v / f.eval_deriv(z);
    if step.is_finite() && step.norm() <= tol * z.norm().max(1.0) {
        Ok(z)
    } else {
        Err(Error::RootFindingFailure { tol })
    }
}

/// Distinct roots of `p` with multiplicities.
pub fn roots_with_multiplicity(p: &Poly, tol: f64) -> Result<Vec<(Complex64, usize)>> {
    let mut out = Vec::new();
    for (f, mult) in p.squarefree_factors()? {
        match f.degree() {
            Some(0) | None => continue,
            Some(1) => {
                let r = -f.coeff(0) / f.coeff(1);
                out.push((Complex64::new(to_f64(&r), 0.0), mult));
            }
            Some(_) => {
                let dd = DdPoly::new(&f);
                for seed in companion_roots(&f.to_f64_coeffs()) {
                    out.push((refine(&dd, seed, tol)?, mult));
                }
            }
        }
    }
    out.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).expect("finite roots"));
    Ok(out)
}

/// All roots of `p`, repeated according to multiplicity.
pub fn roots(p: &Poly, tol: f64) -> Result<Vec<Complex64>> {
    Ok(roots_with_multiplicity(p, tol)?
        .into_iter()
        .flat_map(|(z, m)| std::iter::repeat(z).take(m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn exact_roots_with_multiplicity() {
        // λ²(λ² + 4)
        let r = roots_with_multiplicity(&Poly::from_ints(&[0, 0, 4, 0, 1]), 1e-10).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().any(|(z, m)| close(*z, Complex64::new(0.0, 0.0)) && *m == 2));
        assert!(r.iter().any(|(z, m)| close(*z, Complex64::new(0.0, 2.0)) && *m == 1));
        assert!(r.iter().any(|(z, m)| close(*z, Complex64::new(0.0, -2.0)) && *m == 1));
    }

    #[test]
    fn wilkinson_like_cluster_is_refined() {
        let mut p = Poly::one();
        for k in 1..=12 {
            p = &p * &Poly::from_ints(&[-k, 1]);
        }
        // perturb so the roots are no longer rational
        let p = &p + &Poly::from_ints(&[1]);
        let r = roots(&p, 1e-10).unwrap();
        let dd = DdPoly::new(&p);
        for z in r {
            let scale: f64 = p.to_f64_coeffs().iter().enumerate().map(|(k, c)| c.abs() * z.norm().powi(k as i32)).sum();
            assert!(dd.eval(z).norm() / scale < 1e-14);
        }
    }

    #[test]
    fn dd_evaluation_beats_f64_cancellation() {
        // (λ - 1)^8 near 1 cancels catastrophically in f64
        let p = Poly::from_ints(&[-1, 1]).pow(8);
        let z = Complex64::new(1.001, 0.0);
        let exact = 1e-24;
        let dd = DdPoly::new(&p).eval(z);
        assert!((dd.re - exact).abs() / exact < 1e-3);
    }
}
