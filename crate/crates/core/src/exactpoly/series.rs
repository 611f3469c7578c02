//! Truncated Laurent series at infinity with explicit absolute precision.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::{sqrt_rat, Rat};
use crate::error::{Error, Result};

/// `Σ coeffs[i] λ^(top_degree - i)`, known exactly for every exponent
/// `>= cutoff() = top_degree - len + 1`. Exponents above `top_degree` are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct SeriesAtInfinity {
    top_degree: i64,
    coeffs: Vec<Rat>,
}

impl SeriesAtInfinity {
    /// Builds a series and strips leading zeros (precision is unchanged).
    pub fn new(top_degree: i64, coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one stored coefficient");
        let mut s = Self { top_degree, coeffs };
        s.strip();
        s
    }

    fn strip(&mut self) {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros < self.coeffs.len() {
            self.coeffs.drain(..lead_zeros);
            self.top_degree -= lead_zeros as i64;
        }
    }

    /// Series known to vanish for every exponent `>= cutoff`.
    pub fn zero(cutoff: i64) -> Self {
        Self { top_degree: cutoff, coeffs: vec![Rat::zero()] }
    }

    pub fn from_poly(p: &Poly, cutoff: i64) -> Self {
        let top = p.deg_i().max(cutoff);
        let coeffs = (cutoff..=top)
            .rev()
            .map(|e| if e >= 0 { p.coeff(e as usize) } else { Rat::zero() })
            .collect();
        Self::new(top, coeffs)
    }

    /// Series of `φ(λ) = -Σ s_j λ^(-j-1)` from its moments `s_0, s_1, …`.
    pub fn from_moments(moments: &[Rat]) -> Self {
        if moments.is_empty() {
            return Self::zero(0);
        }
        Self::new(-1, moments.iter().map(|s| -s).collect())
    }

    pub fn top_degree(&self) -> i64 {
        self.top_degree
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn cutoff(&self) -> i64 {
        self.top_degree - self.coeffs.len() as i64 + 1
    }

    /// Coefficient of `λ^e`, or `None` when `e` is below the known precision.
    pub fn coeff(&self, e: i64) -> Option<Rat> {
        if e > self.top_degree {
            Some(Rat::zero())
        } else if e < self.cutoff() {
            None
        } else {
            Some(self.coeffs[(self.top_degree - e) as usize].clone())
        }
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// First nonzero term `(exponent, coefficient)`.
    pub fn leading(&self) -> Option<(i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.top_degree - i as i64, c))
    }

    /// Moments `s_j = -[λ^(-j-1)]`, as many as the precision certifies.
    pub fn moments(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        let mut e = -1;
        while let Some(c) = self.coeff(e) {
            out.push(-c);
            e -= 1;
        }
        out
    }

    pub fn truncate(&self, cutoff: i64) -> Self {
        let cutoff = cutoff.max(self.cutoff());
        let top = self.top_degree.max(cutoff);
        let coeffs = (cutoff..=top).rev().map(|e| self.coeff(e).unwrap()).collect();
        Self::new(top, coeffs)
    }

    /// Terms of nonnegative degree; needs precision down to `λ^0`.
    pub fn poly_part(&self) -> Option<Poly> {
        if self.cutoff() > 0 {
            return None;
        }
        if self.top_degree < 0 {
            return Some(Poly::zero());
        }
        Some(Poly::new(
            (0..=self.top_degree).map(|e| self.coeff(e).unwrap()).collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        Self { top_degree: self.top_degree, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.top_degree, self.coeffs.iter().map(|a| a * c).collect())
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let cutoff = self.cutoff().max(other.cutoff());
        let top = self.top_degree.max(other.top_degree).max(cutoff);
        let coeffs = (cutoff..=top)
            .rev()
            .map(|e| {
                let a = self.coeff(e).unwrap();
                let b = other.coeff(e).unwrap();
                if negate {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Self::new(top, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn add_poly(&self, p: &Poly) -> Self {
        self.add(&Self::from_poly(p, self.cutoff()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (ta, tb) = (self.top_degree, other.top_degree);
        let cutoff = (ta + other.cutoff()).max(tb + self.cutoff());
        let top = (ta + tb).max(cutoff);
        let len = (top - cutoff + 1) as usize;
        let mut coeffs = vec![Rat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ta - i as i64 + tb - j as i64;
                if e < cutoff {
                    break;
                }
                coeffs[(top - e) as usize] += a * b;
            }
        }
        Self::new(top, coeffs)
    }

    /// Product with an exact polynomial.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        if p.is_zero() {
            return Self::zero(self.cutoff());
        }
        let exact = Self::from_poly(p, p.deg_i() - self.coeffs.len() as i64 - 1);
        let prod = self.mul(&exact);
        prod.truncate(self.cutoff() + p.deg_i())
    }

    /// Multiplicative inverse; relative precision is preserved.
    pub fn inverse(&self) -> Option<Self> {
        let (top, a0) = self.leading()?;
        let start = (self.top_degree - top) as usize;
        let a = &self.coeffs[start..];
        let inv0 = a0.recip();
        let mut b: Vec<Rat> = Vec::with_capacity(a.len());
        b.push(inv0.clone());
        for i in 1..a.len() {
            let mut acc = Rat::zero();
            for j in 1..=i {
                if !a[j].is_zero() {
                    acc += &a[j] * &b[i - j];
                }
            }
            b.push(-acc * &inv0);
        }
        Some(Self::new(-top, b))
    }

    /// Quotient by an exact nonzero polynomial.
    pub fn div_poly(&self, d: &Poly) -> Result<Self> {
        let dd = d.deg_i();
        if d.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let len = self.coeffs.len() as i64;
        let inv = Self::from_poly(d, dd - len + 1).inverse().expect("nonzero polynomial");
        Ok(self.mul(&inv).truncate(self.cutoff() - dd))
    }
}

/// Square root of `R` at infinity with positive leading coefficient, `terms`
/// coefficients starting at `λ^(deg R / 2)`.
pub fn sqrt_series(r: &Poly, terms: usize) -> Result<SeriesAtInfinity> {
    let deg = r.degree().ok_or(Error::ZeroPolynomial)?;
    if deg % 2 == 1 {
        return Err(Error::OddDegree(deg));
    }
    let lead = r.lead();
    let c0 = sqrt_rat(&lead)
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::LeadingCoeffNotSquare(lead.clone()))?;
    let terms = terms.max(1);
    // r_j: coefficient of λ^(deg - j)
    let rj = |j: usize| if j <= deg { r.coeff(deg - j) } else { Rat::zero() };
    let two_c0_inv = (&c0 + &c0).recip();
    let mut c: Vec<Rat> = vec![c0];
    for i in 1..terms {
        let mut acc = rj(i);
        for j in 1..i {
            acc -= &c[j] * &c[i - j];
        }
        c.push(acc * &two_c0_inv);
    }
    Ok(SeriesAtInfinity::new((deg / 2) as i64, c))
}

/// Number of stored coefficients a square-root series of `R` needs so that its
/// cutoff is at most `cutoff`.
pub fn sqrt_terms_for_cutoff(r: &Poly, cutoff: i64) -> usize {
    let n = r.deg_i() / 2;
    (n - cutoff + 1).max(1) as usize
}

impl fmt::Display for SeriesAtInfinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.top_degree - i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() && e != 0 {
                write!(f, "λ^{e}")?;
            } else {
                write!(f, "({c})λ^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(λ^{})", self.cutoff() - 1)
    }
}

impl fmt::Debug for SeriesAtInfinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, ratio};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn sqrt_of_lambda_squared_minus_one() {
        // λ sqrt(1 - λ^-2) = λ - (1/2)λ^-1 - (1/8)λ^-3 - (1/16)λ^-5
        let s = sqrt_series(&p(&[-1, 0, 1]), 7).unwrap();
        assert_eq!(s.top_degree(), 1);
        let want = [rat(1), rat(0), ratio(-1, 2), rat(0), ratio(-1, 8), rat(0), ratio(-1, 16)];
        assert_eq!(s.coeffs(), &want);
    }

    #[test]
    fn sqrt_of_exact_square_and_plus_four() {
        let s = sqrt_series(&p(&[0, 0, 1]), 4).unwrap();
        assert_eq!(s.coeffs(), &[rat(1), rat(0), rat(0), rat(0)]);
        let s = sqrt_series(&p(&[4, 0, 1]), 5).unwrap();
        assert_eq!(s.coeffs(), &[rat(1), rat(0), rat(2), rat(0), rat(-2)]);
    }

    #[test]
    fn sqrt_errors() {
        assert_eq!(sqrt_series(&p(&[0, 1]), 3), Err(Error::OddDegree(1)));
        assert!(matches!(sqrt_series(&p(&[0, 0, 2]), 3), Err(Error::LeadingCoeffNotSquare(_))));
        assert!(matches!(sqrt_series(&p(&[0, 0, -1]), 3), Err(Error::LeadingCoeffNotSquare(_))));
        let msg = sqrt_series(&p(&[0, 0, 2]), 3).unwrap_err().to_string();
        assert!(msg.contains("extension field"));
    }

    #[test]
    fn inverse_and_division() {
        // 1/(λ^2 - 1) = λ^-2 + λ^-4 + …
        let s = SeriesAtInfinity::from_poly(&p(&[-1, 0, 1]), -5).inverse().unwrap();
        assert_eq!(s.top_degree(), -2);
        assert_eq!(s.moments()[..5], [rat(0), rat(-1), rat(0), rat(-1), rat(0)]);
        let q = SeriesAtInfinity::from_poly(&p(&[1]), -6).div_poly(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(q.cutoff(), -8);
        assert_eq!(q.coeff(-4), Some(rat(1)));
        assert_eq!(q.coeff(-3), Some(rat(0)));
    }

    #[test]
    fn poly_part_needs_precision() {
        let s = sqrt_series(&p(&[4, 0, 1]), 1).unwrap();
        assert_eq!(s.poly_part(), None);
        let s = sqrt_series(&p(&[4, 0, 1]), 2).unwrap();
        assert_eq!(s.poly_part(), Some(p(&[0, 1])));
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(c in proptest::collection::vec(-5i64..=5, 0..6), a in 1i64..4) {
            let mut coeffs: Vec<Rat> = c.into_iter().map(rat).collect();
            let n = coeffs.len() + (coeffs.len() % 2);
            coeffs.resize(n, rat(0));
            coeffs.push(rat(a * a));
            let r = Poly::new(coeffs);
            let s = sqrt_series(&r, 10).unwrap();
            let sq = s.mul(&s);
            for e in sq.cutoff()..=sq.top_degree() {
                let want = if e >= 0 { r.coeff(e as usize) } else { rat(0) };
                prop_assert_eq!(sq.coeff(e).unwrap(), want);
            }
        }

        #[test]
        fn inverse_times_self_is_one(c in proptest::collection::vec(-5i64..=5, 1..8), top in -3i64..3) {
            prop_assume!(c[0] != 0);
            let s = SeriesAtInfinity::new(top, c.into_iter().map(rat).collect());
            let prod = s.mul(&s.inverse().unwrap());
            prop_assert_eq!(prod.coeff(0), Some(rat(1)));
            for e in prod.cutoff()..0 {
                prop_assert_eq!(prod.coeff(e).unwrap(), rat(0));
            }
        }
    }
}
