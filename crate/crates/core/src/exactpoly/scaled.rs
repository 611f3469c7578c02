//! Polynomials and 2×2 matrix polynomials carrying a symbolic `1/√D` factor.

use num_complex::Complex64;
use num_traits::{One, Signed};

use super::poly::Poly;
use super::rat::{square_reduce, to_f64, Rat};

/// `poly / √sqrt_scale` kept in canonical form: the scale is a squarefree integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPoly {
    poly: Poly,
    sqrt_scale: Rat,
}

impl ScaledPoly {
    pub fn new(poly: Poly, sqrt_scale: Rat) -> Self {
        assert!(sqrt_scale.is_positive(), "scale must be positive");
        let (factor, core) = square_reduce(&sqrt_scale);
        Self { poly: poly.scale(&factor.recip()), sqrt_scale: core }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn sqrt_scale(&self) -> &Rat {
        &self.sqrt_scale
    }

    /// The square, which is a plain rational polynomial.
    pub fn square(&self) -> Poly {
        (&self.poly * &self.poly).scale(&self.sqrt_scale.recip())
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.poly.eval_complex(z) / to_f64(&self.sqrt_scale).sqrt()
    }
}

/// `M / √D` for a 2×2 matrix `M` of rational polynomials and positive rational `D`.
///
/// The stored pair is not reduced: products keep `D` as the plain product of the
/// factor scales so that entries stay the rescaled recurrence polynomials.
/// Equality compares the denoted matrices.
#[derive(Clone, Debug)]
pub struct ScaledMatrixPoly {
    pub m: [[Poly; 2]; 2],
    pub d: Rat,
}

impl ScaledMatrixPoly {
    pub fn new(m: [[Poly; 2]; 2], d: Rat) -> Self {
        assert!(d.is_positive(), "scale must be positive");
        Self { m, d }
    }

    pub fn identity() -> Self {
        Self::new([[Poly::one(), Poly::zero()], [Poly::zero(), Poly::one()]], Rat::one())
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.m[i][j]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Self::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]], &self.d * &rhs.d)
    }

    pub fn det(&self) -> Poly {
        &(&self.m[0][0] * &self.m[1][1]) - &(&self.m[0][1] * &self.m[1][0])
    }

    /// `det M = D`, the scaled form of unit determinant.
    pub fn det_is_scale(&self) -> bool {
        self.det() == Poly::constant(self.d.clone())
    }

    pub fn trace(&self) -> ScaledPoly {
        ScaledPoly::new(&self.m[0][0] + &self.m[1][1], self.d.clone())
    }

    /// `M J' Mᵀ` with `J' = [[0,-1],[1,0]]`.
    pub fn j_form(&self) -> [[Poly; 2]; 2] {
        let m = &self.m;
        // M J' = [[m01, -m00], [m11, -m10]]
        let mj = [[m[0][1].clone(), -&m[0][0]], [m[1][1].clone(), -&m[1][0]]];
        let e = |i: usize, j: usize| &(&mj[i][0] * &m[j][0]) + &(&mj[i][1] * &m[j][1]);
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    /// `M J' Mᵀ = D J'`: J-unitarity of `M/√D` on the real line.
    pub fn is_j_unitary(&self) -> bool {
        let f = self.j_form();
        let d = Poly::constant(self.d.clone());
        f[0][0].is_zero() && f[1][1].is_zero() && f[0][1] == -&d && f[1][0] == d
    }

    /// Same matrix with `D` reduced to a squarefree integer.
    pub fn canonical(&self) -> Self {
        let (factor, core) = square_reduce(&self.d);
        let inv = factor.recip();
        let s = |p: &Poly| p.scale(&inv);
        Self::new(
            [[s(&self.m[0][0]), s(&self.m[0][1])], [s(&self.m[1][0]), s(&self.m[1][1])]],
            core,
        )
    }

    pub fn eval_complex(&self, z: Complex64) -> [[Complex64; 2]; 2] {
        let inv = 1.0 / to_f64(&self.d).sqrt();
        let e = |i: usize, j: usize| self.m[i][j].eval_complex(z) * inv;
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    pub fn is_constant(&self) -> bool {
        self.m.iter().flatten().all(Poly::is_constant)
    }
}

impl PartialEq for ScaledMatrixPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.d == b.d && a.m == b.m
    }
}

impl Eq for ScaledMatrixPoly {}

impl Default for ScaledMatrixPoly {
    fn default() -> Self {
        Self::identity()
    }
}
