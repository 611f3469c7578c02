//! Dense truncations of periodic generalized Jacobi matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{sqrt_rat, to_f64, Poly, Rat, RatMatrix};
use crate::pfrac::PStep;

/// Blocks `(p_j, ε_j, β_j)` of one period, read cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodData {
    blocks: Vec<PStep>,
}

impl PeriodData {
    pub fn new(blocks: Vec<PStep>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[PStep] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block `j` of the infinite matrix.
    pub fn block(&self, j: usize) -> &PStep {
        &self.blocks[j % self.blocks.len()]
    }

    /// `Σ deg p_j` over one period.
    pub fn period_degree(&self) -> usize {
        self.blocks.iter().map(PStep::degree).sum()
    }
}

fn zeros(n: usize) -> RatMatrix {
    vec![vec![Rat::zero(); n]; n]
}

fn check_monic(p: &Poly) -> Result<usize> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    match p.degree() {
        Some(n) if n > 0 => Ok(n),
        _ => Err(Error::ConstantPolynomial),
    }
}

/// Companion matrix with ones on the subdiagonal and `-p_0 … -p_{n-1}` in the last column.
pub fn companion(p: &Poly) -> Result<RatMatrix> {
    let n = check_monic(p)?;
    let mut c = zeros(n);
    for i in 0..n {
        if i > 0 {
            c[i][i - 1] = Rat::one();
        }
        c[i][n - 1] = -p.coeff(i);
    }
    Ok(c)
}

/// Anti-triangular `E_p[i][k] = p_{i+k+1}`; satisfies `C_p E_p = E_p C_pᵀ`.
pub fn symmetrizator(p: &Poly) -> Result<RatMatrix> {
    let n = check_monic(p)?;
    let mut e = zeros(n);
    for (i, row) in e.iter_mut().enumerate() {
        for (k, x) in row.iter_mut().enumerate() {
            *x = p.coeff(i + k + 1);
        }
    }
    Ok(e)
}

/// Exact inverse of a symmetrizator. Row `i` of `E x = e_k` involves only
/// `x_0 … x_{n-1-i}`, so the rows are solved from the bottom up.
fn inverse_symmetrizator(e: &RatMatrix) -> RatMatrix {
    let n = e.len();
    let mut inv = zeros(n);
    for k in 0..n {
        let mut x = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let mut rhs = if i == k { Rat::one() } else { Rat::zero() };
            for j in 0..(n - 1 - i) {
                rhs -= &e[i][j] * &x[j];
            }
            x[n - 1 - i] = rhs / &e[i][n - 1 - i];
        }
        for i in 0..n {
            inv[i][k] = x[i].clone();
        }
    }
    inv
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let (n, m, k) = (a.len(), b.first().map_or(0, Vec::len), b.len());
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn transpose(a: &RatMatrix) -> RatMatrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Truncated operator `H` and its block-diagonal Gram matrix `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseKreinPair {
    pub h: RatMatrix,
    pub g: RatMatrix,
}

impl DenseKreinPair {
    pub fn dim(&self) -> usize {
        self.h.len()
    }

    pub fn gh(&self) -> RatMatrix {
        mat_mul(&self.g, &self.h)
    }

    /// `(GH)ᵀ == GH` exactly.
    pub fn is_krein_symmetric(&self) -> bool {
        let gh = self.gh();
        gh == transpose(&gh)
    }
}

/// `H_{[0, n_blocks-1]}` with its Gram matrix.
pub fn truncate(period: &PeriodData, n_blocks: usize) -> Result<DenseKreinPair> {
    truncate_range(period, 0, n_blocks)
}

/// Truncation to blocks `first .. first + n_blocks` of the infinite matrix.
pub fn truncate_range(period: &PeriodData, first: usize, n_blocks: usize) -> Result<DenseKreinPair> {
    assert!(n_blocks >= 1, "at least one block is required");
    let blocks: Vec<&PStep> = (first..first + n_blocks).map(|j| period.block(j)).collect();
    let offsets: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, b| {
            let o = *acc;
            *acc += b.degree();
            Some(o)
        })
        .collect();
    let dim: usize = blocks.iter().map(|b| b.degree()).sum();
    let mut h = zeros(dim);
    let mut g = zeros(dim);
    for (idx, b) in blocks.iter().enumerate() {
        let o = offsets[idx];
        let c = companion(&b.p)?;
        let ginv = inverse_symmetrizator(&symmetrizator(&b.p)?);
        let eps = Rat::from_integer(b.epsilon.into());
        for i in 0..c.len() {
            for k in 0..c.len() {
                h[o + i][o + k] = c[i][k].clone();
                g[o + i][o + k] = &eps * &ginv[i][k];
            }
        }
        if idx + 1 < blocks.len() {
            let j = first + idx;
            let bj = sqrt_rat(&b.beta).ok_or_else(|| Error::IrrationalCoupling {
                index: j % period.len(),
                beta: b.beta.clone(),
            })?;
            let next = blocks[idx + 1];
            let (o2, last) = (offsets[idx + 1], o + b.degree() - 1);
            let last2 = o2 + next.degree() - 1;
            h[o2][last] = bj.clone();
            h[o][last2] = Rat::from_integer((b.epsilon * next.epsilon).into()) * bj;
        }
    }
    Ok(DenseKreinPair { h, g })
}

/// Exact characteristic polynomial `det(λI - A)` (Faddeev–LeVerrier).
pub fn charpoly(a: &RatMatrix) -> Poly {
    let n = a.len();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut m = zeros(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(a, &next);
        let tr: Rat = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / Rat::from_integer((k as i64).into());
        m = next;
    }
    Poly::new(coeffs)
}

fn to_complex(a: &RatMatrix) -> DMatrix<Complex64> {
    let n = a.len();
    DMatrix::from_fn(n, n, |i, j| Complex64::new(to_f64(&a[i][j]), 0.0))
}

/// `(G (H - λ)^{-1} e_0, e_0)` on the truncation with `n_blocks` blocks.
pub fn resolvent_m(period: &PeriodData, n_blocks: usize, lambda: Complex64) -> Result<Complex64> {
    let pair = truncate(period, n_blocks)?;
    let n = pair.dim();
    let shifted = to_complex(&pair.h) - DMatrix::from_diagonal_element(n, n, lambda);
    let mut e0 = nalgebra::DVector::zeros(n);
    e0[0] = Complex64::new(1.0, 0.0);
    let x = shifted.lu().solve(&e0).ok_or(Error::SingularSystem)?;
    let m: Complex64 = (0..n).map(|k| to_f64(&pair.g[0][k]) * x[k]).sum();
    if !m.is_finite() {
        return Err(Error::SingularSystem);
    }
    Ok(m)
}
