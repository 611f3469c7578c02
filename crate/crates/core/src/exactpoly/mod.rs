//! Exact rational arithmetic: scalars, polynomials, series at infinity and
//! symbolic square-root scales.

mod poly;
mod rat;
mod scaled;
mod series;

pub use poly::{squarefree_split, Poly};
pub use rat::{format_rat, parse_rat, rat, rat_gcd, ratio, sign, sqrt_rat, square_reduce, to_f64, Rat};
pub use scaled::{ScaledMatrixPoly, ScaledPoly};
pub use series::{sqrt_series, sqrt_terms_for_cutoff, SeriesAtInfinity};

use num_traits::{One, Zero};

/// Dense row-major matrix of rationals.
pub type RatMatrix = Vec<Vec<Rat>>;

/// Determinant by exact Gaussian elimination.
pub fn det(m: &RatMatrix) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut d = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let pv = a[col][col].clone();
        d *= &pv;
        let pinv = pv.recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &pinv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

/// Hankel matrix `(s_{i+k})_{i,k < n}`.
pub fn hankel(s: &[Rat], n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|k| s[i + k].clone()).collect()).collect()
}

/// All normal indices `n <= limit` of a moment sequence: sizes whose Hankel
/// determinant is nonzero.
///
/// Index `n` needs moments `s_0 … s_{2n-2}`; indices the supplied moments
/// cannot certify are not reported.
pub fn normal_indices(s: &[Rat], limit: usize) -> Vec<usize> {
    (1..=limit)
        .take_while(|&n| 2 * n - 1 <= s.len())
        .filter(|&n| !det(&hankel(s, n)).is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz expansion; independent of the elimination path.
    fn det_leibniz(m: &RatMatrix) -> Rat {
        fn go(m: &RatMatrix, row: usize, used: &mut Vec<bool>, sign: bool) -> Rat {
            let n = m.len();
            if row == n {
                return if sign { -Rat::one() } else { Rat::one() };
            }
            let mut acc = Rat::zero();
            let mut inversions_before = 0;
            for c in 0..n {
                if used[c] {
                    continue;
                }
                if !m[row][c].is_zero() {
                    used[c] = true;
                    // parity of the number of unused columns to the left of c
                    let flip = inversions_before % 2 == 1;
                    acc += &m[row][c] * go(m, row + 1, used, sign ^ flip);
                    used[c] = false;
                }
                inversions_before += 1;
            }
            acc
        }
        go(m, 0, &mut vec![false; m.len()], false)
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn elimination_matches_leibniz() {
        let s = ints(&[1, 0, 1, 0, 2, 0, 5, 0, 14]);
        for n in 1..=5 {
            assert_eq!(det(&hankel(&s, n)), det_leibniz(&hankel(&s, n)), "n = {n}");
        }
        let m = vec![ints(&[2, -1, 3]), ints(&[0, 4, 1]), ints(&[5, 2, -2])];
        assert_eq!(det(&m), det_leibniz(&m));
    }

    #[test]
    fn normal_indices_examples() {
        assert_eq!(normal_indices(&ints(&[1, 0, 1, 0, 2, 0]), 3), vec![1, 2, 3]);
        assert_eq!(normal_indices(&ints(&[-1, 0, 0, 0]), 1), vec![1]);
        // moments of -1/(λ^2 - 1): the Hankel rank is 2, so 2 is the only normal index
        let s = ints(&[0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(normal_indices(&s, 4), vec![2]);
        for n in 1..=4 {
            assert_eq!(det_leibniz(&hankel(&s, n)).is_zero(), n != 2);
        }
    }
}
