//! Spectrum of a periodic generalized Jacobi matrix and its m-function.

mod roots;

pub use roots::{roots, roots_with_multiplicity};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactpoly::{to_f64, Poly, Rat, ScaledPoly};
use crate::gjm::PeriodData;
use crate::monodromy::monodromy;
use crate::pfrac::recurrence;
use roots::{float_roots, DdPoly};

/// `Δ = trace T`, kept as `poly / √scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    pub delta: ScaledPoly,
}

impl Discriminant {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.delta.eval_complex(z)
    }

    /// `scale · (Δ² - 4)`, whose roots are the band endpoints.
    pub fn endpoint_polynomial(&self) -> Poly {
        let p = self.delta.poly();
        &(p * p) - &Poly::constant(Rat::from_integer(4.into()) * self.delta.sqrt_scale())
    }
}

pub fn discriminant(period: &PeriodData) -> Discriminant {
    Discriminant { delta: monodromy(period).trace() }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Spectrum {
    /// Roots of `Δ² - 4`, repeated by multiplicity.
    pub band_endpoints: Vec<Complex64>,
    /// Polylines tracing `{λ : Δ(λ) ∈ [-2, 2]}`.
    pub arcs: Vec<Vec<Complex64>>,
    pub eigenvalues: Vec<Complex64>,
}

/// Bands, endpoints and isolated eigenvalues. `grid` is the number of samples
/// of `θ ∈ [0, π]` used to trace `Δ(λ) = 2 cos θ`.
pub fn bands(period: &PeriodData, grid: usize, tol: f64) -> Result<Spectrum> {
    assert!(grid >= 2, "grid needs at least two samples");
    let disc = discriminant(period);
    let band_endpoints = roots(&disc.endpoint_polynomial(), tol)?;
    let arcs = trace_arcs(&disc, grid);
    let eigenvalues = eigenvalues(period, tol)?;
    Ok(Spectrum { band_endpoints, arcs, eigenvalues })
}

/// Roots `z` of `P̂_{s-1}` with `|ε_{s-1} β_{s-1} Q̂_{s-1}(z)| > |P̂_s(z)|`.
///
/// The comparison is strict up to a relative margin of `tol`; multiple roots
/// are tested once.
pub fn eigenvalues(period: &PeriodData, tol: f64) -> Result<Vec<Complex64>> {
    let s = period.len();
    let rec = recurrence(period.blocks());
    let last = &period.blocks()[s - 1];
    let p_prev = &rec.phat[s - 1];
    if p_prev.is_constant() {
        return Ok(Vec::new());
    }
    let q = DdPoly::new(&rec.qhat[s - 1].scale(&(Rat::from_integer(last.epsilon.into()) * &last.beta)));
    let p = DdPoly::new(&rec.phat[s]);
    let mut out = Vec::new();
    for (z, _) in roots_with_multiplicity(p_prev, tol)? {
        let (a, b) = (q.eval(z).norm(), p.eval(z).norm());
        if a - b > tol * a.max(b).max(1.0) {
            out.push(z);
        }
    }
    Ok(out)
}

fn trace_arcs(disc: &Discriminant, grid: usize) -> Vec<Vec<Complex64>> {
    let coeffs = disc.delta.poly().to_f64_coeffs();
    let root_scale = to_f64(disc.delta.sqrt_scale()).sqrt();
    let samples: Vec<Vec<Complex64>> = (0..grid)
        .map(|k| {
            let theta = std::f64::consts::PI * k as f64 / (grid - 1) as f64;
            let mut c = coeffs.clone();
            c[0] -= 2.0 * theta.cos() * root_scale;
            float_roots(&c)
        })
        .collect();

    // greedy nearest-neighbour matching between consecutive samples
    let mut paths: Vec<Vec<Complex64>> = samples[0].iter().map(|&z| vec![z]).collect();
    let mut steps = Vec::new();
    for next in &samples[1..] {
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (i, path) in paths.iter().enumerate() {
            let last = *path.last().expect("nonempty path");
            for (j, z) in next.iter().enumerate() {
                pairs.push(((last - z).norm(), i, j));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (mut used_p, mut used_z) = (vec![false; paths.len()], vec![false; next.len()]);
        for (dist, i, j) in pairs {
            if used_p[i] || used_z[j] {
                continue;
            }
            used_p[i] = true;
            used_z[j] = true;
            paths[i].push(next[j]);
            steps.push(dist);
        }
    }

    // break paths at jumps much larger than a typical step
    let mut sorted = steps.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted.get(sorted.len() / 2).copied().unwrap_or(0.0);
    let threshold = 10.0 * median.max(f64::EPSILON);
    let mut arcs = Vec::new();
    for path in paths {
        let mut cur = vec![path[0]];
        for w in path.windows(2) {
            if (w[1] - w[0]).norm() > threshold {
                arcs.push(std::mem::take(&mut cur));
            }
            cur.push(w[1]);
        }
        arcs.push(cur);
    }
    merge_arcs(arcs, threshold.min(1e-6).max(1e-9))
}

/// Joins arcs whose endpoints coincide, e.g. two halves of a band meeting at a
/// double root of `Δ ∓ 2`.
fn merge_arcs(mut arcs: Vec<Vec<Complex64>>, eps: f64) -> Vec<Vec<Complex64>> {
    let near = |a: Complex64, b: Complex64| (a - b).norm() <= eps * a.norm().max(1.0);
    'outer: loop {
        for i in 0..arcs.len() {
            for j in (i + 1)..arcs.len() {
                let (a0, a1) = (arcs[i][0], *arcs[i].last().expect("nonempty"));
                let (b0, b1) = (arcs[j][0], *arcs[j].last().expect("nonempty"));
                let mut b = arcs[j].clone();
                let joined = if near(a1, b0) {
                    let mut a = arcs[i].clone();
                    a.extend(b.drain(1..));
                    a
                } else if near(a1, b1) {
                    b.reverse();
                    let mut a = arcs[i].clone();
                    a.extend(b.drain(1..));
                    a
                } else if near(a0, b1) {
                    b.extend(arcs[i][1..].iter().copied());
                    b
                } else if near(a0, b0) {
                    b.reverse();
                    b.extend(arcs[i][1..].iter().copied());
                    b
                } else {
                    continue;
                };
                arcs.remove(j);
                arcs[i] = joined;
                continue 'outer;
            }
        }
        return arcs;
    }
}

/// Value of the m-function at `λ`: the root of
/// `t21 m² + (t22 - t11) m - t12 = 0` whose Floquet multiplier
/// `w = t21 m + t22` satisfies `|w| > 1`.
pub fn m_eval(period: &PeriodData, lambda: Complex64, tol: f64) -> Result<Complex64> {
    let t = monodromy(period).eval_complex(lambda);
    let (a, b, c) = (t[1][0], t[1][1] - t[0][0], -t[0][1]);
    let norm = a.norm().max(b.norm()).max(c.norm()).max(1.0);
    let multiplier = |m: Complex64| t[1][0] * m + t[1][1];

    let m = if a.norm() <= tol * norm {
        // t21 = 0: multipliers are t11 and t22 = 1/t11
        let gap = t[1][1].norm() - 1.0;
        if gap.abs() < tol || gap < 0.0 || b.norm() == 0.0 {
            return Err(Error::OnSpectrum { gap });
        }
        -c / b
    } else {
        let sq = (b * b - 4.0 * a * c).sqrt();
        let big = if (b + sq).norm() >= (b - sq).norm() { b + sq } else { b - sq };
        let q = -big / 2.0;
        let candidates = [q / a, c / q];
        let (m, w) = candidates
            .iter()
            .filter(|m| m.is_finite())
            .map(|&m| (m, multiplier(m)))
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
            .ok_or(Error::OnSpectrum { gap: 0.0 })?;
        let gap = w.norm() - 1.0;
        if gap < tol {
            return Err(Error::OnSpectrum { gap });
        }
        m
    };

    let f = |m: Complex64| (a * m + b) * m + c;
    let df = 2.0 * a * m + b;
    let polished = if df.norm() > 0.0 { m - f(m) / df } else { m };
    let m = if f(polished).norm() <= f(m).norm() { polished } else { m };
    let residual = f(m).norm() / norm;
    if !(residual <= tol) {
        return Err(Error::InaccurateEvaluation { residual, tol });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, ratio};
    use crate::pfrac::PStep;

    fn period(v: &[(&[i64], i32, Rat)]) -> PeriodData {
        PeriodData::new(v.iter().map(|(c, e, b)| PStep::new(Poly::from_ints(c), *e, b.clone()).unwrap()).collect())
            .unwrap()
    }

    fn free() -> PeriodData {
        period(&[(&[0, 1], 1, rat(1))])
    }

    fn mixed(beta: i64) -> PeriodData {
        period(&[(&[0, 1], 1, rat(1)), (&[0, 1], -1, rat(beta))])
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn contains(set: &[Complex64], z: Complex64) -> bool {
        set.iter().any(|w| (w - z).norm() < 1e-9)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&free()).delta, ScaledPoly::new(Poly::from_ints(&[0, 1]), rat(1)));
        assert_eq!(discriminant(&mixed(1)).delta, ScaledPoly::new(Poly::from_ints(&[2, 0, 1]), rat(1)));
        let d = discriminant(&mixed(4)).delta;
        assert_eq!(d.poly(), &Poly::new(vec![ratio(5, 2), rat(0), ratio(1, 2)]));
        assert_eq!(d.sqrt_scale(), &rat(1));
    }

    #[test]
    fn free_jacobi_bands() {
        let s = bands(&free(), 64, 1e-10).unwrap();
        assert_eq!(s.band_endpoints.len(), 2);
        assert!(contains(&s.band_endpoints, c(-2.0, 0.0)) && contains(&s.band_endpoints, c(2.0, 0.0)));
        assert_eq!(s.arcs.len(), 1);
        assert!(s.arcs[0].iter().all(|z| z.im.abs() < 1e-12 && z.re.abs() <= 2.0 + 1e-12));
        assert!(s.eigenvalues.is_empty());
    }

    #[test]
    fn mixed_sign_bands() {
        let s = bands(&mixed(1), 128, 1e-10).unwrap();
        assert_eq!(s.band_endpoints.len(), 4);
        assert_eq!(s.band_endpoints.iter().filter(|z| z.norm() < 1e-9).count(), 2);
        assert!(contains(&s.band_endpoints, c(0.0, 2.0)) && contains(&s.band_endpoints, c(0.0, -2.0)));
        assert_eq!(s.arcs.len(), 1);
        let arc = &s.arcs[0];
        assert!(arc.iter().all(|z| z.re.abs() < 1e-6 && z.im.abs() <= 2.0 + 1e-9));
        let ends = [arc[0], *arc.last().unwrap()];
        assert!(contains(&ends, c(0.0, 2.0)) && contains(&ends, c(0.0, -2.0)));
        assert!(s.eigenvalues.is_empty());
    }

    #[test]
    fn gap_eigenvalue() {
        let s = bands(&mixed(4), 128, 1e-10).unwrap();
        for z in [c(0.0, 1.0), c(0.0, 3.0), c(0.0, -1.0), c(0.0, -3.0)] {
            assert!(contains(&s.band_endpoints, z));
        }
        assert_eq!(s.arcs.len(), 2);
        for arc in &s.arcs {
            assert!(arc.iter().all(|z| z.re.abs() < 1e-9 && (1.0 - 1e-9..=3.0 + 1e-9).contains(&z.im.abs())));
        }
        assert_eq!(s.eigenvalues.len(), 1);
        assert!(s.eigenvalues[0].norm() < 1e-12);
        let d = discriminant(&mixed(4));
        for z in &s.band_endpoints {
            assert!((d.eval(*z).norm() - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn m_eval_examples() {
        let m = m_eval(&free(), c(2.5, 0.0), 1e-10).unwrap();
        assert!((m - c(-0.5, 0.0)).norm() < 1e-12);
        let m = m_eval(&mixed(1), c(1.0, 0.0), 1e-10).unwrap();
        assert!((m - c((1.0 - 5f64.sqrt()) / 2.0, 0.0)).norm() < 1e-12);
        let m = m_eval(&mixed(1), c(0.0, 3.0), 1e-10).unwrap();
        assert!((m - c(0.0, (3.0 - 5f64.sqrt()) / 2.0)).norm() < 1e-12);
        assert!(matches!(m_eval(&free(), c(1.0, 0.0), 1e-10), Err(Error::OnSpectrum { .. })));
    }

    #[test]
    fn m_eval_decays_and_is_a_fixed_point() {
        for per in [free(), mixed(1), mixed(4), period(&[(&[-1, 0, 1], -1, ratio(1, 4)), (&[3, 1], 1, rat(2))])] {
            let t = monodromy(&per);
            for k in 0..16 {
                let z = Complex64::from_polar(1e3, 0.1 + k as f64 * std::f64::consts::PI / 8.0);
                let m = m_eval(&per, z, 1e-10).unwrap();
                assert!(m.norm() <= 2.0 / z.norm());
                let e = t.eval_complex(z);
                let w = e[1][0] * m + e[1][1];
                let first = e[0][0] * m + e[0][1];
                assert!((first - w * m).norm() <= 1e-9 * w.norm());
            }
        }
    }

    #[test]
    fn m_eval_at_zero_of_t21_uses_linear_root() {
        // t21 = -4λ vanishes at 0, which is an eigenvalue for β = 4 and not for β = 1
        assert!(matches!(m_eval(&mixed(4), c(0.0, 0.0), 1e-10), Err(Error::OnSpectrum { .. })));
        // off the spectrum: (λ, +1, 4),(λ, +1, 1) has t = diag(-1/2, -2) at 0
        let per = period(&[(&[0, 1], 1, rat(4)), (&[0, 1], 1, rat(1))]);
        let m = m_eval(&per, c(0.0, 0.0), 1e-10).unwrap();
        assert!(m.norm() < 1e-15);
        let near = m_eval(&per, c(0.0, 1e-6), 1e-10).unwrap();
        assert!((near - c(0.0, 1e-6 / 3.0)).norm() < 1e-12);
    }
}
