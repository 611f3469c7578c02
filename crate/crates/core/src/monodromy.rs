//! Monodromy matrices of periodic generalized Jacobi matrices and their inverse
//! problem.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactpoly::{squarefree_split, Poly, Rat, ScaledMatrixPoly};
use crate::gjm::PeriodData;
use crate::pfrac::{expand, product, transfer_matrix, PStep, Tail, Terminal};

/// Product of the transfer matrices over one period.
pub fn monodromy(period: &PeriodData) -> ScaledMatrixPoly {
    let ws: Vec<ScaledMatrixPoly> = period.blocks().iter().map(transfer_matrix).collect();
    product(&ws)
}

/// Individual admissibility conditions for a candidate monodromy `M/√D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub det_one: bool,
    pub degrees_ok: bool,
    pub lead_t22_positive: bool,
    pub strict_leading_equality: bool,
    pub expandable: bool,
}

impl AdmissibilityReport {
    /// Everything except `strict_leading_equality`, which true monodromies with
    /// `β_{s-1} ≠ 1` violate.
    pub fn verdict(&self) -> bool {
        self.det_one && self.degrees_ok && self.lead_t22_positive && self.expandable
    }
}

fn terminating_expansion(t: &ScaledMatrixPoly) -> Option<Vec<PStep>> {
    let tail = Tail::rational(t.m[0][1].clone(), t.m[1][1].clone()).ok()?;
    let max = t.m[1][1].degree()? + 1;
    match expand(&tail, max) {
        Ok(f) if f.terminal == Terminal::Terminated => Some(f.steps),
        _ => None,
    }
}

pub fn check_admissible(t: &ScaledMatrixPoly) -> AdmissibilityReport {
    let m = &t.m;
    let d22 = m[1][1].deg_i();
    AdmissibilityReport {
        det_one: t.det_is_scale() && t.is_j_unitary(),
        degrees_ok: m[0][1].deg_i() < d22 && m[1][0].deg_i() < d22,
        lead_t22_positive: m[1][1].lead().is_positive(),
        strict_leading_equality: !m[1][0].is_zero() && m[1][0].lead().abs() == m[1][1].lead().abs(),
        expandable: terminating_expansion(t).is_some(),
    }
}

/// The unique period whose monodromy is `t`.
pub fn reconstruct(t: &ScaledMatrixPoly) -> Result<PeriodData> {
    if !check_admissible(t).verdict() {
        return Err(Error::NotAdmissible);
    }
    let mut steps = terminating_expansion(t).ok_or(Error::NotAdmissible)?;
    // m22 = c P̂_s with P̂_s monic, so the normalized scale is D / c²
    let c = t.m[1][1].lead();
    let known: Rat = steps[..steps.len() - 1].iter().map(|s| s.beta.clone()).product();
    let beta = &t.d / (&c * &c * known);
    steps.last_mut().expect("nonempty expansion").beta = beta;
    let period = PeriodData::new(steps)?;
    if monodromy(&period) != *t {
        return Err(Error::InconsistentScale);
    }
    Ok(period)
}

/// `φ = (√R - U)/V` with `deg R = 2n`, `deg U = n`, `deg V < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicForm {
    pub r: Poly,
    pub u: Poly,
    pub v: Poly,
}

/// Solution of `X² - R Y² = D` together with `(U² - R) Y = V Z`, where `D` is
/// `sqrt_scale`. Dividing `X, Y, Z` by `√D` gives the unscaled identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellCertificate {
    pub x: Poly,
    pub y: Poly,
    pub z: Poly,
    pub sqrt_scale: Rat,
}

impl PellCertificate {
    pub fn pell_holds(&self, r: &Poly) -> bool {
        &(&self.x * &self.x) - &(&(&self.y * &self.y) * r) == Poly::constant(self.sqrt_scale.clone())
    }

    pub fn abel_holds(&self, form: &AlgebraicForm) -> bool {
        let lhs = &(&(&form.u * &form.u) - &form.r) * &self.y;
        lhs == &form.v * &self.z
    }
}

/// Algebraic form of the m-function fixed by `t`, with the Pell certificate
/// read off the entries: `m11 = X - YU`, `m22 = X + YU`, `m21 = YV`, `m12 = -Z`.
pub fn algebraic_form(t: &ScaledMatrixPoly) -> Result<(AlgebraicForm, PellCertificate)> {
    let m = &t.m;
    let two = Rat::from_integer(2.into());
    let x = (&m[0][0] + &m[1][1]).scale(&two.recip());
    if x.is_constant() {
        return Err(Error::DegenerateTrace);
    }
    let disc = &(&x * &x) - &Poly::constant(t.d.clone());
    let (core, sq) = squarefree_split(&disc)?;
    if core.is_constant() {
        return Err(Error::NonsquareObstruction("trace"));
    }
    let r = core.monic();
    let mut y = sq.scale(&x.lead().abs());
    let diff = &m[1][1] - &m[0][0];
    if diff.is_zero() {
        return Err(Error::NonsquareObstruction("U"));
    }
    let mut u = diff.exact_div(&y.scale(&two)).ok_or(Error::NonsquareObstruction("U"))?;
    if u.lead().is_negative() {
        y = -y;
        u = -u;
    }
    let v = m[1][0].exact_div(&y).ok_or(Error::NonsquareObstruction("V"))?;
    let z = -&m[0][1];
    let form = AlgebraicForm { r, u, v };
    let cert = PellCertificate { x, y, z, sqrt_scale: t.d.clone() };
    if !cert.pell_holds(&form.r) || !cert.abel_holds(&form) {
        return Err(Error::NonsquareObstruction("Pell identities"));
    }
    Ok((form, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, ratio};
    use crate::pfrac::recurrence;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn smp(m: [[&[i64]; 2]; 2], d: i64) -> ScaledMatrixPoly {
        ScaledMatrixPoly::new([[p(m[0][0]), p(m[0][1])], [p(m[1][0]), p(m[1][1])]], rat(d))
    }

    fn period(v: &[(&[i64], i32, Rat)]) -> PeriodData {
        PeriodData::new(v.iter().map(|(c, e, b)| PStep::new(p(c), *e, b.clone()).unwrap()).collect()).unwrap()
    }

    #[test]
    fn monodromy_examples() {
        let m = monodromy(&period(&[(&[0, 1], 1, rat(1))]));
        assert_eq!((m.m, m.d), (smp([[&[], &[-1]], [&[1], &[0, 1]]], 1).m, rat(1)));
        let m = monodromy(&period(&[(&[0, 1], 1, rat(1)), (&[0, 1], -1, rat(1))]));
        assert_eq!(m.m, smp([[&[1], &[0, -1]], [&[0, -1], &[1, 0, 1]]], 1).m);
        let m = monodromy(&period(&[(&[0, 1], 1, rat(1)), (&[0, 1], -1, rat(4))]));
        assert_eq!(m.m, smp([[&[4], &[0, -1]], [&[0, -4], &[1, 0, 1]]], 4).m);
        assert_eq!(m.d, rat(4));
    }

    #[test]
    fn monodromy_matches_recurrence_form() {
        let per = period(&[
            (&[1, -2, 1], -1, ratio(9, 4)),
            (&[0, 1], 1, rat(3)),
            (&[2, 0, 3, 1], -1, ratio(1, 7)),
        ]);
        let s = per.len();
        let rec = recurrence(per.blocks());
        let last = &per.blocks()[s - 1];
        let eb = Rat::from_integer(last.epsilon.into()) * &last.beta;
        let want = ScaledMatrixPoly::new(
            [
                [rec.qhat[s - 1].scale(&-&eb), -&rec.qhat[s]],
                [rec.phat[s - 1].scale(&eb), rec.phat[s].clone()],
            ],
            per.blocks().iter().map(|b| b.beta.clone()).product(),
        );
        let m = monodromy(&per);
        assert_eq!(m.m, want.m);
        assert_eq!(m.d, want.d);
        assert!(m.det_is_scale() && m.is_j_unitary());
        assert_eq!(reconstruct(&m).unwrap(), per);
    }

    #[test]
    fn admissibility_examples() {
        let r = check_admissible(&smp([[&[1], &[0, -1]], [&[0, -1], &[1, 0, 1]]], 1));
        assert!(r.det_one && r.degrees_ok && r.lead_t22_positive && r.strict_leading_equality && r.expandable);
        let r = check_admissible(&smp([[&[], &[1]], [&[-1], &[0, 2]]], 1));
        assert!(r.det_one && r.degrees_ok && !r.expandable && !r.verdict());
        let r = check_admissible(&smp([[&[], &[-1]], [&[4], &[0, 1]]], 4));
        assert!(r.det_one && !r.strict_leading_equality && r.expandable && r.verdict());
        let r = check_admissible(&smp([[&[], &[-1]], [&[1], &[0, 1]]], 2));
        assert!(!r.det_one);
    }

    #[test]
    fn reconstruct_examples() {
        let got = reconstruct(&smp([[&[1], &[0, -1]], [&[0, -1], &[1, 0, 1]]], 1)).unwrap();
        assert_eq!(got, period(&[(&[0, 1], 1, rat(1)), (&[0, 1], -1, rat(1))]));
        let got = reconstruct(&smp([[&[], &[-1]], [&[1], &[0, 1]]], 1)).unwrap();
        assert_eq!(got, period(&[(&[0, 1], 1, rat(1))]));
        let got = reconstruct(&smp([[&[], &[-1]], [&[4], &[0, 1]]], 4)).unwrap();
        assert_eq!(got, period(&[(&[0, 1], 1, rat(4))]));
        // the same matrix written with a non-reduced scale
        let got = reconstruct(&smp([[&[], &[-3]], [&[12], &[0, 3]]], 36)).unwrap();
        assert_eq!(got, period(&[(&[0, 1], 1, rat(4))]));
        // T² of free Jacobi
        let got = reconstruct(&smp([[&[-1], &[0, -1]], [&[0, 1], &[-1, 0, 1]]], 1)).unwrap();
        assert_eq!(got, period(&[(&[0, 1], 1, rat(1)), (&[0, 1], 1, rat(1))]));
        assert_eq!(reconstruct(&smp([[&[], &[1]], [&[-1], &[0, 2]]], 1)), Err(Error::NotAdmissible));
        // m11 inconsistent with the rest
        let bad = smp([[&[0, 1], &[-1]], [&[0, 1], &[1, 0, 1]]], 1);
        assert!(reconstruct(&bad).is_err());
    }

    #[test]
    fn algebraic_form_examples() {
        let (f, c) = algebraic_form(&smp([[&[1], &[0, -1]], [&[0, -1], &[1, 0, 1]]], 1)).unwrap();
        assert_eq!((f.r, f.u, f.v), (p(&[4, 0, 1]), p(&[0, 1]), p(&[-2])));
        assert_eq!(c.x, Poly::new(vec![rat(1), rat(0), ratio(1, 2)]));
        assert_eq!((c.y, c.z), (Poly::new(vec![rat(0), ratio(1, 2)]), p(&[0, 1])));

        let (f, c) = algebraic_form(&smp([[&[], &[-1]], [&[1], &[0, 1]]], 1)).unwrap();
        assert_eq!((f.r, f.u, f.v), (p(&[-4, 0, 1]), p(&[0, 1]), p(&[2])));
        assert_eq!((c.y, c.z), (Poly::constant(ratio(1, 2)), p(&[1])));

        let (f, _) = algebraic_form(&smp([[&[-1], &[0, -1]], [&[0, 1], &[-1, 0, 1]]], 1)).unwrap();
        assert_eq!((f.r, f.u, f.v), (p(&[-4, 0, 1]), p(&[0, 1]), p(&[2])));

        // scale 4: Δ = (λ² + 5)/2
        let (f, c) = algebraic_form(&smp([[&[4], &[0, -1]], [&[0, -4], &[1, 0, 1]]], 4)).unwrap();
        assert_eq!((f.r.clone(), f.u.clone(), f.v.clone()), (p(&[9, 0, 10, 0, 1]), p(&[-3, 0, 1]), p(&[0, -8])));
        assert_eq!(c.y, Poly::constant(ratio(1, 2)));
        assert!(c.pell_holds(&f.r) && c.abel_holds(&f));
        assert_eq!(
            algebraic_form(&smp([[&[1], &[]], [&[], &[1]]], 1)),
            Err(Error::DegenerateTrace)
        );
    }
}
