//! Polynomial Pell–Abel equations and realization of an algebraic m-function
//! `(√R - U)/V` as a periodic generalized Jacobi matrix.

use num_complex::Complex64;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactpoly::{sqrt_rat, sqrt_series, squarefree_split, to_f64, Poly, Rat, ScaledMatrixPoly};
use crate::gjm::PeriodData;
use crate::monodromy::{check_admissible, monodromy, reconstruct, AlgebraicForm, PellCertificate};
use crate::pfrac::{expand, surd_germ, Tail, Terminal};
use crate::spectral::m_eval;

/// State `(√R + U_j)/V_j` of the continued-fraction expansion of `√R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdState {
    pub u: Poly,
    pub v: Poly,
    pub r: Poly,
}

/// One step of [`surd_cf`]: partial quotient, state, convergent `x_j/y_j` and the
/// norm `x_j² - R y_j²` when it is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdCfStep {
    pub a: Poly,
    pub state: SurdState,
    pub x: Poly,
    pub y: Poly,
    pub c: Option<Rat>,
}

fn check_radicand(r: &Poly) -> Result<usize> {
    let d = r.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::DegreeConstraintViolated("deg R must be at least 2".into()));
    }
    sqrt_series(r, 1)?;
    if r.is_perfect_square() {
        return Err(Error::PerfectSquareR);
    }
    Ok(d / 2)
}

/// Polynomial part of `(a + b√R)/d`.
fn surd_poly_part(a: &Poly, b: &Poly, d: &Poly, r: &Poly) -> Result<Poly> {
    Ok(surd_germ(a, b, d, r, 0)?.poly_part().expect("precision reaches λ^0"))
}

/// Lazy continued-fraction expansion of `√R` with its convergents.
#[derive(Clone, Debug)]
pub struct SurdCf {
    r: Poly,
    u: Poly,
    v: Poly,
    x: (Poly, Poly),
    y: (Poly, Poly),
}

impl SurdCf {
    pub fn new(r: &Poly) -> Result<Self> {
        check_radicand(r)?;
        Ok(Self {
            r: r.clone(),
            u: Poly::zero(),
            v: Poly::one(),
            x: (Poly::one(), Poly::zero()),
            y: (Poly::zero(), Poly::one()),
        })
    }
}

impl Iterator for SurdCf {
    type Item = SurdCfStep;

    fn next(&mut self) -> Option<SurdCfStep> {
        let r = &self.r;
        let a = surd_poly_part(&self.u, &Poly::one(), &self.v, r).expect("radicand validated");
        let x = &(&a * &self.x.0) + &self.x.1;
        let y = &(&a * &self.y.0) + &self.y.1;
        let norm = &(&x * &x) - &(&(&y * &y) * r);
        let c = (norm.is_constant() && !norm.is_zero()).then(|| norm.coeff(0));
        let u_next = &(&a * &self.v) - &self.u;
        let v_next = (r - &(&u_next * &u_next)).exact_div(&self.v).expect("V_j divides R - U_{j+1}²");
        let state = SurdState {
            u: std::mem::replace(&mut self.u, u_next),
            v: std::mem::replace(&mut self.v, v_next),
            r: r.clone(),
        };
        self.x = (x.clone(), std::mem::take(&mut self.x.0));
        self.y = (y.clone(), std::mem::take(&mut self.y.0));
        Some(SurdCfStep { a, state, x, y, c })
    }
}

pub fn surd_cf(r: &Poly, max_steps: usize) -> Result<Vec<SurdCfStep>> {
    Ok(SurdCf::new(r)?.take(max_steps).collect())
}

fn normalize_pell(x: Poly, y: Poly) -> (Poly, Poly) {
    let x = if x.lead().is_negative() { -x } else { x };
    let y = if y.lead().is_negative() { -y } else { y };
    (x, y)
}

/// Minimal-degree solution of `X² - R Y² = 1` with `Y ≠ 0`, or `None` when no
/// constant norm appears within `max_steps` partial quotients.
pub fn pell_fundamental(r: &Poly, max_steps: usize) -> Result<Option<(Poly, Poly)>> {
    for st in SurdCf::new(r)?.take(max_steps) {
        let Some(c) = st.c else { continue };
        let mut cands = Vec::new();
        if let Some(d) = sqrt_rat(&c) {
            let inv = d.recip();
            cands.push((st.x.scale(&inv), st.y.scale(&inv)));
        }
        let inv = c.recip();
        let dx = (&(&st.x * &st.x) + &(&(&st.y * &st.y) * r)).scale(&inv);
        let dy = (&st.x * &st.y).scale(&(Rat::from_integer(2.into()) * &inv));
        cands.push((dx, dy));
        let (x, y) = cands.into_iter().min_by_key(|(x, _)| x.deg_i()).expect("at least one candidate");
        debug_assert!(&(&x * &x) - &(&(&y * &y) * r) == Poly::one());
        return Ok(Some(normalize_pell(x, y)));
    }
    Ok(None)
}

/// `X_k + Y_k √R = (X + Y √R)^k`.
pub fn pell_power(sol: &(Poly, Poly), r: &Poly, k: usize) -> (Poly, Poly) {
    let (x, y) = sol;
    let ry = r * y;
    let (mut xk, mut yk) = (Poly::one(), Poly::zero());
    for _ in 0..k {
        let nx = &(x * &xk) + &(&ry * &yk);
        let ny = &(x * &yk) + &(y * &xk);
        (xk, yk) = (nx, ny);
    }
    (xk, yk)
}

/// Both certificate identities, in scaled form.
pub fn verify_certificate(form: &AlgebraicForm, cert: &PellCertificate) -> bool {
    !cert.y.is_zero() && cert.pell_holds(&form.r) && cert.abel_holds(form)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizeStatus {
    Realized,
    NotRealizable { reason: String },
    Inconclusive { bound_hit: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizeReport {
    pub status: RealizeStatus,
    /// Input after choosing the decaying branch and removing common factors.
    pub form: AlgebraicForm,
    pub period: Option<PeriodData>,
    pub monodromy: Option<ScaledMatrixPoly>,
    pub certificate: Option<PellCertificate>,
    /// Period found through Pell solutions and monodromy reconstruction.
    pub pell_route: Option<PeriodData>,
    /// Outcome of the direct expansion of the surd.
    pub expansion: Option<Terminal>,
    /// The two routes agree, both on success and on failure.
    pub cross_check: bool,
}

/// Validates `form`, selects the decaying branch and divides out common factors
/// of `U`, `V` and the square part of `R`.
pub fn canonical_form(form: &AlgebraicForm) -> Result<AlgebraicForm> {
    let n = check_radicand(&form.r)?;
    if form.v.is_zero() {
        return Err(Error::DegreeConstraintViolated("V must be nonzero".into()));
    }
    if form.u.degree() != Some(n) {
        return Err(Error::DegreeConstraintViolated(format!("deg U must equal {n}")));
    }
    if form.v.deg_i() >= n as i64 {
        return Err(Error::DegreeConstraintViolated(format!("deg V must be below {n}")));
    }
    let decays = |u: &Poly, v: &Poly| -> Result<bool> {
        Ok(surd_poly_part(&-u, &Poly::one(), v, &form.r)?.is_zero())
    };
    let (u, v) = if decays(&form.u, &form.v)? {
        (form.u.clone(), form.v.clone())
    } else if decays(&-&form.u, &-&form.v)? {
        (-&form.u, -&form.v)
    } else {
        return Err(Error::NoDecayingBranch);
    };
    let (_, sq) = squarefree_split(&form.r)?;
    let g = u.gcd(&v).gcd(&sq);
    let div = |p: &Poly, q: &Poly| p.exact_div(q).expect("gcd divides");
    Ok(AlgebraicForm { r: div(&form.r, &(&g * &g)), u: div(&u, &g), v: div(&v, &g) })
}

fn cauchy_bound(p: &Poly, extra: f64) -> f64 {
    let c = p.to_f64_coeffs();
    let lead = c.last().copied().unwrap_or(1.0).abs();
    let mut m = c[..c.len().saturating_sub(1)].iter().map(|x| x.abs()).fold(0.0, f64::max);
    if !c.is_empty() {
        m = m.max(c[0].abs() + extra);
    }
    1.0 + m / lead
}

/// `(√R - U)/V` at `z`, computed as `(R - U²) / (V (√R + U))` to avoid cancellation.
fn phi_direct(form: &AlgebraicForm, z: Complex64) -> Complex64 {
    let n = form.r.degree().unwrap_or(0) / 2;
    let lead_root = to_f64(&sqrt_rat(&form.r.lead()).expect("square leading coefficient"));
    let mut s = form.r.eval_complex(z).sqrt();
    if (s / (lead_root * z.powu(n as u32))).re < 0.0 {
        s = -s;
    }
    let num = (&form.r - &(&form.u * &form.u)).eval_complex(z);
    num / (form.v.eval_complex(z) * (s + form.u.eval_complex(z)))
}

const AGREEMENT: f64 = 1e-9;

/// Compares the m-function of `period` with `(√R - U)/V` at 8 points on a
/// circle enclosing the spectrum.
fn m_function_agrees(period: &PeriodData, form: &AlgebraicForm) -> bool {
    let t = monodromy(period);
    let trace = t.trace();
    let extra = 2.0 * to_f64(trace.sqrt_scale()).sqrt();
    let t21 = &t.m[1][0];
    let radius = 2.0
        * [cauchy_bound(trace.poly(), extra), cauchy_bound(&form.r, 0.0), cauchy_bound(&form.v, 0.0), cauchy_bound(t21, 0.0)]
            .into_iter()
            .fold(1.0, f64::max);
    (0..8).all(|k| {
        let z = Complex64::from_polar(radius, std::f64::consts::PI * (0.125 + 0.25 * k as f64));
        match m_eval(period, z, 1e-10) {
            Ok(m) => (m - phi_direct(form, z)).norm() <= AGREEMENT * m.norm().max(1.0),
            Err(_) => false,
        }
    })
}

/// `(m22 - m11) V = 2 m21 U` and `m21 (U² - R) + m12 V² = 0`: the fixed-point
/// quadratic of `T` is proportional to `V² φ² + 2UV φ + U² - R`.
fn fixes_form(t: &ScaledMatrixPoly, form: &AlgebraicForm) -> bool {
    let m = &t.m;
    let two = Poly::constant(Rat::from_integer(2.into()));
    let a = &(&(&m[1][1] - &m[0][0]) * &form.v) - &(&(&two * &m[1][0]) * &form.u);
    let b = &(&m[1][0] * &(&(&form.u * &form.u) - &form.r)) + &(&m[0][1] * &(&form.v * &form.v));
    a.is_zero() && b.is_zero()
}

enum PellRoute {
    Hit(PeriodData),
    NoPellSolution,
    Exhausted,
}

fn pell_route(form: &AlgebraicForm, max_cf_steps: usize, max_power: usize) -> Result<PellRoute> {
    let Some(fund) = pell_fundamental(&form.r, max_cf_steps)? else {
        return Ok(PellRoute::NoPellSolution);
    };
    let u2r = &(&form.u * &form.u) - &form.r;
    for k in 1..=max_power {
        let (xk, yk) = pell_power(&fund, &form.r, k);
        for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let x = xk.scale(&Rat::from_integer(sx.into()));
            let y = yk.scale(&Rat::from_integer(sy.into()));
            let Some(z) = (&u2r * &y).exact_div(&form.v) else { continue };
            let (t11, t22) = (&x - &(&y * &form.u), &x + &(&y * &form.u));
            let yv = &y * &form.v;
            let orientations = [
                [[t11.clone(), yv.clone()], [-&z, t22.clone()]],
                [[t11.clone(), -&yv], [z.clone(), t22.clone()]],
                [[t11.clone(), -&z], [yv.clone(), t22.clone()]],
                [[t11.clone(), z.clone()], [-&yv, t22.clone()]],
            ];
            for m in orientations {
                let t = ScaledMatrixPoly::new(m, Rat::one());
                if !check_admissible(&t).verdict() || !fixes_form(&t, form) {
                    continue;
                }
                let Ok(period) = reconstruct(&t) else { continue };
                if m_function_agrees(&period, form) {
                    return Ok(PellRoute::Hit(period));
                }
            }
        }
    }
    Ok(PellRoute::Exhausted)
}

/// Certificate read off a monodromy that fixes `form`.
fn certificate_from_monodromy(t: &ScaledMatrixPoly, form: &AlgebraicForm) -> Option<PellCertificate> {
    let m = &t.m;
    let half = Rat::new(1.into(), 2.into());
    let x = (&m[0][0] + &m[1][1]).scale(&half);
    let y = (&m[1][1] - &m[0][0]).scale(&half).exact_div(&form.u)?;
    let cert = PellCertificate { x, y, z: -&m[0][1], sqrt_scale: t.d.clone() };
    verify_certificate(form, &cert).then_some(cert)
}

/// Same infinite matrix, possibly written with different period lengths.
fn same_operator(a: &PeriodData, b: &PeriodData) -> bool {
    let n = a.len() * b.len();
    (0..n).all(|j| a.block(j) == b.block(j))
}

/// Decides whether `(√R - U)/V` is the m-function of a periodic generalized
/// Jacobi matrix, by direct expansion and by the Pell route.
pub fn realize(form: &AlgebraicForm, max_cf_steps: usize, max_power: usize) -> Result<RealizeReport> {
    let form = canonical_form(form)?;
    let tail = Tail::surd(-&form.u, Poly::one(), form.v.clone(), form.r.clone())?;
    let (expansion, direct, obstruction) = match expand(&tail, max_cf_steps) {
        Ok(f) => match f.terminal {
            Terminal::Periodic { .. } => (Some(f.terminal), PeriodData::new(f.steps).ok(), None),
            Terminal::PrePeriodic { .. } => (Some(f.terminal), None, Some("pre-periodic expansion")),
            Terminal::Terminated => (Some(f.terminal), None, Some("terminating expansion")),
            Terminal::Truncated => (Some(f.terminal), None, None),
        },
        Err(Error::NotExpandable { .. }) => (None, None, Some("normalization obstruction")),
        Err(e) => return Err(e),
    };
    let direct = direct.filter(|p| m_function_agrees(p, &form));

    let (pell, pell_bound) = match pell_route(&form, max_cf_steps, max_power)? {
        PellRoute::Hit(h) => (Some(h), None),
        PellRoute::NoPellSolution => (None, Some("max_cf_steps")),
        PellRoute::Exhausted => (None, Some("max_power")),
    };
    let cross_check = match (&direct, &pell) {
        (Some(a), Some(b)) => same_operator(a, b),
        (None, None) => true,
        _ => false,
    };

    let mut report = RealizeReport {
        status: RealizeStatus::Inconclusive { bound_hit: String::new() },
        form: form.clone(),
        period: None,
        monodromy: None,
        certificate: None,
        pell_route: pell.clone(),
        expansion,
        cross_check,
    };
    match direct.or(pell) {
        Some(period) => {
            let t = monodromy(&period);
            let cert = certificate_from_monodromy(&t, &form).ok_or(Error::NonsquareObstruction("certificate"))?;
            report.status = RealizeStatus::Realized;
            report.certificate = Some(cert);
            report.monodromy = Some(t);
            report.period = Some(period);
        }
        None => {
            report.status = match obstruction {
                Some(reason) => RealizeStatus::NotRealizable { reason: reason.into() },
                None => RealizeStatus::Inconclusive {
                    bound_hit: pell_bound.unwrap_or("max_cf_steps").into(),
                },
            };
        }
    }
    Ok(report)
}
