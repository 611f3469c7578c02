//! P-fraction expansion over rational, quadratic-surd and series tails.
//!
//! One step rewrites a decaying tail `φ` as `-1/φ = ε p + β φ'`, where `p` is
//! monic, `ε = ±1`, `β > 0` and `φ'` decays with first moment `±1`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{
    rat_gcd, sign, sqrt_series, sqrt_terms_for_cutoff, Poly, Rat, ScaledMatrixPoly,
    SeriesAtInfinity,
};

/// One partial denominator `(p_j, ε_j, β_j = b_j²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PStep {
    pub p: Poly,
    pub epsilon: i32,
    pub beta: Rat,
}

impl PStep {
    pub fn new(p: Poly, epsilon: i32, beta: Rat) -> Result<Self> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        if !beta.is_positive() {
            return Err(Error::NonPositiveBeta(beta));
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::InvalidSign(epsilon.into()));
        }
        Ok(Self { p, epsilon, beta })
    }

    pub fn degree(&self) -> usize {
        self.p.degree().unwrap_or(0)
    }

    fn eps(&self) -> Rat {
        Rat::from_integer(self.epsilon.into())
    }
}

/// A function germ at infinity that is being expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// `num / den`
    Rational { num: Poly, den: Poly },
    /// `(a + b √R) / d`, with `√R` the branch of positive leading coefficient
    Surd { a: Poly, b: Poly, d: Poly, r: Poly },
    Series(SeriesAtInfinity),
}

impl Tail {
    pub fn rational(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if num.is_zero() {
            return Err(Error::ZeroTail);
        }
        let (num, den) = canonical_rational(&num, &den);
        if num.deg_i() >= den.deg_i() {
            return Err(Error::NotDecaying);
        }
        Ok(Tail::Rational { num, den })
    }

    /// Surd tail in canonical form. `R` must have even degree, a positive square
    /// leading coefficient and must not be a perfect square.
    pub fn surd(a: Poly, b: Poly, d: Poly, r: Poly) -> Result<Self> {
        if b.is_zero() || d.is_zero() {
            return Err(Error::DegenerateSurd);
        }
        sqrt_series(&r, 1)?;
        if r.is_perfect_square() {
            return Err(Error::PerfectSquareR);
        }
        let (a, b, d) = canonical_surd(&a, &b, &d);
        Ok(Tail::Surd { a, b, d, r })
    }

    /// Series tail `-Σ s_j λ^(-j-1)` from moments; the first nonvanishing moment
    /// must be ±1.
    pub fn from_moments(moments: &[Rat]) -> Result<Self> {
        let first = moments.iter().find(|s| !s.is_zero()).ok_or(Error::ZeroTail)?;
        if !first.abs().is_one() {
            return Err(Error::NotNormalized(first.clone()));
        }
        Ok(Tail::Series(SeriesAtInfinity::from_moments(moments)))
    }
}

fn canonical_rational(num: &Poly, den: &Poly) -> (Poly, Poly) {
    let g = num.gcd(den);
    let num = num.exact_div(&g).expect("gcd divides");
    let den = den.exact_div(&g).expect("gcd divides");
    let l = den.lead().recip();
    (num.scale(&l), den.scale(&l))
}

/// Removes the common polynomial factor and rational content of `(a, b, d)`
/// and makes `d` have positive leading coefficient.
fn canonical_surd(a: &Poly, b: &Poly, d: &Poly) -> (Poly, Poly, Poly) {
    let g = a.gcd(b).gcd(d);
    let (a, b, d) = (
        a.exact_div(&g).expect("gcd divides"),
        b.exact_div(&g).expect("gcd divides"),
        d.exact_div(&g).expect("gcd divides"),
    );
    let mut c = rat_gcd(a.coeffs().iter().chain(b.coeffs()).chain(d.coeffs()));
    if d.lead().is_negative() {
        c = -c;
    }
    let inv = c.recip();
    (a.scale(&inv), b.scale(&inv), d.scale(&inv))
}

/// Germ of `(a + b√R)/d` at infinity, known at least down to `cutoff`.
pub(crate) fn surd_germ(a: &Poly, b: &Poly, d: &Poly, r: &Poly, cutoff: i64) -> Result<SeriesAtInfinity> {
    let s_cutoff = cutoff + d.deg_i() - b.deg_i();
    let s = sqrt_series(r, sqrt_terms_for_cutoff(r, s_cutoff))?;
    let num = s.mul_poly(b).add_poly(a);
    let germ = num.div_poly(d)?;
    debug_assert!(germ.cutoff() <= cutoff);
    Ok(germ)
}

/// Splits a polynomial part `q` into `(ε, p)` with `p` monic.
fn signed_monic(q: &Poly, step: usize) -> Result<(i32, Poly)> {
    let lead = q.lead();
    if q.degree().unwrap_or(0) == 0 || !lead.abs().is_one() {
        return Err(Error::NotExpandable { lead, step });
    }
    let eps = sign(&lead);
    Ok((eps, q.scale(&lead)))
}

/// One expansion step. `None` as the next tail means the remainder vanished.
pub fn step(tail: &Tail) -> Result<(PStep, Option<Tail>)> {
    step_at(tail, 0)
}

fn step_at(tail: &Tail, index: usize) -> Result<(PStep, Option<Tail>)> {
    match tail {
        Tail::Rational { num, den } => rational_step(num, den, index),
        Tail::Surd { a, b, d, r } => surd_step(a, b, d, r, index),
        Tail::Series(s) => series_step(s, index),
    }
}

fn rational_step(num: &Poly, den: &Poly, index: usize) -> Result<(PStep, Option<Tail>)> {
    if num.is_zero() {
        return Err(Error::ZeroTail);
    }
    if num.deg_i() >= den.deg_i() {
        return Err(Error::NotDecaying);
    }
    let (q, rem) = (-den).divmod(num)?;
    let (epsilon, p) = signed_monic(&q, index)?;
    if rem.is_zero() {
        return Ok((PStep { p, epsilon, beta: Rat::one() }, None));
    }
    let beta = (rem.lead() / num.lead()).abs();
    let (n2, d2) = canonical_rational(&rem.scale(&beta.recip()), num);
    Ok((PStep { p, epsilon, beta }, Some(Tail::Rational { num: n2, den: d2 })))
}

fn surd_step(a: &Poly, b: &Poly, d: &Poly, r: &Poly, index: usize) -> Result<(PStep, Option<Tail>)> {
    let tail_germ = surd_germ(a, b, d, r, 0)?;
    if !tail_germ.poly_part().expect("precision reaches λ^0").is_zero() {
        return Err(Error::NotDecaying);
    }
    // -1/φ = -d(a - b√R) / (a² - b²R)
    let norm = &(a * a) - &(&(b * b) * r);
    if norm.is_zero() {
        return Err(Error::PerfectSquareR);
    }
    let (ia, ib, id) = canonical_surd(&-(d * a), &(d * b), &norm);
    let q = surd_germ(&ia, &ib, &id, r, 0)?.poly_part().expect("precision reaches λ^0");
    let (epsilon, p) = signed_monic(&q, index)?;
    // remainder (ia - q·id + ib√R) / id; its leading term sits no lower than
    // -(max(deg a', deg b + n) + deg id) because a'² - b²R is a nonzero polynomial.
    let ra = &ia - &(&q * &id);
    let n = r.deg_i() / 2;
    let floor = ra.deg_i().max(ib.deg_i() + n) + id.deg_i() + 1;
    let rem = surd_germ(&ra, &ib, &id, r, -floor)?;
    let (_, c) = rem.leading().ok_or(Error::PerfectSquareR)?;
    let beta = c.abs();
    let (na, nb, nd) = canonical_surd(&ra, &ib, &id.scale(&beta));
    Ok((PStep { p, epsilon, beta }, Some(Tail::Surd { a: na, b: nb, d: nd, r: r.clone() })))
}

fn series_step(s: &SeriesAtInfinity, index: usize) -> Result<(PStep, Option<Tail>)> {
    let exhausted = Error::SeriesExhausted { step: index };
    let (top, _) = s.leading().ok_or(exhausted.clone())?;
    if top >= 0 {
        return Err(Error::NotDecaying);
    }
    let inv = s.inverse().expect("leading term exists").neg();
    let q = inv.poly_part().ok_or(exhausted.clone())?;
    let (epsilon, p) = signed_monic(&q, index)?;
    let rem = inv.sub(&SeriesAtInfinity::from_poly(&q, inv.cutoff()));
    let (_, c) = rem.leading().ok_or(exhausted)?;
    let beta = c.abs();
    let next = rem.scale(&beta.recip());
    Ok((PStep { p, epsilon, beta }, Some(Tail::Series(next))))
}

/// How an expansion ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminal {
    Terminated,
    Periodic { period: usize },
    /// The tail after `start` steps recurs with period `cycle_len`.
    PrePeriodic { start: usize, cycle_len: usize },
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFraction {
    pub steps: Vec<PStep>,
    pub terminal: Terminal,
}

/// Iterates [`step`] up to `max_steps` times, detecting exact recurrence of
/// surd tails.
///
/// A series tail that runs out of certified coefficients after at least one
/// step ends the expansion as `Truncated`.
pub fn expand(tail: &Tail, max_steps: usize) -> Result<PFraction> {
    let mut steps = Vec::new();
    let mut history: Vec<Tail> = vec![tail.clone()];
    let mut cur = tail.clone();
    for i in 0..max_steps.max(1) {
        let (st, next) = match step_at(&cur, i) {
            Ok(v) => v,
            Err(Error::SeriesExhausted { .. }) if i > 0 => {
                return Ok(PFraction { steps, terminal: Terminal::Truncated })
            }
            Err(e) => return Err(e),
        };
        steps.push(st);
        let Some(next) = next else {
            return Ok(PFraction { steps, terminal: Terminal::Terminated });
        };
        if matches!(next, Tail::Surd { .. }) {
            if let Some(j) = history.iter().position(|t| *t == next) {
                let terminal = if j == 0 {
                    Terminal::Periodic { period: i + 1 }
                } else {
                    Terminal::PrePeriodic { start: j, cycle_len: i + 1 - j }
                };
                return Ok(PFraction { steps, terminal });
            }
            history.push(next.clone());
        }
        cur = next;
    }
    Ok(PFraction { steps, terminal: Terminal::Truncated })
}

/// `W_j = M / √β` with `M = [[0, -ε], [εβ, p]]`.
pub fn transfer_matrix(step: &PStep) -> ScaledMatrixPoly {
    let eps = step.eps();
    ScaledMatrixPoly::new(
        [
            [Poly::zero(), Poly::constant(-&eps)],
            [Poly::constant(&eps * &step.beta), step.p.clone()],
        ],
        step.beta.clone(),
    )
}

/// Ordered product; scales multiply and the pair is kept unreduced.
pub fn product(ms: &[ScaledMatrixPoly]) -> ScaledMatrixPoly {
    let mut it = ms.iter();
    let Some(first) = it.next() else {
        return ScaledMatrixPoly::identity();
    };
    it.fold(first.clone(), |acc, m| acc.mul(m))
}

/// Denominators `P̂_j` and numerators `Q̂_j` rescaled by `b_0 … b_{j-1}`, so that
/// `P_j = P̂_j / √(β_0 … β_{j-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrencePair {
    pub phat: Vec<Poly>,
    pub qhat: Vec<Poly>,
}

impl RecurrencePair {
    /// `ε_j (Q̂_{j+1} P̂_j - Q̂_j P̂_{j+1})`, which equals `β_0 … β_{j-1}`.
    pub fn wronskian(&self, steps: &[PStep], j: usize) -> Poly {
        let w = &(&self.qhat[j + 1] * &self.phat[j]) - &(&self.qhat[j] * &self.phat[j + 1]);
        w.scale(&steps[j].eps())
    }
}

pub fn recurrence(steps: &[PStep]) -> RecurrencePair {
    let mut phat = vec![Poly::one()];
    let mut qhat = vec![Poly::zero()];
    if let Some(s0) = steps.first() {
        phat.push(s0.p.clone());
        qhat.push(Poly::constant(s0.eps()));
    }
    for j in 1..steps.len() {
        let (prev, cur) = (&steps[j - 1], &steps[j]);
        let c = &prev.eps() * &cur.eps() * &prev.beta;
        let next = |u: &[Poly]| &(&cur.p * &u[j]) - &u[j - 1].scale(&c);
        let np = next(&phat);
        let nq = next(&qhat);
        phat.push(np);
        qhat.push(nq);
    }
    RecurrencePair { phat, qhat }
}

fn backward_series(steps: &[PStep], depth: usize, start: SeriesAtInfinity) -> SeriesAtInfinity {
    let s = steps.len();
    let mut phi = start;
    for j in (0..depth).rev() {
        let st = &steps[j % s];
        let eb = st.eps() * &st.beta;
        let den = phi.scale(&eb).add_poly(&st.p);
        phi = den.inverse().expect("monic denominator").scale(&-st.eps());
    }
    phi
}

/// First `n_moments` moments of the periodic P-fraction obtained by cycling `steps`.
pub fn to_series(steps: &[PStep], n_moments: usize) -> Vec<Rat> {
    assert!(!steps.is_empty(), "at least one step is required");
    let target = -(n_moments as i64);
    // the error introduced by cutting at depth N first shows at λ^-(k_N + 2Σ_{j<N} k_j)
    let s = steps.len();
    let mut depth = 0;
    let mut acc = 0i64;
    while -(steps[depth % s].degree() as i64) + 1 - 2 * acc > target {
        acc += steps[depth % s].degree() as i64;
        depth += 1;
    }
    let k_last = steps[depth % s].degree() as i64;
    let phi = backward_series(steps, depth, SeriesAtInfinity::zero(1 - k_last));
    let mut m = phi.moments();
    m.truncate(n_moments);
    m
}

/// First `n_moments` moments of the finite P-fraction `steps` (no continuation).
pub fn finite_series(steps: &[PStep], n_moments: usize) -> Vec<Rat> {
    let total: i64 = steps.iter().map(|s| 2 * s.degree() as i64).sum();
    let start = SeriesAtInfinity::zero(-(n_moments as i64) - total - 1);
    let mut m = backward_series(steps, steps.len(), start).moments();
    m.truncate(n_moments);
    m
}
