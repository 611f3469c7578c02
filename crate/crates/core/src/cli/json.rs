//! JSON schemas of the command-line documents.
//!
//! Polynomials are arrays of rational strings, lowest degree first. Floats are
//! written with 17 significant digits.

use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Map, Number, Value};

use crate::error::Error;
use crate::exactpoly::{format_rat, parse_rat, Poly, Rat, RatMatrix, ScaledMatrixPoly};
use crate::gjm::PeriodData;
use crate::monodromy::{AdmissibilityReport, AlgebraicForm, PellCertificate};
use crate::pfrac::{PStep, Tail, Terminal};
use crate::spectral::Spectrum;

/// An error tied to a JSON path of the input document.
#[derive(Debug, Clone, PartialEq)]
pub struct Located {
    pub kind: String,
    pub message: String,
    pub location: String,
}

impl Located {
    pub fn new(kind: &str, message: impl Into<String>, location: &str) -> Self {
        Self { kind: kind.into(), message: message.into(), location: location.into() }
    }

    pub fn from_error(e: &Error, location: &str) -> Self {
        Self::new(e.kind(), e.to_string(), location)
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind, "message": self.message, "location": self.location}})
    }
}

pub type In<T> = std::result::Result<T, Located>;

fn schema(message: impl Into<String>, location: &str) -> Located {
    Located::new("Schema", message, location)
}

pub fn field<'a>(v: &'a Value, key: &str, loc: &str) -> In<(&'a Value, String)> {
    let obj = v.as_object().ok_or_else(|| schema("expected an object", loc))?;
    let path = format!("{loc}.{key}");
    let x = obj.get(key).ok_or_else(|| schema(format!("missing field {key:?}"), loc))?;
    Ok((x, path))
}

fn array<'a>(v: &'a Value, loc: &str) -> In<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema("expected an array", loc))
}

pub fn rat_in(v: &Value, loc: &str) -> In<Rat> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(schema("expected a rational string such as \"-3/4\"", loc)),
    };
    parse_rat(&text).map_err(|e| Located::from_error(&e, loc))
}

pub fn poly_in(v: &Value, loc: &str) -> In<Poly> {
    let coeffs = array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, c)| rat_in(c, &format!("{loc}[{i}]")))
        .collect::<In<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

pub fn step_in(v: &Value, loc: &str) -> In<PStep> {
    let (p, lp) = field(v, "p", loc)?;
    let p = poly_in(p, &lp)?;
    let (e, le) = field(v, "epsilon", loc)?;
    let eps = e.as_i64().ok_or_else(|| schema("epsilon must be 1 or -1", &le))?;
    let (b, lb) = field(v, "beta", loc)?;
    let beta = rat_in(b, &lb)?;
    if eps != 1 && eps != -1 {
        return Err(Located::from_error(&Error::InvalidSign(eps), &le));
    }
    let eps = eps as i32;
    PStep::new(p, eps, beta).map_err(|e| Located::from_error(&e, loc))
}

pub fn period_in(v: &Value, loc: &str) -> In<PeriodData> {
    let (blocks, lb) = field(v, "blocks", loc)?;
    let steps = array(blocks, &lb)?
        .iter()
        .enumerate()
        .map(|(i, s)| step_in(s, &format!("{lb}[{i}]")))
        .collect::<In<Vec<_>>>()?;
    PeriodData::new(steps).map_err(|e| Located::from_error(&e, &lb))
}

pub fn matrix_in(v: &Value, loc: &str) -> In<ScaledMatrixPoly> {
    let (m, lm) = field(v, "M", loc)?;
    let rows = array(m, &lm)?;
    if rows.len() != 2 {
        return Err(schema("M must be 2×2", &lm));
    }
    let mut entries: Vec<Poly> = Vec::with_capacity(4);
    for (i, row) in rows.iter().enumerate() {
        let lr = format!("{lm}[{i}]");
        let row = array(row, &lr)?;
        if row.len() != 2 {
            return Err(schema("M must be 2×2", &lr));
        }
        for (j, e) in row.iter().enumerate() {
            entries.push(poly_in(e, &format!("{lr}[{j}]"))?);
        }
    }
    let (d, ld) = field(v, "D", loc)?;
    let d = rat_in(d, &ld)?;
    if d <= Rat::from_integer(0.into()) {
        return Err(Located::from_error(&Error::NonPositiveBeta(d), &ld));
    }
    let mut it = entries.into_iter();
    let mut next = || it.next().expect("four entries");
    let m = [[next(), next()], [next(), next()]];
    Ok(ScaledMatrixPoly::new(m, d))
}

pub fn form_in(v: &Value, loc: &str) -> In<AlgebraicForm> {
    let get = |k: &str| -> In<Poly> {
        let (x, l) = field(v, k, loc)?;
        poly_in(x, &l)
    };
    Ok(AlgebraicForm { r: get("R")?, u: get("U")?, v: get("V")? })
}

/// `{"rational": {"num", "den"}}`, `{"surd": {"a", "b", "d", "R"}}` or `{"moments": [...]}`.
pub fn tail_in(v: &Value, loc: &str) -> In<Tail> {
    let obj = v.as_object().ok_or_else(|| schema("expected an object", loc))?;
    let poly = |x: &Value, lx: &str, k: &str| -> In<Poly> {
        let (p, lp) = field(x, k, lx)?;
        poly_in(p, &lp)
    };
    let located = |r: crate::Result<Tail>, l: &str| r.map_err(|e| Located::from_error(&e, l));
    if let Some(x) = obj.get("rational") {
        let l = format!("{loc}.rational");
        return located(Tail::rational(poly(x, &l, "num")?, poly(x, &l, "den")?), &l);
    }
    if let Some(x) = obj.get("surd") {
        let l = format!("{loc}.surd");
        let t = Tail::surd(poly(x, &l, "a")?, poly(x, &l, "b")?, poly(x, &l, "d")?, poly(x, &l, "R")?);
        return located(t, &l);
    }
    if let Some(x) = obj.get("moments") {
        let l = format!("{loc}.moments");
        let m = array(x, &l)?
            .iter()
            .enumerate()
            .map(|(i, s)| rat_in(s, &format!("{l}[{i}]")))
            .collect::<In<Vec<_>>>()?;
        return located(Tail::from_moments(&m), &l);
    }
    Err(schema("expected one of \"rational\", \"surd\", \"moments\"", loc))
}

pub fn complex_in(v: &Value, loc: &str) -> In<Complex64> {
    let num = |k: &str| -> In<f64> {
        let (x, l) = field(v, k, loc)?;
        x.as_f64().ok_or_else(|| schema("expected a number", &l))
    };
    Ok(Complex64::new(num("re")?, num("im")?))
}

pub fn points_in(v: &Value, loc: &str) -> In<Vec<Complex64>> {
    array(v, loc)?
        .iter()
        .enumerate()
        .map(|(i, z)| complex_in(z, &format!("{loc}[{i}]")))
        .collect()
}

pub fn float(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&format!("{x:.16e}")).expect("valid JSON number"))
    } else {
        Value::Null
    }
}

pub fn rat_out(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn poly_out(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_out).collect())
}

pub fn complex_out(z: Complex64) -> Value {
    json!({"re": float(z.re), "im": float(z.im)})
}

pub fn complexes_out(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|&z| complex_out(z)).collect())
}

pub fn step_out(s: &PStep) -> Value {
    json!({"p": poly_out(&s.p), "epsilon": s.epsilon, "beta": rat_out(&s.beta)})
}

pub fn steps_out(steps: &[PStep]) -> Value {
    Value::Array(steps.iter().map(step_out).collect())
}

pub fn period_out(p: &PeriodData) -> Value {
    json!({"blocks": steps_out(p.blocks())})
}

pub fn matrix_out(t: &ScaledMatrixPoly) -> Value {
    let m = &t.m;
    json!({
        "M": [[poly_out(&m[0][0]), poly_out(&m[0][1])], [poly_out(&m[1][0]), poly_out(&m[1][1])]],
        "D": rat_out(&t.d),
    })
}

pub fn rat_matrix_out(a: &RatMatrix) -> Value {
    Value::Array(a.iter().map(|row| Value::Array(row.iter().map(rat_out).collect())).collect())
}

pub fn form_out(f: &AlgebraicForm) -> Value {
    json!({"R": poly_out(&f.r), "U": poly_out(&f.u), "V": poly_out(&f.v)})
}

pub fn certificate_out(c: &PellCertificate) -> Value {
    json!({"X": poly_out(&c.x), "Y": poly_out(&c.y), "Z": poly_out(&c.z), "sqrt_scale": rat_out(&c.sqrt_scale)})
}

pub fn terminal_out(t: &Terminal) -> Value {
    match t {
        Terminal::Terminated => json!({"kind": "Terminated"}),
        Terminal::Periodic { period } => json!({"kind": "Periodic", "period": period}),
        Terminal::PrePeriodic { start, cycle_len } => {
            json!({"kind": "PrePeriodic", "start": start, "cycle_len": cycle_len})
        }
        Terminal::Truncated => json!({"kind": "Truncated"}),
    }
}

pub fn tail_out(t: &Tail) -> Value {
    match t {
        Tail::Rational { num, den } => json!({"rational": {"num": poly_out(num), "den": poly_out(den)}}),
        Tail::Surd { a, b, d, r } => {
            json!({"surd": {"a": poly_out(a), "b": poly_out(b), "d": poly_out(d), "R": poly_out(r)}})
        }
        Tail::Series(s) => json!({"moments": Value::Array(s.moments().iter().map(rat_out).collect())}),
    }
}

pub fn admissibility_out(r: &AdmissibilityReport) -> Value {
    json!({
        "det_one": r.det_one,
        "degrees_ok": r.degrees_ok,
        "lead_t22_positive": r.lead_t22_positive,
        "strict_leading_equality": r.strict_leading_equality,
        "expandable": r.expandable,
        "verdict": r.verdict(),
    })
}

pub fn spectrum_out(s: &Spectrum) -> Value {
    json!({
        "band_endpoints": complexes_out(&s.band_endpoints),
        "arcs": Value::Array(s.arcs.iter().map(|a| complexes_out(a)).collect()),
        "eigenvalues": complexes_out(&s.eigenvalues),
    })
}

/// Adds the `"checks"` object and the input echo to an output document.
pub fn document(input: Value, mut body: Map<String, Value>, checks: Vec<(&str, bool)>) -> Value {
    let checks: Map<String, Value> = checks.into_iter().map(|(k, b)| (k.to_string(), Value::Bool(b))).collect();
    body.insert("input".into(), input);
    body.insert("checks".into(), Value::Object(checks));
    Value::Object(body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(float(-0.5).to_string(), "-5.0000000000000000e-1");
        assert_eq!(float(f64::NAN), Value::Null);
    }

    #[test]
    fn poly_round_trip_and_locations() {
        let v: Value = serde_json::from_str(r#"["0", "-1/2", 3]"#).unwrap();
        let p = poly_in(&v, "$").unwrap();
        assert_eq!(poly_out(&p).to_string(), r#"["0","-1/2","3"]"#);
        let bad: Value = serde_json::from_str(r#"{"blocks":[{"p":["0","1"],"epsilon":1,"beta":"1/0"}]}"#).unwrap();
        let e = period_in(&bad, "$").unwrap_err();
        assert_eq!((e.kind.as_str(), e.location.as_str()), ("BadRational", "$.blocks[0].beta"));
        let bad: Value = serde_json::from_str(r#"{"blocks":[{"p":["0","2"],"epsilon":1,"beta":"1"}]}"#).unwrap();
        assert_eq!(period_in(&bad, "$").unwrap_err().kind, "NotMonic");
    }
}
