//! The `pellab` command-line front end: one JSON document in, one out.

pub mod json;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::exactpoly::{normal_indices, Poly, Rat};
use crate::gjm::{charpoly, truncate, PeriodData};
use crate::monodromy::{check_admissible, monodromy, reconstruct};
use crate::pellabel::{pell_fundamental, realize, verify_certificate, RealizeStatus};
use crate::pfrac::{expand, finite_series, recurrence, to_series, PStep, Tail, Terminal};
use crate::spectral::{bands, discriminant, m_eval};
use json::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_REALIZABLE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pellab", version, about = "Periodic P-fractions, generalized Jacobi matrices and Pell–Abel realization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input JSON document (stdin when omitted)
    #[arg(short, long, global = true, visible_alias = "period")]
    pub input: Option<PathBuf>,
    /// Output file (stdout when omitted)
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 64)]
    pub max_steps: usize,
    #[arg(long, global = true, default_value_t = 16)]
    pub max_power: usize,
    #[arg(long, global = true, default_value_t = 512)]
    pub grid: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a rational, surd or moment-series tail into a P-fraction
    Expand,
    /// Moments of the P-fraction given by a period
    Series {
        #[arg(long, default_value_t = 30)]
        moments: usize,
        /// Use the blocks once instead of repeating them
        #[arg(long)]
        finite: bool,
    },
    /// Monodromy matrix of a period
    Monodromy,
    /// Period from an admissible monodromy matrix
    Reconstruct,
    /// Admissibility report for a matrix polynomial
    Admissible,
    /// Bands, endpoints and eigenvalues of a periodic matrix
    Spectrum,
    /// Evaluate the m-function of a period at points
    Mfunc {
        /// JSON array of {"re", "im"}; defaults to the "points" field of the input
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Fundamental solution of X² - R Y² = 1
    Pell,
    /// Realize (√R - U)/V as a periodic generalized Jacobi matrix
    Realize,
    /// Exact dense truncation (H, G)
    Dump {
        #[arg(long, default_value_t = 1)]
        blocks: usize,
    },
}

/// Exit code and output document.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: Value,
    /// The document went to `--output` instead of stdout.
    pub written: bool,
}

impl Outcome {
    fn new(code: i32, document: Value) -> Self {
        Self { code, document, written: false }
    }

    fn ok(document: Value) -> Self {
        Self::new(EXIT_OK, document)
    }

    fn input_error(e: Located) -> Self {
        Self::new(EXIT_INPUT_ERROR, e.to_json())
    }
}

fn read_json(path: Option<&PathBuf>, what: &str) -> In<Value> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Located::new("Io", format!("cannot read {}: {e}", p.display()), what))?,
        None => std::io::read_to_string(std::io::stdin()).map_err(|e| Located::new("Io", e.to_string(), what))?,
    };
    serde_json::from_str(&text).map_err(|e| Located::new("Json", e.to_string(), what))
}

fn lib<T>(r: crate::Result<T>) -> In<T> {
    r.map_err(|e| Located::from_error(&e, "$"))
}

fn body(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn beta_prefix(steps: &[PStep], j: usize) -> Rat {
    steps[..j].iter().map(|s| s.beta.clone()).product()
}

/// Wronskian identity for consecutive rescaled convergents.
fn wronskian_holds(steps: &[PStep]) -> bool {
    let rec = recurrence(steps);
    (0..steps.len()).all(|j| rec.wronskian(steps, j) == Poly::constant(beta_prefix(steps, j)))
}

fn cmd_expand(input: &Value, cli: &Cli) -> In<Outcome> {
    let tail = tail_in(input, "$")?;
    let f = lib(expand(&tail, cli.max_steps))?;
    let mut checks = vec![("wronskian", wronskian_holds(&f.steps))];
    if let Terminal::Periodic { .. } = f.terminal {
        let period = lib(PeriodData::new(f.steps.clone()))?;
        let t = monodromy(&period);
        checks.push(("det_scale", t.det_is_scale()));
        checks.push(("round_trip", reconstruct(&t).is_ok_and(|p| p == period)));
    }
    let b = body(vec![("steps", steps_out(&f.steps)), ("terminal", terminal_out(&f.terminal))]);
    Ok(Outcome::ok(document(tail_out(&tail), b, checks)))
}

fn cmd_series(input: &Value, n: usize, finite: bool) -> In<Outcome> {
    let period = period_in(input, "$")?;
    let steps = period.blocks();
    let moments = if finite { finite_series(steps, n) } else { to_series(steps, n) };
    let indices = normal_indices(&moments, n);
    let mut checks = Vec::new();
    if !finite {
        // expansion of the truncated series reproduces the cycled blocks
        let round_trip = Tail::from_moments(&moments)
            .and_then(|t| expand(&t, n))
            .is_ok_and(|f| !f.steps.is_empty() && f.steps.iter().enumerate().all(|(j, s)| s == period.block(j)));
        checks.push(("round_trip", round_trip));
        let sums: Vec<usize> = (0..n)
            .scan(0, |acc, j| {
                *acc += period.block(j).degree();
                Some(*acc)
            })
            .take_while(|&k| 2 * k <= n + 1)
            .collect();
        checks.push(("normal_indices", indices == sums));
    }
    let b = body(vec![
        ("moments", Value::Array(moments.iter().map(rat_out).collect())),
        ("normal_indices", json!(indices)),
    ]);
    Ok(Outcome::ok(document(period_out(&period), b, checks)))
}

fn cmd_monodromy(input: &Value) -> In<Outcome> {
    let period = period_in(input, "$")?;
    let t = monodromy(&period);
    let checks = vec![
        ("det_scale", t.det_is_scale()),
        ("j_unitary", t.is_j_unitary()),
        ("wronskian", wronskian_holds(period.blocks())),
        ("round_trip", reconstruct(&t).is_ok_and(|p| p == period)),
    ];
    let b = body(vec![("monodromy", matrix_out(&t)), ("trace", poly_out(t.trace().poly())), (
        "trace_sqrt_scale",
        rat_out(t.trace().sqrt_scale()),
    )]);
    Ok(Outcome::ok(document(period_out(&period), b, checks)))
}

fn cmd_reconstruct(input: &Value) -> In<Outcome> {
    let t = matrix_in(input, "$")?;
    let period = lib(reconstruct(&t))?;
    let checks = vec![("det_scale", t.det_is_scale()), ("round_trip", monodromy(&period) == t)];
    let b = body(vec![("period", period_out(&period))]);
    Ok(Outcome::ok(document(matrix_out(&t), b, checks)))
}

fn cmd_admissible(input: &Value) -> In<Outcome> {
    let t = matrix_in(input, "$")?;
    let r = check_admissible(&t);
    let checks = vec![("det_scale", t.det_is_scale()), ("j_unitary", t.is_j_unitary())];
    let b = body(vec![("report", admissibility_out(&r))]);
    Ok(Outcome::ok(document(matrix_out(&t), b, checks)))
}

fn cmd_spectrum(input: &Value, cli: &Cli) -> In<Outcome> {
    let period = period_in(input, "$")?;
    if cli.grid < 2 {
        return Err(Located::new("Usage", "--grid must be at least 2", "--grid"));
    }
    let s = lib(bands(&period, cli.grid, cli.tol))?;
    let disc = discriminant(&period);
    let slack = cli.tol.sqrt();
    let endpoints = s.band_endpoints.iter().all(|&z| (disc.eval(z).norm() - 2.0).abs() <= slack);
    let s_len = period.len();
    let p_prev = &recurrence(period.blocks()).phat[s_len - 1];
    let eig = s.eigenvalues.iter().all(|&z| p_prev.eval_complex(z).norm() <= slack);
    let b = body(vec![
        ("spectrum", spectrum_out(&s)),
        ("discriminant", json!({"poly": poly_out(disc.delta.poly()), "sqrt_scale": rat_out(disc.delta.sqrt_scale())})),
    ]);
    Ok(Outcome::ok(document(period_out(&period), b, vec![("endpoints", endpoints), ("eigenvalues", eig)])))
}

fn cmd_mfunc(input: &Value, points: Option<&PathBuf>, cli: &Cli) -> In<Outcome> {
    let period = period_in(input, "$")?;
    let pts = match points {
        Some(p) => points_in(&read_json(Some(p), "--points")?, "--points")?,
        None => {
            let (v, l) = field(input, "points", "$")?;
            points_in(v, &l)?
        }
    };
    let t = monodromy(&period);
    let mut values = Vec::new();
    let (mut residuals, mut fixed) = (true, true);
    for &z in &pts {
        match m_eval(&period, z, cli.tol) {
            Ok(m) => {
                let e = t.eval_complex(z);
                let (a, b, c) = (e[1][0], e[1][1] - e[0][0], -e[0][1]);
                let scale = a.norm().max(b.norm()).max(c.norm()).max(1.0);
                let residual = ((a * m + b) * m + c).norm() / scale;
                let w = e[1][0] * m + e[1][1];
                residuals &= residual <= cli.tol;
                fixed &= (e[0][0] * m + e[0][1] - w * m).norm() <= 10.0 * cli.tol * w.norm().max(1.0);
                values.push(json!({"lambda": complex_out(z), "m": complex_out(m), "multiplier": complex_out(w), "residual": float(residual)}));
            }
            Err(e) => values.push(json!({"lambda": complex_out(z), "error": {"kind": e.kind(), "message": e.to_string()}})),
        }
    }
    let mut echo = period_out(&period);
    echo["points"] = complexes_out(&pts);
    let b = body(vec![("values", Value::Array(values))]);
    Ok(Outcome::ok(document(echo, b, vec![("residuals", residuals), ("fixed_point", fixed)])))
}

fn cmd_pell(input: &Value, cli: &Cli) -> In<Outcome> {
    let (r, lr) = field(input, "R", "$")?;
    let r = poly_in(r, &lr)?;
    let echo = json!({"R": poly_out(&r)});
    match pell_fundamental(&r, cli.max_steps).map_err(|e| Located::from_error(&e, &lr))? {
        Some((x, y)) => {
            let holds = &(&x * &x) - &(&(&y * &y) * &r) == Poly::one();
            let b = body(vec![("X", poly_out(&x)), ("Y", poly_out(&y))]);
            Ok(Outcome::ok(document(echo, b, vec![("pell_identity", holds)])))
        }
        None => {
            let b = body(vec![("X", Value::Null), ("Y", Value::Null), ("bound_hit", json!("max_steps"))]);
            Ok(Outcome::new(EXIT_INCONCLUSIVE, document(echo, b, vec![])))
        }
    }
}

fn cmd_realize(input: &Value, cli: &Cli) -> In<Outcome> {
    let form = form_in(input, "$")?;
    let rep = lib(realize(&form, cli.max_steps, cli.max_power))?;
    let (status, code, extra) = match &rep.status {
        RealizeStatus::Realized => ("Realized", EXIT_OK, Value::Null),
        RealizeStatus::NotRealizable { reason } => ("NotRealizable", EXIT_NOT_REALIZABLE, json!(reason)),
        RealizeStatus::Inconclusive { bound_hit } => ("Inconclusive", EXIT_INCONCLUSIVE, json!(bound_hit)),
    };
    let mut checks = vec![("cross_check", rep.cross_check)];
    if let (Some(period), Some(t), Some(cert)) = (&rep.period, &rep.monodromy, &rep.certificate) {
        checks.push(("certificate", verify_certificate(&rep.form, cert)));
        checks.push(("det_scale", t.det_is_scale()));
        checks.push(("round_trip", reconstruct(t).is_ok_and(|p| p == *period)));
    }
    let opt = |v: Option<Value>| v.unwrap_or(Value::Null);
    let mut status_doc = json!({"kind": status});
    match &rep.status {
        RealizeStatus::NotRealizable { .. } => status_doc["reason"] = extra,
        RealizeStatus::Inconclusive { .. } => status_doc["bound_hit"] = extra,
        RealizeStatus::Realized => {}
    }
    let b = body(vec![
        ("status", status_doc),
        ("canonical_form", form_out(&rep.form)),
        ("period", opt(rep.period.as_ref().map(period_out))),
        ("monodromy", opt(rep.monodromy.as_ref().map(matrix_out))),
        ("certificate", opt(rep.certificate.as_ref().map(certificate_out))),
        ("pell_route", opt(rep.pell_route.as_ref().map(period_out))),
        ("expansion", opt(rep.expansion.as_ref().map(terminal_out))),
        ("cross_check", json!(rep.cross_check)),
    ]);
    Ok(Outcome::new(code, document(form_out(&form), b, checks)))
}

fn cmd_dump(input: &Value, blocks: usize) -> In<Outcome> {
    let period = period_in(input, "$")?;
    if blocks == 0 {
        return Err(Located::new("Usage", "--blocks must be at least 1", "--blocks"));
    }
    let pair = lib(truncate(&period, blocks))?;
    let steps: Vec<PStep> = (0..blocks).map(|j| period.block(j).clone()).collect();
    let charpoly_ok = charpoly(&pair.h) == recurrence(&steps).phat[blocks];
    let b = body(vec![("H", rat_matrix_out(&pair.h)), ("G", rat_matrix_out(&pair.g))]);
    let checks = vec![("krein_symmetric", pair.is_krein_symmetric()), ("charpoly", charpoly_ok)];
    Ok(Outcome::ok(document(period_out(&period), b, checks)))
}

fn dispatch(cli: &Cli) -> In<Outcome> {
    let input = read_json(cli.input.as_ref(), "--input")?;
    match &cli.command {
        Command::Expand => cmd_expand(&input, cli),
        Command::Series { moments, finite } => cmd_series(&input, *moments, *finite),
        Command::Monodromy => cmd_monodromy(&input),
        Command::Reconstruct => cmd_reconstruct(&input),
        Command::Admissible => cmd_admissible(&input),
        Command::Spectrum => cmd_spectrum(&input, cli),
        Command::Mfunc { points } => cmd_mfunc(&input, points.as_ref(), cli),
        Command::Pell => cmd_pell(&input, cli),
        Command::Realize => cmd_realize(&input, cli),
        Command::Dump { blocks } => cmd_dump(&input, *blocks),
    }
}

/// Parses `argv`, runs the command and writes the document to `--output` when
/// given. Help and version requests are returned as `Err` with clap's text.
pub fn run<I, T>(argv: I) -> Result<Outcome, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let loc = Located::new("Usage", e.render().to_string().trim(), "argv");
            return Ok(Outcome::input_error(loc));
        }
        Err(e) => return Err(e),
    };
    let mut outcome = dispatch(&cli).unwrap_or_else(Outcome::input_error);
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, render(&outcome.document)) {
            let loc = Located::new("Io", format!("cannot write {}: {e}", path.display()), "--output");
            return Ok(Outcome::input_error(loc));
        }
        outcome.written = true;
    }
    Ok(outcome)
}

pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args(argv: impl IntoIterator<Item = OsString>) -> i32 {
    match run(argv) {
        Ok(out) => {
            if !out.written {
                print!("{}", render(&out.document));
            }
            out.code
        }
        Err(e) => {
            let _ = e.print();
            EXIT_OK
        }
    }
}

