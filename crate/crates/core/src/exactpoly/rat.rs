//! Rational scalars and the text format `[-]int[/positive-int]`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `-3/4`, `7`, `−2` (typographic minus accepted). Non-reduced input is reduced.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = || Error::BadRational(text.to_string());
    let t = text.trim();
    let (neg, body) = if let Some(rest) = t.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = t.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, t)
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !digits(num) {
        return Err(bad());
    }
    let mut n: BigInt = num.parse().map_err(|_| bad())?;
    if neg {
        n = -n;
    }
    let d: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rat) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // very large parts: scale both down by the same power of two
        _ => {
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Exact rational square root, if it exists.
pub fn sqrt_rat(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &n * &n == *r.numer() && &d * &d == *r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Splits `k = root^2 * core` with `core` free of small square factors.
///
/// Prime factors below 10^6 are removed exactly; a remaining cofactor is
/// absorbed only when it is itself a perfect square.
fn integer_square_part(k: &BigInt) -> (BigInt, BigInt) {
    let mut rest = k.abs();
    let mut root = BigInt::one();
    let mut core = BigInt::one();
    let mut p = 2u64;
    while p <= 1_000_000 {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while rest.is_multiple_of(&pb) {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            root *= pb.pow(e / 2);
            if e % 2 == 1 {
                core *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        root *= s;
    } else {
        core *= rest;
    }
    (root, core)
}

/// Writes a positive rational `D` as `factor^2 * core` with `core` a squarefree integer.
///
/// Then `x / sqrt(D) = (x / factor) / sqrt(core)`.
pub fn square_reduce(d: &Rat) -> (Rat, Rat) {
    debug_assert!(d.is_positive());
    let nm = d.numer() * d.denom();
    let (root, core) = integer_square_part(&nm);
    (
        Rat::new(root, d.denom().clone()),
        Rat::from_integer(core),
    )
}

/// Greatest common divisor of rationals: gcd of numerators over lcm of denominators.
pub fn rat_gcd<'a>(items: impl IntoIterator<Item = &'a Rat>) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for r in items {
        if r.is_zero() {
            continue;
        }
        num = num.gcd(r.numer());
        den = den.lcm(r.denom());
    }
    if num.is_zero() {
        Rat::zero()
    } else {
        Rat::new(num, den)
    }
}

pub fn sign(r: &Rat) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rat("\u{2212}2").unwrap(), rat(-2));
        assert_eq!(parse_rat("6/8").unwrap(), ratio(3, 4));
        assert_eq!(format_rat(&ratio(-3, 4)), "-3/4");
        assert_eq!(format_rat(&rat(5)), "5");
        for bad in ["", "1/0", "a", "1/-2", "--1", "1.5", "/3"] {
            assert!(parse_rat(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_rat(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(sqrt_rat(&rat(2)), None);
        assert_eq!(sqrt_rat(&rat(-4)), None);
        assert_eq!(sqrt_rat(&rat(0)), Some(rat(0)));
    }

    #[test]
    fn square_reduction() {
        assert_eq!(square_reduce(&rat(4)), (rat(2), rat(1)));
        assert_eq!(square_reduce(&rat(12)), (rat(2), rat(3)));
        // 9/8 = (3/4)^2 * 2
        assert_eq!(square_reduce(&ratio(9, 8)), (ratio(3, 4), rat(2)));
        let (f, c) = square_reduce(&ratio(1, 4));
        assert_eq!(&f * &f * c, ratio(1, 4));
    }
}
