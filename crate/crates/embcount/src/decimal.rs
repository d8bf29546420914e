//! Exact decimal text <-> rational conversion.
//!
//! Coordinates and tolerances are carried as `BigRational` so that geometric
//! membership tests and estimator arithmetic never suffer floating-point
//! error. Decimal output is truncated toward zero at a fixed number of
//! fractional digits, which keeps formatting deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Parse a plain decimal literal (`-12`, `0.25`, `+3.5`) into an exact
/// rational. Exponent notation is not accepted.
pub fn parse_decimal(text: &str) -> Result<BigRational, String> {
    let s = text.trim();
    let (sign, digits) = match s.as_bytes().first() {
        Some(b'-') => (-1, &s[1..]),
        Some(b'+') => (1, &s[1..]),
        _ => (1, s),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("empty decimal literal: {text:?}"));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed decimal literal: {text:?}"));
    }
    let mut numer: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().map_err(|e| format!("{e}: {text:?}"))?
    };
    let mut denom = BigInt::from(1);
    for b in frac_part.bytes() {
        numer = numer * 10 + (b - b'0');
        denom *= 10;
    }
    if sign < 0 {
        numer = -numer;
    }
    Ok(BigRational::new(numer, denom))
}

/// Format a rational as a decimal string, truncated toward zero after
/// `max_frac` fractional digits; trailing zeros are trimmed.
pub fn format_decimal(r: &BigRational, max_frac: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let abs = r.abs();
    let int = abs.numer() / abs.denom();
    let mut rem = abs.numer() % abs.denom();
    let mut frac = String::new();
    for _ in 0..max_frac {
        if rem.is_zero() {
            break;
        }
        rem *= 10;
        let digit = &rem / abs.denom();
        rem = &rem % abs.denom();
        frac.push((b'0' + digit.to_u8().unwrap_or(0)) as char);
    }
    while frac.ends_with('0') {
        frac.pop();
    }
    let mut out = String::new();
    if neg && (!int.is_zero() || !frac.is_empty()) {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if !frac.is_empty() {
        out.push('.');
        out.push_str(&frac);
    }
    out
}

/// Rational from an integer.
pub fn rational_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Ceiling of a nonnegative rational as usize.
pub fn ceil_to_usize(r: &BigRational) -> Option<usize> {
    if r.is_negative() {
        return None;
    }
    let (q, rem) = (r.numer() / r.denom(), r.numer() % r.denom());
    let q = if rem.is_zero() { q } else { q + 1 };
    q.to_usize()
}

/// Sign-aware conversion used when seeding f64-only math (e.g. logarithms).
pub fn to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
