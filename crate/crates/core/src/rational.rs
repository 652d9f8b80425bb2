//! Exact rational scalars.
//!
//! Every scalar in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in canonical form (positive denominator, gcd of numerator
//! and denominator equal to one). `num_rational::BigRational` maintains
//! exactly those invariants, so it is used directly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Rational from a small signed fraction. Panics on a zero denominator,
/// which is acceptable for the literal constants this is used for.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Canonical text form `num/den`. The denominator is always printed and is
/// always positive, e.g. `3/2`, `-7/6`, `0/1`, `22/1`.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer in rational literal: {0}")]
    BadInteger(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |t: &str| -> Result<BigInt, ParseRationalError> {
        t.parse::<BigInt>()
            .map_err(|_| ParseRationalError::BadInteger(t.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from(parse_int(s)?)),
        Some((num, den)) => {
            let num = parse_int(num.trim())?;
            let den = parse_int(den.trim())?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Exact exponentiation. Canonical form is preserved: if gcd(n, d) = 1 then
/// gcd(n^e, d^e) = 1, so the result needs no re-reduction.
pub fn pow_rat(r: &Rational, exp: u32) -> Rational {
    if exp == 0 {
        return rat_int(1);
    }
    Rational::new_raw(r.numer().pow(exp), r.denom().pow(exp))
}

/// Decimal approximation with `digits` significant digits, rounded toward
/// zero. Display-only; the `num/den` string remains authoritative.
pub fn decimal_toward_zero(r: &Rational, digits: usize) -> String {
    assert!(digits > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.numer().abs();
    let b = r.denom().clone();

    // Scale until the truncated integer a*10^p/b carries enough digits.
    let mut p: usize = digits + 2;
    let mut scaled;
    loop {
        scaled = &a * BigInt::from(10u32).pow(p as u32) / &b;
        let len = scaled.to_string().len();
        if len > digits || p > 4 * digits + 330 {
            break;
        }
        p += digits + 2;
    }
    let s = scaled.to_string();
    // Value is s * 10^(-p); exponent of the leading digit:
    let exp = s.len() as i64 - 1 - p as i64;
    let lead: String = s.chars().take(digits).collect();

    if exp >= 0 {
        let int_len = (exp + 1) as usize;
        if int_len >= digits {
            // Pad with zeros: truncation toward zero of the integer part.
            let mut out = lead;
            out.extend(std::iter::repeat('0').take(int_len - digits));
            format!("{sign}{out}")
        } else {
            format!("{sign}{}.{}", &lead[..int_len], &lead[int_len..])
        }
    } else {
        let zeros = (-exp - 1) as usize;
        format!("{sign}0.{}{}", "0".repeat(zeros), lead)
    }
}

/// Approximate value as `f64` (display and diagnostics only).
pub fn to_f64_approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_invariants() {
        let r = rat(4, -6);
        assert_eq!(rational_to_string(&r), "-2/3");
        assert_eq!(rational_to_string(&rat(0, 5)), "0/1");
        assert_eq!(rational_to_string(&rat_int(22)), "22/1");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["3/2", "-7/6", "0/1", "22/1", "1/200"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&r), s);
        }
        assert_eq!(parse_rational("5").unwrap(), rat_int(5));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator)
        );
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_truncates_toward_zero() {
        assert_eq!(decimal_toward_zero(&rat(1, 3), 5), "0.33333");
        assert_eq!(decimal_toward_zero(&rat(-7, 6), 5), "-1.1666");
        assert_eq!(decimal_toward_zero(&rat(22, 7), 4), "3.142");
        assert_eq!(decimal_toward_zero(&rat_int(1234567), 3), "1230000");
        assert_eq!(decimal_toward_zero(&rat(1, 200), 2), "0.0050");
        assert_eq!(decimal_toward_zero(&rat_int(0), 5), "0");
        assert_eq!(decimal_toward_zero(&rat(1, 1024), 4), "0.0009765");
    }

    #[test]
    fn pow_is_exact() {
        assert_eq!(pow_rat(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(pow_rat(&rat(-1, 2), 2), rat(1, 4));
        assert_eq!(pow_rat(&rat(5, 7), 0), rat_int(1));
    }
}
