//! Exact probabilities.
//!
//! Every probability in the crate is an arbitrary-precision rational in
//! canonical form. Text form is `num/den`, or a bare integer when the
//! denominator is one; decimal notation is rejected on input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Format(format!("invalid probability `{text}`: expected `num/den` or an integer"));
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::Format(format!("invalid probability `{text}`: zero denominator")));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn to_decimal(value: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value * Rational::from_integer(scale.clone());
    let negative = scaled.is_negative();
    let abs = scaled.abs();
    let (q, r) = abs.numer().div_rem(abs.denom());
    let twice = r * 2u32;
    let rounded = if &twice >= abs.denom() { q + 1u32 } else { q };
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if negative && !(int.is_zero() && frac.is_zero()) { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = places as usize)
}
