//! Exact rational numbers and their text form.
//!
//! Values are always reduced with a positive denominator. The text form
//! accepted by [`parse_rational`] is an integer (`-3`), a decimal (`0.25`),
//! or a fraction (`p/q`); all three parse exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("`{0}` is not an integer, decimal, or p/q fraction")]
    Malformed(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
}

/// Parses an exact rational from integer, decimal, or `p/q` notation.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| RationalParseError::Malformed(text.to_owned()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| RationalParseError::Malformed(text.to_owned()))?;
        if d.is_zero() {
            return Err(RationalParseError::ZeroDenominator(text.to_owned()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let valid = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        // "1." and ".5" are both accepted; an empty side counts as zero.
        if (!valid(int_digits) && !int_digits.is_empty())
            || (!valid(frac_part) && !frac_part.is_empty())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(RationalParseError::Malformed(text.to_owned()));
        }
        let mut digits = String::with_capacity(int_digits.len() + frac_part.len());
        digits.push_str(int_digits);
        digits.push_str(frac_part);
        if digits.is_empty() {
            return Err(RationalParseError::Malformed(text.to_owned()));
        }
        let n: BigInt = digits
            .parse()
            .map_err(|_| RationalParseError::Malformed(text.to_owned()))?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(Rational::new(BigInt::from(sign) * n, den));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| RationalParseError::Malformed(text.to_owned()))?;
    Ok(Rational::from_integer(n))
}

/// Raises a rational to a non-negative integer power.
pub fn rational_pow(base: &Rational, exp: u32) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    Rational::new(base.numer().pow(exp), base.denom().pow(exp))
}
