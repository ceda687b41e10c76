//! Lossless numeric string conventions shared by the JSON/CSV interfaces.
//!
//! Exact rationals travel as decimal strings when the denominator is of the
//! form 2^a * 5^b, and as `p/q` fraction strings otherwise, so no value is
//! ever rounded. Floats are printed with 17 significant digits, which
//! round-trips every f64.

use num_bigint::{BigInt, BigUint};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Format an f64 with 17 significant digits (round-trip safe).
pub fn f64_string(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Render an exact rational as a lossless string: a finite decimal when one
/// exists, a `p/q` fraction otherwise.
pub fn rational_string(r: &BigRational) -> String {
    let numer = r.numer();
    let denom = r.denom();
    if denom.is_one() {
        return numer.to_string();
    }
    // Strip factors of 2 and 5 from the denominator.
    let mut d = denom.magnitude().clone();
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", numer, denom);
    }
    // denom = 2^twos * 5^fives; scale numerator to shift by k = max(twos, fives).
    let k = twos.max(fives);
    let mut scaled = numer.magnitude().clone();
    for _ in twos..k {
        scaled *= &two;
    }
    for _ in fives..k {
        scaled *= &five;
    }
    let digits = scaled.to_string();
    let k = k as usize;
    let sign = if numer.is_negative() { "-" } else { "" };
    if digits.len() > k {
        let (int_part, frac_part) = digits.split_at(digits.len() - k);
        format!("{}{}.{}", sign, int_part, frac_part)
    } else {
        format!("{}0.{}{}", sign, "0".repeat(k - digits.len()), digits)
    }
}

/// Parse a lossless rational string: integer, finite decimal, or `p/q`.
pub fn parse_rational(text: &str) -> crate::Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::InvalidParameter("empty number".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad numerator in `{s}`")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad denominator in `{s}`")))?;
        if d.is_zero() {
            return Err(Error::InvalidParameter(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let value = decimal_body_to_rational(body)
        .ok_or_else(|| Error::InvalidParameter(format!("bad number `{s}`")))?;
    Ok(if sign < 0 { -value } else { value })
}

/// `"12.34"` -> 1234/100, exactly. Returns None on malformed input.
pub(crate) fn decimal_body_to_rational(body: &str) -> Option<BigRational> {
    if body.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let mut denom = BigInt::one();
    for _ in 0..frac_part.len() {
        denom *= 10;
    }
    Some(BigRational::new(numer, denom))
}

/// Exact conversion of a rational to f64 would lose information in general;
/// this is the standard nearest-f64 conversion used at the exact/numeric
/// boundary.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Exact rational from an f64 (every finite f64 is a dyadic rational).
pub fn f64_to_rational(x: f64) -> crate::Result<BigRational> {
    BigRational::from_float(x)
        .ok_or_else(|| Error::InvalidParameter(format!("non-finite value {x}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_denominators_render_as_decimals() {
        assert_eq!(rational_string(&rat(1, 4)), "0.25");
        assert_eq!(rational_string(&rat(1, 8)), "0.125");
        assert_eq!(rational_string(&rat(-3, 20)), "-0.15");
        assert_eq!(rational_string(&rat(7, 1)), "7");
        assert_eq!(rational_string(&rat(1, 3)), "1/3");
        assert_eq!(rational_string(&rat(1, 6)), "1/6");
    }

    #[test]
    fn parse_round_trips() {
        for r in [rat(1, 4), rat(-3, 20), rat(7, 1), rat(1, 3), rat(-13, 6)] {
            let s = rational_string(&r);
            assert_eq!(parse_rational(&s).unwrap(), r, "string was {s}");
        }
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1/6").unwrap(), rat(-1, 6));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
