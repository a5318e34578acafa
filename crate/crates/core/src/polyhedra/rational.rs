//! Exact rationals (arbitrary precision, always reduced) and their text forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Reduced fraction with positive denominator; zero is `0/1`.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form `num/den`, e.g. `4/2` prints as `2/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts an integer token (`-3`) or a fraction (`7/4`). Decimal points and exponents are
/// rejected so that exact inputs never pass through floating point.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let t = token.trim();
    let bad = || Error::Parse(format!("not an exact rational: {token:?}"));
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {token:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Comma-separated list of exact rationals.
pub fn parse_rational_list(list: &str) -> Result<Vec<Rational>> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(parse_rational).collect()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Rounds `x` to the nearest multiple of `1/den`.
pub fn round_to_denominator(x: f64, den: i64) -> Rational {
    let scaled = (x * den as f64).round();
    Rational::new(BigInt::from(scaled as i64), BigInt::from(den))
}

/// Scales `v` by the smallest positive rational that makes every entry an integer with
/// overall gcd 1. Returns the integer vector and the scale factor (`ints = scale * v`).
pub fn primitive_integer_vector(v: &[Rational]) -> (Vec<BigInt>, Rational) {
    let lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (ints, Rational::one());
    }
    let ints = ints.into_iter().map(|x| x / &g).collect();
    (ints, Rational::new(lcm, g.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_format() {
        assert_eq!(format_rational(&frac(4, 2)), "2/1");
        assert_eq!(format_rational(&frac(0, 5)), "0/1");
        assert_eq!(format_rational(&frac(3, -6)), "-1/2");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), frac(3, 2));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(
            parse_rational_list("1,1/2,-2").unwrap(),
            vec![int(1), frac(1, 2), int(-2)]
        );
    }

    #[test]
    fn primitive_vector() {
        let (ints, scale) = primitive_integer_vector(&[frac(1, 2), frac(-3, 4), int(0)]);
        assert_eq!(
            ints,
            vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]
        );
        assert_eq!(scale, int(4));
        let (ints, scale) = primitive_integer_vector(&[int(2), int(-4)]);
        assert_eq!(ints, vec![BigInt::from(1), BigInt::from(-2)]);
        assert_eq!(scale, frac(1, 2));
    }

    #[test]
    fn rounding() {
        assert_eq!(
            round_to_denominator(0.1234567, 1_000_000),
            frac(123457, 1_000_000)
        );
        assert_eq!(round_to_denominator(-2.0, 1_000_000), int(-2));
    }
}
