//! Exact rational helpers. Heights are `BigRational` throughout so that
//! monotonicity checks and level comparisons are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Parse a rational written as `p/q` or as a bare integer `p`.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator in {s:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical form: `p/q` in lowest terms with a positive denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

pub fn half() -> BigRational {
    ratio(1, 2)
}

pub fn one() -> BigRational {
    BigRational::one()
}

pub fn zero() -> BigRational {
    BigRational::zero()
}

/// Midpoint of two rationals.
pub fn mid(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / int(2)
}

pub fn abs(r: &BigRational) -> BigRational {
    r.abs()
}
