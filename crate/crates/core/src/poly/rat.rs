//! Exact rationals.
//!
//! `Rat` is num's `BigRational`: always reduced, denominator positive.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

pub type Rat = num_rational::BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ints(values: &[i64]) -> Vec<Rat> {
    values.iter().map(|&v| int(v)).collect()
}

/// Parses `"3"`, `"-7/2"`, `" 12 / 5 "`.
pub fn parse_rat(text: &str) -> Result<Rat, PolyError> {
    let bad = || PolyError::Parse {
        input: text.to_string(),
        reason: "expected an integer or fraction".into(),
    };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(PolyError::Parse {
            input: text.to_string(),
            reason: "zero denominator".into(),
        });
    }
    Ok(Rat::new(num, den))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerator/denominator: divide after scaling down.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Greatest common divisor of the numerators divided by the least common
/// multiple of the denominators; zero for an empty or all-zero input.
pub fn content<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Rat {
    use num_integer::Integer;
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    if num.is_zero() {
        Rat::zero()
    } else {
        Rat::new(num.abs(), den)
    }
}
