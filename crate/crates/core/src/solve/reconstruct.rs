//! Recovering small-height rational points from floating approximations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cpoint::CPoint;
use super::cpoly::C64;
use crate::poly::{primitive_point, Rat};

/// Best rational approximation of `x` with denominator at most `max_den`,
/// from the continued fraction convergents.
pub fn approximate(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    let mut best = (x.round() as i64, 1i64);
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        best = (h2, k2);
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    Some(best)
}

/// A primitive integer point of height at most `max_height` within sine
/// distance `radius` of `p`, if one exists.
pub fn reconstruct_point(p: &CPoint, max_height: i64, radius: f64) -> Option<Vec<Rat>> {
    let coords = p.coords();
    let (pivot, scale) = coords
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, c)| (i, *c))?;
    if scale.norm() == 0.0 {
        return None;
    }
    let scaled: Vec<C64> = coords.iter().map(|c| c / scale).collect();
    if scaled.iter().any(|c| c.im.abs() > radius) {
        return None;
    }
    let mut rats = Vec::with_capacity(scaled.len());
    for (i, c) in scaled.iter().enumerate() {
        if i == pivot {
            rats.push(Rat::from_integer(BigInt::from(1)));
            continue;
        }
        let (n, d) = approximate(c.re, max_height)?;
        rats.push(Rat::new(BigInt::from(n), BigInt::from(d)));
    }
    let prim = primitive_point(&rats);
    let height = prim.iter().map(|v| v.numer().abs()).max().unwrap_or_else(BigInt::zero);
    if height > BigInt::from(max_height) || prim.iter().any(|v| !v.denom().is_one()) {
        return None;
    }
    let exact = CPoint::from_rats(&prim);
    (exact.sine_distance(p) < radius).then_some(prim)
}

/// Rational approximation of each coordinate of an affine point.
pub fn reconstruct_affine(y: &[C64], max_height: i64, radius: f64) -> Option<Vec<Rat>> {
    y.iter()
        .map(|c| {
            if c.im.abs() > radius {
                return None;
            }
            let (n, d) = approximate(c.re, max_height)?;
            if n.abs() > max_height || ((n as f64 / d as f64) - c.re).abs() > radius * c.re.abs().max(1.0) {
                return None;
            }
            Some(Rat::new(BigInt::from(n), BigInt::from(d)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ints;

    #[test]
    fn convergents() {
        assert_eq!(approximate(0.75, 32), Some((3, 4)));
        assert_eq!(approximate(-2.0 / 7.0, 32), Some((-2, 7)));
        assert_eq!(approximate(std::f64::consts::PI, 10), Some((22, 7)));
    }

    #[test]
    fn projective_reconstruction() {
        let p = CPoint::from_rats(&ints(&[2, -1, 5, -7]));
        let noisy = CPoint::new(p.coords().iter().map(|c| c * C64::new(0.3, -0.4) + 1e-13).collect());
        assert_eq!(reconstruct_point(&noisy, 32, 1e-6), Some(ints(&[2, -1, 5, -7])));
        let irrational = CPoint::new(vec![C64::new(1.0, 0.0), C64::new(std::f64::consts::SQRT_2, 0.0)]);
        assert_eq!(reconstruct_point(&irrational, 32, 1e-6), None);
    }
}
