//! Weierstrass reduction of a plane cubic from a flex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ternary::{Field, Tern};
use super::CubicError;
use crate::poly::Rat;

/// Relative size below which float coefficients count as zero.
pub(crate) const FLOAT_TOL: f64 = 1e-9;

/// `y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6`.
#[derive(Clone, Debug, PartialEq)]
pub struct LongWeierstrass<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

impl<F: Field> LongWeierstrass<F> {
    /// `(c4, c6)`.
    pub fn c_invariants(&self) -> (F, F) {
        let i = F::from_i64;
        let (a1, a2, a3, a4, a6) = (
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        );
        let b2 = a1.clone() * a1.clone() + i(4) * a2;
        let b4 = i(2) * a4 + a1 * a3.clone();
        let b6 = a3.clone() * a3 + i(4) * a6;
        let c4 = b2.clone() * b2.clone() - i(24) * b4.clone();
        let c6 = -(b2.clone() * b2.clone() * b2.clone()) + i(36) * b2 * b4 - i(216) * b6;
        (c4, c6)
    }
}

/// Long Weierstrass model obtained by sending the flex `p` to `[0:1:0]`
/// with its tangent to the line at infinity. Also returns the relative
/// size of the coefficients that vanish exactly when `p` is a flex.
pub fn long_form<F: Field>(f: &Tern<F>, p: &[F; 3]) -> Result<(LongWeierstrass<F>, f64), CubicError> {
    let scale = f.max_magnitude().max(f64::MIN_POSITIVE);
    let pmax = p.iter().map(Field::magnitude).fold(0.0, f64::max);
    if pmax == 0.0 {
        return Err(CubicError::NotAFlex);
    }
    let tol = FLOAT_TOL * scale * pmax.powi(3);
    let l = f.gradient_at(p);
    let m = (0..3)
        .max_by(|&a, &b| l[a].magnitude().total_cmp(&l[b].magnitude()))
        .expect("three coordinates");
    if l[m].negligible(tol) {
        return Err(CubicError::Singular);
    }
    let unit = |k: usize| -> [F; 3] { std::array::from_fn(|i| if i == k { F::one() } else { F::zero() }) };
    let mut v = unit(m);
    v[m] = F::one() / l[m].clone();
    let j = (0..3)
        .filter(|&j| j != m)
        .min_by(|&a, &b| p[a].magnitude().total_cmp(&p[b].magnitude()))
        .expect("two candidates");
    let mut u = unit(j);
    u[m] = -(l[j].clone() / l[m].clone());
    let b: [[F; 3]; 3] = std::array::from_fn(|i| [u[i].clone(), p[i].clone(), v[i].clone()]);
    let g = f.substitute(&b);

    let gscale = g.max_magnitude().max(f64::MIN_POSITIVE);
    let flex_defect = [[0, 3, 0], [1, 2, 0], [2, 1, 0]]
        .iter()
        .map(|&e| g.coeff(e).magnitude())
        .fold(0.0, f64::max)
        / gscale;
    let off = [[0, 3, 0], [1, 2, 0], [2, 1, 0]]
        .iter()
        .any(|&e| !g.coeff(e).negligible(FLOAT_TOL.sqrt() * gscale));
    if off {
        return Err(CubicError::NotAFlex);
    }
    let gtol = FLOAT_TOL * gscale;
    let c = g.coeff([3, 0, 0]);
    let alpha = g.coeff([0, 2, 1]);
    if c.negligible(gtol) || alpha.negligible(gtol) {
        return Err(CubicError::Singular);
    }
    let beta = g.coeff([1, 1, 1]);
    let delta = g.coeff([0, 1, 2]);
    let e = g.coeff([2, 0, 1]);
    let f1 = g.coeff([1, 0, 2]);
    let g0 = g.coeff([0, 0, 3]);
    let kappa = -(alpha.clone() / c);
    let ak = alpha.clone() * kappa.clone();
    Ok((
        LongWeierstrass {
            a1: beta / alpha.clone(),
            a2: -(e / alpha),
            a3: delta / ak.clone(),
            a4: -(f1 / ak.clone()),
            a6: -(g0 / (ak * kappa)),
        },
        flex_defect,
    ))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

fn mod_u(n: &BigInt, m: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("remainder fits")
}

/// Whether integers `(c4, c6)` are the invariants of a Weierstrass model
/// with integral coefficients (Kraus' conditions).
pub fn integral_model_exists(c4: &BigInt, c6: &BigInt) -> bool {
    let disc = c4 * c4 * c4 - c6 * c6;
    if disc.is_zero() || !(&disc % 1728u32).is_zero() {
        return false;
    }
    let at3 = valuation(c6, 3) != 2;
    let at2 = mod_u(c6, 4) == 3 || (valuation(c4, 2) >= 4 && matches!(mod_u(c6, 32), 0 | 8));
    at3 && at2
}

/// `(c4, c6)` of the minimal integral model of the curve, starting from
/// the invariants of any rational model.
pub fn minimal_invariants(w: &LongWeierstrass<Rat>) -> Result<(BigInt, BigInt), CubicError> {
    let dens = [&w.a1, &w.a2, &w.a3, &w.a4, &w.a6].map(|a| a.denom().clone());
    let u = dens.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
    let scaled = LongWeierstrass {
        a1: &w.a1 * Rat::from_integer(u.clone()),
        a2: &w.a2 * Rat::from_integer(u.pow(2)),
        a3: &w.a3 * Rat::from_integer(u.pow(3)),
        a4: &w.a4 * Rat::from_integer(u.pow(4)),
        a6: &w.a6 * Rat::from_integer(u.pow(6)),
    };
    let (c4, c6) = scaled.c_invariants();
    debug_assert!(c4.is_integer() && c6.is_integer());
    let (mut c4, mut c6) = (c4.to_integer(), c6.to_integer());
    if !integral_model_exists(&c4, &c6) {
        return Err(CubicError::Singular);
    }
    let g = match (c4.is_zero(), c6.is_zero()) {
        (true, _) => c6.pow(2),
        (_, true) => c4.pow(3),
        _ => (c4.pow(3)).gcd(&c6.pow(2)),
    }
    .abs();
    let mut p: u64 = 2;
    while p <= 100_000 && BigInt::from(p).pow(12) <= g {
        if is_prime(p) {
            let (p4, p6) = (BigInt::from(p).pow(4), BigInt::from(p).pow(6));
            while (&c4 % &p4).is_zero() && (&c6 % &p6).is_zero() {
                let (n4, n6) = (&c4 / &p4, &c6 / &p6);
                if !integral_model_exists(&n4, &n6) {
                    break;
                }
                (c4, c6) = (n4, n6);
            }
        }
        p += 1;
    }
    Ok((c4, c6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn long(a: [i64; 5]) -> LongWeierstrass<Rat> {
        LongWeierstrass {
            a1: int(a[0]),
            a2: int(a[1]),
            a3: int(a[2]),
            a4: int(a[3]),
            a6: int(a[4]),
        }
    }

    #[test]
    fn c_invariants_of_short_forms() {
        let (c4, c6) = long([0, 0, 0, 1, 0]).c_invariants();
        assert_eq!((c4, c6), (int(-48), int(0)));
        let (c4, c6) = long([0, 0, 0, 0, 1]).c_invariants();
        assert_eq!((c4, c6), (int(0), int(-864)));
    }

    #[test]
    fn minimal_model_of_scaled_curve() {
        // Dividing c4 = -48 by 2^4 would leave no integral model.
        assert_eq!(
            minimal_invariants(&long([0, 0, 0, 1, 0])).unwrap(),
            (BigInt::from(-48), BigInt::from(0))
        );
        // y² = x³ + 5^4 x reduces back to y² = x³ + x.
        assert_eq!(
            minimal_invariants(&long([0, 0, 0, 625, 0])).unwrap(),
            (BigInt::from(-48), BigInt::from(0))
        );
        assert_eq!(minimal_invariants(&long([0, 0, 0, 0, 0])), Err(CubicError::Singular));
    }

    #[test]
    fn kraus_conditions() {
        assert!(integral_model_exists(&BigInt::from(121), &BigInt::from(-845)));
        assert!(integral_model_exists(&BigInt::from(1633), &BigInt::from(-61201)));
        assert!(!integral_model_exists(&BigInt::from(-3), &BigInt::from(0)));
    }
}
