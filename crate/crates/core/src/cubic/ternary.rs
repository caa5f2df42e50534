//! Ternary forms over a field, generic enough to run the Weierstrass
//! reduction with exact rationals or complex floats.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::poly::rat::to_f64;
use crate::poly::{MultiPoly, Rat};

pub trait Field:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn from_i64(n: i64) -> Self;
    /// Modulus, used for pivoting and for vanishing tests of floats.
    fn magnitude(&self) -> f64;
    /// Exact zero for exact fields, modulus at most `tol` otherwise.
    fn negligible(&self, tol: f64) -> bool;
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as num_traits::One>::one()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn from_i64(n: i64) -> Self {
        crate::poly::int(n)
    }
    fn magnitude(&self) -> f64 {
        to_f64(self).abs()
    }
    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rat(r: &Rat) -> Self {
        Complex64::new(to_f64(r), 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
}

/// A polynomial in three variables keyed by exponent triples.
#[derive(Clone, Debug)]
pub struct Tern<F> {
    terms: BTreeMap<[u32; 3], F>,
}

impl<F: Field> Tern<F> {
    pub fn zero() -> Self {
        Tern {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_multipoly(p: &MultiPoly) -> Self {
        assert_eq!(p.nvars(), 3, "ternary form expected");
        let mut t = Self::zero();
        for (m, c) in p.terms() {
            let e = m.exponents();
            t.add_term([e[0], e[1], e[2]], F::from_rat(c));
        }
        t
    }

    pub fn linear(c: [F; 3]) -> Self {
        let mut t = Self::zero();
        for (i, v) in c.into_iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            t.add_term(e, v);
        }
        t
    }

    fn constant(c: F) -> Self {
        let mut t = Self::zero();
        t.add_term([0; 3], c);
        t
    }

    fn add_term(&mut self, e: [u32; 3], c: F) {
        let entry = self.terms.entry(e).or_insert_with(F::zero);
        *entry = entry.clone() + c;
    }

    pub fn coeff(&self, e: [u32; 3]) -> F {
        self.terms.get(&e).cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(
                    [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]],
                    c1.clone() * c2.clone(),
                );
            }
        }
        out
    }

    fn scale(&self, c: &F) -> Self {
        Tern {
            terms: self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())).collect(),
        }
    }

    /// `f(B X)`: variable `x_i` becomes `sum_j b[i][j] X_j`.
    pub fn substitute(&self, b: &[[F; 3]; 3]) -> Self {
        let images: Vec<Tern<F>> = b.iter().map(|row| Tern::linear(row.clone())).collect();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut term = Tern::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&images[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, p: &[F; 3]) -> F {
        self.terms.iter().fold(F::zero(), |acc, (e, c)| {
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    v = v * p[i].clone();
                }
            }
            acc + v
        })
    }

    pub fn gradient_at(&self, p: &[F; 3]) -> [F; 3] {
        std::array::from_fn(|v| {
            let mut d = Self::zero();
            for (e, c) in &self.terms {
                if e[v] > 0 {
                    let mut e2 = *e;
                    e2[v] -= 1;
                    d.add_term(e2, c.clone() * F::from_i64(e[v] as i64));
                }
            }
            d.eval(p)
        })
    }

    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(Field::magnitude).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: &F) -> Self {
        self.scale(c)
    }
}
