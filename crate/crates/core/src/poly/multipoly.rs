use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{content, Rat};
use super::{Monomial, PolyError};

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a map keyed by graded-lex ordered monomials; zero
/// coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rat::one(), nvars)
    }

    pub fn constant(c: Rat, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_index`. Panics if `index >= nvars`.
    pub fn var(index: usize, nvars: usize) -> Self {
        assert!(index < nvars, "variable x{index} outside {nvars} variables");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), Rat::one());
        p
    }

    /// The linear form `sum_i coeffs[i] * x_i`.
    pub fn linear_form(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    /// The quadratic form `x^T q x` of a square matrix.
    pub fn quadratic_form(q: &[Vec<Rat>]) -> Self {
        let n = q.len();
        let mut p = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut e = vec![0; n];
                e[i] += 1;
                e[j] += 1;
                p.add_term(Monomial::new(e), q[i][j].clone());
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree if every term has the same total degree; `None` for the zero
    /// polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn differentiate(&self, var: usize) -> Result<MultiPoly, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VarOutOfRange {
                var,
                nvars: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c * Rat::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars)
            .map(|i| self.differentiate(i).expect("index in range"))
            .collect()
    }

    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rat>> = point.iter().map(|v| vec![Rat::one(), v.clone()]).collect();
        let mut sum = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &point[i];
                    table.push(next);
                }
                term *= &table[e as usize];
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Substitutes `x_i -> images[i]`; all images share one arity, which
    /// becomes the arity of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::PointLength {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(PolyError::NvarsMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(target), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone(), target);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &images[i];
                    table.push(next);
                }
                term = &term * &table[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Primitive part with positive graded-lex leading coefficient; the
    /// canonical representative of the polynomial up to a nonzero scalar.
    pub fn normalized(&self) -> MultiPoly {
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        let mut c = content(self.terms.values());
        if lc.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Whether `self` and `other` agree up to a nonzero scalar.
    pub fn proportional_to(&self, other: &MultiPoly) -> bool {
        self.nvars == other.nvars && self.normalized() == other.normalized()
    }

    /// Exact quotient by a nonzero linear form, or `None` when it does not divide.
    pub fn divide_by_linear(&self, l: &MultiPoly) -> Result<Option<MultiPoly>, PolyError> {
        self.check_arity(l)?;
        if l.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if l.homogeneous_degree() != Some(1) {
            return Err(PolyError::NotLinear);
        }
        let (lead_m, lead_c) = l.leading_term().expect("nonzero");
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rem = self.clone();
        let mut quotient = MultiPoly::zero(self.nvars);
        // A single divisor is a Groebner basis of its ideal, so the division
        // remainder is zero exactly when l | f.
        while let Some((m, c)) = rem.leading_term() {
            let Some(q_m) = m.div(&lead_m) else {
                return Ok(None);
            };
            let q_c = c / &lead_c;
            let step = MultiPoly::from_terms(self.nvars, [(q_m, q_c)]);
            rem = &rem - &(&step * l);
            quotient = &quotient + &step;
        }
        Ok(Some(quotient))
    }

    /// Whether the restriction to the line through `p` and `q` is identically
    /// zero, i.e. `f(s*p + t*q)` is the zero binary form.
    pub fn vanishes_on_line(&self, p: &[Rat], q: &[Rat]) -> Result<bool, PolyError> {
        for v in [p, q] {
            if v.len() != self.nvars {
                return Err(PolyError::PointLength {
                    expected: self.nvars,
                    got: v.len(),
                });
            }
        }
        if super::linalg::rank(&[p.to_vec(), q.to_vec()]) < 2 {
            return Err(PolyError::ProjectivelyEqual);
        }
        let s = MultiPoly::var(0, 2);
        let t = MultiPoly::var(1, 2);
        let images: Vec<MultiPoly> = p
            .iter()
            .zip(q)
            .map(|(a, b)| &s.scale(a) + &t.scale(b))
            .collect();
        Ok(self.substitute(&images)?.is_zero())
    }

    /// Reinterprets the polynomial in a larger ring (new trailing variables).
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.resize(nvars, 0);
            (Monomial::new(e), c.clone())
        });
        MultiPoly::from_terms(nvars, terms)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            /// Panics on an arity mismatch; use the `checked_*` form to recover.
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
