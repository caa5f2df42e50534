//! Polynomials with complex floating coefficients, compiled for fast
//! evaluation of values and gradients.

use num_complex::Complex64;
use num_traits::Zero;

use crate::poly::rat::to_f64;
use crate::poly::MultiPoly;

pub type C64 = Complex64;

#[derive(Clone, Debug)]
pub struct CPoly {
    nvars: usize,
    degree: u32,
    terms: Vec<(C64, Vec<u32>)>,
    norm1: f64,
}

impl CPoly {
    pub fn from_multipoly(p: &MultiPoly) -> Self {
        let terms: Vec<(C64, Vec<u32>)> = p
            .terms()
            .map(|(m, c)| (C64::new(to_f64(c), 0.0), m.exponents().to_vec()))
            .collect();
        Self::from_terms(p.nvars(), terms)
    }

    pub fn from_terms(nvars: usize, terms: Vec<(C64, Vec<u32>)>) -> Self {
        let degree = terms.iter().map(|(_, e)| e.iter().sum()).max().unwrap_or(0);
        let norm1 = terms.iter().map(|(c, _)| c.norm()).sum();
        CPoly {
            nvars,
            degree,
            terms,
            norm1,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Sum of coefficient moduli; bounds `|p|` on the unit polydisc.
    pub fn norm1(&self) -> f64 {
        self.norm1
    }

    fn powers(&self, y: &[C64]) -> Vec<Vec<C64>> {
        let d = self.degree as usize;
        y.iter()
            .map(|&v| {
                let mut row = Vec::with_capacity(d + 1);
                row.push(C64::new(1.0, 0.0));
                for k in 0..d {
                    row.push(row[k] * v);
                }
                row
            })
            .collect()
    }

    pub fn eval(&self, y: &[C64]) -> C64 {
        let pw = self.powers(y);
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .enumerate()
                    .fold(*c, |acc, (i, &k)| acc * pw[i][k as usize])
            })
            .sum()
    }

    /// Value and gradient.
    pub fn eval_grad(&self, y: &[C64]) -> (C64, Vec<C64>) {
        let pw = self.powers(y);
        let mut value = C64::zero();
        let mut grad = vec![C64::zero(); self.nvars];
        for (c, e) in &self.terms {
            value += e
                .iter()
                .enumerate()
                .fold(*c, |acc, (i, &k)| acc * pw[i][k as usize]);
            for (v, g) in grad.iter_mut().enumerate() {
                if e[v] == 0 {
                    continue;
                }
                let mut term = *c * e[v] as f64;
                for (i, &k) in e.iter().enumerate() {
                    let k = if i == v { k - 1 } else { k };
                    term *= pw[i][k as usize];
                }
                *g += term;
            }
        }
        (value, grad)
    }
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve_linear(mut a: Vec<Vec<C64>>, mut b: Vec<C64>) -> Option<Vec<C64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm()))?;
        if a[p][c].norm() < 1e-300 {
            return None;
        }
        a.swap(p, c);
        b.swap(p, c);
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let delta = f * a[c][j];
                a[i][j] -= delta;
            }
            let delta = f * b[c];
            b[i] -= delta;
        }
    }
    let mut x = vec![C64::zero(); n];
    for i in (0..n).rev() {
        let s: C64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
        if !x[i].is_finite() {
            return None;
        }
    }
    Some(x)
}

pub fn norm_inf(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_and_gradient() {
        let p = MultiPoly::parse("x0^2*x1 - 3*x1 + 2", Some(2)).unwrap();
        let c = CPoly::from_multipoly(&p);
        let y = [C64::new(2.0, 0.0), C64::new(-1.0, 1.0)];
        let (v, g) = c.eval_grad(&y);
        let expected = y[0] * y[0] * y[1] - 3.0 * y[1] + 2.0;
        assert!((v - expected).norm() < 1e-12);
        assert!((c.eval(&y) - expected).norm() < 1e-12);
        assert!((g[0] - 2.0 * y[0] * y[1]).norm() < 1e-12);
        assert!((g[1] - (y[0] * y[0] - 3.0)).norm() < 1e-12);
        assert_eq!(c.degree(), 3);
        assert_eq!(c.norm1(), 6.0);
    }

    #[test]
    fn linear_solve() {
        let a = vec![
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            vec![C64::new(2.0, 0.0), C64::new(0.0, 1.0)],
        ];
        let x = solve_linear(a, vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        assert!((x[1] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((x[0] - C64::new(0.0, -0.5)).norm() < 1e-14);
        let singular = vec![vec![C64::new(1.0, 0.0); 2]; 2];
        assert!(solve_linear(singular, vec![C64::zero(); 2]).is_none());
    }
}
