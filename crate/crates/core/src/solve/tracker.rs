//! Total-degree homotopy `H(y, t) = (1 - t) F(y) + γ t G(y)` with
//! `G_i = y_i^{d_i} - r_i`, tracked from `t = 1` to `t = 0`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::cpoly::{norm_inf, solve_linear, CPoly, C64};

const ENDGAME_T: f64 = 1e-4;
const MAX_STEP: f64 = 0.1;
const MIN_STEP: f64 = 1e-14;
const DIVERGENCE_NORM: f64 = 1e8;
const INFINITY_HINT: f64 = 1e5;
const MAX_STEPS: usize = 50_000;

#[derive(Clone, Debug, PartialEq)]
pub enum PathOutcome {
    Finite(Vec<C64>),
    AtInfinity,
    Failed,
}

pub struct Homotopy<'a> {
    target: &'a [CPoly],
    gamma: C64,
    roots: Vec<C64>,
    degrees: Vec<u32>,
}

/// Tolerances used while tracking.
#[derive(Clone, Copy, Debug)]
pub struct TrackSettings {
    pub corrector_tol: f64,
    pub residual_tol: f64,
}

impl<'a> Homotopy<'a> {
    pub fn random(target: &'a [CPoly], rng: &mut impl Rng) -> Self {
        let unit = |rng: &mut dyn rand::RngCore| Complex64::from_polar(1.0, rng.gen::<f64>() * TAU);
        let gamma = unit(rng);
        let roots = target.iter().map(|_| unit(rng)).collect();
        Homotopy {
            target,
            gamma,
            roots,
            degrees: target.iter().map(CPoly::degree).collect(),
        }
    }

    pub fn bezout_bound(&self) -> usize {
        self.degrees.iter().map(|&d| d as usize).product()
    }

    /// All `Π d_i` solutions of the start system.
    pub fn start_points(&self) -> Vec<Vec<C64>> {
        let per_var: Vec<Vec<C64>> = self
            .degrees
            .iter()
            .zip(&self.roots)
            .map(|(&d, r)| {
                let base = r.powf(1.0 / d as f64);
                (0..d)
                    .map(|k| base * Complex64::from_polar(1.0, TAU * k as f64 / d as f64))
                    .collect()
            })
            .collect();
        let mut out: Vec<Vec<C64>> = vec![Vec::new()];
        for choices in &per_var {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |c| {
                        let mut p = prefix.clone();
                        p.push(*c);
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn start_eval(&self, y: &[C64]) -> (Vec<C64>, Vec<C64>) {
        let values = y
            .iter()
            .zip(&self.degrees)
            .zip(&self.roots)
            .map(|((v, &d), r)| v.powu(d) - r)
            .collect();
        let diag = y
            .iter()
            .zip(&self.degrees)
            .map(|(v, &d)| v.powu(d - 1) * d as f64)
            .collect();
        (values, diag)
    }

    /// `H(y, t)`, `∂H/∂y` and `∂H/∂t`.
    fn eval(&self, y: &[C64], t: f64) -> (Vec<C64>, Vec<Vec<C64>>, Vec<C64>) {
        let (g, gdiag) = self.start_eval(y);
        let n = y.len();
        let mut h = Vec::with_capacity(n);
        let mut jac = Vec::with_capacity(n);
        let mut ht = Vec::with_capacity(n);
        let s = 1.0 - t;
        let gt = self.gamma * t;
        for (i, f) in self.target.iter().enumerate() {
            let (fv, fg) = f.eval_grad(y);
            h.push(fv * s + gt * g[i]);
            let mut row: Vec<C64> = fg.into_iter().map(|v| v * s).collect();
            row[i] += gt * gdiag[i];
            jac.push(row);
            ht.push(self.gamma * g[i] - fv);
        }
        (h, jac, ht)
    }

    fn velocity(&self, y: &[C64], t: f64) -> Option<Vec<C64>> {
        let (_, jac, ht) = self.eval(y, t);
        let rhs = ht.into_iter().map(|v| -v).collect();
        solve_linear(jac, rhs)
    }

    fn correct(&self, mut y: Vec<C64>, t: f64, tol: f64) -> Option<Vec<C64>> {
        let mut last = f64::INFINITY;
        for _ in 0..3 {
            let (h, jac, _) = self.eval(&y, t);
            let dy = solve_linear(jac, h)?;
            let step = norm_inf(&dy);
            if step > last {
                return None;
            }
            last = step;
            for (a, d) in y.iter_mut().zip(&dy) {
                *a -= d;
            }
            if step <= tol * (1.0 + norm_inf(&y)) {
                return Some(y);
            }
        }
        None
    }

    /// Newton's method on the target system alone.
    fn polish(&self, mut y: Vec<C64>, tol: f64) -> Vec<C64> {
        for _ in 0..80 {
            let mut rows = Vec::with_capacity(y.len());
            let mut vals = Vec::with_capacity(y.len());
            for f in self.target {
                let (v, g) = f.eval_grad(&y);
                vals.push(v);
                rows.push(g);
            }
            let Some(dy) = solve_linear(rows, vals) else {
                break;
            };
            for (a, d) in y.iter_mut().zip(&dy) {
                *a -= d;
            }
            if norm_inf(&y) > DIVERGENCE_NORM || norm_inf(&dy) <= tol * (1.0 + norm_inf(&y)) {
                break;
            }
        }
        y
    }

    pub fn track(&self, start: Vec<C64>, settings: TrackSettings) -> PathOutcome {
        let mut y = start;
        let mut t = 1.0;
        let mut h = 0.02;
        let mut streak = 0;
        let mut steps = 0;
        while t > ENDGAME_T {
            steps += 1;
            if steps > MAX_STEPS || h < MIN_STEP {
                return PathOutcome::Failed;
            }
            let dt = h.min(t - ENDGAME_T);
            let step = self
                .rk4(&y, t, dt)
                .and_then(|pred| self.correct(pred, t - dt, settings.corrector_tol));
            match step {
                Some(next) => {
                    y = next;
                    t -= dt;
                    streak += 1;
                    if streak >= 4 {
                        h = (h * 1.25).min(MAX_STEP);
                        streak = 0;
                    }
                    if norm_inf(&y) > DIVERGENCE_NORM {
                        return PathOutcome::AtInfinity;
                    }
                }
                None => {
                    h *= 0.5;
                    streak = 0;
                }
            }
        }
        let before = norm_inf(&y);
        let y = self.polish(y, 1e-15);
        if !y.iter().all(|v| v.is_finite()) {
            return PathOutcome::Failed;
        }
        // Large endpoints have tiny scaled residuals, so test size first.
        if before.max(norm_inf(&y)) > INFINITY_HINT {
            PathOutcome::AtInfinity
        } else if affine_residual(self.target, &y) < settings.residual_tol {
            PathOutcome::Finite(y)
        } else {
            PathOutcome::Failed
        }
    }

    fn rk4(&self, y: &[C64], t: f64, dt: f64) -> Option<Vec<C64>> {
        let shift = |base: &[C64], k: &[C64], c: f64| -> Vec<C64> {
            base.iter().zip(k).map(|(a, b)| a + b * c).collect()
        };
        let k1 = self.velocity(y, t)?;
        let k2 = self.velocity(&shift(y, &k1, -dt / 2.0), t - dt / 2.0)?;
        let k3 = self.velocity(&shift(y, &k2, -dt / 2.0), t - dt / 2.0)?;
        let k4 = self.velocity(&shift(y, &k3, -dt), t - dt)?;
        Some(
            y.iter()
                .enumerate()
                .map(|(i, v)| v - (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0))
                .collect(),
        )
    }

    /// Tracks every start point; results are in start-point order.
    pub fn track_all(&self, settings: TrackSettings) -> Vec<PathOutcome> {
        self.start_points()
            .into_par_iter()
            .map(|s| self.track(s, settings))
            .collect()
    }
}

/// `max_i |F_i(y)| / (‖F_i‖₁ max(1, ‖y‖∞)^{d_i})`.
pub fn affine_residual(system: &[CPoly], y: &[C64]) -> f64 {
    let scale = norm_inf(y).max(1.0);
    system
        .iter()
        .map(|f| f.eval(y).norm() / (f.norm1().max(f64::MIN_POSITIVE) * scale.powi(f.degree() as i32)))
        .fold(0.0, f64::max)
}
