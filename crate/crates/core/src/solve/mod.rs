//! Numerical solving of small polynomial systems by total-degree homotopy
//! continuation, with clustering and residual certification.

mod cpoint;
pub mod cpoly;
mod jacobsthal;
mod projective;
pub mod reconstruct;
pub mod tracker;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{MultiPoly, PolyError, Rat};
use cpoly::CPoly;
use tracker::{affine_residual, Homotopy, PathOutcome, TrackSettings};

pub use cpoint::CPoint;
pub use jacobsthal::{closed_form as jacobsthal_closed_form, jacobsthal, jacobsthal_u64, sequence as jacobsthal_sequence};
pub use projective::{base_points, singular_points, solve_projective};

/// Largest number of unknowns accepted.
pub const MAX_UNKNOWNS: usize = 4;
/// Largest equation degree accepted.
pub const MAX_DEGREE: u32 = 3;
/// Height bound for the rational cross-check of computed solutions.
pub const CROSS_CHECK_HEIGHT: i64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("expected {expected} equations, got {got}")]
    EquationCount { expected: usize, got: usize },
    #[error("{unknowns} unknowns exceed the limit of {max}")]
    TooManyUnknowns { unknowns: usize, max: usize },
    #[error("equation {index} has degree {degree}; supported degrees are 1..={max}")]
    Degree { index: usize, degree: u32, max: u32 },
    #[error("generators must be homogeneous of one common degree")]
    NotHomogeneous,
    #[error("the system is identically zero")]
    ZeroSystem,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Newton corrector tolerance relative to `1 + ‖y‖∞`.
    pub track_tol: f64,
    /// Normalized residual below which a point counts as a solution.
    pub residual_tol: f64,
    /// Sine distance below which two projective points are identified.
    pub cluster_radius: f64,
    pub seed: u64,
    /// Fresh-randomness reruns after an uncertified run.
    pub max_retries: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            track_tol: 1e-9,
            residual_tol: 1e-8,
            cluster_radius: 1e-6,
            seed: 1,
            max_retries: 3,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        SolverConfig {
            seed,
            ..self.clone()
        }
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn settings(&self) -> TrackSettings {
        TrackSettings {
            corrector_tol: self.track_tol,
            residual_tol: self.residual_tol,
        }
    }
}

fn ser_rats<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
    v.as_ref()
        .map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>())
        .serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct Cluster {
    /// Representative; normalized for projective solutions, raw affine
    /// coordinates otherwise.
    pub point: CPoint,
    pub multiplicity: usize,
    pub residual: f64,
    /// Small-height rational point the representative rounds to, when one
    /// exists and the system vanishes on it exactly.
    #[serde(serialize_with = "ser_rats")]
    pub rational_match: Option<Vec<Rat>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionSet {
    pub clusters: Vec<Cluster>,
    /// Paths per run: the product of the equation degrees.
    pub bezout_bound: usize,
    /// Paths ending at a finite point or at infinity, summed over charts.
    pub paths_tracked: usize,
    pub paths_failed: usize,
    pub paths_at_infinity: usize,
    /// Affine runs merged into this result (two for projective solves).
    pub charts: usize,
    /// Clusters discarded because a remaining equation does not vanish.
    pub filtered_out: usize,
    pub attempts: usize,
    pub certified: bool,
    pub issues: Vec<String>,
}

impl SolutionSet {
    pub fn count(&self) -> usize {
        self.clusters.len()
    }

    pub fn rational_points(&self) -> Vec<Vec<Rat>> {
        self.clusters.iter().filter_map(|c| c.rational_match.clone()).collect()
    }
}

pub(crate) fn check_square(system: &[MultiPoly]) -> Result<Vec<CPoly>, SolveError> {
    let n = system.len();
    if n > MAX_UNKNOWNS {
        return Err(SolveError::TooManyUnknowns {
            unknowns: n,
            max: MAX_UNKNOWNS,
        });
    }
    system
        .iter()
        .enumerate()
        .map(|(index, p)| {
            if p.nvars() != n {
                return Err(SolveError::EquationCount {
                    expected: p.nvars(),
                    got: n,
                });
            }
            let degree = p.total_degree().unwrap_or(0);
            if degree == 0 || degree > MAX_DEGREE {
                return Err(SolveError::Degree {
                    index,
                    degree,
                    max: MAX_DEGREE,
                });
            }
            Ok(CPoly::from_multipoly(p))
        })
        .collect()
}

/// Outcome of one affine run.
pub(crate) struct AffineRun {
    pub finite: Vec<Vec<cpoly::C64>>,
    pub at_infinity: usize,
    pub failed: usize,
    pub bezout: usize,
}

pub(crate) fn run_once(system: &[CPoly], config: &SolverConfig, rng: &mut ChaCha8Rng) -> AffineRun {
    let h = Homotopy::random(system, rng);
    let outcomes = h.track_all(config.settings());
    let mut run = AffineRun {
        finite: Vec::new(),
        at_infinity: 0,
        failed: 0,
        bezout: h.bezout_bound(),
    };
    for o in outcomes {
        match o {
            PathOutcome::Finite(y) => run.finite.push(y),
            PathOutcome::AtInfinity => run.at_infinity += 1,
            PathOutcome::Failed => run.failed += 1,
        }
    }
    run
}

/// Finite solutions of `n` polynomials in `n` unknowns. Failed paths
/// trigger reruns with fresh `γ` and start roots; a run that still has
/// failures is returned uncertified.
pub fn solve_square(system: &[MultiPoly], config: &SolverConfig) -> Result<SolutionSet, SolveError> {
    let compiled = check_square(system)?;
    let mut rng = config.rng();
    let mut attempts = 0;
    let run = loop {
        attempts += 1;
        let run = run_once(&compiled, config, &mut rng);
        if run.failed == 0 || attempts > config.max_retries {
            break run;
        }
    };
    let mut clusters: Vec<Cluster> = Vec::new();
    for y in &run.finite {
        let scale = cpoly::norm_inf(y).max(1.0);
        let found = clusters.iter_mut().find(|c| {
            let d: Vec<cpoly::C64> = c.point.coords().iter().zip(y).map(|(a, b)| a - b).collect();
            cpoly::norm_inf(&d) / scale < config.cluster_radius
        });
        let residual = affine_residual(&compiled, y);
        match found {
            Some(c) => {
                c.multiplicity += 1;
                if residual < c.residual {
                    c.point = CPoint::new(y.clone());
                    c.residual = residual;
                }
            }
            None => clusters.push(Cluster {
                point: CPoint::new(y.clone()),
                multiplicity: 1,
                residual,
                rational_match: None,
            }),
        }
    }
    let mut issues = Vec::new();
    for c in &mut clusters {
        let Some(r) = reconstruct::reconstruct_affine(c.point.coords(), CROSS_CHECK_HEIGHT, config.cluster_radius)
        else {
            continue;
        };
        let vanishes = system
            .iter()
            .map(|p| p.evaluate(&r).map(|v| v.is_zero()))
            .collect::<Result<Vec<_>, _>>()?;
        if vanishes.iter().all(|&v| v) {
            c.rational_match = Some(r);
        } else {
            issues.push(format!("solution rounds to a rational point that is not a root: {r:?}"));
        }
    }
    if run.failed > 0 {
        issues.push(format!("{} paths failed after {attempts} attempts", run.failed));
    }
    clusters.sort_by_key(|c| c.point.sort_key());
    Ok(SolutionSet {
        certified: issues.is_empty(),
        paths_tracked: run.finite.len() + run.at_infinity,
        paths_failed: run.failed,
        paths_at_infinity: run.at_infinity,
        bezout_bound: run.bezout,
        charts: 1,
        filtered_out: 0,
        attempts,
        clusters,
        issues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ints;

    fn sys(polys: &[&str]) -> Vec<MultiPoly> {
        polys
            .iter()
            .map(|s| MultiPoly::parse(s, Some(polys.len())).unwrap())
            .collect()
    }

    #[test]
    fn four_sign_points() {
        let s = solve_square(&sys(&["x0^2 - 1", "x1^2 - 1"]), &SolverConfig::default()).unwrap();
        assert!(s.certified);
        assert_eq!(s.count(), 4);
        let mut pts = s.rational_points();
        pts.sort();
        assert_eq!(pts, vec![ints(&[-1, -1]), ints(&[-1, 1]), ints(&[1, -1]), ints(&[1, 1])]);
    }

    #[test]
    fn double_roots_are_clustered() {
        let s = solve_square(&sys(&["x0^2 + x1^2 - 2", "x0*x1 - 1"]), &SolverConfig::default()).unwrap();
        assert_eq!(s.paths_failed, 0);
        assert_eq!(s.count(), 2);
        assert!(s.clusters.iter().all(|c| c.multiplicity == 2));
        let mut pts = s.rational_points();
        pts.sort();
        assert_eq!(pts, vec![ints(&[-1, -1]), ints(&[1, 1])]);
    }

    #[test]
    fn rejects_oversized_systems() {
        let five = sys(&["x0", "x1", "x2", "x3", "x4"]);
        assert!(matches!(
            solve_square(&five, &SolverConfig::default()),
            Err(SolveError::TooManyUnknowns { .. })
        ));
        let quartic = sys(&["x0^4 - 1"]);
        assert!(matches!(
            solve_square(&quartic, &SolverConfig::default()),
            Err(SolveError::Degree { degree: 4, .. })
        ));
    }
}
