//! Common zeros of homogeneous generators in `P^n`.
//!
//! Each run intersects `n` random rational combinations of the generators
//! in a random affine chart `x = A (1, y)`, keeps the points where every
//! generator vanishes, and must agree with an independent second chart.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::cpoly::{CPoly, C64};
use super::reconstruct::reconstruct_point;
use super::{check_square, run_once, CPoint, Cluster, SolutionSet, SolveError, SolverConfig, CROSS_CHECK_HEIGHT};
use crate::poly::linalg;
use crate::poly::{int, MultiPoly, Rat};
use crate::weddle::LinearSystem;

const CHART_RANGE: i64 = 9;

/// Base points of a linear system of quadrics.
pub fn base_points(sys: &LinearSystem, config: &SolverConfig) -> Result<SolutionSet, SolveError> {
    solve_projective(&sys.quadric_polys(), config)
}

/// Common zeros of the partial derivatives of a homogeneous `f`.
pub fn singular_points(f: &MultiPoly, config: &SolverConfig) -> Result<SolutionSet, SolveError> {
    if f.is_zero() {
        return Err(SolveError::ZeroSystem);
    }
    if !f.is_homogeneous() {
        return Err(SolveError::NotHomogeneous);
    }
    solve_projective(&f.gradient(), config)
}

struct ChartResult {
    survivors: Vec<Cluster>,
    filtered_out: usize,
    tracked: usize,
    failed: usize,
    at_infinity: usize,
    bezout: usize,
}

/// Projective common zeros of homogeneous generators of one degree in
/// `n + 1` variables, `n ≤ 4`.
pub fn solve_projective(generators: &[MultiPoly], config: &SolverConfig) -> Result<SolutionSet, SolveError> {
    let gens: Vec<MultiPoly> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(first) = gens.first() else {
        return Err(SolveError::ZeroSystem);
    };
    let nv = first.nvars();
    let degree = first.homogeneous_degree().ok_or(SolveError::NotHomogeneous)?;
    if gens.iter().any(|g| g.nvars() != nv || g.homogeneous_degree() != Some(degree)) {
        return Err(SolveError::NotHomogeneous);
    }
    let n = nv - 1;
    if n == 0 {
        // P^0 is one point, where no nonzero form vanishes.
        return Ok(SolutionSet {
            clusters: Vec::new(),
            bezout_bound: 1,
            paths_tracked: 0,
            paths_failed: 0,
            paths_at_infinity: 0,
            charts: 0,
            filtered_out: 0,
            attempts: 0,
            certified: true,
            issues: Vec::new(),
        });
    }
    let gen_c: Vec<CPoly> = gens.iter().map(CPoly::from_multipoly).collect();
    let mut rng = config.rng();
    let mut attempts = 0;
    loop {
        attempts += 1;
        let mut charts = Vec::with_capacity(2);
        for _ in 0..2 {
            charts.push(run_chart(&gens, &gen_c, n, config, &mut rng)?);
        }
        let result = merge(charts, &gens, config, attempts)?;
        if result.certified || attempts > config.max_retries {
            return Ok(result);
        }
    }
}

fn random_int(rng: &mut ChaCha8Rng) -> Rat {
    int(rng.gen_range(-CHART_RANGE..=CHART_RANGE))
}

fn run_chart(
    gens: &[MultiPoly],
    gen_c: &[CPoly],
    n: usize,
    config: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> Result<ChartResult, SolveError> {
    let nv = n + 1;
    let chart = loop {
        let a: Vec<Vec<Rat>> = (0..nv).map(|_| (0..nv).map(|_| random_int(rng)).collect()).collect();
        if !linalg::det(&a).is_zero() {
            break a;
        }
    };
    // x_i = A_i0 + sum_j A_i(j+1) y_j
    let images: Vec<MultiPoly> = chart
        .iter()
        .map(|row| {
            let mut p = MultiPoly::constant(row[0].clone(), n);
            for (j, c) in row[1..].iter().enumerate() {
                p = p + MultiPoly::var(j, n).scale(c);
            }
            p
        })
        .collect();
    let combos: Vec<MultiPoly> = (0..n)
        .map(|_| {
            gens.iter()
                .fold(MultiPoly::zero(nv), |acc, g| acc + g.scale(&random_int(rng)))
        })
        .collect();
    let affine = combos
        .iter()
        .map(|c| c.substitute(&images))
        .collect::<Result<Vec<_>, _>>()?;
    let compiled = check_square(&affine)?;
    let run = run_once(&compiled, config, rng);

    let chart_f: Vec<Vec<f64>> = chart
        .iter()
        .map(|r| r.iter().map(crate::poly::rat::to_f64).collect())
        .collect();
    let mut clusters: Vec<Cluster> = Vec::new();
    for y in &run.finite {
        let x: Vec<C64> = chart_f
            .iter()
            .map(|r| y.iter().zip(&r[1..]).fold(C64::new(r[0], 0.0), |acc, (v, c)| acc + v * *c))
            .collect();
        let p = CPoint::new(x).normalized();
        let residual = projective_residual(gen_c, &p);
        match clusters
            .iter_mut()
            .find(|c| c.point.sine_distance(&p) < config.cluster_radius)
        {
            Some(c) => {
                c.multiplicity += 1;
                if residual < c.residual {
                    c.point = p;
                    c.residual = residual;
                }
            }
            None => clusters.push(Cluster {
                point: p,
                multiplicity: 1,
                residual,
                rational_match: None,
            }),
        }
    }
    let total = clusters.len();
    let survivors: Vec<Cluster> = clusters
        .into_iter()
        .filter(|c| c.residual < config.residual_tol)
        .collect();
    Ok(ChartResult {
        filtered_out: total - survivors.len(),
        survivors,
        tracked: run.finite.len() + run.at_infinity,
        failed: run.failed,
        at_infinity: run.at_infinity,
        bezout: run.bezout,
    })
}

/// `max_g |g(p)| / ‖g‖₁` at the unit representative `p`.
pub(crate) fn projective_residual(gens: &[CPoly], p: &CPoint) -> f64 {
    gens.iter()
        .map(|g| g.eval(p.coords()).norm() / g.norm1().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

fn merge(
    charts: Vec<ChartResult>,
    gens: &[MultiPoly],
    config: &SolverConfig,
    attempts: usize,
) -> Result<SolutionSet, SolveError> {
    let mut issues = Vec::new();
    let failed: usize = charts.iter().map(|c| c.failed).sum();
    if failed > 0 {
        issues.push(format!("{failed} paths failed"));
    }
    let mut clusters: Vec<Cluster> = Vec::new();
    for (i, chart) in charts.iter().enumerate() {
        for c in &chart.survivors {
            if c.multiplicity > 1 {
                issues.push(format!(
                    "chart {i}: solution of multiplicity {} (expected reduced points)",
                    c.multiplicity
                ));
            }
        }
    }
    let (first, second) = (&charts[0].survivors, &charts[1].survivors);
    let unmatched_first = first
        .iter()
        .filter(|a| !second.iter().any(|b| a.point.sine_distance(&b.point) < config.cluster_radius))
        .count();
    let unmatched_second: Vec<&Cluster> = second
        .iter()
        .filter(|b| !first.iter().any(|a| a.point.sine_distance(&b.point) < config.cluster_radius))
        .collect();
    if unmatched_first > 0 || !unmatched_second.is_empty() || first.len() != second.len() {
        issues.push(format!(
            "charts disagree: {} vs {} points",
            first.len(),
            second.len()
        ));
    }
    clusters.extend(first.iter().cloned());
    clusters.extend(unmatched_second.into_iter().cloned());

    for c in &mut clusters {
        let Some(r) = reconstruct_point(&c.point, CROSS_CHECK_HEIGHT, config.cluster_radius) else {
            continue;
        };
        let mut vanishes = true;
        for g in gens {
            if !g.evaluate(&r)?.is_zero() {
                vanishes = false;
                break;
            }
        }
        if vanishes {
            c.rational_match = Some(r);
        } else {
            issues.push(format!(
                "solution rounds to [{}] where the system does not vanish",
                r.iter().map(ToString::to_string).collect::<Vec<_>>().join(":")
            ));
        }
    }
    clusters.sort_by_key(|c| c.point.sort_key());
    Ok(SolutionSet {
        certified: issues.is_empty(),
        clusters,
        bezout_bound: charts[0].bezout,
        paths_tracked: charts.iter().map(|c| c.tracked).sum(),
        paths_failed: failed,
        paths_at_infinity: charts.iter().map(|c| c.at_infinity).sum(),
        charts: charts.len(),
        filtered_out: charts.iter().map(|c| c.filtered_out).sum(),
        attempts,
        issues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ints;

    fn p(s: &str, n: usize) -> MultiPoly {
        MultiPoly::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn triangle_has_three_singular_points() {
        let s = singular_points(&p("x0*x1*x2", 3), &SolverConfig::default()).unwrap();
        assert!(s.certified, "{:?}", s.issues);
        assert_eq!(s.bezout_bound, 4);
        let mut pts = s.rational_points();
        pts.sort();
        assert_eq!(pts, vec![ints(&[0, 0, 1]), ints(&[0, 1, 0]), ints(&[1, 0, 0])]);
    }

    #[test]
    fn coordinate_squares_have_no_base_points() {
        let sys = LinearSystem::from_polys(&[p("x0^2", 3), p("x1^2", 3), p("x2^2", 3)]).unwrap();
        let s = base_points(&sys, &SolverConfig::default()).unwrap();
        assert!(s.certified, "{:?}", s.issues);
        assert_eq!(s.count(), 0);
    }

    #[test]
    fn binary_cyclic_system() {
        // faces [[0,1],[1,4]] and [[-2,-2],[-2,0]]: a = 1, b = 2
        let sys = LinearSystem::from_polys(&[p("2*x0*x1 + 4*x1^2", 2), p("-2*x0^2 - 4*x0*x1", 2)]).unwrap();
        let s = base_points(&sys, &SolverConfig::default()).unwrap();
        assert!(s.certified, "{:?}", s.issues);
        assert_eq!(s.rational_points(), vec![ints(&[2, -1])]);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert_eq!(
            singular_points(&MultiPoly::zero(3), &SolverConfig::default()).unwrap_err(),
            SolveError::ZeroSystem
        );
    }
}
