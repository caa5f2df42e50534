use serde::Serialize;

use super::{weddle_matrix, LinearSystem, WeddleError};
use crate::poly::linalg;
use crate::poly::{Monomial, MultiPoly, Rat};
use crate::solve::{self, SolutionSet, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SingularCount {
    Exact(usize),
    AtLeast(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankConclusion {
    RankAtLeast6,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub singular_count: SingularCount,
    pub conclusion: RankConclusion,
    pub evidence: SolutionSet,
}

/// A system in `P^3` whose Weddle quartic has fewer than ten singular
/// points has rank at least six. The conclusion is only drawn from a
/// certified count.
pub fn rank_lower_bound_certificate(
    sys: &LinearSystem,
    config: &SolverConfig,
) -> Result<RankCertificate, WeddleError> {
    if sys.n() != 3 {
        return Err(WeddleError::NotP3(sys.n()));
    }
    let w = weddle_matrix(sys)?;
    if w.degenerate {
        return Err(WeddleError::Degenerate);
    }
    let evidence = solve::singular_points(&w.polynomial, config)?;
    let count = evidence.clusters.len();
    let (singular_count, conclusion) = if evidence.certified {
        let c = if count < 10 {
            RankConclusion::RankAtLeast6
        } else {
            RankConclusion::Inconclusive
        };
        (SingularCount::Exact(count), c)
    } else {
        (SingularCount::AtLeast(count), RankConclusion::Inconclusive)
    };
    Ok(RankCertificate {
        singular_count,
        conclusion,
        evidence,
    })
}

/// Writes `f` as a product of linear forms, each the hyperplane through
/// `n` of the given points. Returns the normalized factors in the order
/// found, with any scalar left over folded into the first one.
pub fn splits_into_hyperplanes(
    f: &MultiPoly,
    singular_pts: &[Vec<Rat>],
) -> Result<Option<Vec<MultiPoly>>, WeddleError> {
    let nv = f.nvars();
    let Some(d) = f.homogeneous_degree() else {
        return Ok(None);
    };
    let mut candidates: Vec<MultiPoly> = Vec::new();
    for subset in subsets(singular_pts.len(), nv - 1) {
        let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| singular_pts[i].clone()).collect();
        if rows.iter().any(|r| r.len() != nv) {
            return Err(WeddleError::PointLength {
                expected: nv,
                got: rows.iter().map(Vec::len).find(|&l| l != nv).unwrap_or(0),
            });
        }
        let kernel = linalg::nullspace(&rows, nv);
        if let [normal] = &kernel[..] {
            let l = MultiPoly::linear_form(normal).normalized();
            if !candidates.contains(&l) {
                candidates.push(l);
            }
        }
    }
    let mut factors = Vec::new();
    if peel(f.clone(), d, &candidates, &mut factors)? {
        let product = factors.iter().fold(MultiPoly::one(nv), |acc, l| acc * l);
        let scalar = f.coeff(&lead(&product)) / product.coeff(&lead(&product));
        factors[0] = factors[0].scale(&scalar);
        Ok(Some(factors))
    } else {
        Ok(None)
    }
}

fn lead(p: &MultiPoly) -> Monomial {
    p.leading_term().expect("nonzero product").0.clone()
}

fn peel(
    f: MultiPoly,
    remaining: u32,
    candidates: &[MultiPoly],
    out: &mut Vec<MultiPoly>,
) -> Result<bool, WeddleError> {
    if remaining == 0 {
        return Ok(f.total_degree() == Some(0));
    }
    for l in candidates {
        if let Some(q) = f.divide_by_linear(l)? {
            out.push(l.clone());
            if peel(q, remaining - 1, candidates, out)? {
                return Ok(true);
            }
            out.pop();
        }
    }
    Ok(false)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ints;

    fn p(s: &str, n: usize) -> MultiPoly {
        MultiPoly::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn triangle_splits_through_its_vertices() {
        let pts = vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])];
        let factors = splits_into_hyperplanes(&p("x0*x1*x2", 3), &pts).unwrap().unwrap();
        let mut names: Vec<String> = factors.iter().map(|l| l.to_string()).collect();
        names.sort();
        assert_eq!(names, ["x0", "x1", "x2"]);
    }

    #[test]
    fn scalar_is_kept() {
        let pts = vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])];
        let f = p("-3*x0*x1*x2", 3);
        let factors = splits_into_hyperplanes(&f, &pts).unwrap().unwrap();
        let product = factors.iter().fold(MultiPoly::one(3), |acc, l| acc * l);
        assert_eq!(product, f);
    }

    #[test]
    fn smooth_cubic_without_points_does_not_split() {
        let f = p("x0^3 + x1^3 + x2^3", 3);
        assert_eq!(splits_into_hyperplanes(&f, &[]).unwrap(), None);
    }

    #[test]
    fn rank_certificate_needs_p3() {
        let sys = LinearSystem::from_polys(&[p("x0^2", 2), p("x1^2", 2)]).unwrap();
        assert!(matches!(
            rank_lower_bound_certificate(&sys, &SolverConfig::default()),
            Err(WeddleError::NotP3(1))
        ));
    }
}
