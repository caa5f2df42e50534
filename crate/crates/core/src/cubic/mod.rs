//! Plane cubics: Hessians, smoothness, Weierstrass forms and j-invariants.

mod reduce;
pub mod ternary;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::poly::{int, MultiPoly, PolyError, PolyMatrix, Rat};
use crate::solve::reconstruct::reconstruct_point;
use crate::solve::{self, SolveError, SolverConfig};
use ternary::Tern;

pub use reduce::{integral_model_exists, long_form, minimal_invariants, LongWeierstrass};

/// Coordinates searched for rational flexes before solving numerically.
pub const FLEX_SEARCH_BOUND: i64 = 6;
/// Height bound when rounding a numerical flex to a rational point.
pub const FLEX_RECONSTRUCTION_HEIGHT: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicError {
    #[error("expected a homogeneous cubic in {0} variables")]
    NotCubic(usize),
    #[error("the curve is singular")]
    Singular,
    #[error("the point is not a flex of the curve")]
    NotAFlex,
    #[error("the solver could not certify the {0}")]
    Uncertified(&'static str),
    #[error("4a³ + 27b² vanishes")]
    SingularWeierstrass,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// `y² = x³ + a x + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortWeierstrass {
    pub a: Rat,
    pub b: Rat,
}

impl ShortWeierstrass {
    pub fn new(a: Rat, b: Rat) -> Self {
        ShortWeierstrass { a, b }
    }

    /// `4a³ + 27b²`.
    pub fn discriminant_factor(&self) -> Rat {
        int(4) * &self.a * &self.a * &self.a + int(27) * &self.b * &self.b
    }

    /// From the invariants: `a = -c4/48`, `b = -c6/864`.
    pub fn from_c_invariants(c4: &Rat, c6: &Rat) -> Self {
        ShortWeierstrass {
            a: -c4 / int(48),
            b: -c6 / int(864),
        }
    }
}

/// `j = 256 · 27a³ / (4a³ + 27b²)`.
pub fn j_short(w: &ShortWeierstrass) -> Result<Rat, CubicError> {
    let d = w.discriminant_factor();
    if d.is_zero() {
        return Err(CubicError::SingularWeierstrass);
    }
    Ok(int(6912) * &w.a * &w.a * &w.a / d)
}

fn check_cubic(f: &MultiPoly, nvars: Option<usize>) -> Result<(), CubicError> {
    let want = nvars.unwrap_or(f.nvars());
    if f.nvars() != want || f.homogeneous_degree() != Some(3) {
        return Err(CubicError::NotCubic(want));
    }
    Ok(())
}

/// Matrix of second partial derivatives of a homogeneous cubic.
pub fn hessian(f: &MultiPoly) -> Result<PolyMatrix, CubicError> {
    check_cubic(f, None)?;
    let n = f.nvars();
    let grad = f.gradient();
    Ok(PolyMatrix::from_fn(n, n, |i, j| {
        grad[i].differentiate(j).expect("index within arity")
    }))
}

/// Whether the plane cubic has no singular points, from a certified
/// numerical count.
pub fn is_smooth_cubic(f: &MultiPoly, config: &SolverConfig) -> Result<bool, CubicError> {
    check_cubic(f, Some(3))?;
    let s = solve::singular_points(f, config)?;
    if !s.certified {
        return Err(CubicError::Uncertified("singular points"));
    }
    Ok(s.count() == 0)
}

/// Primitive integer points with coordinates in `[-bound, bound]` where the
/// cubic and its Hessian determinant both vanish, ordered by height and
/// then lexicographically.
pub fn rational_flexes(f: &MultiPoly, bound: i64) -> Result<Vec<Vec<Rat>>, CubicError> {
    check_cubic(f, Some(3))?;
    let h = hessian(f)?.det()?;
    let mut found = Vec::new();
    let range = || -bound..=bound;
    for a in range() {
        for b in range() {
            for c in range() {
                let v = [a, b, c];
                let Some(&lead) = v.iter().find(|x| **x != 0) else {
                    continue;
                };
                if lead < 0 || num_integer::gcd(num_integer::gcd(a, b), c) != 1 {
                    continue;
                }
                let p: Vec<Rat> = v.iter().map(|&x| int(x)).collect();
                if f.evaluate(&p)?.is_zero() && h.evaluate(&p)?.is_zero() {
                    found.push(v);
                }
            }
        }
    }
    found.sort_by_key(|v| (v.iter().map(|x| x.abs()).max(), *v));
    Ok(found.into_iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect())
}

/// Exact short Weierstrass form through the given rational flex,
/// normalized to the minimal integral model.
pub fn weierstrass_reduce_at(f: &MultiPoly, flex: &[Rat]) -> Result<ShortWeierstrass, CubicError> {
    check_cubic(f, Some(3))?;
    if flex.len() != 3 {
        return Err(CubicError::NotAFlex);
    }
    let t = Tern::<Rat>::from_multipoly(f);
    let p = [flex[0].clone(), flex[1].clone(), flex[2].clone()];
    if !t.eval(&p).is_zero() {
        return Err(CubicError::NotAFlex);
    }
    let (long, _) = long_form(&t, &p)?;
    let (c4, c6) = minimal_invariants(&long)?;
    Ok(ShortWeierstrass::from_c_invariants(
        &Rat::from_integer(c4),
        &Rat::from_integer(c6),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericWeierstrass {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub j: [f64; 2],
    /// Relative size of the coefficients that vanish at an exact flex.
    pub flex_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Reduction {
    Exact {
        curve: ShortWeierstrass,
        flex: Vec<Rat>,
    },
    Numeric(NumericWeierstrass),
}

fn c64_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Reduction in floating point from a numerically computed flex.
fn reduce_numeric_at(f: &MultiPoly, flex: &[Complex64]) -> Result<NumericWeierstrass, CubicError> {
    let t = Tern::<Complex64>::from_multipoly(f);
    let p = [flex[0], flex[1], flex[2]];
    let (long, defect) = long_form(&t, &p)?;
    let (c4, c6) = long.c_invariants();
    let a = -c4 / 48.0;
    let b = -c6 / 864.0;
    let d = 4.0 * a * a * a + 27.0 * b * b;
    let scale = (4.0 * a * a * a).norm().max((27.0 * b * b).norm());
    if d.norm() <= 1e-9 * scale || scale == 0.0 {
        return Err(CubicError::Singular);
    }
    Ok(NumericWeierstrass {
        a: c64_pair(a),
        b: c64_pair(b),
        j: c64_pair(6912.0 * a * a * a / d),
        flex_residual: defect,
    })
}

fn numeric_flexes(f: &MultiPoly, config: &SolverConfig) -> Result<solve::SolutionSet, CubicError> {
    let h = hessian(f)?.det()?;
    if h.is_zero() {
        return Err(CubicError::Singular);
    }
    let s = solve::solve_projective(&[f.clone(), h], config)?;
    if !s.certified || s.count() == 0 {
        return Err(CubicError::Uncertified("flexes"));
    }
    Ok(s)
}

/// Short Weierstrass form of a smooth plane cubic. A rational flex of
/// small height gives an exact result; otherwise the flexes are computed
/// numerically, and one that rounds to a rational flex is used exactly.
pub fn weierstrass_reduce(f: &MultiPoly, config: &SolverConfig) -> Result<Reduction, CubicError> {
    check_cubic(f, Some(3))?;
    if let Some(flex) = rational_flexes(f, FLEX_SEARCH_BOUND)?.into_iter().next() {
        let curve = weierstrass_reduce_at(f, &flex)?;
        return Ok(Reduction::Exact { curve, flex });
    }
    let flexes = numeric_flexes(f, config)?;
    let h = hessian(f)?.det()?;
    for c in &flexes.clusters {
        let Some(p) = reconstruct_point(&c.point, FLEX_RECONSTRUCTION_HEIGHT, config.cluster_radius) else {
            continue;
        };
        if f.evaluate(&p)?.is_zero() && h.evaluate(&p)?.is_zero() {
            let curve = weierstrass_reduce_at(f, &p)?;
            return Ok(Reduction::Exact { curve, flex: p });
        }
    }
    Ok(Reduction::Numeric(reduce_numeric_at(f, flexes.clusters[0].point.coords())?))
}

/// The floating-point reduction from the first computed flex, without any
/// exact shortcut.
pub fn weierstrass_reduce_numeric(f: &MultiPoly, config: &SolverConfig) -> Result<NumericWeierstrass, CubicError> {
    check_cubic(f, Some(3))?;
    let flexes = numeric_flexes(f, config)?;
    reduce_numeric_at(f, flexes.clusters[0].point.coords())
}

#[derive(Clone, Debug, PartialEq)]
pub enum JInvariant {
    Exact(Rat),
    Numeric { value: f64, imaginary: f64, flex_residual: f64 },
}

impl JInvariant {
    pub fn as_f64(&self) -> f64 {
        match self {
            JInvariant::Exact(r) => crate::poly::rat::to_f64(r),
            JInvariant::Numeric { value, .. } => *value,
        }
    }
}

pub fn j_invariant(f: &MultiPoly, config: &SolverConfig) -> Result<JInvariant, CubicError> {
    match weierstrass_reduce(f, config)? {
        Reduction::Exact { curve, .. } => Ok(JInvariant::Exact(j_short(&curve)?)),
        Reduction::Numeric(n) => Ok(JInvariant::Numeric {
            value: n.j[0],
            imaginary: n.j[1],
            flex_residual: n.flex_residual,
        }),
    }
}
