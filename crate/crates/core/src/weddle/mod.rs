//! Linear systems of quadrics and their Weddle loci.

mod certify;
mod construct;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::linalg::{self, RatMatrix};
use crate::poly::{int, rat, Monomial, MultiPoly, PolyError, PolyMatrix, Rat};
use crate::solve::SolveError;
use crate::tensor::{SymmetryClass, Tensor3, TensorError};

pub use certify::{
    rank_lower_bound_certificate, splits_into_hyperplanes, RankCertificate, RankConclusion,
    SingularCount,
};
pub use construct::{
    mu_invariants, quadrics_through_points, rank5_closed_form, rank5_column_expansion,
    rank5_system, rank5_identity_check, rank_r_system, Rank5Data,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeddleError {
    #[error("expected {expected} quadrics, got {got}")]
    QuadricCount { expected: usize, got: usize },
    #[error("quadric {index} is not a symmetric {size}x{size} matrix")]
    NotSymmetric { index: usize, size: usize },
    #[error("generator {index} is not a homogeneous quadric in {nvars} variables")]
    NotQuadric { index: usize, nvars: usize },
    #[error("point is not a base point of the system (quadric {index} does not vanish)")]
    NotBasePoint { index: usize },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("expected a point with {expected} coordinates, got {got}")]
    PointLength { expected: usize, got: usize },
    #[error("expected a homogeneous polynomial of degree {expected}")]
    WrongDegree { expected: u32 },
    #[error("the Weddle polynomial vanishes identically")]
    Degenerate,
    #[error("rank certificates are only defined in P^3, got P^{0}")]
    NotP3(usize),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// `n + 1` symmetric matrices `Q_0..Q_n` acting on `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    n: usize,
    quadrics: Vec<RatMatrix>,
}

impl LinearSystem {
    pub fn new(quadrics: Vec<RatMatrix>) -> Result<Self, WeddleError> {
        let size = quadrics.len();
        if size == 0 {
            return Err(WeddleError::QuadricCount { expected: 1, got: 0 });
        }
        for (index, q) in quadrics.iter().enumerate() {
            if q.len() != size || !linalg::is_symmetric(q) {
                return Err(WeddleError::NotSymmetric { index, size });
            }
        }
        Ok(LinearSystem {
            n: size - 1,
            quadrics,
        })
    }

    /// From homogeneous quadratic polynomials; the coefficient `c` of
    /// `x_i x_j` (`i ≠ j`) becomes `c/2` in both off-diagonal entries.
    pub fn from_polys(polys: &[MultiPoly]) -> Result<Self, WeddleError> {
        let size = polys.len();
        let mut quadrics = Vec::with_capacity(size);
        for (index, p) in polys.iter().enumerate() {
            if p.nvars() != size || !(p.is_zero() || p.homogeneous_degree() == Some(2)) {
                return Err(WeddleError::NotQuadric { index, nvars: size });
            }
            quadrics.push(quadric_matrix(p));
        }
        Self::new(quadrics)
    }

    /// The system whose quadrics are the faces of a tensor that is
    /// symmetric in its first two indices.
    pub fn from_tensor(t: &Tensor3) -> Result<Self, WeddleError> {
        if !t.is_in(SymmetryClass::PartialSym12) {
            return Err(TensorError::NotInClass(SymmetryClass::PartialSym12).into());
        }
        Self::new(t.faces())
    }

    pub fn to_tensor(&self) -> Tensor3 {
        Tensor3::from_faces(&self.quadrics).expect("square system")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn quadrics(&self) -> &[RatMatrix] {
        &self.quadrics
    }

    pub fn quadric_polys(&self) -> Vec<MultiPoly> {
        self.quadrics.iter().map(|q| MultiPoly::quadratic_form(q)).collect()
    }

    /// Generators replaced by `sum_j r[k][j] Q_j`.
    pub fn recombine(&self, r: &[Vec<Rat>]) -> Result<Self, WeddleError> {
        let size = self.n + 1;
        if r.len() != size || r.iter().any(|row| row.len() != size) {
            return Err(WeddleError::Shape(format!("recombination must be {size}x{size}")));
        }
        let quadrics = r
            .iter()
            .map(|row| {
                let mut acc = linalg::zeros(size, size);
                for (c, q) in row.iter().zip(&self.quadrics) {
                    if c.is_zero() {
                        continue;
                    }
                    for i in 0..size {
                        for j in 0..size {
                            acc[i][j] += c * &q[i][j];
                        }
                    }
                }
                acc
            })
            .collect();
        Self::new(quadrics)
    }

    pub fn is_base_point(&self, p: &[Rat]) -> Result<bool, WeddleError> {
        Ok(self.first_nonvanishing(p)?.is_none())
    }

    fn first_nonvanishing(&self, p: &[Rat]) -> Result<Option<usize>, WeddleError> {
        check_point(p, self.nvars())?;
        for (k, q) in self.quadrics.iter().enumerate() {
            let qp = linalg::mat_vec(q, p);
            let v: Rat = qp.iter().zip(p).map(|(a, b)| a * b).sum();
            if !v.is_zero() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

/// Symmetric matrix of a homogeneous quadratic polynomial.
pub fn quadric_matrix(p: &MultiPoly) -> RatMatrix {
    let n = p.nvars();
    let mut q = linalg::zeros(n, n);
    let half = rat(1, 2);
    for (m, c) in p.terms() {
        let idx: Vec<usize> = m
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize))
            .collect();
        if let [i, j] = idx[..] {
            if i == j {
                q[i][i] = c.clone();
            } else {
                q[i][j] = c * &half;
                q[j][i] = c * &half;
            }
        }
    }
    q
}

fn check_point(p: &[Rat], nvars: usize) -> Result<(), WeddleError> {
    if p.len() != nvars {
        return Err(WeddleError::PointLength {
            expected: nvars,
            got: p.len(),
        });
    }
    if p.iter().all(Zero::is_zero) {
        return Err(WeddleError::ZeroPoint);
    }
    Ok(())
}

/// Weddle matrix, its normalized determinant and the degeneracy flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeddleData {
    /// Contraction along the second index: entry `(i, k)` is `sum_j x_j T_ijk`.
    pub matrix: PolyMatrix,
    /// Primitive determinant with positive leading coefficient, or zero.
    pub polynomial: MultiPoly,
    pub degenerate: bool,
}

/// Entry `(i, k)` is `sum_j x_j (Q_k)_ij`.
pub fn contraction_matrix(sys: &LinearSystem) -> PolyMatrix {
    let nv = sys.nvars();
    PolyMatrix::from_fn(nv, nv, |i, k| MultiPoly::linear_form(&sys.quadrics[k][i]))
}

/// Entry `(i, k)` is `∂Q_k/∂x_i`.
pub fn gradient_matrix(sys: &LinearSystem) -> PolyMatrix {
    let nv = sys.nvars();
    let polys = sys.quadric_polys();
    PolyMatrix::from_fn(nv, nv, |i, k| {
        polys[k].differentiate(i).expect("index within arity")
    })
}

pub fn weddle_matrix(sys: &LinearSystem) -> Result<WeddleData, WeddleError> {
    let matrix = contraction_matrix(sys);
    assert_eq!(
        matrix.scale(&int(2)),
        gradient_matrix(sys),
        "gradient matrix differs from twice the contraction"
    );
    let det = matrix.det()?;
    Ok(WeddleData {
        degenerate: det.is_zero(),
        polynomial: det.normalized(),
        matrix,
    })
}

/// Whether every partial derivative of `f` vanishes at `p`.
pub fn singular_at(f: &MultiPoly, p: &[Rat]) -> Result<bool, WeddleError> {
    check_point(p, f.nvars())?;
    for g in f.gradient() {
        if !g.evaluate(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a base point `p` of `sys`, whether `p` is singular on the Weddle
/// locus. A `false` result contradicts the base point theorem.
pub fn base_point_theorem_check(sys: &LinearSystem, p: &[Rat]) -> Result<bool, WeddleError> {
    if let Some(index) = sys.first_nonvanishing(p)? {
        return Err(WeddleError::NotBasePoint { index });
    }
    Ok(weddle_gradient_at(sys, p)?.iter().all(Zero::is_zero))
}

/// Gradient of `det C` at `p`, exactly. Since `C` is linear in `x`,
/// `∂det C/∂x_m = Σ_{i,k} cof(C(p))_{ik} (Q_k)_{im}`.
pub fn weddle_gradient_at(sys: &LinearSystem, p: &[Rat]) -> Result<Vec<Rat>, WeddleError> {
    check_point(p, sys.nvars())?;
    let nv = sys.nvars();
    let columns: Vec<Vec<Rat>> = sys.quadrics.iter().map(|q| linalg::mat_vec(q, p)).collect();
    let c: RatMatrix = (0..nv).map(|i| (0..nv).map(|k| columns[k][i].clone()).collect()).collect();
    let mut grad = vec![Rat::zero(); nv];
    for i in 0..nv {
        for k in 0..nv {
            let minor: RatMatrix = (0..nv)
                .filter(|&r| r != i)
                .map(|r| (0..nv).filter(|&col| col != k).map(|col| c[r][col].clone()).collect())
                .collect();
            let mut cof = if nv == 1 { Rat::one() } else { linalg::det(&minor) };
            if (i + k) % 2 == 1 {
                cof = -cof;
            }
            if cof.is_zero() {
                continue;
            }
            for (m, g) in grad.iter_mut().enumerate() {
                *g += &cof * &sys.quadrics[k][i][m];
            }
        }
    }
    Ok(grad)
}

/// `sum_k x_k Q_k`, which vanishes for cyclic-symmetric systems.
pub fn cyclic_relation_check(sys: &LinearSystem) -> MultiPoly {
    let nv = sys.nvars();
    sys.quadric_polys()
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(nv), |acc, (k, q)| acc + MultiPoly::var(k, nv) * q)
}

/// Whether the Weddle matrix of the system of partials of a cubic `f` is
/// half its Hessian matrix.
pub fn hessian_equals_weddle_check(f: &MultiPoly) -> Result<bool, WeddleError> {
    if f.homogeneous_degree() != Some(3) {
        return Err(WeddleError::WrongDegree { expected: 3 });
    }
    let sys = LinearSystem::from_polys(&f.gradient())?;
    let w = weddle_matrix(&sys)?;
    let h = crate::cubic::hessian(f).map_err(|_| WeddleError::WrongDegree { expected: 3 })?;
    Ok(w.matrix.scale(&int(2)) == h)
}

/// Homogeneous polynomial of degree `d` given by its coefficients on the
/// descending graded-lex monomial basis.
pub(crate) fn form_from_coeffs(nvars: usize, d: u32, coeffs: &[Rat]) -> MultiPoly {
    MultiPoly::from_terms(
        nvars,
        Monomial::all_of_degree(nvars, d)
            .into_iter()
            .zip(coeffs.iter().cloned()),
    )
}
