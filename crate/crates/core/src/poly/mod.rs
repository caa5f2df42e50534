//! Exact arithmetic: rationals, sparse multivariate polynomials, polynomial
//! matrices and dense rational linear algebra.

pub mod linalg;
mod matrix;
mod monomial;
mod multipoly;
mod parse;
pub mod rat;

use thiserror::Error;

pub use matrix::{PolyMatrix, MAX_DET_SIZE};
pub use monomial::Monomial;
pub use multipoly::MultiPoly;
pub use rat::{int, ints, rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings ({left} vs {right} variables)")]
    NvarsMismatch { left: usize, right: usize },
    #[error("variable index {var} out of range for {nvars} variables")]
    VarOutOfRange { var: usize, nvars: usize },
    #[error("expected {expected} coordinates, got {got}")]
    PointLength { expected: usize, got: usize },
    #[error("division by the zero form")]
    ZeroDivisor,
    #[error("divisor is not a homogeneous linear form")]
    NotLinear,
    #[error("matrix of size {size} exceeds the determinant limit {max}")]
    MatrixTooLarge { size: usize, max: usize },
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("points are projectively equal")]
    ProjectivelyEqual,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// `f / l` for a linear form `l`, when the division is exact.
pub fn divides(l: &MultiPoly, f: &MultiPoly) -> Result<Option<MultiPoly>, PolyError> {
    f.divide_by_linear(l)
}

pub fn det(m: &PolyMatrix) -> Result<MultiPoly, PolyError> {
    m.det()
}

pub fn vanishes_on_line(f: &MultiPoly, p: &[Rat], q: &[Rat]) -> Result<bool, PolyError> {
    f.vanishes_on_line(p, q)
}

/// Primitive integer representative of a projective rational point.
pub fn primitive_point(p: &[Rat]) -> Vec<Rat> {
    use num_traits::{Signed, Zero};
    let c = rat::content(p);
    if c.is_zero() {
        return p.to_vec();
    }
    let mut out: Vec<Rat> = p.iter().map(|v| v / &c).collect();
    if out.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        out.iter_mut().for_each(|v| *v = -v.clone());
    }
    out
}
