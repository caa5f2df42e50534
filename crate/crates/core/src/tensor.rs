//! Cubic order-3 tensors and the decomposition
//! `V⊗V⊗V = S³V ⊕ N₁V ⊕ N₂V ⊕ Λ³V`.
//!
//! Index convention: `entry(i, j, k)` is row `i`, column `j` of face `k`;
//! face 0 is the front face. A tensor partially symmetric in its first two
//! indices therefore has symmetric faces, i.e. it is a list of quadrics.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::poly::linalg::{self, RatMatrix};
use crate::poly::{int, rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("tensor is not in {0:?}")]
    NotInClass(SymmetryClass),
    #[error("no basis is defined for {0:?}")]
    UnsupportedClass(SymmetryClass),
    #[error("dimension {0} is too small for this operation")]
    DimTooSmall(usize),
    #[error("expected a {expected} grid, got {got}")]
    Shape { expected: String, got: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SymmetryClass {
    Symmetric,
    SkewSymmetric,
    /// `T_ijk + T_jki + T_kij = 0`
    Residual,
    /// Residual and `T_ijk = T_jik` (cyclic-symmetric tensors).
    Residual1,
    /// Residual and `T_ijk = T_kji`.
    Residual2,
    /// `T_ijk = T_jik`
    PartialSym12,
}

impl SymmetryClass {
    pub const ALL: [SymmetryClass; 6] = [
        SymmetryClass::Symmetric,
        SymmetryClass::SkewSymmetric,
        SymmetryClass::Residual,
        SymmetryClass::Residual1,
        SymmetryClass::Residual2,
        SymmetryClass::PartialSym12,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dim: usize,
    entries: Vec<Rat>,
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Tensor3 {
            dim,
            entries: vec![Rat::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rat) -> Self {
        let mut t = Self::zeros(dim);
        for k in 0..dim {
            for i in 0..dim {
                for j in 0..dim {
                    t.set(i, j, k, f(i, j, k));
                }
            }
        }
        t
    }

    /// `e_i ⊗ e_j ⊗ e_k`.
    pub fn basis_element(dim: usize, i: usize, j: usize, k: usize) -> Self {
        let mut t = Self::zeros(dim);
        t.set(i, j, k, Rat::one());
        t
    }

    /// Builds a tensor from its faces, front to back; `faces[k][i][j] = T_ijk`.
    pub fn from_faces(faces: &[Vec<Vec<Rat>>]) -> Result<Self, TensorError> {
        let dim = faces.len();
        for face in faces {
            if face.len() != dim || face.iter().any(|r| r.len() != dim) {
                return Err(TensorError::Shape {
                    expected: format!("{dim}x{dim}x{dim}"),
                    got: format!(
                        "face with {} rows of lengths {:?}",
                        face.len(),
                        face.iter().map(Vec::len).collect::<Vec<_>>()
                    ),
                });
            }
        }
        Ok(Self::from_fn(dim, |i, j, k| faces[k][i][j].clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (k * self.dim + i) * self.dim + j
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.entries[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        let o = self.offset(i, j, k);
        self.entries[o] = v;
    }

    /// Face `k` as a matrix: `face(k)[i][j] = T_ijk`.
    pub fn face(&self, k: usize) -> RatMatrix {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j, k).clone()).collect())
            .collect()
    }

    pub fn faces(&self) -> Vec<RatMatrix> {
        (0..self.dim).map(|k| self.face(k)).collect()
    }

    /// Entries in face-major order (`k`, then `i`, then `j`).
    pub fn as_slice(&self) -> &[Rat] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dim, other.dim);
        Tensor3 {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!(self.dim, other.dim);
        Tensor3 {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Tensor3 {
        Tensor3 {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    fn map_indices(&self, f: impl Fn(&Tensor3, usize, usize, usize) -> Rat) -> Tensor3 {
        Tensor3::from_fn(self.dim, |i, j, k| f(self, i, j, k))
    }

    pub fn is_in(&self, class: SymmetryClass) -> bool {
        let d = self.dim;
        let t = |i, j, k| self.get(i, j, k);
        let all = |pred: &dyn Fn(usize, usize, usize) -> bool| {
            (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| pred(i, j, k))))
        };
        let cyclic = |i, j, k| (t(i, j, k) + t(j, k, i) + t(k, i, j)).is_zero();
        match class {
            SymmetryClass::Symmetric => all(&|i, j, k| t(i, j, k) == t(j, i, k) && t(i, j, k) == t(i, k, j)),
            SymmetryClass::SkewSymmetric => all(&|i, j, k| {
                *t(i, j, k) == -t(j, i, k) && *t(i, j, k) == -t(i, k, j)
            }),
            SymmetryClass::Residual => all(&cyclic),
            SymmetryClass::Residual1 => all(&|i, j, k| cyclic(i, j, k) && t(i, j, k) == t(j, i, k)),
            SymmetryClass::Residual2 => all(&|i, j, k| cyclic(i, j, k) && t(i, j, k) == t(k, j, i)),
            SymmetryClass::PartialSym12 => all(&|i, j, k| t(i, j, k) == t(j, i, k)),
        }
    }

    pub fn in_n1(&self) -> bool {
        self.is_in(SymmetryClass::Residual1)
    }
}

impl fmt::Display for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.dim {
            writeln!(f, "face {k}:")?;
            for i in 0..self.dim {
                let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j, k).to_string()).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

/// `S(T)_ijk = 1/6 Σ_σ T_σ(ijk)`.
pub fn sym_part(t: &Tensor3) -> Tensor3 {
    let sixth = rat(1, 6);
    t.map_indices(|t, i, j, k| {
        (t.get(i, j, k) + t.get(j, k, i) + t.get(k, i, j) + t.get(j, i, k) + t.get(k, j, i) + t.get(i, k, j))
            * &sixth
    })
}

/// `A(T)_ijk = 1/6 Σ_σ sgn(σ) T_σ(ijk)`.
pub fn skew_part(t: &Tensor3) -> Tensor3 {
    let sixth = rat(1, 6);
    t.map_indices(|t, i, j, k| {
        (t.get(i, j, k) + t.get(j, k, i) + t.get(k, i, j) - t.get(j, i, k) - t.get(k, j, i) - t.get(i, k, j))
            * &sixth
    })
}

/// `N(T)_ijk = (2 T_ijk - T_jki - T_kij) / 3`.
pub fn residual_part(t: &Tensor3) -> Tensor3 {
    let third = rat(1, 3);
    t.map_indices(|t, i, j, k| (t.get(i, j, k) * int(2) - t.get(j, k, i) - t.get(k, i, j)) * &third)
}

/// `N₁(T)_ijk = (T_ijk + T_jik - T_kji - T_kij) / 3`.
pub fn n1_part(t: &Tensor3) -> Tensor3 {
    let third = rat(1, 3);
    t.map_indices(|t, i, j, k| (t.get(i, j, k) + t.get(j, i, k) - t.get(k, j, i) - t.get(k, i, j)) * &third)
}

/// `N₂(T)_ijk = (T_ijk - T_jik + T_kji - T_jki) / 3`.
pub fn n2_part(t: &Tensor3) -> Tensor3 {
    let third = rat(1, 3);
    t.map_indices(|t, i, j, k| (t.get(i, j, k) - t.get(j, i, k) + t.get(k, j, i) - t.get(j, k, i)) * &third)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub sym: Tensor3,
    pub n1: Tensor3,
    pub n2: Tensor3,
    pub skew: Tensor3,
}

impl Decomposition {
    pub fn sum(&self) -> Tensor3 {
        self.sym.add(&self.n1).add(&self.n2).add(&self.skew)
    }
}

pub fn decompose(t: &Tensor3) -> Decomposition {
    Decomposition {
        sym: sym_part(t),
        n1: n1_part(t),
        n2: n2_part(t),
        skew: skew_part(t),
    }
}

/// Projector onto a summand, for the classes that have one.
pub fn projector(class: SymmetryClass) -> Result<fn(&Tensor3) -> Tensor3, TensorError> {
    match class {
        SymmetryClass::Symmetric => Ok(sym_part),
        SymmetryClass::SkewSymmetric => Ok(skew_part),
        SymmetryClass::Residual => Ok(residual_part),
        SymmetryClass::Residual1 => Ok(n1_part),
        SymmetryClass::Residual2 => Ok(n2_part),
        SymmetryClass::PartialSym12 => Err(TensorError::UnsupportedClass(class)),
    }
}

/// Matrix of a projector on the `dim³`-dimensional tensor space; column
/// `c` is the image of the `c`-th standard basis tensor.
pub fn projector_matrix(class: SymmetryClass, dim: usize) -> Result<RatMatrix, TensorError> {
    let op = projector(class)?;
    let n = dim * dim * dim;
    let mut m = linalg::zeros(n, n);
    for k in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                let e = Tensor3::basis_element(dim, i, j, k);
                let col = e.offset(i, j, k);
                for (row, v) in op(&e).entries.into_iter().enumerate() {
                    m[row][col] = v;
                }
            }
        }
    }
    Ok(m)
}

pub fn projector_rank(class: SymmetryClass, dim: usize) -> Result<usize, TensorError> {
    Ok(linalg::rank(&projector_matrix(class, dim)?))
}

/// Basis of a summand: the projector applied to `e_i ⊗ e_j ⊗ e_k` over
/// the index cells `{j ≤ i ≤ k}` (S³), `{j > i > k}` (Λ³), `{j ≤ i > k}`
/// (N₁) and `{j > i ≤ k}` (N₂), enumerated with `i`, then `j`, then `k`
/// increasing.
pub fn basis(class: SymmetryClass, dim: usize) -> Result<Vec<Tensor3>, TensorError> {
    let (op, cell): (fn(&Tensor3) -> Tensor3, fn(usize, usize, usize) -> bool) = match class {
        SymmetryClass::Symmetric => (sym_part, |i, j, k| j <= i && i <= k),
        SymmetryClass::SkewSymmetric => (skew_part, |i, j, k| j > i && i > k),
        SymmetryClass::Residual1 => (n1_part, |i, j, k| j <= i && i > k),
        SymmetryClass::Residual2 => (n2_part, |i, j, k| j > i && i <= k),
        other => return Err(TensorError::UnsupportedClass(other)),
    };
    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if cell(i, j, k) {
                    out.push(op(&Tensor3::basis_element(dim, i, j, k)));
                }
            }
        }
    }
    Ok(out)
}

/// Drops the last face and the last row and column of every other face.
pub fn restrict(t: &Tensor3) -> Result<Tensor3, TensorError> {
    if t.dim < 2 {
        return Err(TensorError::DimTooSmall(t.dim));
    }
    if !t.in_n1() {
        return Err(TensorError::NotInClass(SymmetryClass::Residual1));
    }
    Ok(Tensor3::from_fn(t.dim - 1, |i, j, k| t.get(i, j, k).clone()))
}

/// Embeds a cyclic-symmetric `s` of dimension `n` as the upper-left-front
/// sub-tensor of one of dimension `n + 1`.
///
/// `free[k][s]` (for `k < n`, `s ≤ n`) are the free parameters `T_snk` of
/// the new last column of face `k`; the corner of face `k` is `2 T_nnk` and
/// the last face is forced by the cyclic relation.
pub fn extend(s: &Tensor3, free: &[Vec<Rat>]) -> Result<Tensor3, TensorError> {
    let n = s.dim;
    if free.len() != n || free.iter().any(|r| r.len() != n + 1) {
        return Err(TensorError::Shape {
            expected: format!("{n}x{}", n + 1),
            got: format!("{}x{:?}", free.len(), free.iter().map(Vec::len).collect::<Vec<_>>()),
        });
    }
    if !s.in_n1() {
        return Err(TensorError::NotInClass(SymmetryClass::Residual1));
    }
    let two = int(2);
    let t = Tensor3::from_fn(n + 1, |i, j, k| {
        if k < n {
            match (i < n, j < n) {
                (true, true) => s.get(i, j, k).clone(),
                (true, false) => free[k][i].clone(),
                (false, true) => free[k][j].clone(),
                (false, false) => &free[k][n] * &two,
            }
        } else {
            match (i < n, j < n) {
                (true, true) => -(&free[i][j] + &free[j][i]),
                (true, false) => -free[i][n].clone(),
                (false, true) => -free[j][n].clone(),
                (false, false) => Rat::zero(),
            }
        }
    });
    debug_assert!(t.in_n1());
    Ok(t)
}

/// A pseudo-random element of N₁V: the N₁ basis combined with integer
/// coefficients drawn uniformly from `[-9, 9]`.
pub fn random_n1(dim: usize, seed: u64) -> Tensor3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_n1_with(dim, &mut rng)
}

pub fn random_n1_with(dim: usize, rng: &mut impl Rng) -> Tensor3 {
    let basis = basis(SymmetryClass::Residual1, dim).expect("N1 has a basis");
    basis.iter().fold(Tensor3::zeros(dim), |acc, b| {
        acc.add(&b.scale(&int(rng.gen_range(-9..=9))))
    })
}

/// A dense tensor with integer entries drawn uniformly from `[-9, 9]`.
pub fn random_dense(dim: usize, seed: u64) -> Tensor3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Tensor3::from_fn(dim, |_, _, _| int(rng.gen_range(-9..=9)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, i: usize, j: usize, k: usize) -> Tensor3 {
        Tensor3::basis_element(d, i, j, k)
    }

    fn combo(d: usize, terms: &[(i64, i64, [usize; 3])]) -> Tensor3 {
        terms.iter().fold(Tensor3::zeros(d), |acc, (n, den, [i, j, k])| {
            acc.add(&e(d, *i, *j, *k).scale(&rat(*n, *den)))
        })
    }

    #[test]
    fn symmetrization_of_e001() {
        let s = sym_part(&e(2, 0, 0, 1));
        let expected = combo(2, &[(1, 3, [0, 0, 1]), (1, 3, [1, 0, 0]), (1, 3, [0, 1, 0])]);
        assert_eq!(s, expected);
        assert_eq!(sym_part(&s), s);
    }

    #[test]
    fn skew_of_e012() {
        let a = skew_part(&e(3, 0, 1, 2));
        let expected = combo(
            3,
            &[
                (1, 6, [0, 1, 2]),
                (1, 6, [1, 2, 0]),
                (1, 6, [2, 0, 1]),
                (-1, 6, [1, 0, 2]),
                (-1, 6, [2, 1, 0]),
                (-1, 6, [0, 2, 1]),
            ],
        );
        assert_eq!(a, expected);
        assert!(a.is_in(SymmetryClass::SkewSymmetric));
        assert!(sym_part(&a).is_zero());
        assert!(skew_part(&sym_part(&random_dense(3, 1))).is_zero());
    }

    #[test]
    fn residual_of_e100() {
        let n = residual_part(&e(2, 1, 0, 0));
        let expected = combo(2, &[(2, 3, [1, 0, 0]), (-1, 3, [0, 1, 0]), (-1, 3, [0, 0, 1])]);
        assert_eq!(n, expected);
        assert!(n.is_in(SymmetryClass::Residual));
    }

    #[test]
    fn n1_images_of_dim2_generators() {
        let a = n1_part(&e(2, 1, 0, 0));
        assert_eq!(a, combo(2, &[(1, 3, [1, 0, 0]), (1, 3, [0, 1, 0]), (-2, 3, [0, 0, 1])]));
        let b = n1_part(&e(2, 1, 1, 0));
        assert_eq!(b, combo(2, &[(2, 3, [1, 1, 0]), (-1, 3, [1, 0, 1]), (-1, 3, [0, 1, 1])]));
        assert!(n2_part(&a).is_zero() && n2_part(&b).is_zero());
    }

    #[test]
    fn n1_n2_meet_only_at_zero() {
        // A tensor in both classes satisfies 3 T = 0 entrywise; check that the
        // two predicates together reject every nonzero basis tensor of either.
        for d in 2..=4 {
            for t in basis(SymmetryClass::Residual1, d).unwrap() {
                assert!(!t.is_in(SymmetryClass::Residual2));
            }
            for t in basis(SymmetryClass::Residual2, d).unwrap() {
                assert!(!t.is_in(SymmetryClass::Residual1));
            }
        }
        assert!(Tensor3::zeros(3).is_in(SymmetryClass::Residual1));
        assert!(Tensor3::zeros(3).is_in(SymmetryClass::Residual2));
    }

    #[test]
    fn basis_cardinalities() {
        assert_eq!(basis(SymmetryClass::SkewSymmetric, 3).unwrap().len(), 1);
        assert_eq!(basis(SymmetryClass::Residual1, 3).unwrap().len(), 8);
        assert_eq!(basis(SymmetryClass::Symmetric, 3).unwrap().len(), 10);
        assert!(matches!(
            basis(SymmetryClass::Residual, 3),
            Err(TensorError::UnsupportedClass(SymmetryClass::Residual))
        ));
    }

    #[test]
    fn restrict_checks_membership() {
        assert_eq!(
            restrict(&e(3, 0, 0, 0)),
            Err(TensorError::NotInClass(SymmetryClass::Residual1))
        );
        assert_eq!(restrict(&Tensor3::zeros(3)).unwrap(), Tensor3::zeros(2));
        assert_eq!(restrict(&Tensor3::zeros(1)), Err(TensorError::DimTooSmall(1)));
    }

    #[test]
    fn extend_zero_is_zero() {
        let free = vec![vec![Rat::zero(); 3]; 2];
        assert_eq!(extend(&Tensor3::zeros(2), &free).unwrap(), Tensor3::zeros(3));
        assert!(matches!(
            extend(&Tensor3::zeros(2), &free[..1]),
            Err(TensorError::Shape { .. })
        ));
    }

    #[test]
    fn random_n1_is_deterministic_and_cyclic() {
        let a = random_n1(4, 17);
        assert_eq!(a, random_n1(4, 17));
        assert!(a.in_n1());
        assert_ne!(a, random_n1(4, 18));
    }
}
