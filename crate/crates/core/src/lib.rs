//! Partially symmetric order-3 tensors and the Weddle loci of the linear
//! systems of quadrics they encode.
//!
//! - [`poly`]: exact rationals, sparse polynomials, polynomial determinants.
//! - [`tensor`]: the symmetric / residual / skew projectors and their bases.
//! - [`weddle`]: linear systems of quadrics, Weddle matrices, rank certificates.
//! - [`solve`]: total-degree homotopy continuation and projective point counts.
//! - [`cubic`]: plane cubics, Weierstrass reduction and j-invariants.

pub mod cubic;
pub mod fixtures;
pub mod io;
pub mod poly;
pub mod solve;
pub mod tensor;
pub mod weddle;

pub use poly::{MultiPoly, PolyError, PolyMatrix, Rat};
pub use tensor::{SymmetryClass, Tensor3};
pub use weddle::{LinearSystem, WeddleData};
