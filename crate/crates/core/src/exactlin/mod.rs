//! Exact arithmetic: fields, dense matrices, univariate polynomials.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod subspace;

pub use factor::{factor, is_irreducible, monic_irreducibles};
pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use poly::{charpoly, Polynomial};
pub use subspace::all_subspaces;
