//! Exact arithmetic over the Gaussian rationals and dense univariate
//! polynomials with coefficients there.

mod gaussian;
mod poly;
mod squarefree;

pub use gaussian::GaussianRational;
pub use poly::UniPoly;
pub use squarefree::{squarefree_decompose, SquarefreeDecomposition};
