//! Exact and numeric tools for the separated-variable curves
//! `P(z)Q(w) = 1` and polynomial lemniscates `|P(z)| = 1`.
//!
//! - [`exact`]: Gaussian rationals, dense polynomials, squarefree
//!   decomposition.
//! - [`power`]: perfect-power structure and the reducibility decision.
//! - [`separated`]: bivariate constructions, explicit factors, incidence
//!   with the lines at infinity, proportionality bookkeeping.
//! - [`monodromy`]: numerical monodromy component counting, independent of
//!   the decision procedure.
//! - [`tracer`]: marching-squares extraction of lemniscates.

pub mod corpus;
pub mod error;
pub mod exact;
pub mod monodromy;
pub mod power;
pub mod separated;
pub mod tracer;

pub use error::{Error, Result};
pub use exact::{squarefree_decompose, GaussianRational, SquarefreeDecomposition, UniPoly};
pub use power::{
    decide_reducibility, extract_power_form, lemniscate_irreducible, max_power_exponent, PowerForm, ReducibilityVerdict,
};
