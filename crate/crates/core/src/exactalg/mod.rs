//! Exact scalars and sparse multivariate polynomials.

mod poly;
mod scalar;

pub use poly::{poly_arith, Homogeneity, Monomial, Poly, PolyOp};
pub(crate) use poly::render_coeff;
pub use scalar::Scalar;
