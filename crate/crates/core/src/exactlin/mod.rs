//! Exact scalars, univariate polynomials and sparse linear combinations.

mod echelon;
mod lincomb;
mod poly;
mod scalar;

pub use echelon::Echelon;
pub use lincomb::LinComb;
pub use poly::Poly;
pub use scalar::Scalar;
