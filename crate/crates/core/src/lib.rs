//! Exact computer algebra for commutative B∞-algebras.
//!
//! The crate covers the tensor coalgebra over a graded alphabet, B∞ brackets
//! and their induced Hopf products, canonical idempotents and the isomorphisms
//! onto shuffle algebras, the descent algebra of the symmetric groups, and the
//! double bialgebra of finite topologies.
//!
//! All arithmetic is over the rationals; nothing is floating point.

pub mod binfty;
pub mod combinat;
pub mod descent;
pub mod error;
pub mod exactlin;
pub mod idem;
pub mod par;
pub mod topo;
pub mod words;

pub use error::{Error, Result};
pub use exactlin::{Echelon, LinComb, Poly, Scalar};
