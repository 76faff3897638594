//! Exact computations with braided symmetric algebras over quantum groups of
//! types A, B, C, D and their invariants.

pub mod algebras;
pub mod braiding;
pub mod invariants;
pub mod linalg;
pub mod ncpoly;
pub mod report;
pub mod rootdata;
pub mod scalar;
pub mod uqaction;

pub use linalg::{LinearOperator, SparseVec, TensorShape};
pub use rootdata::{natural_rep, Family, LieTypeSpec, RepData};
pub use scalar::Scalar;
