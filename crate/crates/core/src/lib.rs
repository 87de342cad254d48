//! Exact and numeric tools for metrized nonassociative algebras: cubic
//! forms and their algebras, Hsiang and quasicomposition identities, polar
//! decompositions, Killing forms and Peirce data.

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod cubic;
pub mod linalg;
pub mod polynomial;
pub mod report;
pub mod scalar;

pub use algebra::{multilinearize, Algebra, AlgebraError, FieldTag, Side};
pub use cubic::CubicForm;
pub use linalg::{Matrix, Subspace, Vector};
pub use polynomial::Polynomial;
pub use report::Report;
pub use scalar::{Rational, Scalar, ScalarError};
