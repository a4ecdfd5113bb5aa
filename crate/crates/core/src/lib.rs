//! Exact computations with affine spaces of bounded-rank matrices over
//! small prime fields: constructions of the extremal spaces, congruence
//! classification, range-compatible maps and exhaustive searches.

pub mod budget;
pub mod congruence;
pub mod error;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod models;
pub mod rangecompat;
pub mod search;
pub mod space;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use space::{AffineMatrixSpace, AmbientKind, Hyperplane};
