//! Exact scalars and dense matrix kernels over the rationals and prime fields.

mod field;
mod matrix;

pub use field::{FieldTag, Modulus, Scalar};
pub use matrix::{echelonize_rows, Matrix};
