//! Exact rational arithmetic: dense matrices, multivariate polynomials and
//! binary forms.

pub mod form;
pub mod linalg;
pub mod poly;

pub use form::{transvectant, BinForm};
pub use linalg::{determinant, mat_kernel, rank, rref_kernel, Matrix};
pub use poly::{poly_gcd, resultant, Poly};
