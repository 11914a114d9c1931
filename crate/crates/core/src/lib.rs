// `!(x > 0.0)` is used deliberately so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod discretization;
pub mod error;
pub mod exponents;
pub mod problem;
pub mod quadrature;
pub mod real;
pub mod solver;

pub use error::{Error, Result};
