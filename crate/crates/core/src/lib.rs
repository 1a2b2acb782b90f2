//! Infinity branches and generalized asymptotes of algebraic space curves.

pub mod asymptote;
pub mod branches;
pub mod cli;
pub mod error;
pub mod field;
pub mod parametric;
pub mod poly;
pub mod puiseux;

pub use error::{Error, Result};
