//! Exact-arithmetic toolkit for Dehn surgery on Montesinos knots.

mod error;
pub mod catalog;
pub mod enumerate;
pub mod seifert;
pub mod slope;
pub mod snf;
pub mod surgery;
pub mod tangle;

pub use error::{Error, Result};
