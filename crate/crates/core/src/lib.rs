//! Exact shuffle, stuffle and double shuffle machinery for multiple zeta
//! values and multiple polylogarithms.

pub mod charts;
pub mod error;
pub mod linalg;
pub mod lincomb;
pub mod mpl;
pub mod numeric;
pub mod padic;
pub mod relations;
pub mod series;
pub mod shuffle;
pub mod suites;
pub mod words;

pub use error::{Error, Result};
pub use lincomb::{LinComb, Rational};
pub use words::{Index, Letter, Word};
