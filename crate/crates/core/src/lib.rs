//! Exact relative Lie algebra cohomology, Chern–Weil forms and the
//! characteristic-class bookkeeping for noncompact symmetric pairs.

pub mod error;
pub mod catalog;
pub mod ce;
pub mod chern_weil;
pub mod exterior;
pub mod lie;
pub mod linalg;
pub mod reports;

pub use error::{Error, Result};
