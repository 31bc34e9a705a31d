//! Exact verification toolkit for Bourbaki sequences of Koszul cycle
//! modules, determinantal criteria for torsion-freeness, and normality of a
//! Rees-type affine semigroup attached to the cycle graph.

pub mod algebra;
pub mod bourbaki;
pub mod catalog;
pub mod combin;
pub mod error;
pub mod koszul;
pub mod linalg;
pub mod rees;

pub use error::{Error, Result};
