//! Exact adelic and K-theoretic computations on curves over finite fields and on
//! the projective plane.

pub mod adelic;
pub mod config;
pub mod curve;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod milnor;
pub mod run;
pub mod selfcheck;
pub mod signs;
pub mod surface;
pub mod weil;

pub use error::{Error, Result};
