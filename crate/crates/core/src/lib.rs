//! Exact symbolic verification of compatibility between Lie algebroids and
//! multisymplectic forms.
//!
//! Everything is computed over the rationals; a check passes only when its
//! residual is identically zero.

pub mod algebroid;
pub mod cli;
pub mod compat;
pub mod error;
pub mod forms;
pub mod graded;
pub mod manifest;
pub mod moment;
pub mod poly;
pub mod qgraded;
pub mod report;
pub mod sample;
pub mod symplectic;
pub mod vinogradov;

pub use error::{Error, Result};
