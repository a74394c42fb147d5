//! Integro-differential diffusion with Sonine kernels.

// NaN-rejecting checks are written as `!(x > 0.0)` on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod kernels;
pub mod quad;
pub mod specfun;
pub mod spectral;
pub mod volterra;

pub use error::{Error, Result};
