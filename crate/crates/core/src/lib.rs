//! Schwarz domain decomposition on two overlapping discs.
//!
//! The crate covers the two-disc geometry, the Poisson and truncated
//! kernels, Fourier projection and trigonometric interpolation on circles,
//! the Dirichlet-to-Dirichlet maps between the interface arcs with their
//! maximum-norm bounds, and the Schwarz iteration itself in exact,
//! projection and interpolation variants.

pub mod dtd;
pub mod error;
pub mod fourier;
pub mod geometry;
pub mod kernels;
pub mod quad;
pub mod schwarz;
mod spline;
pub mod verify;

pub use error::{Error, Result};
