//! Implicit second-order schemes for distributed-order in time, Riesz
//! space-fractional diffusion-wave equations, with the structured linear
//! algebra they need: FFT Toeplitz products, circulant preconditioners, the
//! Gohberg–Semencul inverse, and global PCG for the 2D Sylvester form.

pub mod clock;
pub mod coeffs;
pub mod dense;
pub mod error;
pub mod ops;
pub mod problems;
pub mod report;
pub mod solver1d;
pub mod solver2d;
pub mod structured;

pub use error::{Error, Result};
pub use report::{SolveReport, SolverOptions};
