//! FFT-backed structured matrices: symmetric Toeplitz operators, circulant
//! and skew-circulant factors, the R. Chan and Strang circulant
//! preconditioners, and the Gohberg–Semencul inverse.

mod circulant;
mod fft;
mod gsf;
mod toeplitz;

pub use circulant::{
    rchan_column, rchan_preconditioner, strang_column, strang_preconditioner, Circulant, SkewCirculant,
};
pub use gsf::{gsf_apply, gsf_build, GsfInverse};
pub use toeplitz::{toeplitz_matvec, SymToeplitz};

pub(crate) use fft::plan as fft_plan;
