//! Manufactured test problems, error norms, convergence tables and
//! preconditioned spectra.

mod convergence;
mod examples;
mod spectrum;

pub use convergence::{
    convergence_table_1d, convergence_table_2d, max_error, max_error_2d, rate_rows, solve_example1, solve_example2,
    Axis, ConvergenceRow, Example1Config, Example2Config, ExampleRun, ROUNDING_FLOOR,
};
pub use examples::{
    example1_exact, example1_source, example2_exact, example2_source, example_weight, time_factor, Example1, Example2,
};
pub use spectrum::{
    fraction_within, rchan_lower_bound, spectrum, spectrum_1d, spectrum_2d, CirculantKind, SpectrumPair,
    SylvesterPrecondKind, SPECTRUM_LIMIT,
};
