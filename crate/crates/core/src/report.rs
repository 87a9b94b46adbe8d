//! Settings and outcome shared by the 1D and 2D time marches.

/// Iterative-solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative-residual stopping tolerance for each time step.
    pub tol: f64,
    /// Iteration cap; `None` means `10 · order`.
    pub maxit: Option<usize>,
    /// Tolerance for the one-time `A l = e_1` solve of the GSF path.
    pub gsf_tol: f64,
    pub keep_residuals: bool,
}

impl SolverOptions {
    pub fn one_d() -> Self {
        Self { tol: 1e-12, maxit: None, gsf_tol: 1e-14, keep_residuals: false }
    }

    pub fn two_d() -> Self {
        Self { tol: 1e-9, maxit: None, gsf_tol: 1e-14, keep_residuals: false }
    }

    pub fn maxit_for(&self, order: usize) -> usize {
        self.maxit.unwrap_or(10 * order.max(1))
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self::one_d()
    }
}

/// Outcome of a full time march.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub method: String,
    /// Interior values at the final time. 2D solutions are column-major
    /// with `solution_shape = (M₁-1, M₂-1)`; 1D uses `(M-1, 1)`.
    pub solution: Vec<f64>,
    pub solution_shape: (usize, usize),
    pub per_step_iters: Vec<usize>,
    /// `(1/N) Σ Iter(n)`.
    pub avg_iters: f64,
    /// Iterations spent in one-time setup (the GSF `A l = e_1` solve).
    pub setup_iters: Option<usize>,
    pub residual_histories: Option<Vec<Vec<f64>>>,
    pub setup_time: f64,
    pub step_times: Vec<f64>,
    pub wall_time: f64,
}

impl SolveReport {
    pub(crate) fn finish(
        method: String,
        solution: Vec<f64>,
        solution_shape: (usize, usize),
        per_step_iters: Vec<usize>,
        setup_iters: Option<usize>,
        residual_histories: Option<Vec<Vec<f64>>>,
        setup_time: f64,
        step_times: Vec<f64>,
        wall_time: f64,
    ) -> Self {
        let avg_iters = if per_step_iters.is_empty() {
            0.0
        } else {
            per_step_iters.iter().sum::<usize>() as f64 / per_step_iters.len() as f64
        };
        Self {
            method,
            solution,
            solution_shape,
            per_step_iters,
            avg_iters,
            setup_iters,
            residual_histories,
            setup_time,
            step_times,
            wall_time,
        }
    }
}
