use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::examples::{example_weight, Example1, Example2};
use crate::coeffs::build_quadrature;
use crate::error::{Error, Result};
use crate::report::{SolveReport, SolverOptions};
use crate::solver1d::{assemble_scheme, march_1d_with, Method1D, Params1D};
use crate::solver2d::{assemble_scheme_2d, march_2d_with, Method2D, Params2D};

/// Errors below this are treated as rounding noise and their rates flagged.
pub const ROUNDING_FLOOR: f64 = 1e-13;

/// `max |u(x_i, t_n) - u_i^n|` over every node and every stored level.
///
/// `history[n]` holds interior values at `times[n]`; boundary values are
/// zero for both the numeric and exact solutions and add nothing.
pub fn max_error(history: &[Vec<f64>], times: &[f64], nodes: &[f64], exact: impl Fn(f64, f64) -> f64) -> Result<f64> {
    if history.len() != times.len() {
        return Err(Error::DimensionMismatch { expected: times.len(), found: history.len() });
    }
    let mut worst = 0.0f64;
    for (u, &t) in history.iter().zip(times) {
        crate::error::check_len(nodes.len(), u.len())?;
        for (ui, &x) in u.iter().zip(nodes) {
            worst = worst.max((exact(x, t) - ui).abs());
        }
    }
    Ok(worst)
}

/// 2D analogue of [`max_error`] for column-major `xs.len() × ys.len()` levels.
pub fn max_error_2d(
    history: &[Vec<f64>],
    times: &[f64],
    xs: &[f64],
    ys: &[f64],
    exact: impl Fn(f64, f64, f64) -> f64,
) -> Result<f64> {
    if history.len() != times.len() {
        return Err(Error::DimensionMismatch { expected: times.len(), found: history.len() });
    }
    let m1 = xs.len();
    let mut worst = 0.0f64;
    for (u, &t) in history.iter().zip(times) {
        crate::error::check_len(m1 * ys.len(), u.len())?;
        for (j, &y) in ys.iter().enumerate() {
            for (i, &x) in xs.iter().enumerate() {
                worst = worst.max((exact(x, y, t) - u[i + j * m1]).abs());
            }
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Refine `M` (and `M₂` in 2D).
    Space,
    /// Refine `N`.
    Time,
    /// Refine `J`, the quadrature parameter.
    Distributed,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Space => "space",
            Axis::Time => "time",
            Axis::Distributed => "distributed",
        }
    }

    /// Column heading for the refinement parameter.
    pub fn parameter(self) -> &'static str {
        match self {
            Axis::Space => "M",
            Axis::Time => "N",
            Axis::Distributed => "J",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "space" => Ok(Axis::Space),
            "time" => Ok(Axis::Time),
            "distributed" => Ok(Axis::Distributed),
            _ => Err(Error::invalid("axis", format!("expected space, time or distributed, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub level: usize,
    pub error: f64,
    /// `log₂(e_prev / e)`; absent on the first row.
    pub rate: Option<f64>,
    /// Set when this or the previous error sits at rounding level, so the
    /// rate carries no information.
    pub at_rounding_level: bool,
}

/// Pairs refinement levels with their errors and pairwise rates.
pub fn rate_rows(levels: &[usize], errors: &[f64]) -> Result<Vec<ConvergenceRow>> {
    if levels.len() != errors.len() {
        return Err(Error::DimensionMismatch { expected: levels.len(), found: errors.len() });
    }
    Ok(levels
        .iter()
        .zip(errors)
        .enumerate()
        .map(|(k, (&level, &error))| {
            let prev = (k > 0).then(|| errors[k - 1]);
            ConvergenceRow {
                level,
                error,
                rate: prev.map(|p| (p / error).log2()),
                at_rounding_level: error < ROUNDING_FLOOR || prev.is_some_and(|p| p < ROUNDING_FLOOR),
            }
        })
        .collect())
}

/// Configuration of an Example 1 run (`L = 1`, `K = 1`, `ω = Γ(5 - α)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example1Config {
    pub m: usize,
    pub n: usize,
    pub j: usize,
    pub t_final: f64,
    pub beta: f64,
    pub method: Method1D,
    pub opts: SolverOptions,
}

impl Example1Config {
    pub fn new(m: usize, n: usize, j: usize, t_final: f64, beta: f64) -> Self {
        Self { m, n, j, t_final, beta, method: Method1D::PcgRChan, opts: SolverOptions::one_d() }
    }

    pub fn params(&self) -> Params1D {
        Params1D { m: self.m, n: self.n, length: 1.0, t_final: self.t_final, diffusion: 1.0, beta: self.beta }
    }

    pub fn with_method(mut self, method: Method1D) -> Self {
        self.method = method;
        self
    }

    /// The same configuration with the `axis` parameter set to `level`.
    pub fn refined(mut self, axis: Axis, level: usize) -> Self {
        match axis {
            Axis::Space => self.m = level,
            Axis::Time => self.n = level,
            Axis::Distributed => self.j = level,
        }
        self
    }
}

/// Configuration of an Example 2 run on the unit square with `M × M₂`
/// intervals (`M₂ = M` by default).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example2Config {
    pub m: usize,
    pub m2: usize,
    pub n: usize,
    pub j: usize,
    pub t_final: f64,
    pub beta: f64,
    pub gamma: f64,
    pub method: Method2D,
    pub opts: SolverOptions,
}

impl Example2Config {
    pub fn new(m: usize, n: usize, j: usize, t_final: f64, beta: f64, gamma: f64) -> Self {
        Self { m, m2: m, n, j, t_final, beta, gamma, method: Method2D::GlPcgTruncated(None), opts: SolverOptions::two_d() }
    }

    pub fn params(&self) -> Params2D {
        Params2D { m2: self.m2, ..Params2D::square(self.m, self.n, self.t_final, self.beta, self.gamma) }
    }

    pub fn with_method(mut self, method: Method2D) -> Self {
        self.method = method;
        self
    }

    /// The same configuration with the `axis` parameter set to `level`.
    pub fn refined(mut self, axis: Axis, level: usize) -> Self {
        match axis {
            Axis::Space => {
                // Keep the aspect ratio of the base grid.
                self.m2 = (self.m2 * level).div_ceil(self.m).max(2);
                self.m = level;
            }
            Axis::Time => self.n = level,
            Axis::Distributed => self.j = level,
        }
        self
    }
}

/// A solve of a manufactured problem together with its max-norm error over
/// all time levels.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleRun {
    pub report: SolveReport,
    pub max_error: f64,
}

pub fn solve_example1(cfg: &Example1Config) -> Result<ExampleRun> {
    let problem = Example1::new(cfg.beta)?;
    let rule = build_quadrature(cfg.j, example_weight)?;
    let scheme = assemble_scheme(cfg.params(), &rule)?;
    let nodes = scheme.interior_nodes();
    let mut worst = 0.0f64;
    let report = march_1d_with(&scheme, &|x, t| problem.source(x, t), cfg.method, &cfg.opts, |n, u| {
        let t = scheme.time(n);
        for (ui, &x) in u.iter().zip(&nodes) {
            worst = worst.max((problem.exact(x, t) - ui).abs());
        }
    })?;
    Ok(ExampleRun { report, max_error: worst })
}

pub fn solve_example2(cfg: &Example2Config) -> Result<ExampleRun> {
    let problem = Example2::new(cfg.beta, cfg.gamma)?;
    let rule = build_quadrature(cfg.j, example_weight)?;
    let scheme = assemble_scheme_2d(cfg.params(), &rule)?;
    let (xs, ys) = (scheme.nodes_x(), scheme.nodes_y());
    // The exact solution is separable: t⁴·p(x)·p(y).
    let bump_x: Vec<f64> = xs.iter().map(|&x| super::examples::example1_exact(x, 1.0)).collect();
    let bump_y: Vec<f64> = ys.iter().map(|&y| super::examples::example1_exact(y, 1.0)).collect();
    let m1 = xs.len();
    let mut worst = 0.0f64;
    let report = march_2d_with(&scheme, &problem, cfg.method, &cfg.opts, |n, u| {
        let t4 = scheme.time(n).powi(4);
        for (j, by) in bump_y.iter().enumerate() {
            for (i, bx) in bump_x.iter().enumerate() {
                worst = worst.max((t4 * bx * by - u[i + j * m1]).abs());
            }
        }
    })?;
    Ok(ExampleRun { report, max_error: worst })
}

/// Runs `job` over `0..count` on up to `threads` scoped workers and returns
/// the results in index order.
fn fan_out<T: Send>(count: usize, threads: usize, job: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    let workers = threads.clamp(1, count.max(1));
    if workers == 1 {
        return (0..count).map(job).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<T>>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= count {
                    break;
                }
                let out = job(k);
                slots.lock().unwrap_or_else(|e| e.into_inner())[k] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .unwrap_or_else(|e| e.into_inner())
        .into_iter()
        .map(|slot| slot.expect("every index is visited"))
        .collect()
}

fn check_levels(levels: &[usize]) -> Result<()> {
    if levels.len() < 2 {
        return Err(Error::invalid("levels", "a convergence table needs at least two levels"));
    }
    Ok(())
}

/// Example 1 errors along `axis` at each level, with all other parameters
/// taken from `base`. Rows may be solved concurrently on `threads` workers.
pub fn convergence_table_1d(base: &Example1Config, axis: Axis, levels: &[usize], threads: usize) -> Result<Vec<ConvergenceRow>> {
    check_levels(levels)?;
    let runs = fan_out(levels.len(), threads, |k| solve_example1(&base.refined(axis, levels[k])))?;
    rate_rows(levels, &runs.iter().map(|r| r.max_error).collect::<Vec<_>>())
}

pub fn convergence_table_2d(base: &Example2Config, axis: Axis, levels: &[usize], threads: usize) -> Result<Vec<ConvergenceRow>> {
    check_levels(levels)?;
    let runs = fan_out(levels.len(), threads, |k| solve_example2(&base.refined(axis, levels[k])))?;
    rate_rows(levels, &runs.iter().map(|r| r.max_error).collect::<Vec<_>>())
}
