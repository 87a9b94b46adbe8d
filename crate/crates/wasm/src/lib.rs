//! Browser bindings: a 1D solve against the exact solution, the spectrum
//! of the scheme matrix with and without a circulant preconditioner, and
//! the coefficient sequences behind the scheme.

use fdwave::coeffs::{build_quadrature, mu_series, riesz_stencil, temporal_weights};
use fdwave::problems::{example_weight, rchan_lower_bound, spectrum_1d, CirculantKind, Example1};
use fdwave::solver1d::{assemble_scheme, march_1d_with, Method1D, Params1D};
use fdwave::SolverOptions;
use wasm_bindgen::prelude::*;

fn js(e: fdwave::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Demo sizes are capped so a slider cannot freeze the tab.
fn cap(name: &str, v: usize, max: usize) -> Result<(), JsError> {
    if v > max {
        return Err(JsError::new(&format!("{name} = {v} exceeds the demo limit of {max}")));
    }
    Ok(())
}

#[wasm_bindgen]
pub struct Solution1D {
    x: Vec<f64>,
    numeric: Vec<f64>,
    exact: Vec<f64>,
    iters: Vec<f64>,
    avg_iters: f64,
    setup_iters: Option<usize>,
    max_error: f64,
}

#[wasm_bindgen]
impl Solution1D {
    /// Grid including both boundary nodes.
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    /// Computed values at the final time, boundary zeros included.
    pub fn numeric(&self) -> Vec<f64> {
        self.numeric.clone()
    }

    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    /// Iterations of every time step.
    pub fn iterations(&self) -> Vec<f64> {
        self.iters.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn avg_iters(&self) -> f64 {
        self.avg_iters
    }

    /// Iterations of the one-time GSF setup solve, or -1.
    #[wasm_bindgen(getter)]
    pub fn setup_iters(&self) -> i32 {
        self.setup_iters.map_or(-1, |k| k as i32)
    }

    /// Max-norm error over all time levels.
    #[wasm_bindgen(getter)]
    pub fn max_error(&self) -> f64 {
        self.max_error
    }
}

/// Marches the 1D manufactured problem on `[0, 1]`.
#[wasm_bindgen]
pub fn solve_1d(m: usize, n: usize, j: usize, t_final: f64, beta: f64, method: &str) -> Result<Solution1D, JsError> {
    cap("M", m, 4096)?;
    cap("N", n, 4096)?;
    cap("J", j, 200)?;
    let method: Method1D = method.parse().map_err(js)?;
    if method == Method1D::DenseDirect {
        cap("M", m, 1024)?;
    }
    let problem = Example1::new(beta).map_err(js)?;
    let rule = build_quadrature(j, example_weight).map_err(js)?;
    let scheme = assemble_scheme(Params1D { m, n, length: 1.0, t_final, diffusion: 1.0, beta }, &rule).map_err(js)?;
    let nodes = scheme.interior_nodes();
    let mut worst = 0.0f64;
    let report = march_1d_with(&scheme, &|x, t| problem.source(x, t), method, &SolverOptions::one_d(), |step, u| {
        let t = scheme.time(step);
        for (&x, v) in nodes.iter().zip(u) {
            worst = worst.max((problem.exact(x, t) - v).abs());
        }
    })
    .map_err(js)?;
    let x: Vec<f64> = (0..=m).map(|i| i as f64 * scheme.h).collect();
    let mut numeric = vec![0.0; m + 1];
    numeric[1..m].copy_from_slice(&report.solution);
    let exact = x.iter().map(|&xi| problem.exact(xi, t_final)).collect();
    Ok(Solution1D {
        x,
        numeric,
        exact,
        iters: report.per_step_iters.iter().map(|&k| k as f64).collect(),
        avg_iters: report.avg_iters,
        setup_iters: report.setup_iters,
        max_error: worst,
    })
}

#[wasm_bindgen]
pub struct Spectrum {
    original: Vec<f64>,
    preconditioned: Vec<f64>,
    lower_bound: f64,
}

#[wasm_bindgen]
impl Spectrum {
    /// Ascending eigenvalues of the scheme matrix.
    pub fn original(&self) -> Vec<f64> {
        self.original.clone()
    }

    /// Ascending eigenvalues of `P⁻¹A`; empty without a preconditioner.
    pub fn preconditioned(&self) -> Vec<f64> {
        self.preconditioned.clone()
    }

    /// Lower bound for the R. Chan-preconditioned eigenvalues.
    #[wasm_bindgen(getter)]
    pub fn lower_bound(&self) -> f64 {
        self.lower_bound
    }
}

/// Eigenvalues of the 1D scheme matrix; `precond` is `rchan`, `strang` or
/// `none`.
#[wasm_bindgen]
pub fn spectrum(m: usize, n: usize, j: usize, t_final: f64, beta: f64, precond: &str) -> Result<Spectrum, JsError> {
    cap("M", m, 512)?;
    let kind = match precond {
        "none" => None,
        p => Some(p.parse::<CirculantKind>().map_err(js)?),
    };
    let rule = build_quadrature(j, example_weight).map_err(js)?;
    let scheme = assemble_scheme(Params1D { m, n, length: 1.0, t_final, diffusion: 1.0, beta }, &rule).map_err(js)?;
    let pair = spectrum_1d(&scheme, kind).map_err(js)?;
    Ok(Spectrum {
        original: pair.original,
        preconditioned: pair.preconditioned.unwrap_or_default(),
        lower_bound: rchan_lower_bound(&scheme),
    })
}

#[wasm_bindgen]
pub struct Coefficients {
    g_hat: Vec<f64>,
    g: Vec<f64>,
    lambda: Vec<f64>,
    mu: Vec<f64>,
}

#[wasm_bindgen]
impl Coefficients {
    /// Centred-difference weights `ĝ_k^{(β)}`.
    pub fn g_hat(&self) -> Vec<f64> {
        self.g_hat.clone()
    }

    /// Grünwald weights `g_k^{(γ)}`.
    pub fn g(&self) -> Vec<f64> {
        self.g.clone()
    }

    /// Shifted Grünwald weights `λ_k^{(γ)}`.
    pub fn lambda(&self) -> Vec<f64> {
        self.lambda.clone()
    }

    /// Lag weights `μ_k` for the weight `Γ(5 - α)`, quadrature `J` and step `τ`.
    pub fn mu(&self) -> Vec<f64> {
        self.mu.clone()
    }
}

/// The first `count + 1` terms of each coefficient sequence.
#[wasm_bindgen]
pub fn coefficients(beta: f64, gamma: f64, j: usize, tau: f64, count: usize) -> Result<Coefficients, JsError> {
    cap("count", count, 100_000)?;
    cap("J", j, 200)?;
    let stencil = riesz_stencil(beta, count).map_err(js)?;
    let tw = temporal_weights(gamma, count).map_err(js)?;
    let rule = build_quadrature(j, example_weight).map_err(js)?;
    let mu = mu_series(&rule, tau, count).map_err(js)?;
    Ok(Coefficients { g_hat: stencil.g_hat, g: tw.g, lambda: tw.lambda, mu: mu.mu })
}
