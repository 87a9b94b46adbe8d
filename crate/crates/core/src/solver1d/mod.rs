//! One-dimensional scheme: assembly of `A = μ_0 I + Kν_β G_β`, the
//! right-hand-side history sum, and time marching with a choice of linear
//! solvers.

mod pcg;

use std::fmt;
use std::str::FromStr;

pub use pcg::{pcg, PcgOutcome};

use crate::clock::Stopwatch;
use crate::coeffs::{mu_series, riesz_stencil, MuSeries, QuadratureRule, RieszStencil};
use crate::dense::DenseCholesky;
use crate::error::{check_len, Error, Result};
use crate::ops::{Identity, Preconditioner};
use crate::report::{SolveReport, SolverOptions};
use crate::structured::{rchan_preconditioner, strang_preconditioner, Circulant, GsfInverse, SymToeplitz};

/// Grid and physical parameters of a 1D run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params1D {
    /// Number of spatial intervals `M`.
    pub m: usize,
    /// Number of time steps `N`.
    pub n: usize,
    pub length: f64,
    pub t_final: f64,
    pub diffusion: f64,
    pub beta: f64,
}

impl Params1D {
    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::invalid("M", format!("need at least 2 intervals, got {}", self.m)));
        }
        if self.n < 1 {
            return Err(Error::invalid("N", "need at least one time step"));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::invalid("L", format!("must be positive, got {}", self.length)));
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::invalid("T", format!("must be positive, got {}", self.t_final)));
        }
        if !(self.diffusion > 0.0 && self.diffusion.is_finite()) {
            return Err(Error::invalid("K", format!("must be positive, got {}", self.diffusion)));
        }
        if !(self.beta > 1.0 && self.beta <= 2.0) {
            return Err(Error::invalid("beta", format!("must lie in (1, 2], got {}", self.beta)));
        }
        Ok(())
    }
}

/// Assembled 1D scheme; immutable once built and reusable across marches.
#[derive(Debug, Clone)]
pub struct Scheme1D {
    pub params: Params1D,
    pub h: f64,
    pub tau: f64,
    pub nu_beta: f64,
    pub mu: MuSeries,
    /// `μ_{k-1} - μ_k`, `k = 1..=N`.
    pub mu_diff: Vec<f64>,
    pub stencil: RieszStencil,
    /// Unscaled `G_β`, order `M - 1`.
    pub g_beta: SymToeplitz,
    /// `A = μ_0 I + Kν_β G_β`.
    pub a: SymToeplitz,
}

impl Scheme1D {
    pub fn order(&self) -> usize {
        self.params.m - 1
    }

    pub fn mu0(&self) -> f64 {
        self.mu.mu[0]
    }

    /// `Kν_β`, the scale in front of `G_β`.
    pub fn stiffness(&self) -> f64 {
        self.params.diffusion * self.nu_beta
    }

    /// Interior nodes `x_1..x_{M-1}`.
    pub fn interior_nodes(&self) -> Vec<f64> {
        (1..self.params.m).map(|i| i as f64 * self.h).collect()
    }

    pub fn time(&self, step: usize) -> f64 {
        if step == self.params.n {
            self.params.t_final
        } else {
            step as f64 * self.tau
        }
    }

    pub fn rchan(&self) -> Result<Circulant> {
        rchan_preconditioner(&self.g_beta, self.mu0(), self.stiffness())
    }

    pub fn strang(&self) -> Result<Circulant> {
        strang_preconditioner(&self.g_beta, self.mu0(), self.stiffness())
    }
}

pub fn assemble_scheme(params: Params1D, rule: &QuadratureRule) -> Result<Scheme1D> {
    params.validate()?;
    let order = params.m - 1;
    let h = params.length / params.m as f64;
    let tau = params.t_final / params.n as f64;
    let nu_beta = tau / (2.0 * h.powf(params.beta));
    let mu = mu_series(rule, tau, params.n)?;
    let mu_diff = mu.differences();
    let stencil = riesz_stencil(params.beta, order - 1)?;
    let g_beta = SymToeplitz::new(stencil.g_hat.clone())?;
    let a = g_beta.affine(params.diffusion * nu_beta, mu.mu[0]);
    Ok(Scheme1D { params, h, tau, nu_beta, mu, mu_diff, stencil, g_beta, a })
}

/// Right-hand side `b^{n-1}` of step `n = history.len()`.
///
/// `history` holds `u^0..u^{n-1}` (interior values), `f_prev` and `f_next`
/// the source at `t_{n-1}` and `t_n`.
pub fn rhs_step(scheme: &Scheme1D, history: &[Vec<f64>], f_prev: &[f64], f_next: &[f64]) -> Result<Vec<f64>> {
    let m = scheme.order();
    let n = history.len();
    if n == 0 {
        return Err(Error::invalid("history", "needs at least u^0"));
    }
    if n > scheme.mu_diff.len() {
        return Err(Error::invalid("history", format!("step {n} is beyond the assembled horizon {}", scheme.mu_diff.len())));
    }
    for u in history {
        check_len(m, u.len())?;
    }
    check_len(m, f_prev.len())?;
    check_len(m, f_next.len())?;

    let mut b = scheme.g_beta.matvec(&history[n - 1])?;
    let s = -scheme.stiffness();
    let half_tau = 0.5 * scheme.tau;
    for i in 0..m {
        b[i] = s * b[i] + half_tau * (f_next[i] + f_prev[i]);
    }
    for k in 1..n {
        let d = scheme.mu_diff[k - 1];
        for (bi, ui) in b.iter_mut().zip(&history[n - k]) {
            *bi += d * ui;
        }
    }
    Ok(b)
}

/// Largest order factored densely by [`Method1D::DenseDirect`].
pub const DENSE_DIRECT_LIMIT_1D: usize = 8192;

/// Linear solver used at each time step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method1D {
    DenseDirect,
    Cg,
    PcgRChan,
    PcgStrang,
    GsfPcgRChan,
    GsfPcgStrang,
}

impl Method1D {
    pub const ALL: [Method1D; 6] = [
        Method1D::DenseDirect,
        Method1D::Cg,
        Method1D::PcgRChan,
        Method1D::PcgStrang,
        Method1D::GsfPcgRChan,
        Method1D::GsfPcgStrang,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method1D::DenseDirect => "dense-direct",
            Method1D::Cg => "cg",
            Method1D::PcgRChan => "pcg-rchan",
            Method1D::PcgStrang => "pcg-strang",
            Method1D::GsfPcgRChan => "gsf-pcg-rchan",
            Method1D::GsfPcgStrang => "gsf-pcg-strang",
        }
    }
}

impl fmt::Display for Method1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method1D {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method1D::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid("method", format!("unknown 1D method `{s}`")))
    }
}

enum StepSolver {
    Dense(DenseCholesky),
    Krylov(Box<dyn Preconditioner>),
    Gsf(GsfInverse),
}

/// Marches the scheme from zero initial data; see [`march_1d_with`].
pub fn march_1d(
    scheme: &Scheme1D,
    source: &dyn Fn(f64, f64) -> f64,
    method: Method1D,
    opts: &SolverOptions,
) -> Result<SolveReport> {
    march_1d_with(scheme, source, method, opts, |_, _| {})
}

/// Marches the scheme and hands every time level `u^n`, `n = 0..=N`
/// (interior values only), to `observe` as it is produced.
pub fn march_1d_with(
    scheme: &Scheme1D,
    source: &dyn Fn(f64, f64) -> f64,
    method: Method1D,
    opts: &SolverOptions,
    mut observe: impl FnMut(usize, &[f64]),
) -> Result<SolveReport> {
    let clock = Stopwatch::start();
    let m = scheme.order();
    let steps = scheme.params.n;
    let maxit = opts.maxit_for(m);

    let mut setup_iters = None;
    let solver = match method {
        Method1D::DenseDirect => {
            if m > DENSE_DIRECT_LIMIT_1D {
                return Err(Error::SizeGate { order: m, limit: DENSE_DIRECT_LIMIT_1D });
            }
            StepSolver::Dense(DenseCholesky::new(scheme.a.to_dense().as_ref())?)
        }
        Method1D::Cg => StepSolver::Krylov(Box::new(Identity(m))),
        Method1D::PcgRChan => StepSolver::Krylov(Box::new(scheme.rchan()?)),
        Method1D::PcgStrang => StepSolver::Krylov(Box::new(scheme.strang()?)),
        Method1D::GsfPcgRChan | Method1D::GsfPcgStrang => {
            let precond =
                if method == Method1D::GsfPcgRChan { scheme.rchan()? } else { scheme.strang()? };
            let gsf = GsfInverse::build(&scheme.a, |a, e1| {
                let out = pcg(a, &precond, e1, opts.gsf_tol, maxit)?.require_converged()?;
                setup_iters = Some(out.iterations);
                Ok(out.x)
            })?;
            StepSolver::Gsf(gsf)
        }
    };
    let setup_time = clock.seconds();

    let nodes = scheme.interior_nodes();
    let eval = |t: f64| -> Vec<f64> { nodes.iter().map(|&x| source(x, t)).collect() };

    let mut history: Vec<Vec<f64>> = Vec::with_capacity(steps + 1);
    history.push(vec![0.0; m]);
    observe(0, &history[0]);
    let mut f_prev = eval(0.0);
    let mut per_step_iters = Vec::with_capacity(steps);
    let mut residual_histories = opts.keep_residuals.then(Vec::new);
    let mut step_times = Vec::with_capacity(steps);

    for n in 1..=steps {
        let step_clock = Stopwatch::start();
        let f_next = eval(scheme.time(n));
        let b = rhs_step(scheme, &history, &f_prev, &f_next).map_err(|e| e.at_step(n))?;
        let u = match &solver {
            StepSolver::Dense(chol) => {
                let mut x = b;
                chol.solve_in_place(&mut x);
                per_step_iters.push(0);
                x
            }
            StepSolver::Gsf(gsf) => {
                per_step_iters.push(0);
                gsf.apply(&b).map_err(|e| e.at_step(n))?
            }
            StepSolver::Krylov(precond) => {
                let out = pcg(&scheme.a, precond.as_ref(), &b, opts.tol, maxit)
                    .and_then(PcgOutcome::require_converged)
                    .map_err(|e| e.at_step(n))?;
                per_step_iters.push(out.iterations);
                if let Some(h) = residual_histories.as_mut() {
                    h.push(out.residuals);
                }
                out.x
            }
        };
        observe(n, &u);
        history.push(u);
        f_prev = f_next;
        step_times.push(step_clock.seconds());
    }

    let solution = history.pop().expect("history holds u^0 at least");
    Ok(SolveReport::finish(
        method.name().to_string(),
        solution,
        (m, 1),
        per_step_iters,
        setup_iters,
        residual_histories,
        setup_time,
        step_times,
        clock.seconds(),
    ))
}
