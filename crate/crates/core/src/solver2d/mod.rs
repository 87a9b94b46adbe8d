//! Two-dimensional scheme in Sylvester form `𝓛(U^n) = E^{n-1}` with
//! `U^n` the `(M₁-1) × (M₂-1)` interior grid stored column-major (row index
//! along x, column index along y).

mod precond;
mod sylvester;

use std::fmt;
use std::str::FromStr;

pub use precond::{bccb_apply, truncated_precond_apply, truncated_precond_build, BccbPrecond, TruncatedPrecond};
pub use sylvester::{gl_pcg, sylvester_apply, SylvesterOp, DENSE_DIRECT_LIMIT};

use crate::clock::Stopwatch;
use crate::coeffs::{mu_series, riesz_stencil, MuSeries, QuadratureRule, RieszStencil};
use crate::dense::DenseCholesky;
use crate::error::{check_len, Error, Result};
use crate::ops::{Identity, Preconditioner};
use crate::report::{SolveReport, SolverOptions};
use crate::solver1d::PcgOutcome;
use crate::structured::SymToeplitz;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params2D {
    pub m1: usize,
    pub m2: usize,
    pub n: usize,
    pub length_x: f64,
    pub length_y: f64,
    pub t_final: f64,
    pub diffusion_x: f64,
    pub diffusion_y: f64,
    /// Riesz order along x.
    pub beta: f64,
    /// Riesz order along y.
    pub gamma: f64,
}

impl Params2D {
    /// Unit square, unit diffusion, `M₁ = M₂ = m`.
    pub fn square(m: usize, n: usize, t_final: f64, beta: f64, gamma: f64) -> Self {
        Self {
            m1: m,
            m2: m,
            n,
            length_x: 1.0,
            length_y: 1.0,
            t_final,
            diffusion_x: 1.0,
            diffusion_y: 1.0,
            beta,
            gamma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, m) in [("M1", self.m1), ("M2", self.m2)] {
            if m < 2 {
                return Err(Error::invalid(name, format!("need at least 2 intervals, got {m}")));
            }
        }
        if self.n < 1 {
            return Err(Error::invalid("N", "need at least one time step"));
        }
        for (name, v) in [
            ("L1", self.length_x),
            ("L2", self.length_y),
            ("T", self.t_final),
            ("K1", self.diffusion_x),
            ("K2", self.diffusion_y),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("must be positive, got {v}")));
            }
        }
        for (name, v) in [("beta", self.beta), ("gamma", self.gamma)] {
            if !(v > 1.0 && v <= 2.0) {
                return Err(Error::invalid(name, format!("must lie in (1, 2], got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Scheme2D {
    pub params: Params2D,
    pub h1: f64,
    pub h2: f64,
    pub tau: f64,
    /// `τ / (2h₁^β)`.
    pub nu_beta: f64,
    /// `τ / (2h₂^γ)`.
    pub nu_gamma: f64,
    pub mu: MuSeries,
    pub mu_diff: Vec<f64>,
    pub stencil_x: RieszStencil,
    pub stencil_y: RieszStencil,
    /// `𝓛`, with `K₁ν_βG_β` and `K₂ν_γG_γ` as its Toeplitz factors.
    pub op: SylvesterOp,
}

impl Scheme2D {
    pub fn shape(&self) -> (usize, usize) {
        self.op.shape()
    }

    pub fn mu0(&self) -> f64 {
        self.mu.mu[0]
    }

    pub fn nodes_x(&self) -> Vec<f64> {
        (1..self.params.m1).map(|i| i as f64 * self.h1).collect()
    }

    pub fn nodes_y(&self) -> Vec<f64> {
        (1..self.params.m2).map(|j| j as f64 * self.h2).collect()
    }

    pub fn time(&self, step: usize) -> f64 {
        if step == self.params.n {
            self.params.t_final
        } else {
            step as f64 * self.tau
        }
    }

    /// Default truncation bandwidth `⌊M₁/2⌋`, clamped to the valid range.
    pub fn default_bandwidth(&self) -> usize {
        let (m1, m2) = self.shape();
        (self.params.m1 / 2).clamp(1, m1.min(m2))
    }
}

pub fn assemble_scheme_2d(params: Params2D, rule: &QuadratureRule) -> Result<Scheme2D> {
    params.validate()?;
    let h1 = params.length_x / params.m1 as f64;
    let h2 = params.length_y / params.m2 as f64;
    let tau = params.t_final / params.n as f64;
    let nu_beta = tau / (2.0 * h1.powf(params.beta));
    let nu_gamma = tau / (2.0 * h2.powf(params.gamma));
    let mu = mu_series(rule, tau, params.n)?;
    let mu_diff = mu.differences();
    let stencil_x = riesz_stencil(params.beta, params.m1 - 2)?;
    let stencil_y = riesz_stencil(params.gamma, params.m2 - 2)?;
    let sx = params.diffusion_x * nu_beta;
    let sy = params.diffusion_y * nu_gamma;
    let gx = SymToeplitz::new(stencil_x.g_hat.iter().map(|g| sx * g).collect())?;
    let gy = SymToeplitz::new(stencil_y.g_hat.iter().map(|g| sy * g).collect())?;
    let op = SylvesterOp::new(mu.mu[0], gx, gy)?;
    Ok(Scheme2D { params, h1, h2, tau, nu_beta, nu_gamma, mu, mu_diff, stencil_x, stencil_y, op })
}

/// `E^{n-1}` for step `n = history.len()`.
pub fn rhs_step_2d(scheme: &Scheme2D, history: &[Vec<f64>], f_prev: &[f64], f_next: &[f64]) -> Result<Vec<f64>> {
    let size = scheme.op.unknowns();
    let n = history.len();
    if n == 0 {
        return Err(Error::invalid("history", "needs at least U^0"));
    }
    if n > scheme.mu_diff.len() {
        return Err(Error::invalid("history", format!("step {n} is beyond the assembled horizon {}", scheme.mu_diff.len())));
    }
    for u in history {
        check_len(size, u.len())?;
    }
    check_len(size, f_prev.len())?;
    check_len(size, f_next.len())?;

    let mut e = vec![0.0; size];
    scheme.op.apply_shifted(&history[n - 1], &mut e, 0.0);
    let half_tau = 0.5 * scheme.tau;
    for k in 0..size {
        e[k] = half_tau * (f_next[k] + f_prev[k]) - e[k];
    }
    for k in 1..n {
        let d = scheme.mu_diff[k - 1];
        for (ei, ui) in e.iter_mut().zip(&history[n - k]) {
            *ei += d * ui;
        }
    }
    Ok(e)
}

/// Source term sampled on the interior grid.
pub trait GridSource2D {
    /// Fills `out` (column-major, `xs.len() × ys.len()`) with `f(xᵢ, yⱼ, t)`.
    fn fill(&self, xs: &[f64], ys: &[f64], t: f64, out: &mut [f64]);
}

impl<F: Fn(f64, f64, f64) -> f64> GridSource2D for F {
    fn fill(&self, xs: &[f64], ys: &[f64], t: f64, out: &mut [f64]) {
        let m1 = xs.len();
        for (j, &y) in ys.iter().enumerate() {
            for (i, &x) in xs.iter().enumerate() {
                out[i + j * m1] = self(x, y, t);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method2D {
    /// Cholesky of the dense Kronecker matrix; at most
    /// [`DENSE_DIRECT_LIMIT`] unknowns.
    DenseDirect,
    GlCg,
    GlPcgBccb,
    /// `None` selects [`Scheme2D::default_bandwidth`].
    GlPcgTruncated(Option<usize>),
}

impl Method2D {
    pub const NAMES: [&'static str; 4] = ["dense-direct", "glcg", "glpcg-bccb", "glpcg-truncated"];

    pub fn base_name(self) -> &'static str {
        match self {
            Method2D::DenseDirect => "dense-direct",
            Method2D::GlCg => "glcg",
            Method2D::GlPcgBccb => "glpcg-bccb",
            Method2D::GlPcgTruncated(_) => "glpcg-truncated",
        }
    }
}

impl fmt::Display for Method2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method2D::GlPcgTruncated(Some(l)) => write!(f, "glpcg-truncated({l})"),
            other => f.write_str(other.base_name()),
        }
    }
}

impl FromStr for Method2D {
    type Err = Error;

    /// Accepts the base names plus `glpcg-truncated(l)`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense-direct" => Ok(Method2D::DenseDirect),
            "glcg" => Ok(Method2D::GlCg),
            "glpcg-bccb" => Ok(Method2D::GlPcgBccb),
            "glpcg-truncated" => Ok(Method2D::GlPcgTruncated(None)),
            _ => s
                .strip_prefix("glpcg-truncated(")
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|l| l.trim().parse().ok())
                .map(|l| Method2D::GlPcgTruncated(Some(l)))
                .ok_or_else(|| Error::invalid("method", format!("unknown 2D method `{s}`"))),
        }
    }
}

enum StepSolver {
    Dense(DenseCholesky),
    Krylov(Box<dyn Preconditioner>),
}

pub fn march_2d(
    scheme: &Scheme2D,
    source: &dyn GridSource2D,
    method: Method2D,
    opts: &SolverOptions,
) -> Result<SolveReport> {
    march_2d_with(scheme, source, method, opts, |_, _| {})
}

/// Marches the 2D scheme, handing every level `U^n`, `n = 0..=N`, to
/// `observe` (column-major interior values).
pub fn march_2d_with(
    scheme: &Scheme2D,
    source: &dyn GridSource2D,
    method: Method2D,
    opts: &SolverOptions,
    mut observe: impl FnMut(usize, &[f64]),
) -> Result<SolveReport> {
    let clock = Stopwatch::start();
    let (m1, m2) = scheme.shape();
    let size = m1 * m2;
    let steps = scheme.params.n;
    let maxit = opts.maxit_for(size);

    let solver = match method {
        Method2D::DenseDirect => {
            StepSolver::Dense(DenseCholesky::new(scheme.op.to_dense(DENSE_DIRECT_LIMIT)?.as_ref())?)
        }
        Method2D::GlCg => StepSolver::Krylov(Box::new(Identity(size))),
        Method2D::GlPcgBccb => StepSolver::Krylov(Box::new(BccbPrecond::build(&scheme.op)?)),
        Method2D::GlPcgTruncated(l) => {
            let l = l.unwrap_or_else(|| scheme.default_bandwidth());
            StepSolver::Krylov(Box::new(TruncatedPrecond::build(&scheme.op, l)?))
        }
    };
    let setup_time = clock.seconds();

    let xs = scheme.nodes_x();
    let ys = scheme.nodes_y();
    let mut f_prev = vec![0.0; size];
    source.fill(&xs, &ys, 0.0, &mut f_prev);
    let mut f_next = vec![0.0; size];

    let mut history: Vec<Vec<f64>> = Vec::with_capacity(steps + 1);
    history.push(vec![0.0; size]);
    observe(0, &history[0]);
    let mut per_step_iters = Vec::with_capacity(steps);
    let mut residual_histories = opts.keep_residuals.then(Vec::new);
    let mut step_times = Vec::with_capacity(steps);

    for n in 1..=steps {
        let step_clock = Stopwatch::start();
        source.fill(&xs, &ys, scheme.time(n), &mut f_next);
        let e = rhs_step_2d(scheme, &history, &f_prev, &f_next).map_err(|err| err.at_step(n))?;
        let u = match &solver {
            StepSolver::Dense(chol) => {
                let mut x = e;
                chol.solve_in_place(&mut x);
                per_step_iters.push(0);
                x
            }
            StepSolver::Krylov(precond) => {
                let out = gl_pcg(&scheme.op, precond.as_ref(), &e, opts.tol, maxit)
                    .and_then(PcgOutcome::require_converged)
                    .map_err(|err| err.at_step(n))?;
                per_step_iters.push(out.iterations);
                if let Some(h) = residual_histories.as_mut() {
                    h.push(out.residuals);
                }
                out.x
            }
        };
        observe(n, &u);
        history.push(u);
        std::mem::swap(&mut f_prev, &mut f_next);
        step_times.push(step_clock.seconds());
    }

    let solution = history.pop().expect("history holds U^0 at least");
    Ok(SolveReport::finish(
        method.to_string(),
        solution,
        (m1, m2),
        per_step_iters,
        None,
        residual_histories,
        setup_time,
        step_times,
        clock.seconds(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::build_quadrature;

    fn rule() -> QuadratureRule {
        build_quadrature(2, |a| libm::tgamma(5.0 - a)).unwrap()
    }

    #[test]
    fn method_parsing() {
        for name in Method2D::NAMES {
            assert_eq!(name.parse::<Method2D>().unwrap().base_name(), name);
        }
        assert_eq!("glpcg-truncated(7)".parse::<Method2D>().unwrap(), Method2D::GlPcgTruncated(Some(7)));
        assert_eq!(Method2D::GlPcgTruncated(Some(7)).to_string(), "glpcg-truncated(7)");
        assert!("glpcg-truncated(x)".parse::<Method2D>().is_err());
        assert!("cg".parse::<Method2D>().is_err());
    }

    #[test]
    fn zero_source_stays_zero() {
        let s = assemble_scheme_2d(Params2D::square(6, 3, 1.0, 1.5, 1.7), &rule()).unwrap();
        for m in [Method2D::DenseDirect, Method2D::GlCg, Method2D::GlPcgBccb, Method2D::GlPcgTruncated(None)] {
            let rep = march_2d(&s, &|_: f64, _: f64, _: f64| 0.0, m, &SolverOptions::two_d()).unwrap();
            assert!(rep.solution.iter().all(|&v| v == 0.0));
            assert_eq!(rep.solution_shape, (5, 5));
        }
    }

    #[test]
    fn rejects_bad_params() {
        let mut p = Params2D::square(6, 3, 1.0, 1.5, 1.5);
        p.gamma = 1.0;
        assert!(assemble_scheme_2d(p, &rule()).is_err());
        let mut p = Params2D::square(6, 3, 1.0, 1.5, 1.5);
        p.m2 = 1;
        assert!(assemble_scheme_2d(p, &rule()).is_err());
    }

    #[test]
    fn dense_direct_is_gated() {
        let s = assemble_scheme_2d(Params2D::square(40, 1, 1.0, 1.5, 1.5), &rule()).unwrap();
        let err = march_2d(&s, &|_: f64, _: f64, _: f64| 1.0, Method2D::DenseDirect, &SolverOptions::two_d());
        assert!(matches!(err, Err(Error::SizeGate { .. })));
    }

    #[test]
    fn truncation_range() {
        let s = assemble_scheme_2d(Params2D::square(8, 2, 1.0, 1.5, 1.5), &rule()).unwrap();
        assert_eq!(s.default_bandwidth(), 4);
        assert!(TruncatedPrecond::build(&s.op, 0).is_err());
        assert!(TruncatedPrecond::build(&s.op, 8).is_err());
        assert!(TruncatedPrecond::build(&s.op, 7).is_ok());
    }

    #[test]
    fn huge_shift_truncated_apply_is_scaled_identity() {
        let gx = SymToeplitz::new(vec![2.0, -1.0, 0.3, 0.1]).unwrap();
        let gy = SymToeplitz::new(vec![1.5, -0.5, 0.2]).unwrap();
        let op = SylvesterOp::new(1e8, gx, gy).unwrap();
        let p = truncated_precond_build(&op, 2).unwrap();
        let r: Vec<f64> = (0..12).map(|k| (k as f64).cos()).collect();
        let z = truncated_precond_apply(&p, &r).unwrap();
        for (zi, ri) in z.iter().zip(&r) {
            assert!((zi * 1e8 - ri).abs() <= 1e-6 * ri.abs().max(1e-3));
        }
        assert!(truncated_precond_apply(&p, &[0.0; 12]).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn bccb_with_zero_stencils_divides_by_mu0() {
        let op = SylvesterOp::new(2.0, SymToeplitz::new(vec![0.0; 4]).unwrap(), SymToeplitz::new(vec![0.0; 3]).unwrap())
            .unwrap();
        let p = BccbPrecond::build(&op).unwrap();
        let r: Vec<f64> = (0..12).map(|k| k as f64 - 5.0).collect();
        let z = bccb_apply(&p, &r).unwrap();
        for (zi, ri) in z.iter().zip(&r) {
            assert!((zi - ri / 2.0).abs() < 1e-13);
        }
    }
}
