use crate::error::{check_len, Error, Result};
use crate::ops::{dot, norm2, LinearOperator, Preconditioner};

/// Result of one (P)CG solve.
#[derive(Debug, Clone)]
pub struct PcgOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// `‖r_k‖ / ‖r_0‖` for `k = 0..=iterations`.
    pub residuals: Vec<f64>,
    pub converged: bool,
}

impl PcgOutcome {
    /// Turns a run that hit `maxit` into [`Error::NotConverged`].
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                iterations: self.iterations,
                residual: self.residuals.last().copied().unwrap_or(f64::NAN),
            })
        }
    }
}

/// Preconditioned conjugate gradients from a zero initial guess.
///
/// Stops when `‖r_k‖₂ / ‖r_0‖₂ < tol` or after `maxit` iterations; the
/// latter is reported through [`PcgOutcome::converged`], not as an error.
/// A non-positive curvature `pᵀAp` is an error.
pub fn pcg<A, P>(a: &A, precond: &P, b: &[f64], tol: f64, maxit: usize) -> Result<PcgOutcome>
where
    A: LinearOperator + ?Sized,
    P: Preconditioner + ?Sized,
{
    let n = a.dim();
    check_len(n, b.len())?;
    check_len(n, precond.dim())?;

    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let r0 = norm2(&r);
    let mut residuals = vec![1.0];
    if r0 == 0.0 {
        return Ok(PcgOutcome { x, iterations: 0, residuals, converged: true });
    }

    let mut z = vec![0.0; n];
    precond.solve(&r, &mut z);
    let mut p = z.clone();
    let mut q = vec![0.0; n];
    let mut rz = dot(&r, &z);

    for k in 1..=maxit {
        a.apply(&p, &mut q);
        let curvature = dot(&p, &q);
        if !(curvature > 0.0) {
            return Err(Error::Breakdown { iteration: k, curvature });
        }
        let alpha = rz / curvature;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        let rel = norm2(&r) / r0;
        residuals.push(rel);
        if rel < tol {
            return Ok(PcgOutcome { x, iterations: k, residuals, converged: true });
        }
        precond.solve(&r, &mut z);
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Ok(PcgOutcome { x, iterations: maxit, residuals, converged: false })
}
