use faer::Mat;

use crate::error::{check_len, Error, Result};
use crate::ops::{LinearOperator, Preconditioner};
use crate::solver1d::{pcg, PcgOutcome};
use crate::structured::SymToeplitz;

/// Largest number of unknowns the dense Kronecker reference will assemble
/// for a direct solve (a 32 × 32 interior grid).
pub const DENSE_DIRECT_LIMIT: usize = 1024;

/// `𝓛(U) = μ₀U + G_x U + U G_y` on `m₁ × m₂` matrices stored column-major,
/// with `G_x`, `G_y` already carrying their `Kν` scaling.
#[derive(Debug, Clone)]
pub struct SylvesterOp {
    mu0: f64,
    gx: SymToeplitz,
    gy: SymToeplitz,
}

impl SylvesterOp {
    pub fn new(mu0: f64, gx: SymToeplitz, gy: SymToeplitz) -> Result<Self> {
        if !(mu0 > 0.0 && mu0.is_finite()) {
            return Err(Error::invalid("mu0", format!("must be positive, got {mu0}")));
        }
        Ok(Self { mu0, gx, gy })
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    pub fn gx(&self) -> &SymToeplitz {
        &self.gx
    }

    pub fn gy(&self) -> &SymToeplitz {
        &self.gy
    }

    /// `(m₁, m₂)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.gx.order(), self.gy.order())
    }

    pub fn unknowns(&self) -> usize {
        self.gx.order() * self.gy.order()
    }

    /// `out = shift·U + G_x U + U G_y`.
    pub(crate) fn apply_shifted(&self, u: &[f64], out: &mut [f64], shift: f64) {
        let (m1, m2) = self.shape();
        self.gx.apply_columns(u, out, m2).expect("shape checked by caller");
        // U G_y = (G_y Uᵀ)ᵀ: transpose, batch over rows, transpose back.
        let mut ut = vec![0.0; m1 * m2];
        for j in 0..m2 {
            for i in 0..m1 {
                ut[j + i * m2] = u[i + j * m1];
            }
        }
        let mut vt = vec![0.0; m1 * m2];
        self.gy.apply_columns(&ut, &mut vt, m1).expect("shape checked by caller");
        for j in 0..m2 {
            for i in 0..m1 {
                let k = i + j * m1;
                out[k] += vt[j + i * m2] + shift * u[k];
            }
        }
    }

    /// `A₂ = μ₀I + I ⊗ G_x + G_y ⊗ I`, the Kronecker form acting on
    /// `vec(U)`. Refuses more than `limit` unknowns.
    pub fn to_dense(&self, limit: usize) -> Result<Mat<f64>> {
        let (m1, m2) = self.shape();
        let n = m1 * m2;
        if n > limit {
            return Err(Error::SizeGate { order: n, limit });
        }
        Ok(Mat::from_fn(n, n, |r, c| {
            let (i, j) = (r % m1, r / m1);
            let (k, l) = (c % m1, c / m1);
            let mut v = 0.0;
            if j == l {
                v += self.gx.entry(i, k);
                if i == k {
                    v += self.mu0;
                }
            }
            if i == k {
                v += self.gy.entry(j, l);
            }
            v
        }))
    }
}

impl LinearOperator for SylvesterOp {
    fn dim(&self) -> usize {
        self.unknowns()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.apply_shifted(x, y, self.mu0);
    }
}

pub fn sylvester_apply(op: &SylvesterOp, u: &[f64]) -> Result<Vec<f64>> {
    check_len(op.unknowns(), u.len())?;
    let mut out = vec![0.0; u.len()];
    op.apply(u, &mut out);
    Ok(out)
}

/// Global preconditioned CG for `𝓛(U) = E` from the zero matrix.
///
/// For column-major storage the Frobenius inner product `tr(AᵀB)` is the
/// Euclidean product of the flattened arrays, so the global recurrences are
/// the vector ones on `vec(U)`; residuals are reported as `‖R_k‖_F/‖R_0‖_F`.
pub fn gl_pcg<P>(op: &SylvesterOp, precond: &P, e: &[f64], tol: f64, maxit: usize) -> Result<PcgOutcome>
where
    P: Preconditioner + ?Sized,
{
    pcg(op, precond, e, tol, maxit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::Identity;

    fn toeplitz(col: &[f64]) -> SymToeplitz {
        SymToeplitz::new(col.to_vec()).unwrap()
    }

    #[test]
    fn zero_stencils_scale_by_mu0() {
        let op = SylvesterOp::new(2.5, toeplitz(&[0.0, 0.0, 0.0]), toeplitz(&[0.0, 0.0])).unwrap();
        let u = [1.0, -2.0, 3.0, 4.0, 0.5, -1.0];
        let y = sylvester_apply(&op, &u).unwrap();
        for (a, b) in y.iter().zip(&u) {
            assert!((a - 2.5 * b).abs() < 1e-14);
        }
        assert!(sylvester_apply(&op, &[0.0; 6]).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn identity_operator_converges_in_one_step() {
        let op = SylvesterOp::new(4.0, toeplitz(&[0.0; 3]), toeplitz(&[0.0; 3])).unwrap();
        let e: Vec<f64> = (0..9).map(|k| k as f64 - 3.0).collect();
        let out = gl_pcg(&op, &Identity(9), &e, 1e-12, 10).unwrap();
        assert_eq!(out.iterations, 1);
        for (x, b) in out.x.iter().zip(&e) {
            assert!((x - b / 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn dense_gate() {
        let op = SylvesterOp::new(1.0, toeplitz(&[1.0; 40]), toeplitz(&[1.0; 40])).unwrap();
        assert!(matches!(op.to_dense(DENSE_DIRECT_LIMIT), Err(Error::SizeGate { order: 1600, .. })));
    }

    #[test]
    fn rejects_bad_shapes_and_shift() {
        let op = SylvesterOp::new(1.0, toeplitz(&[2.0, -1.0]), toeplitz(&[2.0, -1.0, 0.0])).unwrap();
        assert!(sylvester_apply(&op, &[0.0; 5]).is_err());
        assert!(SylvesterOp::new(0.0, toeplitz(&[1.0]), toeplitz(&[1.0])).is_err());
    }
}
