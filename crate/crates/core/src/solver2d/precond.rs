use faer::{Mat, MatRef};
use rustfft::num_complex::Complex64;

use super::sylvester::SylvesterOp;
use crate::dense::symmetric_eigen;
use crate::error::{check_len, Error, Result};
use crate::ops::Preconditioner;
use crate::structured::{fft_plan, rchan_column, Circulant};

/// Exact inverse of the band-truncated Sylvester operator
/// `𝓛̃_l(Z) = [μ₀I + T_l(G_x)]Z + Z T_l(G_y)`.
///
/// Both truncated factors are eigendecomposed once, `μ₀I + T_l(G_x) =
/// Q₁D₁Q₁ᵀ` and `T_l(G_y) = Q₂D₂Q₂ᵀ`, so each solve is
/// `Z = Q₁[(Q₁ᵀRQ₂) ⊘ (d₁ᵢ + d₂ⱼ)]Q₂ᵀ`.
#[derive(Debug, Clone)]
pub struct TruncatedPrecond {
    bandwidth: usize,
    q1: Mat<f64>,
    q2: Mat<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
}

impl TruncatedPrecond {
    pub fn build(op: &SylvesterOp, bandwidth: usize) -> Result<Self> {
        let (m1, m2) = op.shape();
        let max = m1.min(m2);
        if bandwidth < 1 || bandwidth > max {
            return Err(Error::invalid("l", format!("truncation bandwidth must lie in [1, {max}], got {bandwidth}")));
        }
        let tx = op.gx().truncated(bandwidth).affine(1.0, op.mu0());
        let ty = op.gy().truncated(bandwidth);
        let (d1, q1) = symmetric_eigen(tx.to_dense().as_ref())?;
        let (d2, q2) = symmetric_eigen(ty.to_dense().as_ref())?;
        let lo = d1[0] + d2[0];
        if !(lo > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self { bandwidth, q1, q2, d1, d2 })
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.d1.len(), self.d2.len())
    }

    /// Eigenvalues of `μ₀I + T_l(G_x)` and of `T_l(G_y)`, ascending.
    pub fn factor_eigenvalues(&self) -> (&[f64], &[f64]) {
        (&self.d1, &self.d2)
    }

    pub fn q1(&self) -> MatRef<'_, f64> {
        self.q1.as_ref()
    }

    pub fn q2(&self) -> MatRef<'_, f64> {
        self.q2.as_ref()
    }

    /// Smallest denominator `d₁ᵢ + d₂ⱼ`.
    pub fn min_denominator(&self) -> f64 {
        self.d1[0] + self.d2[0]
    }

    pub fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        let (m1, m2) = self.shape();
        check_len(m1 * m2, r.len())?;
        let mut z = vec![0.0; r.len()];
        self.apply_into(r, &mut z);
        Ok(z)
    }

    fn apply_into(&self, r: &[f64], z: &mut [f64]) {
        let (m1, m2) = self.shape();
        let r = MatRef::from_column_major_slice(r, m1, m2);
        let mut e = self.q1.transpose() * r * &self.q2;
        for j in 0..m2 {
            for i in 0..m1 {
                e[(i, j)] /= self.d1[i] + self.d2[j];
            }
        }
        let out = &self.q1 * e * self.q2.transpose();
        for j in 0..m2 {
            z[j * m1..(j + 1) * m1].copy_from_slice(out.col_as_slice(j));
        }
    }
}

impl Preconditioner for TruncatedPrecond {
    fn dim(&self) -> usize {
        self.d1.len() * self.d2.len()
    }

    fn solve(&self, r: &[f64], z: &mut [f64]) {
        self.apply_into(r, z);
    }
}

pub fn truncated_precond_build(op: &SylvesterOp, bandwidth: usize) -> Result<TruncatedPrecond> {
    TruncatedPrecond::build(op, bandwidth)
}

pub fn truncated_precond_apply(p: &TruncatedPrecond, r: &[f64]) -> Result<Vec<f64>> {
    p.apply(r)
}

/// Block-circulant-circulant-block preconditioner
/// `μ₀I + I ⊗ r(G_x) + r(G_y) ⊗ I` built from R. Chan's circulants.
#[derive(Debug, Clone)]
pub struct BccbPrecond {
    m1: usize,
    m2: usize,
    mu0: f64,
    col_x: Vec<f64>,
    col_y: Vec<f64>,
    /// `μ₀ + λ_i(r(G_x)) + λ_j(r(G_y))`, column-major `m₁ × m₂`.
    eigenvalues: Vec<f64>,
}

impl BccbPrecond {
    pub fn build(op: &SylvesterOp) -> Result<Self> {
        let (m1, m2) = op.shape();
        let cx = Circulant::new(rchan_column(op.gx()))?;
        let cy = Circulant::new(rchan_column(op.gy()))?;
        let mut eigenvalues = Vec::with_capacity(m1 * m2);
        for ey in cy.eigenvalues() {
            for ex in cx.eigenvalues() {
                eigenvalues.push(op.mu0() + ex.re + ey.re);
            }
        }
        if !eigenvalues.iter().all(|&e| e > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let (col_x, col_y) = (cx.first_col().to_vec(), cy.first_col().to_vec());
        Ok(Self { m1, m2, mu0: op.mu0(), col_x, col_y, eigenvalues })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m1, self.m2)
    }

    /// The 2D eigenvalue grid, column-major, in DFT index order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn apply(&self, r: &[f64]) -> Result<Vec<f64>> {
        check_len(self.m1 * self.m2, r.len())?;
        let mut z = vec![0.0; r.len()];
        self.apply_into(r, &mut z);
        Ok(z)
    }

    fn apply_into(&self, r: &[f64], z: &mut [f64]) {
        let (m1, m2) = (self.m1, self.m2);
        let fx = fft_plan(m1);
        let fy = fft_plan(m2);
        let mut buf: Vec<Complex64> = r.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let mut row = vec![Complex64::new(0.0, 0.0); m2];
        let rows = |buf: &mut [Complex64], row: &mut [Complex64], f: &dyn Fn(&mut [Complex64])| {
            for i in 0..m1 {
                for j in 0..m2 {
                    row[j] = buf[i + j * m1];
                }
                f(row);
                for j in 0..m2 {
                    buf[i + j * m1] = row[j];
                }
            }
        };
        for col in buf.chunks_exact_mut(m1) {
            fx.forward(col);
        }
        rows(&mut buf, &mut row, &|v| fy.forward(v));
        let scale = 1.0 / (m1 * m2) as f64;
        for (b, e) in buf.iter_mut().zip(&self.eigenvalues) {
            *b *= scale / e;
        }
        for col in buf.chunks_exact_mut(m1) {
            fx.inverse(col);
        }
        rows(&mut buf, &mut row, &|v| fy.inverse(v));
        for (zi, b) in z.iter_mut().zip(&buf) {
            *zi = b.re;
        }
    }

    /// Dense Kronecker form, for small oracles.
    pub fn to_dense(&self) -> Mat<f64> {
        let (m1, m2) = (self.m1, self.m2);
        let (cx, cy, mu0) = (&self.col_x, &self.col_y, self.mu0);
        let n = m1 * m2;
        Mat::from_fn(n, n, |r, c| {
            let (i, j) = (r % m1, r / m1);
            let (k, l) = (c % m1, c / m1);
            let mut v = 0.0;
            if j == l {
                v += cx[(i + m1 - k) % m1];
                if i == k {
                    v += mu0;
                }
            }
            if i == k {
                v += cy[(j + m2 - l) % m2];
            }
            v
        })
    }
}

impl Preconditioner for BccbPrecond {
    fn dim(&self) -> usize {
        self.m1 * self.m2
    }

    fn solve(&self, r: &[f64], z: &mut [f64]) {
        self.apply_into(r, z);
    }
}

pub fn bccb_apply(p: &BccbPrecond, r: &[f64]) -> Result<Vec<f64>> {
    p.apply(r)
}
