//! Dense reference linear algebra (faer), used for the direct-solve
//! baselines, spectra, and the truncated-preconditioner factorisations.

use faer::linalg::solvers::Solve;
use faer::{Mat, MatMut, MatRef, Side};

use crate::error::{Error, Result};
use crate::ops::Preconditioner;

/// Cholesky factor of an SPD matrix, reused across right-hand sides.
pub struct DenseCholesky {
    llt: faer::linalg::solvers::Llt<f64>,
    n: usize,
}

impl std::fmt::Debug for DenseCholesky {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DenseCholesky").field("n", &self.n).finish()
    }
}

impl DenseCholesky {
    pub fn new(a: MatRef<'_, f64>) -> Result<Self> {
        let llt = a.llt(Side::Lower).map_err(|_| Error::NotPositiveDefinite)?;
        Ok(Self { llt, n: a.nrows() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.n;
        self.llt.solve_in_place(MatMut::from_column_major_slice_mut(x, n, 1));
    }

    pub fn factor(&self) -> MatRef<'_, f64> {
        self.llt.L()
    }
}

impl Preconditioner for DenseCholesky {
    fn dim(&self) -> usize {
        self.n
    }

    fn solve(&self, r: &[f64], z: &mut [f64]) {
        z.copy_from_slice(r);
        self.solve_in_place(z);
    }
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn symmetric_eigenvalues(a: MatRef<'_, f64>) -> Result<Vec<f64>> {
    a.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Singular(format!("symmetric eigensolver failed: {e:?}")))
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.
pub fn symmetric_eigen(a: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let evd = a
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Singular(format!("symmetric eigensolver failed: {e:?}")))?;
    let s = evd.S();
    let values = (0..a.nrows()).map(|i| s[i]).collect();
    Ok((values, evd.U().to_owned()))
}
