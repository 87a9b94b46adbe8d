use rustfft::num_complex::Complex64;

use super::fft::{plan, FftPair};
use crate::error::{check_len, Error, Result};
use crate::ops::LinearOperator;

/// Symmetric Toeplitz matrix stored by its first column.
///
/// Products go through a circulant embedding of length
/// `next_power_of_two(2m - 1)`; the embedding spectrum is computed once.
#[derive(Debug, Clone)]
pub struct SymToeplitz {
    col: Vec<f64>,
    spectrum: Vec<Complex64>,
    fft: FftPair,
}

impl SymToeplitz {
    pub fn new(first_col: Vec<f64>) -> Result<Self> {
        let m = first_col.len();
        if m == 0 {
            return Err(Error::invalid("first_col", "Toeplitz order must be at least 1"));
        }
        let n = (2 * m - 1).next_power_of_two();
        let fft = plan(n);
        let mut spectrum = vec![Complex64::new(0.0, 0.0); n];
        spectrum[0].re = first_col[0];
        for k in 1..m {
            spectrum[k].re = first_col[k];
            spectrum[n - k].re = first_col[k];
        }
        fft.forward(&mut spectrum);
        let inv_n = 1.0 / n as f64;
        for s in &mut spectrum {
            *s *= inv_n;
        }
        Ok(Self { col: first_col, spectrum, fft })
    }

    pub fn order(&self) -> usize {
        self.col.len()
    }

    pub fn first_col(&self) -> &[f64] {
        &self.col
    }

    /// Length of the circulant embedding.
    pub fn embedding_len(&self) -> usize {
        self.spectrum.len()
    }

    /// `s·T + shift·I`, a new operator.
    pub fn affine(&self, scale: f64, shift: f64) -> SymToeplitz {
        let mut col: Vec<f64> = self.col.iter().map(|c| scale * c).collect();
        col[0] += shift;
        SymToeplitz::new(col).expect("order is unchanged and nonzero")
    }

    /// Band truncation keeping diagonals with `|offset| ≤ bandwidth`.
    pub fn truncated(&self, bandwidth: usize) -> SymToeplitz {
        let col = self
            .col
            .iter()
            .enumerate()
            .map(|(k, &c)| if k <= bandwidth { c } else { 0.0 })
            .collect();
        SymToeplitz::new(col).expect("order is unchanged and nonzero")
    }

    /// Entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.col[i.abs_diff(j)]
    }

    pub fn to_dense(&self) -> faer::Mat<f64> {
        let m = self.order();
        faer::Mat::from_fn(m, m, |i, j| self.entry(i, j))
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.order(), x.len())?;
        let mut y = vec![0.0; x.len()];
        let mut buf = self.scratch();
        self.apply_pair(x, None, &mut y, None, &mut buf);
        Ok(y)
    }

    pub(crate) fn scratch(&self) -> Vec<Complex64> {
        vec![Complex64::new(0.0, 0.0); self.embedding_len()]
    }

    /// Applies the operator to one or two real vectors with a single pair of
    /// transforms: the second vector rides in the imaginary part, which the
    /// real symmetric embedding keeps separate.
    pub(crate) fn apply_pair(
        &self,
        x1: &[f64],
        x2: Option<&[f64]>,
        y1: &mut [f64],
        y2: Option<&mut [f64]>,
        buf: &mut [Complex64],
    ) {
        let m = self.order();
        match x2 {
            Some(x2) => {
                for k in 0..m {
                    buf[k] = Complex64::new(x1[k], x2[k]);
                }
            }
            None => {
                for k in 0..m {
                    buf[k] = Complex64::new(x1[k], 0.0);
                }
            }
        }
        for b in &mut buf[m..] {
            *b = Complex64::new(0.0, 0.0);
        }
        self.fft.forward(buf);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= s;
        }
        self.fft.inverse(buf);
        for k in 0..m {
            y1[k] = buf[k].re;
        }
        if let Some(y2) = y2 {
            for k in 0..m {
                y2[k] = buf[k].im;
            }
        }
    }

    /// `Y = T X` for every column of a column-major `m × cols` array.
    pub fn apply_columns(&self, x: &[f64], y: &mut [f64], cols: usize) -> Result<()> {
        let m = self.order();
        check_len(m * cols, x.len())?;
        check_len(m * cols, y.len())?;
        let mut buf = self.scratch();
        let mut j = 0;
        while j + 1 < cols {
            let (ya, yb) = y[j * m..(j + 2) * m].split_at_mut(m);
            self.apply_pair(&x[j * m..(j + 1) * m], Some(&x[(j + 1) * m..(j + 2) * m]), ya, Some(yb), &mut buf);
            j += 2;
        }
        if j < cols {
            self.apply_pair(&x[j * m..(j + 1) * m], None, &mut y[j * m..(j + 1) * m], None, &mut buf);
        }
        Ok(())
    }
}

impl LinearOperator for SymToeplitz {
    fn dim(&self) -> usize {
        self.order()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let mut buf = self.scratch();
        self.apply_pair(x, None, y, None, &mut buf);
    }
}

/// `y = T x` via the circulant embedding.
pub fn toeplitz_matvec(t: &SymToeplitz, x: &[f64]) -> Result<Vec<f64>> {
    t.matvec(x)
}
