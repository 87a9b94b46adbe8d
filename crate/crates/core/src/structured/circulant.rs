use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use super::fft::{plan, FftPair};
use super::toeplitz::SymToeplitz;
use crate::error::{check_len, Error, Result};
use crate::ops::Preconditioner;

/// Circulant matrix diagonalised by the DFT.
#[derive(Debug, Clone)]
pub struct Circulant {
    col: Vec<f64>,
    eigenvalues: Vec<Complex64>,
    fft: FftPair,
}

impl Circulant {
    pub fn new(first_col: Vec<f64>) -> Result<Self> {
        let m = first_col.len();
        if m == 0 {
            return Err(Error::invalid("first_col", "circulant order must be at least 1"));
        }
        let fft = plan(m);
        let mut eigenvalues: Vec<Complex64> = first_col.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        fft.forward(&mut eigenvalues);
        Ok(Self { col: first_col, eigenvalues, fft })
    }

    pub fn order(&self) -> usize {
        self.col.len()
    }

    pub fn first_col(&self) -> &[f64] {
        &self.col
    }

    /// `DFT(first_col)`, in DFT index order.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Smallest real part over the spectrum. For the symmetric circulants
    /// built here the imaginary parts are rounding noise.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.re).fold(f64::INFINITY, f64::min)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn matvec_complex(&self, x: &mut [Complex64]) {
        let inv_m = 1.0 / self.order() as f64;
        self.fft.forward(x);
        for (v, e) in x.iter_mut().zip(&self.eigenvalues) {
            *v *= e * inv_m;
        }
        self.fft.inverse(x);
    }

    pub(crate) fn solve_complex(&self, x: &mut [Complex64]) {
        let inv_m = 1.0 / self.order() as f64;
        self.fft.forward(x);
        for (v, e) in x.iter_mut().zip(&self.eigenvalues) {
            *v = *v / e * inv_m;
        }
        self.fft.inverse(x);
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.order(), x.len())?;
        let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.matvec_complex(&mut buf);
        Ok(buf.iter().map(|c| c.re).collect())
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        check_len(self.order(), b.len())?;
        let mut buf: Vec<Complex64> = b.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.solve_complex(&mut buf);
        Ok(buf.iter().map(|c| c.re).collect())
    }

    pub fn to_dense(&self) -> faer::Mat<f64> {
        let m = self.order();
        faer::Mat::from_fn(m, m, |i, j| self.col[(i + m - j) % m])
    }
}

impl Preconditioner for Circulant {
    fn dim(&self) -> usize {
        self.order()
    }

    fn solve(&self, r: &[f64], z: &mut [f64]) {
        let mut buf: Vec<Complex64> = r.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.solve_complex(&mut buf);
        for (zi, c) in z.iter_mut().zip(&buf) {
            *zi = c.re;
        }
    }
}

/// Skew-circulant matrix: circulant structure with the wrapped entries
/// negated. Diagonalised by the DFT after the twist `x_k ↦ e^{iπk/m} x_k`.
#[derive(Debug, Clone)]
pub struct SkewCirculant {
    col: Vec<f64>,
    twist: Vec<Complex64>,
    eigenvalues: Vec<Complex64>,
    fft: FftPair,
}

impl SkewCirculant {
    pub fn new(first_col: Vec<f64>) -> Result<Self> {
        let m = first_col.len();
        if m == 0 {
            return Err(Error::invalid("first_col", "skew-circulant order must be at least 1"));
        }
        let fft = plan(m);
        let twist: Vec<Complex64> = (0..m).map(|k| Complex64::from_polar(1.0, PI * k as f64 / m as f64)).collect();
        let mut eigenvalues: Vec<Complex64> = first_col.iter().zip(&twist).map(|(&c, w)| w * c).collect();
        fft.forward(&mut eigenvalues);
        Ok(Self { col: first_col, twist, eigenvalues, fft })
    }

    pub fn order(&self) -> usize {
        self.col.len()
    }

    pub fn first_col(&self) -> &[f64] {
        &self.col
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub(crate) fn matvec_complex(&self, x: &mut [Complex64]) {
        let inv_m = 1.0 / self.order() as f64;
        for (v, w) in x.iter_mut().zip(&self.twist) {
            *v *= w;
        }
        self.fft.forward(x);
        for (v, e) in x.iter_mut().zip(&self.eigenvalues) {
            *v *= e * inv_m;
        }
        self.fft.inverse(x);
        for (v, w) in x.iter_mut().zip(&self.twist) {
            *v *= w.conj();
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.order(), x.len())?;
        let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.matvec_complex(&mut buf);
        Ok(buf.iter().map(|c| c.re).collect())
    }

    pub fn to_dense(&self) -> faer::Mat<f64> {
        let m = self.order();
        faer::Mat::from_fn(m, m, |i, j| if i >= j { self.col[i - j] } else { -self.col[m + i - j] })
    }
}

fn check_shift_scale(mu0: f64, scale: f64) -> Result<()> {
    if !(mu0 > 0.0 && mu0.is_finite()) {
        return Err(Error::invalid("mu0", format!("must be positive, got {mu0}")));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::invalid("scale", format!("must be positive, got {scale}")));
    }
    Ok(())
}

/// First column of R. Chan's circulant approximation `r(T)`:
/// `r_0 = t_0`, `r_k = t_k + t_{n-k}`.
pub fn rchan_column(t: &SymToeplitz) -> Vec<f64> {
    let c = t.first_col();
    let n = c.len();
    (0..n).map(|k| if k == 0 { c[0] } else { c[k] + c[n - k] }).collect()
}

/// First column of Strang's circulant `s(T)`, which copies the central
/// diagonals: `s_k = t_k` for `k ≤ n/2`, `s_k = t_{n-k}` beyond.
pub fn strang_column(t: &SymToeplitz) -> Vec<f64> {
    let c = t.first_col();
    let n = c.len();
    (0..n).map(|k| if k <= n / 2 { c[k] } else { c[n - k] }).collect()
}

fn shifted(mut col: Vec<f64>, mu0: f64, scale: f64) -> Vec<f64> {
    for v in &mut col {
        *v *= scale;
    }
    col[0] += mu0;
    col
}

/// `μ_0 I + scale · r(T)`.
pub fn rchan_preconditioner(t: &SymToeplitz, mu0: f64, scale: f64) -> Result<Circulant> {
    check_shift_scale(mu0, scale)?;
    Circulant::new(shifted(rchan_column(t), mu0, scale))
}

/// `μ_0 I + scale · s(T)`.
pub fn strang_preconditioner(t: &SymToeplitz, mu0: f64, scale: f64) -> Result<Circulant> {
    check_shift_scale(mu0, scale)?;
    Circulant::new(shifted(strang_column(t), mu0, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rchan_two_point() {
        let t = SymToeplitz::new(vec![2.0, -1.0]).unwrap();
        assert_eq!(rchan_column(&t), vec![2.0, -2.0]);
        let r = rchan_preconditioner(&t, 1.0, 1.0).unwrap();
        assert_eq!(r.first_col(), &[3.0, -2.0]);
        let mut eig: Vec<f64> = r.eigenvalues().iter().map(|e| e.re).collect();
        eig.sort_by(f64::total_cmp);
        assert!((eig[0] - 1.0).abs() < 1e-14 && (eig[1] - 5.0).abs() < 1e-14);
    }

    #[test]
    fn strang_copies_central_diagonals() {
        let t = SymToeplitz::new(vec![2.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!(strang_column(&t), vec![2.0, -1.0, 0.0, -1.0]);
    }

    #[test]
    fn identity_column_gives_scaled_identity() {
        let mut col = vec![0.0; 9];
        col[0] = 1.0;
        let t = SymToeplitz::new(col).unwrap();
        for p in [rchan_preconditioner(&t, 0.5, 2.0).unwrap(), strang_preconditioner(&t, 0.5, 2.0).unwrap()] {
            assert_eq!(p.first_col()[0], 2.5);
            assert!(p.first_col()[1..].iter().all(|&v| v == 0.0));
            assert!(p.eigenvalues().iter().all(|e| (e.re - 2.5).abs() < 1e-14));
        }
    }

    #[test]
    fn rejects_nonpositive_shift_or_scale() {
        let t = SymToeplitz::new(vec![2.0, -1.0]).unwrap();
        assert!(rchan_preconditioner(&t, 0.0, 1.0).is_err());
        assert!(strang_preconditioner(&t, 1.0, -1.0).is_err());
    }

    #[test]
    fn circulant_solve_inverts_matvec() {
        let c = Circulant::new(vec![4.0, -1.0, 0.5, -1.0, 0.25]).unwrap();
        let x = vec![1.0, -2.0, 3.0, 0.5, 0.0];
        let y = c.matvec(&x).unwrap();
        let back = c.solve(&y).unwrap();
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn skew_circulant_small_dense() {
        let s = SkewCirculant::new(vec![1.0, 2.0, 3.0]).unwrap();
        let d = s.to_dense();
        assert_eq!(d[(0, 1)], -3.0);
        assert_eq!(d[(0, 2)], -2.0);
        assert_eq!(d[(2, 0)], 3.0);
        let y = s.matvec(&[1.0, 0.0, 0.0]).unwrap();
        for (a, b) in y.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-14);
        }
        let y = s.matvec(&[0.0, 1.0, 0.0]).unwrap();
        for (a, b) in y.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
