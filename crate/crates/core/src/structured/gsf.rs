//! Gohberg–Semencul representation of the inverse of an SPD Toeplitz matrix.
//!
//! With `l = A^{-1} e_1`, let `L` be the lower-triangular Toeplitz matrix
//! with first column `l` and `L̂` the strictly lower one with first column
//! `(0, l_m, …, l_2)`. Then `L + L̂ᵀ` is circulant, `Lᵀ - L̂` is
//! skew-circulant, and
//!
//! ```text
//! z = (1 / 2 l_1) (L + L̂ᵀ)(Lᵀ - L̂)(b + i J b),   A^{-1} b = Re z + J Im z
//! ```
//!
//! where `J` reverses a vector. One application costs four length-`m` FFTs.

use rustfft::num_complex::Complex64;

use super::circulant::{Circulant, SkewCirculant};
use super::toeplitz::SymToeplitz;
use crate::error::{check_len, Error, Result};
use crate::ops::Preconditioner;

#[derive(Debug, Clone)]
pub struct GsfInverse {
    l: Vec<f64>,
    l1: f64,
    circ: Circulant,
    skew: SkewCirculant,
}

impl GsfInverse {
    /// Solves `A l = e_1` with `solve` and assembles the factors.
    ///
    /// `solve` receives the matrix and the right-hand side; any SPD solver
    /// accurate to near machine precision will do.
    pub fn build<F>(a: &SymToeplitz, solve: F) -> Result<Self>
    where
        F: FnOnce(&SymToeplitz, &[f64]) -> Result<Vec<f64>>,
    {
        let mut e1 = vec![0.0; a.order()];
        e1[0] = 1.0;
        let l = solve(a, &e1)?;
        check_len(a.order(), l.len())?;
        Self::from_first_column(l)
    }

    /// Builds the representation from `l = A^{-1} e_1` directly.
    pub fn from_first_column(l: Vec<f64>) -> Result<Self> {
        let m = l.len();
        if m == 0 {
            return Err(Error::invalid("l", "empty inverse column"));
        }
        let l1 = l[0];
        let linf = l.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if !l1.is_finite() || l1.abs() < 1e-14 * linf || l1 == 0.0 {
            return Err(Error::Singular(format!("l_1 = {l1:e} relative to ‖l‖∞ = {linf:e}")));
        }
        // L + L̂ᵀ: circulant with first column l.
        let circ = Circulant::new(l.clone())?;
        // Lᵀ - L̂: skew-circulant with first column (l_1, -l_m, …, -l_2).
        let skew_col = (0..m).map(|k| if k == 0 { l[0] } else { -l[m - k] }).collect();
        let skew = SkewCirculant::new(skew_col)?;
        Ok(Self { l, l1, circ, skew })
    }

    pub fn order(&self) -> usize {
        self.l.len()
    }

    /// `A^{-1} e_1`.
    pub fn first_column(&self) -> &[f64] {
        &self.l
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn circulant_factor(&self) -> &Circulant {
        &self.circ
    }

    pub fn skew_factor(&self) -> &SkewCirculant {
        &self.skew
    }

    /// `A^{-1} b`.
    pub fn apply(&self, b: &[f64]) -> Result<Vec<f64>> {
        check_len(self.order(), b.len())?;
        let mut out = vec![0.0; b.len()];
        self.apply_into(b, &mut out);
        Ok(out)
    }

    pub(crate) fn apply_into(&self, b: &[f64], out: &mut [f64]) {
        let m = self.order();
        let mut z: Vec<Complex64> = (0..m).map(|k| Complex64::new(b[k], b[m - 1 - k])).collect();
        self.skew.matvec_complex(&mut z);
        self.circ.matvec_complex(&mut z);
        let s = 0.5 / self.l1;
        for k in 0..m {
            out[k] = s * (z[k].re + z[m - 1 - k].im);
        }
    }
}

impl Preconditioner for GsfInverse {
    fn dim(&self) -> usize {
        self.order()
    }

    fn solve(&self, r: &[f64], z: &mut [f64]) {
        self.apply_into(r, z);
    }
}

pub fn gsf_build<F>(a: &SymToeplitz, solve: F) -> Result<GsfInverse>
where
    F: FnOnce(&SymToeplitz, &[f64]) -> Result<Vec<f64>>,
{
    GsfInverse::build(a, solve)
}

pub fn gsf_apply(g: &GsfInverse, b: &[f64]) -> Result<Vec<f64>> {
    g.apply(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let mut col = vec![0.0; 6];
        col[0] = 1.0;
        let a = SymToeplitz::new(col).unwrap();
        let g = gsf_build(&a, |_, e1| Ok(e1.to_vec())).unwrap();
        let b = [1.0, -2.0, 3.0, 0.5, 7.0, -1.0];
        let z = gsf_apply(&g, &b).unwrap();
        for (x, y) in z.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
        }
        assert!(gsf_apply(&g, &[0.0; 6]).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn hand_inverse_two_by_two() {
        let g = GsfInverse::from_first_column(vec![2.0 / 3.0, 1.0 / 3.0]).unwrap();
        let z = g.apply(&[1.0, 0.0]).unwrap();
        assert!((z[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((z[1] - 1.0 / 3.0).abs() < 1e-15);
        let z = g.apply(&[0.0, 1.0]).unwrap();
        assert!((z[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((z[1] - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_system() {
        let g = GsfInverse::from_first_column(vec![0.25]).unwrap();
        assert!((g.apply(&[2.0]).unwrap()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn singular_first_entry_rejected() {
        assert!(matches!(GsfInverse::from_first_column(vec![0.0, 1.0]), Err(Error::Singular(_))));
        assert!(matches!(GsfInverse::from_first_column(vec![1e-20, 1.0]), Err(Error::Singular(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let g = GsfInverse::from_first_column(vec![1.0, 0.1]).unwrap();
        assert!(g.apply(&[1.0]).is_err());
    }
}
