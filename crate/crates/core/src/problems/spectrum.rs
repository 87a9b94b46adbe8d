use std::fmt;
use std::str::FromStr;

use faer::linalg::triangular_solve::solve_lower_triangular_in_place;
use faer::{Mat, MatRef, Par};

use crate::dense::{symmetric_eigenvalues, DenseCholesky};
use crate::error::{Error, Result};
use crate::solver1d::Scheme1D;
use crate::solver2d::{BccbPrecond, Scheme2D, TruncatedPrecond};

/// Largest matrix order handed to the dense eigensolver.
pub const SPECTRUM_LIMIT: usize = 4096;

fn gate(order: usize) -> Result<()> {
    if order > SPECTRUM_LIMIT {
        return Err(Error::SizeGate { order, limit: SPECTRUM_LIMIT });
    }
    Ok(())
}

/// Ascending eigenvalues of the symmetric `a`, or of `p⁻¹a` for SPD `p`.
///
/// The preconditioned case factors `p = LLᵀ` and diagonalises
/// `L⁻¹aL⁻ᵀ`, which is symmetric and similar to `p⁻¹a`.
pub fn spectrum(a: MatRef<'_, f64>, p: Option<MatRef<'_, f64>>) -> Result<Vec<f64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.ncols() });
    }
    gate(n)?;
    let Some(p) = p else {
        return symmetric_eigenvalues(a);
    };
    if p.nrows() != n || p.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.nrows() });
    }
    let chol = DenseCholesky::new(p)?;
    let l = chol.factor();
    let mut x = a.to_owned();
    solve_lower_triangular_in_place(l, x.as_mut(), Par::Seq);
    let mut y = x.transpose().to_owned();
    solve_lower_triangular_in_place(l, y.as_mut(), Par::Seq);
    let sym = Mat::from_fn(n, n, |i, j| 0.5 * (y[(i, j)] + y[(j, i)]));
    symmetric_eigenvalues(sym.as_ref())
}

/// Circulant preconditioner for 1D spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CirculantKind {
    RChan,
    Strang,
}

impl CirculantKind {
    pub fn name(self) -> &'static str {
        match self {
            CirculantKind::RChan => "rchan",
            CirculantKind::Strang => "strang",
        }
    }
}

impl fmt::Display for CirculantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CirculantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rchan" => Ok(CirculantKind::RChan),
            "strang" => Ok(CirculantKind::Strang),
            _ => Err(Error::invalid("preconditioner", format!("expected rchan or strang, got `{s}`"))),
        }
    }
}

/// Preconditioner for 2D spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SylvesterPrecondKind {
    Bccb,
    /// Band truncation; `None` uses the scheme default.
    Truncated(Option<usize>),
}

impl fmt::Display for SylvesterPrecondKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SylvesterPrecondKind::Bccb => f.write_str("bccb"),
            SylvesterPrecondKind::Truncated(None) => f.write_str("truncated"),
            SylvesterPrecondKind::Truncated(Some(l)) => write!(f, "truncated({l})"),
        }
    }
}

impl FromStr for SylvesterPrecondKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bccb" => Ok(SylvesterPrecondKind::Bccb),
            "truncated" => Ok(SylvesterPrecondKind::Truncated(None)),
            _ => s
                .strip_prefix("truncated(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|l| l.trim().parse().ok())
                .map(|l| SylvesterPrecondKind::Truncated(Some(l)))
                .ok_or_else(|| Error::invalid("preconditioner", format!("expected bccb or truncated(l), got `{s}`"))),
        }
    }
}

/// Eigenvalues of a scheme matrix with and without preconditioning.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPair {
    pub original: Vec<f64>,
    pub preconditioned: Option<Vec<f64>>,
}

/// Lower bound `μ₀ / (μ₀ + 2Kν_β ĝ₀)` on the R. Chan-preconditioned
/// spectrum of the 1D matrix.
pub fn rchan_lower_bound(scheme: &Scheme1D) -> f64 {
    let mu0 = scheme.mu0();
    mu0 / (mu0 + 2.0 * scheme.stiffness() * scheme.stencil.g_hat[0])
}

pub fn spectrum_1d(scheme: &Scheme1D, precond: Option<CirculantKind>) -> Result<SpectrumPair> {
    gate(scheme.order())?;
    let a = scheme.a.to_dense();
    let original = spectrum(a.as_ref(), None)?;
    let preconditioned = match precond {
        None => None,
        Some(kind) => {
            let c = match kind {
                CirculantKind::RChan => scheme.rchan()?,
                CirculantKind::Strang => scheme.strang()?,
            };
            Some(spectrum(a.as_ref(), Some(c.to_dense().as_ref()))?)
        }
    };
    Ok(SpectrumPair { original, preconditioned })
}

/// Spectrum of `𝓛` preconditioned by the truncated operator, using its
/// eigenbases: with `Q = Q₂ ⊗ Q₁` and `D` the denominator grid,
/// `D^{-1/2}Qᵀ A₂ Q D^{-1/2} = D^{-1/2}(I ⊗ Q₁ᵀ(μ₀I + G_x)Q₁ + Q₂ᵀG_yQ₂ ⊗ I)D^{-1/2}`.
fn truncated_spectrum(scheme: &Scheme2D, p: &TruncatedPrecond) -> Result<Vec<f64>> {
    let (m1, m2) = scheme.shape();
    let gx = scheme.op.gx().affine(1.0, scheme.mu0()).to_dense();
    let gy = scheme.op.gy().to_dense();
    let bx = p.q1().transpose() * &gx * p.q1();
    let by = p.q2().transpose() * &gy * p.q2();
    let (d1, d2) = p.factor_eigenvalues();
    let inv_sqrt: Vec<f64> = (0..m1 * m2).map(|r| 1.0 / (d1[r % m1] + d2[r / m1]).sqrt()).collect();
    let n = m1 * m2;
    let s = Mat::from_fn(n, n, |r, c| {
        let (i, j) = (r % m1, r / m1);
        let (k, l) = (c % m1, c / m1);
        let mut v = 0.0;
        if j == l {
            v += bx[(i, k)];
        }
        if i == k {
            v += by[(j, l)];
        }
        v * inv_sqrt[r] * inv_sqrt[c]
    });
    symmetric_eigenvalues(s.as_ref())
}

pub fn spectrum_2d(scheme: &Scheme2D, precond: Option<SylvesterPrecondKind>) -> Result<SpectrumPair> {
    let (m1, m2) = scheme.shape();
    gate(m1 * m2)?;
    // A₂ is a Kronecker sum, so its eigenvalues are sums of factor eigenvalues.
    let ex = symmetric_eigenvalues(scheme.op.gx().to_dense().as_ref())?;
    let ey = symmetric_eigenvalues(scheme.op.gy().to_dense().as_ref())?;
    let mut original: Vec<f64> = ey.iter().flat_map(|y| ex.iter().map(move |x| scheme.mu0() + x + y)).collect();
    original.sort_by(f64::total_cmp);
    let preconditioned = match precond {
        None => None,
        Some(SylvesterPrecondKind::Truncated(l)) => {
            let p = TruncatedPrecond::build(&scheme.op, l.unwrap_or_else(|| scheme.default_bandwidth()))?;
            Some(truncated_spectrum(scheme, &p)?)
        }
        Some(SylvesterPrecondKind::Bccb) => {
            let p = BccbPrecond::build(&scheme.op)?;
            let a = scheme.op.to_dense(SPECTRUM_LIMIT)?;
            Some(spectrum(a.as_ref(), Some(p.to_dense().as_ref()))?)
        }
    };
    Ok(SpectrumPair { original, preconditioned })
}

/// Fraction of `values` inside `[lo, hi]`.
pub fn fraction_within(values: &[f64], lo: f64, hi: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().filter(|&&v| (lo..=hi).contains(&v)).count() as f64 / values.len() as f64
}
