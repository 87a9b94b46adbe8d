use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::solver2d::GridSource2D;

/// Distributed-order weight `ω(α) = Γ(5 - α)` used by both examples.
pub fn example_weight(alpha: f64) -> f64 {
    libm::tgamma(5.0 - alpha)
}

/// `(t³ - t²) / ln t`, continuous at `t = 1` (value 1) and at `t = 0`
/// (value 0).
pub fn time_factor(t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let s = t - 1.0;
    // (t - 1)/ln t = s/ln(1 + s) → 1 + s/2 + O(s²)
    let ratio = if s.abs() < 1e-5 { 1.0 + 0.5 * s } else { s / s.ln_1p() };
    t * t * ratio
}

/// `x³(1-x)³`.
fn cubic_bump(x: f64) -> f64 {
    let p = x * (1.0 - x);
    p * p * p
}

/// The Riesz-derivative part of the manufactured sources along one axis:
/// `c·[f₁ - 3f₂ + 3f₃ - f₄](x)` with `f_p(x) = Γ(p+3)/Γ(p+3-β)·[x^{p+2-β} +
/// (1-x)^{p+2-β}]` and `c = -1/(2cos(βπ/2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct RieszBracket {
    beta: f64,
    /// `c · (±binomial) · Γ(p+1)/Γ(p+1-β)` for `p = 3..=6`.
    coef: [f64; 4],
}

impl RieszBracket {
    fn new(name: &'static str, beta: f64) -> Result<Self> {
        if !(beta > 1.0 && beta < 2.0) {
            return Err(Error::invalid(
                name,
                format!("the manufactured source needs an order in (1, 2), got {beta}"),
            ));
        }
        let c = -1.0 / (2.0 * (beta * PI / 2.0).cos());
        let mut coef = [0.0; 4];
        for (k, sign) in [1.0, -3.0, 3.0, -1.0].into_iter().enumerate() {
            let p = (k + 3) as f64;
            coef[k] = c * sign * libm::tgamma(p + 1.0) / libm::tgamma(p + 1.0 - beta);
        }
        Ok(Self { beta, coef })
    }

    fn eval(&self, x: f64) -> f64 {
        let (a, b) = (x, 1.0 - x);
        let mut sum = 0.0;
        for (k, c) in self.coef.iter().enumerate() {
            let e = (k + 3) as f64 - self.beta;
            sum += c * (a.powf(e) + b.powf(e));
        }
        sum
    }
}

/// One-dimensional manufactured problem on `(0, 1)` with `K = 1` and exact
/// solution `u = t⁴x³(1-x)³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example1 {
    bracket: RieszBracket,
}

impl Example1 {
    /// Fails for `β = 2`, where the cosine in the Riesz constant vanishes.
    pub fn new(beta: f64) -> Result<Self> {
        Ok(Self { bracket: RieszBracket::new("beta", beta)? })
    }

    pub fn beta(&self) -> f64 {
        self.bracket.beta
    }

    pub fn exact(&self, x: f64, t: f64) -> f64 {
        example1_exact(x, t)
    }

    pub fn source(&self, x: f64, t: f64) -> f64 {
        24.0 * cubic_bump(x) * time_factor(t) - t.powi(4) * self.bracket.eval(x)
    }
}

/// Two-dimensional manufactured problem on the unit square with
/// `K₁ = K₂ = 1` and exact solution `u = t⁴x³(1-x)³y³(1-y)³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example2 {
    bx: RieszBracket,
    by: RieszBracket,
}

impl Example2 {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        Ok(Self { bx: RieszBracket::new("beta", beta)?, by: RieszBracket::new("gamma", gamma)? })
    }

    pub fn beta(&self) -> f64 {
        self.bx.beta
    }

    pub fn gamma(&self) -> f64 {
        self.by.beta
    }

    pub fn exact(&self, x: f64, y: f64, t: f64) -> f64 {
        example2_exact(x, y, t)
    }

    pub fn source(&self, x: f64, y: f64, t: f64) -> f64 {
        let (px, py) = (cubic_bump(x), cubic_bump(y));
        let t4 = t.powi(4);
        24.0 * px * py * time_factor(t) - t4 * py * self.bx.eval(x) - t4 * px * self.by.eval(y)
    }
}

impl GridSource2D for Example2 {
    fn fill(&self, xs: &[f64], ys: &[f64], t: f64, out: &mut [f64]) {
        let m1 = xs.len();
        let px: Vec<f64> = xs.iter().map(|&x| cubic_bump(x)).collect();
        let bx: Vec<f64> = xs.iter().map(|&x| self.bx.eval(x)).collect();
        let (f0, t4) = (24.0 * time_factor(t), t.powi(4));
        for (j, &y) in ys.iter().enumerate() {
            let (py, by) = (cubic_bump(y), self.by.eval(y));
            let col = &mut out[j * m1..(j + 1) * m1];
            for i in 0..m1 {
                col[i] = f0 * px[i] * py - t4 * py * bx[i] - t4 * px[i] * by;
            }
        }
    }
}

pub fn example1_exact(x: f64, t: f64) -> f64 {
    t.powi(4) * cubic_bump(x)
}

pub fn example2_exact(x: f64, y: f64, t: f64) -> f64 {
    t.powi(4) * cubic_bump(x) * cubic_bump(y)
}

fn check_point(x: f64, t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid("x", format!("must lie in [0, 1], got {x}")));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", format!("must be non-negative, got {t}")));
    }
    Ok(())
}

/// Source of the 1D example at a single point; see [`Example1`] for
/// repeated evaluation.
pub fn example1_source(x: f64, t: f64, beta: f64) -> Result<f64> {
    check_point(x, t)?;
    Ok(Example1::new(beta)?.source(x, t))
}

pub fn example2_source(x: f64, y: f64, t: f64, beta: f64, gamma: f64) -> Result<f64> {
    check_point(x, t)?;
    check_point(y, t)?;
    Ok(Example2::new(beta, gamma)?.source(x, y, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values() {
        assert_eq!(example1_exact(0.5, 1.0), 0.015625);
        assert_eq!(example1_exact(0.0, 2.0), 0.0);
        assert_eq!(example1_exact(1.0, 2.0), 0.0);
        let v = 1.5f64.powi(4) * 0.3f64.powi(3) * 0.7f64.powi(3);
        assert!((example1_exact(0.3, 1.5) - v).abs() < 1e-16);
        assert!((example2_exact(0.3, 0.6, 1.2) - example1_exact(0.3, 1.2) * cubic_bump(0.6)).abs() < 1e-18);
    }

    #[test]
    fn time_factor_limits() {
        assert_eq!(time_factor(0.0), 0.0);
        assert_eq!(time_factor(1.0), 1.0);
        for t in [1.0 - 1e-8, 1.0 + 1e-8, 1.0 + 3e-6, 1.0 - 2e-5] {
            let naive = (t * t * t - t * t) / f64::ln(t);
            assert!((time_factor(t) - naive).abs() < 1e-6, "{t}");
        }
        let t: f64 = 0.37;
        assert!((time_factor(t) - (t.powi(3) - t.powi(2)) / t.ln()).abs() < 1e-15);
    }

    #[test]
    fn source_at_time_zero_vanishes() {
        let ex = Example1::new(1.5).unwrap();
        for x in [0.0, 0.2, 0.5, 0.9] {
            assert_eq!(ex.source(x, 0.0), 0.0);
        }
    }

    #[test]
    fn rejects_classical_order() {
        assert!(Example1::new(2.0).is_err());
        assert!(Example2::new(1.5, 2.0).is_err());
        assert!(example1_source(1.5, 0.5, 1.5).is_err());
        assert!(example1_source(0.5, -1.0, 1.5).is_err());
    }

    #[test]
    fn grid_fill_matches_pointwise() {
        let ex = Example2::new(1.3, 1.7).unwrap();
        let xs = [0.1, 0.4, 0.8];
        let ys = [0.25, 0.5];
        let mut out = [0.0; 6];
        ex.fill(&xs, &ys, 0.9, &mut out);
        for j in 0..2 {
            for i in 0..3 {
                let v = ex.source(xs[i], ys[j], 0.9);
                assert!((out[i + 3 * j] - v).abs() < 1e-14 * v.abs().max(1.0));
            }
        }
    }
}
