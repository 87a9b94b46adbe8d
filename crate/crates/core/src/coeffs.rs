//! Scalar coefficient series used by the discretisations.
//!
//! * [`QuadratureRule`]: composite trapezoid rule on the order interval
//!   `[1, 2]`, together with the weight function sampled at its nodes.
//! * [`TemporalWeights`]: Grünwald coefficients `g_k` and the weighted,
//!   shifted combination `λ_k` for one fractional order `γ ∈ [0, 1]`.
//! * [`MuSeries`]: the per-lag weights `μ_k` obtained by summing `λ_k` over
//!   all quadrature nodes.
//! * [`RieszStencil`]: fractional centred-difference weights `ĝ_k`.
//!
//! Every series is built from its three-term recurrence; only the leading
//! Riesz coefficient touches the Gamma function.

use crate::error::{Error, Result};

/// Composite trapezoid rule with `2J` panels on `[1, 2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    j: usize,
    delta_alpha: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    omega: Vec<f64>,
}

impl QuadratureRule {
    /// Builds the rule and samples `omega` at the `2J + 1` nodes.
    pub fn new(j: usize, omega: impl Fn(f64) -> f64) -> Result<Self> {
        if j == 0 {
            return Err(Error::invalid("J", "must be at least 1"));
        }
        let nodes = Self::nodes_for(j);
        let samples = nodes.iter().map(|&a| omega(a)).collect();
        Self::from_samples(j, samples)
    }

    /// Builds the rule from weight-function values already sampled at the
    /// nodes `1 + l/(2J)`. This is how concentrated (single-order) weights
    /// are expressed.
    pub fn from_samples(j: usize, omega: Vec<f64>) -> Result<Self> {
        if j == 0 {
            return Err(Error::invalid("J", "must be at least 1"));
        }
        if omega.len() != 2 * j + 1 {
            return Err(Error::DimensionMismatch { expected: 2 * j + 1, found: omega.len() });
        }
        if let Some(bad) = omega.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::invalid("omega", format!("weight samples must be finite and nonnegative, got {bad}")));
        }
        if omega.iter().all(|&w| w == 0.0) {
            return Err(Error::invalid("omega", "weight function vanishes at every node"));
        }
        let nodes = Self::nodes_for(j);
        let weights = (0..=2 * j).map(|l| if l == 0 || l == 2 * j { 0.5 } else { 1.0 }).collect();
        Ok(Self { j, delta_alpha: 0.5 / j as f64, nodes, weights, omega })
    }

    fn nodes_for(j: usize) -> Vec<f64> {
        let d = 0.5 / j as f64;
        (0..=2 * j).map(|l| if l == 2 * j { 2.0 } else { 1.0 + l as f64 * d }).collect()
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn delta_alpha(&self) -> f64 {
        self.delta_alpha
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn omega_values(&self) -> &[f64] {
        &self.omega
    }

    /// `Δα Σ c_l z(α_l)`, the trapezoid approximation of `∫_1^2 z(α) dα`.
    pub fn integrate(&self, z: impl Fn(f64) -> f64) -> f64 {
        let sum: f64 = self.nodes.iter().zip(&self.weights).map(|(&a, &c)| c * z(a)).sum();
        self.delta_alpha * sum
    }

    /// Trapezoid approximation of `∫_1^2 ω(α) dα` from the stored samples.
    pub fn weight_integral(&self) -> f64 {
        let sum: f64 = self.weights.iter().zip(&self.omega).map(|(c, w)| c * w).sum();
        self.delta_alpha * sum
    }
}

/// Convenience wrapper around [`QuadratureRule::new`].
pub fn build_quadrature(j: usize, omega: impl Fn(f64) -> f64) -> Result<QuadratureRule> {
    QuadratureRule::new(j, omega)
}

/// Grünwald and weighted-shifted Grünwald coefficients for one order `γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalWeights {
    pub gamma: f64,
    pub g: Vec<f64>,
    pub lambda: Vec<f64>,
}

/// Coefficients `g_k` and `λ_k` for `k = 0..=n_terms`.
pub fn temporal_weights(gamma: f64, n_terms: usize) -> Result<TemporalWeights> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::invalid("gamma", format!("must lie in [0, 1], got {gamma}")));
    }
    let mut g = Vec::with_capacity(n_terms + 1);
    g.push(1.0);
    for k in 1..=n_terms {
        let prev = g[k - 1];
        g.push((1.0 - (gamma + 1.0) / k as f64) * prev);
    }
    let head = 1.0 + 0.5 * gamma;
    let half = 0.5 * gamma;
    let lambda = (0..=n_terms)
        .map(|k| if k == 0 { head * g[0] } else { head * g[k] - half * g[k - 1] })
        .collect();
    Ok(TemporalWeights { gamma, g, lambda })
}

/// Lag weights `μ_k` of the time discretisation for a fixed step `τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuSeries {
    pub mu: Vec<f64>,
    pub tau: f64,
}

impl MuSeries {
    /// `μ_{k-1} - μ_k` for `k = 1..len`, index `k - 1` in the result.
    pub fn differences(&self) -> Vec<f64> {
        self.mu.windows(2).map(|w| w[0] - w[1]).collect()
    }

    pub fn mu0(&self) -> f64 {
        self.mu[0]
    }
}

/// `μ_k = Δα Σ_l c_l ω(α_l) τ^{-γ_l} λ_k^{(γ_l)}` for `k = 0..=n_terms`.
pub fn mu_series(rule: &QuadratureRule, tau: f64, n_terms: usize) -> Result<MuSeries> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::invalid("tau", format!("must be positive, got {tau}")));
    }
    let mut mu = vec![0.0; n_terms + 1];
    for ((&alpha, &c), &w) in rule.nodes().iter().zip(rule.weights()).zip(rule.omega_values()) {
        if w == 0.0 {
            continue;
        }
        // α_{2J} is stored as exactly 2.0, so γ never leaves [0, 1].
        let gamma = (alpha - 1.0).clamp(0.0, 1.0);
        let scale = rule.delta_alpha() * c * w * tau.powf(-gamma);
        let tw = temporal_weights(gamma, n_terms)?;
        for (m, l) in mu.iter_mut().zip(&tw.lambda) {
            *m += scale * l;
        }
    }
    Ok(MuSeries { mu, tau })
}

/// Fractional centred-difference weights `ĝ_k^{(β)}`, `k ≥ 0`; the stencil
/// is symmetric so `ĝ_{-k} = ĝ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RieszStencil {
    pub beta: f64,
    pub g_hat: Vec<f64>,
}

impl RieszStencil {
    /// `ĝ_0 + 2 Σ_{k=1}^{K} ĝ_k` for every `K` the stencil covers.
    pub fn partial_sums(&self) -> Vec<f64> {
        let mut acc = self.g_hat[0];
        let mut out = Vec::with_capacity(self.g_hat.len());
        out.push(acc);
        for g in &self.g_hat[1..] {
            acc += 2.0 * g;
            out.push(acc);
        }
        out
    }
}

/// `Γ(β+1) / Γ(β/2+1)^2`.
pub fn riesz_leading(beta: f64) -> f64 {
    let h = libm::tgamma(0.5 * beta + 1.0);
    libm::tgamma(beta + 1.0) / (h * h)
}

/// Stencil weights `ĝ_0..=ĝ_{n_terms}` for `1 < β ≤ 2`.
pub fn riesz_stencil(beta: f64, n_terms: usize) -> Result<RieszStencil> {
    if !(beta > 1.0 && beta <= 2.0) {
        return Err(Error::invalid("beta", format!("must lie in (1, 2], got {beta}")));
    }
    let mut g_hat = Vec::with_capacity(n_terms + 1);
    g_hat.push(riesz_leading(beta));
    for k in 1..=n_terms {
        let prev = g_hat[k - 1];
        g_hat.push((1.0 - (beta + 1.0) / (0.5 * beta + k as f64)) * prev);
    }
    Ok(RieszStencil { beta, g_hat })
}
