//! Explicit optimal allocation for a CRRA investor who cares about terminal
//! wealth, under the Ornstein–Uhlenbeck Sharpe ratio.
//!
//! With `f(X, t) = exp(C₀ + C₁X + C₂X²/2)` the optimal share in stocks is
//!
//! ```text
//! α* = X / (γσ) + (C₁ + C₂X) ζρ / σ
//! ```
//!
//! where the first term is the myopic demand and the second the hedging
//! demand. `C₁`, `C₂` solve a Riccati system with constants
//!
//! ```text
//! a = [1 + (1−γ)(ρ²−1)] ζ²,   b = 2[(1−γ)/γ ζρ − κ],   c = (1−γ)/γ²
//! ```
//!
//! and are available in closed form whenever `D = b² − 4ac > 0` (the
//! "normal" branch, always the case for γ > 1). All time arguments here are
//! time-to-go `τ = T − t` in quarters.

use serde::{Deserialize, Serialize};

use crate::aggregation::ContinuousParams;
use crate::error::{Error, Result};

/// Denominators smaller than this are reported as singular.
pub const DENOMINATOR_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Preferences {
    /// Relative risk aversion.
    pub gamma: f64,
    /// Time discount rate. It scales the value function only and has no
    /// effect on any allocation computed here.
    pub beta: f64,
    /// Planning horizon in quarters.
    pub horizon: f64,
}

impl Preferences {
    pub fn new(gamma: f64, horizon: f64) -> Self {
        Self { gamma, beta: 0.0, horizon }
    }

    pub fn validate(self) -> Result<Self> {
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(Error::InvalidParams(format!("gamma must be positive, got {}", self.gamma)));
        }
        if !(self.horizon >= 0.0) || !self.horizon.is_finite() {
            return Err(Error::InvalidParams(format!("horizon must be non-negative, got {}", self.horizon)));
        }
        if !(self.beta >= 0.0) {
            return Err(Error::InvalidParams(format!("beta must be non-negative, got {}", self.beta)));
        }
        Ok(self)
    }
}

/// Riccati constants of the normal solution for one risk aversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalSolutionCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub discriminant: f64,
    pub delta: f64,
    pub gamma: f64,
}

pub fn riccati_coefficients(cont: &ContinuousParams, gamma: f64) -> Result<NormalSolutionCoefficients> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParams(format!("gamma must be positive, got {gamma}")));
    }
    let (zeta, rho, kappa) = (cont.zeta, cont.rho, cont.kappa);
    let one_minus = 1.0 - gamma;
    let a = (1.0 + one_minus * (rho * rho - 1.0)) * zeta * zeta;
    let b = 2.0 * (one_minus / gamma * zeta * rho - kappa);
    let c = one_minus / (gamma * gamma);
    let discriminant = b * b - 4.0 * a * c;
    if !(discriminant > 0.0) {
        return Err(Error::NonNormalRegime { discriminant });
    }
    Ok(NormalSolutionCoefficients { a, b, c, discriminant, delta: discriminant.sqrt(), gamma })
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParams(format!("time-to-go must be non-negative, got {tau}")));
    }
    Ok(())
}

/// Shared denominator `2δ − (b+δ)(1 − e^{−δτ})` and `1 − e^{−δτ}`.
fn denominator(k: &NormalSolutionCoefficients, tau: f64) -> Result<(f64, f64)> {
    let decay = -(-k.delta * tau).exp_m1();
    let den = 2.0 * k.delta - (k.b + k.delta) * decay;
    if den.abs() < DENOMINATOR_GUARD {
        return Err(Error::SingularDenominator { tau, value: den });
    }
    Ok((den, decay))
}

/// `C₂` at time-to-go `tau`.
pub fn c2_at(k: &NormalSolutionCoefficients, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    if tau == 0.0 {
        return Ok(0.0);
    }
    let (den, decay) = denominator(k, tau)?;
    Ok(2.0 * k.c * decay / den)
}

/// `C₁` at time-to-go `tau`.
pub fn c1_at(k: &NormalSolutionCoefficients, cont: &ContinuousParams, tau: f64) -> Result<f64> {
    check_tau(tau)?;
    if tau == 0.0 {
        return Ok(0.0);
    }
    let (den, _) = denominator(k, tau)?;
    let half = -(-k.delta * tau / 2.0).exp_m1();
    Ok(4.0 * k.c * cont.kappa * cont.theta / k.delta * half * half / den)
}

/// Optimal stock allocation split into its two demands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AllocationDecomposition {
    pub myopic: f64,
    pub hedging: f64,
    pub total: f64,
    /// `total` clipped to [0, 1] (no borrowing, no short sales).
    pub constrained: f64,
    pub c1: f64,
    pub c2: f64,
}

impl AllocationDecomposition {
    pub fn component(&self, which: Component) -> f64 {
        match which {
            Component::Myopic => self.myopic,
            Component::Hedging => self.hedging,
            Component::Total => self.total,
            Component::Constrained => self.constrained,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Myopic,
    Hedging,
    Total,
    Constrained,
}

/// Optimal allocation at Sharpe ratio `x` with `tau` quarters to go.
pub fn allocation(cont: &ContinuousParams, prefs: &Preferences, x: f64, tau: f64) -> Result<AllocationDecomposition> {
    let prefs = prefs.validate()?;
    check_tau(tau)?;
    if tau > prefs.horizon {
        return Err(Error::InvalidParams(format!("time-to-go {tau} exceeds the horizon {}", prefs.horizon)));
    }
    if !x.is_finite() {
        return Err(Error::InvalidParams("Sharpe ratio is not finite".into()));
    }
    let myopic = x / (prefs.gamma * cont.sigma);
    let (c1, c2, hedging) = if prefs.gamma == 1.0 {
        (0.0, 0.0, 0.0)
    } else {
        let k = riccati_coefficients(cont, prefs.gamma)?;
        let c1 = c1_at(&k, cont, tau)?;
        let c2 = c2_at(&k, tau)?;
        (c1, c2, (c1 + c2 * x) * cont.zeta / cont.sigma * cont.rho)
    };
    let total = myopic + hedging;
    Ok(AllocationDecomposition { myopic, hedging, total, constrained: total.clamp(0.0, 1.0), c1, c2 })
}

/// Optimal allocation with weights restricted to [0, 1].
pub fn constrained_allocation(cont: &ContinuousParams, prefs: &Preferences, x: f64, tau: f64) -> Result<f64> {
    allocation(cont, prefs, x, tau).map(|a| a.constrained)
}

/// ∂α*/∂X = 1/(γσ) + C₂ζρ/σ, the sensitivity of the unconstrained
/// allocation to the Sharpe ratio.
pub fn allocation_sensitivity(cont: &ContinuousParams, gamma: f64, tau: f64) -> Result<f64> {
    let myopic = 1.0 / (gamma * cont.sigma);
    if gamma == 1.0 {
        return Ok(myopic);
    }
    let k = riccati_coefficients(cont, gamma)?;
    Ok(myopic + c2_at(&k, tau)? * cont.zeta * cont.rho / cont.sigma)
}

/// Closed-form allocation along the expected Sharpe-ratio path
/// `E[X_t] = θ + (x0 − θ)e^{−κt}` for dates `t = 0..=horizon`, with
/// `horizon − t` quarters to go at date `t`.
pub fn expected_path(
    cont: &ContinuousParams,
    gamma: f64,
    x0: f64,
    horizon: usize,
) -> Result<Vec<AllocationDecomposition>> {
    let prefs = Preferences::new(gamma, horizon as f64);
    (0..=horizon)
        .map(|t| {
            let x = cont.theta + (x0 - cont.theta) * (-cont.kappa * t as f64).exp();
            allocation(cont, &prefs, x, (horizon - t) as f64)
        })
        .collect()
}

/// Which argument a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sweep {
    /// Vary γ at a fixed Sharpe ratio and horizon.
    Gamma { x: f64, horizon: f64 },
    /// Vary the horizon `T` (evaluated at `t = 0`) at fixed γ and Sharpe ratio.
    Horizon { gamma: f64, x: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub arg: f64,
    pub allocation: AllocationDecomposition,
}

pub fn sweep(cont: &ContinuousParams, kind: Sweep, grid: &[f64]) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::InvalidParams("sweep grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParams("sweep grid must be strictly ascending".into()));
    }
    grid.iter()
        .map(|&arg| {
            let allocation = match kind {
                Sweep::Gamma { x, horizon } => allocation(cont, &Preferences::new(arg, horizon), x, horizon)?,
                Sweep::Horizon { gamma, x } => allocation(cont, &Preferences::new(gamma, arg), x, arg)?,
            };
            Ok(SweepRow { arg, allocation })
        })
        .collect()
}

/// Plot-ready `(argument, value)` pairs for one demand component.
pub fn sweep_pairs(rows: &[SweepRow], which: Component) -> Vec<(f64, f64)> {
    rows.iter().map(|r| (r.arg, r.allocation.component(which))).collect()
}
