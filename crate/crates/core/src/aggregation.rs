//! Bridge between the quarterly VAR(1) and the continuous-time model
//!
//! ```text
//! dP/P = (σ X + r) dt + σ dB^p
//! dX   = κ(θ − X) dt + ζ dB^x,      dB^p dB^x = ρ dt
//! ```
//!
//! where `X` is the Sharpe ratio. Time is measured in quarters throughout.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal;
use crate::var_kernel::DiscreteVarParams;

/// Continuous-time opportunity set, per-quarter units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuousParams {
    pub r: f64,
    pub theta: f64,
    pub kappa: f64,
    pub sigma: f64,
    pub zeta: f64,
    pub rho: f64,
}

impl ContinuousParams {
    pub fn validate(self) -> Result<Self> {
        let all = [self.r, self.theta, self.kappa, self.sigma, self.zeta, self.rho];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("continuous parameters must be finite".into()));
        }
        if self.sigma <= 0.0 {
            return Err(Error::InvalidParams(format!("sigma must be positive, got {}", self.sigma)));
        }
        if self.zeta < 0.0 {
            return Err(Error::InvalidParams(format!("zeta must be non-negative, got {}", self.zeta)));
        }
        if self.kappa <= 0.0 {
            return Err(Error::InvalidParams(format!("kappa must be positive, got {}", self.kappa)));
        }
        if !(-1.0..=1.0).contains(&self.rho) {
            return Err(Error::InvalidParams(format!("rho must lie in [-1, 1], got {}", self.rho)));
        }
        Ok(self)
    }

    /// Stationary variance of the Ornstein–Uhlenbeck Sharpe ratio, ζ²/(2κ).
    pub fn ou_stationary_variance(&self) -> f64 {
        self.zeta * self.zeta / (2.0 * self.kappa)
    }
}

/// Recovers the continuous-time parameters implied by the quarterly VAR,
/// matching the two systems at a one-quarter sampling interval.
pub fn recover_continuous(params: &DiscreteVarParams) -> Result<ContinuousParams> {
    let p = params.validate()?;
    let sigma_r = p.var_r.sqrt();
    let sigma_z = p.var_z.sqrt();
    let theta = p.a_z * p.b_r / (sigma_r * (1.0 - p.b_z)) + (p.a_r + p.var_r / 2.0) / sigma_r;
    ContinuousParams {
        r: p.rf_quarterly,
        theta,
        kappa: -p.b_z.ln(),
        sigma: sigma_r,
        zeta: p.b_r * sigma_z / sigma_r,
        rho: p.cov_rz / (sigma_r * sigma_z),
    }
    .validate()
}

/// Unconditional normal law of the Sharpe ratio observed at quarter ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XDistribution {
    pub mean: f64,
    pub variance: f64,
}

impl XDistribution {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// Pushes the stationary predictor distribution through the affine
/// z → X map. The variance is `b_r² σ_z² / ((1 − b_z²) σ_r²)`, which is not
/// the OU stationary variance ζ²/(2κ); the two agree only to first order in κ.
pub fn x_distribution(params: &DiscreteVarParams) -> Result<XDistribution> {
    let cont = recover_continuous(params)?;
    let p = params;
    Ok(XDistribution { mean: cont.theta, variance: p.b_r * p.b_r * p.var_z / ((1.0 - p.b_z * p.b_z) * p.var_r) })
}

/// `p`-th percentile (`p` in percent) of the Sharpe-ratio distribution.
pub fn x_percentile(dist: &XDistribution, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 100.0) {
        return Err(Error::InvalidParams(format!("percentile must lie in (0, 100), got {p}")));
    }
    if !(dist.variance >= 0.0) || !dist.mean.is_finite() || !dist.variance.is_finite() {
        return Err(Error::InvalidParams(format!("invalid distribution N({}, {})", dist.mean, dist.variance)));
    }
    if p == 50.0 {
        return Ok(dist.mean);
    }
    if dist.variance == 0.0 {
        return Err(Error::DegenerateDistribution { percentile: p });
    }
    Ok(dist.mean + normal::inverse_cdf(p / 100.0) * dist.std_dev())
}

/// Sharpe ratio implied by a predictor value: `σ/2 + (a_r + b_r z)/σ`, σ = σ_r.
pub fn z_to_x(params: &DiscreteVarParams, z: f64) -> f64 {
    let sigma = params.var_r.sqrt();
    sigma / 2.0 + (params.a_r + params.b_r * z) / sigma
}

/// Inverse of [`z_to_x`]. Requires `b_r != 0`.
pub fn x_to_z(params: &DiscreteVarParams, x: f64) -> f64 {
    let sigma = params.var_r.sqrt();
    (sigma * (x - sigma / 2.0) - params.a_r) / params.b_r
}

/// Exact discretization of the continuous system over a step `dt`.
///
/// The state is `s = (ln P_t − r t, X_t)`, the discounted log price level
/// and the Sharpe ratio, so `s_{n+1} = intercept + transition · s_n + U`
/// with `Var(U) = [[var_return, cov_x_return], [cov_x_return, var_x]]`.
/// `var_return` is also the variance of the log return over the step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactMoments {
    pub dt: f64,
    pub var_x: f64,
    pub cov_x_return: f64,
    pub var_return: f64,
    pub transition: [[f64; 2]; 2],
    pub intercept: [f64; 2],
}

pub fn exact_moments(cont: &ContinuousParams, dt: f64) -> Result<ExactMoments> {
    let c = cont.validate()?;
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParams(format!("dt must be positive and finite, got {dt}")));
    }
    let (sigma, zeta, kappa, rho, theta) = (c.sigma, c.zeta, c.kappa, c.rho, c.theta);
    // 1 − e^{−κΔt} and 1 − e^{−2κΔt}, without cancellation for small κΔt.
    let d1 = -(-kappa * dt).exp_m1();
    let d2 = -(-2.0 * kappa * dt).exp_m1();
    let k2 = kappa * kappa;
    let k3 = k2 * kappa;
    let (s2, z2) = (sigma * sigma, zeta * zeta);

    let var_x = z2 * d2 / (2.0 * kappa);
    let cov_x_return = rho * sigma * zeta / kappa * d1 + sigma * z2 / k2 * d1 - sigma * z2 / (2.0 * k2) * d2;
    let var_return = (s2 + 2.0 * rho * zeta * s2 / kappa + z2 * s2 / k2) * dt
        - 2.0 * rho * zeta * s2 / k2 * d1
        - 2.0 * z2 * s2 / k3 * d1
        + z2 * s2 / (2.0 * k3) * d2;

    Ok(ExactMoments {
        dt,
        var_x,
        cov_x_return,
        var_return,
        transition: [[1.0, d1 * sigma / kappa], [0.0, (-kappa * dt).exp()]],
        intercept: [(-s2 / 2.0 + sigma * theta) * dt - d1 * sigma * theta / kappa, d1 * theta],
    })
}

/// Draws from the continuous system over one interval, by Euler–Maruyama.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousSample {
    /// `X_dt` per draw.
    pub x_end: Vec<f64>,
    /// `ln P_dt − ln P_0` per draw.
    pub log_return: Vec<f64>,
}

/// Simulates `n_draws` independent copies of `(X_dt, Δ ln P)` from `x0` with
/// `substeps` Euler–Maruyama steps. Draw `i` uses ChaCha8 stream `i`.
///
/// This integrates the SDEs directly and shares no formula with
/// [`exact_moments`]; its discretization bias is O(dt / substeps).
pub fn simulate_continuous(
    cont: &ContinuousParams,
    dt: f64,
    x0: f64,
    n_draws: usize,
    substeps: usize,
    seed: u64,
) -> Result<ContinuousSample> {
    let c = cont.validate()?;
    if !(dt > 0.0) {
        return Err(Error::InvalidParams(format!("dt must be positive, got {dt}")));
    }
    if n_draws == 0 {
        return Err(Error::NonPositiveCount { what: "n_draws", value: 0 });
    }
    if substeps == 0 {
        return Err(Error::NonPositiveCount { what: "substeps", value: 0 });
    }
    let h = dt / substeps as f64;
    let sqrt_h = h.sqrt();
    let orth = (1.0 - c.rho * c.rho).max(0.0).sqrt();
    let base = ChaCha8Rng::seed_from_u64(seed);

    let draws: Vec<(f64, f64)> = (0..n_draws)
        .into_par_iter()
        .map(|i| {
            let mut rng = base.clone();
            rng.set_stream(i as u64);
            let mut x = x0;
            let mut log_p = 0.0;
            for _ in 0..substeps {
                let u_p: f64 = StandardNormal.sample(&mut rng);
                let u_z: f64 = StandardNormal.sample(&mut rng);
                let db_p = sqrt_h * u_p;
                let db_x = sqrt_h * (c.rho * u_p + orth * u_z);
                log_p += (c.r + c.sigma * x - 0.5 * c.sigma * c.sigma) * h + c.sigma * db_p;
                x += c.kappa * (c.theta - x) * h + c.zeta * db_x;
            }
            (x, log_p)
        })
        .collect();

    let (x_end, log_return) = draws.into_iter().unzip();
    Ok(ContinuousSample { x_end, log_return })
}
