//! Discrete-time restricted VAR(1) for log excess returns and the log
//! dividend-price ratio:
//!
//! ```text
//! r_{t+1} = a_r + b_r z_t + e^r_{t+1}
//! z_{t+1} = a_z + b_z z_t + e^z_{t+1}
//! ```
//!
//! with `(e^r, e^z)` jointly Gaussian. Path simulation draws from ChaCha8,
//! seeded with the user seed via `seed_from_u64` and switched to stream `i`
//! for path `i`, so every path is reproducible independently of how the
//! batch is split across threads. Standard normals come from the
//! `rand_distr::StandardNormal` ziggurat sampler, two per quarter in the
//! order (return shock, predictor shock).

use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quarterly VAR(1) estimates plus the quarterly risk-free rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteVarParams {
    pub rf_quarterly: f64,
    pub a_r: f64,
    pub b_r: f64,
    pub a_z: f64,
    pub b_z: f64,
    pub var_r: f64,
    pub var_z: f64,
    pub cov_rz: f64,
}

impl Default for DiscreteVarParams {
    fn default() -> Self {
        Self::brandt()
    }
}

impl DiscreteVarParams {
    /// CRSP quarterly estimates (1986–1995) of Brandt, Goyal, Santa-Clara
    /// and Stroud, the running example of the tables.
    pub const fn brandt() -> Self {
        Self {
            rf_quarterly: 0.015,
            a_r: 0.227,
            b_r: 0.060,
            a_z: -0.155,
            b_z: 0.958,
            var_r: 0.0060,
            var_z: 0.0049,
            cov_rz: -0.0051,
        }
    }

    /// Checks that the VAR is a well-defined stationary Gaussian model:
    /// finite fields, positive innovation variances, a valid covariance and
    /// `|b_z| < 1`. Sign restrictions on the slopes are left to
    /// [`validate`](Self::validate).
    pub fn check_model(&self) -> Result<()> {
        let fields = [
            ("rf_quarterly", self.rf_quarterly),
            ("a_r", self.a_r),
            ("b_r", self.b_r),
            ("a_z", self.a_z),
            ("b_z", self.b_z),
            ("var_r", self.var_r),
            ("var_z", self.var_z),
            ("cov_rz", self.cov_rz),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(invalid(format!("{name} is not finite")));
        }
        if self.var_r <= 0.0 {
            return Err(invalid(format!("var_r must be positive, got {}", self.var_r)));
        }
        if self.var_z <= 0.0 {
            return Err(invalid(format!("var_z must be positive, got {}", self.var_z)));
        }
        if self.cov_rz * self.cov_rz > self.var_r * self.var_z {
            return Err(invalid(format!(
                "covariance: cov_rz^2 = {:e} exceeds var_r*var_z = {:e}",
                self.cov_rz * self.cov_rz,
                self.var_r * self.var_z
            )));
        }
        if self.b_z.abs() >= 1.0 {
            return Err(invalid(format!("nonstationary predictor: |b_z| = {} >= 1", self.b_z.abs())));
        }
        Ok(())
    }

    /// Full invariant check, including the positive slopes the continuous
    /// parameter recovery requires.
    pub fn validate(self) -> Result<Self> {
        self.check_model()?;
        if self.b_r <= 0.0 {
            return Err(invalid(format!("b_r must be positive, got {}", self.b_r)));
        }
        if self.b_z <= 0.0 {
            return Err(invalid(format!("b_z must be positive, got {}", self.b_z)));
        }
        Ok(self)
    }

    /// Stationary AR(1) moments of the predictor.
    pub fn z_unconditional(&self) -> Result<StationaryMoments> {
        self.check_model()?;
        Ok(StationaryMoments { mean: self.a_z / (1.0 - self.b_z), variance: self.var_z / (1.0 - self.b_z * self.b_z) })
    }

    /// Lower-triangular factor `L` of the innovation covariance, `L L' = Σ`,
    /// as `(l11, l21, l22)`.
    pub fn innovation_factor(&self) -> (f64, f64, f64) {
        let l11 = self.var_r.sqrt();
        let l21 = self.cov_rz / l11;
        let l22 = (self.var_z - l21 * l21).max(0.0).sqrt();
        (l11, l21, l22)
    }
}

fn invalid(reason: String) -> Error {
    Error::InvalidParams(reason)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryMoments {
    pub mean: f64,
    pub variance: f64,
}

/// How innovations are drawn during simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Innovations {
    #[default]
    Gaussian,
    /// All shocks are exactly zero; paths follow the noiseless recursion.
    Zero,
}

/// Simulated excess log returns and predictor values.
///
/// Storage is time-major: all paths for quarter `t` are contiguous, so
/// `excess_at(t)` and `predictor_at(t)` are plain slices.
#[derive(Debug, Clone, PartialEq)]
pub struct PathBatch {
    n_paths: usize,
    horizon: usize,
    seed: u64,
    excess_log_returns: Vec<f64>,
    predictor: Vec<f64>,
}

impl PathBatch {
    /// Builds a batch from time-major columns. `excess[t][i]` is path `i`'s
    /// excess log return over quarter `t`; `predictor[t][i]` is `z_t`.
    pub fn from_columns(excess: Vec<Vec<f64>>, predictor: Vec<Vec<f64>>, seed: u64) -> Result<Self> {
        let horizon = excess.len();
        if horizon == 0 {
            return Err(Error::NonPositiveCount { what: "horizon", value: 0 });
        }
        let n_paths = excess[0].len();
        if n_paths == 0 {
            return Err(Error::NonPositiveCount { what: "n_paths", value: 0 });
        }
        if predictor.len() != horizon + 1 {
            return Err(invalid(format!("predictor needs {} columns, got {}", horizon + 1, predictor.len())));
        }
        if excess.iter().chain(predictor.iter()).any(|c| c.len() != n_paths) {
            return Err(invalid("ragged path columns".into()));
        }
        let batch = Self { n_paths, horizon, seed, excess_log_returns: excess.concat(), predictor: predictor.concat() };
        batch.check()?;
        Ok(batch)
    }

    fn check(&self) -> Result<()> {
        if self.excess_log_returns.iter().chain(self.predictor.iter()).any(|v| !v.is_finite()) {
            return Err(invalid("path batch contains non-finite values".into()));
        }
        let z0 = self.predictor_at(0);
        if z0.iter().any(|&z| z != z0[0]) {
            return Err(invalid("initial predictor must be identical on every path".into()));
        }
        Ok(())
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn initial_predictor(&self) -> f64 {
        self.predictor[0]
    }

    /// Excess log returns of every path over quarter `t` (from `t` to `t+1`).
    pub fn excess_at(&self, t: usize) -> &[f64] {
        &self.excess_log_returns[t * self.n_paths..(t + 1) * self.n_paths]
    }

    /// Predictor `z_t` on every path, `t` in `0..=horizon`.
    pub fn predictor_at(&self, t: usize) -> &[f64] {
        &self.predictor[t * self.n_paths..(t + 1) * self.n_paths]
    }

    pub fn excess(&self, path: usize, t: usize) -> f64 {
        self.excess_log_returns[t * self.n_paths + path]
    }

    pub fn predictor(&self, path: usize, t: usize) -> f64 {
        self.predictor[t * self.n_paths + path]
    }

    /// CSV dump, one row per (path, quarter).
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "path,quarter,z_start,excess_log_return,z_end")?;
        for i in 0..self.n_paths {
            for t in 0..self.horizon {
                writeln!(
                    out,
                    "{},{},{:e},{:e},{:e}",
                    i,
                    t,
                    self.predictor(i, t),
                    self.excess(i, t),
                    self.predictor(i, t + 1)
                )?;
            }
        }
        Ok(())
    }
}

/// Simulates `n_paths` paths of `horizon` quarters from `z0` with Gaussian
/// innovations.
pub fn simulate_paths(
    params: &DiscreteVarParams,
    n_paths: usize,
    horizon: usize,
    z0: f64,
    seed: u64,
) -> Result<PathBatch> {
    simulate_paths_with(params, n_paths, horizon, z0, seed, Innovations::Gaussian)
}

pub fn simulate_paths_with(
    params: &DiscreteVarParams,
    n_paths: usize,
    horizon: usize,
    z0: f64,
    seed: u64,
    innovations: Innovations,
) -> Result<PathBatch> {
    params.check_model()?;
    if n_paths == 0 {
        return Err(Error::NonPositiveCount { what: "n_paths", value: n_paths });
    }
    if horizon == 0 {
        return Err(Error::NonPositiveCount { what: "horizon", value: horizon });
    }
    if !z0.is_finite() {
        return Err(invalid("initial predictor is not finite".into()));
    }

    let (l11, l21, l22) = params.innovation_factor();
    let base = ChaCha8Rng::seed_from_u64(seed);

    // Each path is written path-major into its own row, then transposed.
    let stride = 2 * horizon + 1;
    let mut rows = vec![0.0; n_paths * stride];
    rows.par_chunks_mut(stride).enumerate().for_each(|(i, row)| {
        let mut rng = base.clone();
        rng.set_stream(i as u64);
        let (returns, zs) = row.split_at_mut(horizon);
        zs[0] = z0;
        for t in 0..horizon {
            let (e_r, e_z) = match innovations {
                Innovations::Gaussian => {
                    let u1: f64 = StandardNormal.sample(&mut rng);
                    let u2: f64 = StandardNormal.sample(&mut rng);
                    (l11 * u1, l21 * u1 + l22 * u2)
                }
                Innovations::Zero => (0.0, 0.0),
            };
            let z = zs[t];
            returns[t] = params.a_r + params.b_r * z + e_r;
            zs[t + 1] = params.a_z + params.b_z * z + e_z;
        }
    });

    let mut excess_log_returns = vec![0.0; n_paths * horizon];
    let mut predictor = vec![0.0; n_paths * (horizon + 1)];
    for (i, row) in rows.chunks_exact(stride).enumerate() {
        for t in 0..horizon {
            excess_log_returns[t * n_paths + i] = row[t];
        }
        for t in 0..=horizon {
            predictor[t * n_paths + i] = row[horizon + t];
        }
    }

    let batch = PathBatch { n_paths, horizon, seed, excess_log_returns, predictor };
    batch.check()?;
    Ok(batch)
}
