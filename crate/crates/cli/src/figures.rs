//! Plot data for the three figures, one `x y` pair per line.

use std::fmt::Write as _;

use sharpe_horizon::aggregation::{recover_continuous, x_distribution, x_percentile, ContinuousParams};
use sharpe_horizon::closed_form::{allocation, expected_path, AllocationDecomposition, Preferences};
use sharpe_horizon::Error;

use crate::config::RunConfig;
use crate::error::Result;
use crate::format::sig6;

/// Risk-aversion grid of the demand-versus-γ figure: 1 to 20 in steps of 0.1.
pub fn gamma_grid() -> Vec<f64> {
    (10..=200).map(|i| f64::from(i) / 10.0).collect()
}

/// Horizon grid of the allocation-versus-T figure: 0 to `max` in half quarters.
pub fn horizon_grid(max: f64) -> Vec<f64> {
    let n = (max * 2.0).floor() as u32;
    (0..=n).map(|i| f64::from(i) / 2.0).collect()
}

/// A named data series.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub file_name: String,
    pub points: Vec<(f64, f64)>,
}

impl Series {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for &(x, y) in &self.points {
            let _ = writeln!(out, "{} {}", sig6(x), sig6(y));
        }
        out
    }
}

/// Points outside the normal-solution regime are left out of a curve.
fn point(cont: &ContinuousParams, gamma: f64, horizon: f64, x: f64) -> Result<Option<AllocationDecomposition>> {
    match allocation(cont, &Preferences::new(gamma, horizon), x, horizon) {
        Ok(a) => Ok(Some(a)),
        Err(Error::NonNormalRegime { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn label(v: f64) -> String {
    format!("{v}")
}

/// Hedging demand against γ at X = θ, one file per horizon, plus the
/// horizon-free myopic demand.
pub fn demand_vs_gamma(cfg: &RunConfig) -> Result<Vec<Series>> {
    let cont = recover_continuous(&cfg.params)?;
    let grid = gamma_grid();
    let mut out = Vec::new();
    for &horizon in &cfg.horizons {
        let mut points = Vec::new();
        for &g in &grid {
            if let Some(a) = point(&cont, g, horizon, cont.theta)? {
                points.push((g, a.hedging));
            }
        }
        out.push(Series { file_name: format!("explicit-solution-hd-wrt-gamma-{}.txt", label(horizon)), points });
    }
    let myopic = grid.iter().map(|&g| (g, cont.theta / (g * cont.sigma))).collect();
    out.push(Series { file_name: "explicit-solution-md-wrt-gamma.txt".into(), points: myopic });
    Ok(out)
}

/// Constrained allocation (percent) against the horizon, per γ and percentile.
pub fn allocation_vs_horizon(cfg: &RunConfig) -> Result<Vec<Series>> {
    let cont = recover_continuous(&cfg.params)?;
    let dist = x_distribution(&cfg.params)?;
    let max = cfg.horizons.iter().copied().fold(0.0, f64::max);
    let grid = horizon_grid(max);
    let mut out = Vec::new();
    for &gamma in &cfg.gammas {
        for &p in &cfg.percentiles {
            let x = x_percentile(&dist, p)?;
            let mut points = Vec::new();
            for &t in &grid {
                if let Some(a) = point(&cont, gamma, t, x)? {
                    points.push((t, a.constrained * 100.0));
                }
            }
            out.push(Series {
                file_name: format!("explicit-solution-wrt-T-{}-{:.6}.txt", label(gamma), p / 100.0),
                points,
            });
        }
    }
    Ok(out)
}

pub const PATH_FILE: &str = "explicit-solution-path.txt";
pub const STAIRCASE_FILE: &str = "grid-search-path.txt";

/// Closed-form allocation along the expected Sharpe-ratio path.
pub fn closed_form_path(cfg: &RunConfig, gamma: f64, horizon: usize, percentile: f64) -> Result<Series> {
    let cont = recover_continuous(&cfg.params)?;
    let x0 = x_percentile(&x_distribution(&cfg.params)?, percentile)?;
    let path = expected_path(&cont, gamma, x0, horizon)?;
    let points = path.iter().enumerate().map(|(t, a)| (t as f64, a.total)).collect();
    Ok(Series { file_name: PATH_FILE.into(), points })
}

/// Step function of an open-loop sequence: `(t, α_t)` for each quarter and a
/// closing point at the horizon, so x stays strictly increasing.
pub fn staircase(sequence: &[f64]) -> Series {
    let mut points: Vec<(f64, f64)> = sequence.iter().enumerate().map(|(t, &a)| (t as f64, a)).collect();
    if let Some(&last) = sequence.last() {
        points.push((sequence.len() as f64, last));
    }
    Series { file_name: STAIRCASE_FILE.into(), points }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strictly_increasing(s: &Series) -> bool {
        s.points.windows(2).all(|w| w[0].0 < w[1].0)
    }

    #[test]
    fn gamma_figure_files() {
        let series = demand_vs_gamma(&RunConfig::default()).unwrap();
        let names: Vec<_> = series.iter().map(|s| s.file_name.as_str()).collect();
        assert_eq!(
            names,
            [
                "explicit-solution-hd-wrt-gamma-10.txt",
                "explicit-solution-hd-wrt-gamma-20.txt",
                "explicit-solution-hd-wrt-gamma-30.txt",
                "explicit-solution-hd-wrt-gamma-40.txt",
                "explicit-solution-md-wrt-gamma.txt",
            ]
        );
        assert!(series.iter().all(strictly_increasing));
        // Log utility has no hedging demand.
        assert_eq!(series[0].points[0], (1.0, 0.0));
    }

    #[test]
    fn horizon_figure_files() {
        let series = allocation_vs_horizon(&RunConfig::default()).unwrap();
        assert_eq!(series.len(), 10);
        assert_eq!(series[0].file_name, "explicit-solution-wrt-T-5-0.100000.txt");
        assert_eq!(series[9].file_name, "explicit-solution-wrt-T-15-0.900000.txt");
        let last = series[9].points.last().unwrap();
        assert_eq!(last.0, 40.0);
        assert!((last.1 - 98.3).abs() < 0.1);
        assert!(series.iter().all(strictly_increasing));
    }

    #[test]
    fn staircase_closes_at_horizon() {
        let s = staircase(&[0.05, 0.1]);
        assert_eq!(s.points, vec![(0.0, 0.05), (1.0, 0.1), (2.0, 0.1)]);
        assert_eq!(s.render(), "0 0.05\n1 0.1\n2 0.1\n");
    }
}
