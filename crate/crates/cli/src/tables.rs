//! Allocation tables over (horizon, risk aversion, Sharpe-ratio percentile).

use std::fmt::Write as _;

use serde::Serialize;
use sharpe_horizon::aggregation::{recover_continuous, x_distribution, x_percentile, ContinuousParams};
use sharpe_horizon::closed_form::{allocation, AllocationDecomposition, Preferences};
use sharpe_horizon::Error;

use crate::config::RunConfig;
use crate::error::Result;
use crate::format::pct1;
use crate::reference::gs_allocation_pct;

/// Demand decomposition for one cell, in fractions of wealth. `None` when
/// the risk aversion falls outside the normal-solution regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DemandCell {
    pub horizon: f64,
    pub gamma: f64,
    pub percentile: f64,
    pub x: f64,
    pub myopic: Option<f64>,
    pub hedging: Option<f64>,
}

/// Constrained allocation (fraction) against the reference value (percent).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonCell {
    pub horizon: f64,
    pub gamma: f64,
    pub percentile: f64,
    pub x: f64,
    pub constrained: Option<f64>,
    pub reference_pct: Option<f64>,
}

impl ComparisonCell {
    /// Constrained minus reference, in percentage points, from unrounded values.
    pub fn delta_pct(&self) -> Option<f64> {
        Some(self.constrained? * 100.0 - self.reference_pct?)
    }
}

fn cell_allocation(
    cont: &ContinuousParams,
    gamma: f64,
    horizon: f64,
    x: f64,
) -> Result<Option<AllocationDecomposition>> {
    match allocation(cont, &Preferences::new(gamma, horizon), x, horizon) {
        Ok(a) => Ok(Some(a)),
        Err(Error::NonNormalRegime { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn percentile_points(cfg: &RunConfig) -> Result<Vec<(f64, f64)>> {
    let dist = x_distribution(&cfg.params)?;
    cfg.percentiles.iter().map(|&p| Ok((p, x_percentile(&dist, p)?))).collect()
}

/// Cells ordered by horizon, then risk aversion, then percentile.
pub fn demand_table(cfg: &RunConfig) -> Result<Vec<DemandCell>> {
    let cont = recover_continuous(&cfg.params)?;
    let points = percentile_points(cfg)?;
    let mut cells = Vec::new();
    for &horizon in &cfg.horizons {
        for &gamma in &cfg.gammas {
            for &(percentile, x) in &points {
                let a = cell_allocation(&cont, gamma, horizon, x)?;
                cells.push(DemandCell {
                    horizon,
                    gamma,
                    percentile,
                    x,
                    myopic: a.map(|a| a.myopic),
                    hedging: a.map(|a| a.hedging),
                });
            }
        }
    }
    Ok(cells)
}

pub fn comparison_table(cfg: &RunConfig) -> Result<Vec<ComparisonCell>> {
    let cont = recover_continuous(&cfg.params)?;
    let points = percentile_points(cfg)?;
    let mut cells = Vec::new();
    for &horizon in &cfg.horizons {
        for &gamma in &cfg.gammas {
            for &(percentile, x) in &points {
                let a = cell_allocation(&cont, gamma, horizon, x)?;
                cells.push(ComparisonCell {
                    horizon,
                    gamma,
                    percentile,
                    x,
                    constrained: a.map(|a| a.constrained),
                    reference_pct: gs_allocation_pct(horizon, gamma, percentile),
                });
            }
        }
    }
    Ok(cells)
}

fn show_fraction(v: Option<f64>, raw: bool) -> String {
    match v {
        None => "n/a".into(),
        Some(v) if raw => format!("{}", v * 100.0),
        Some(v) => pct1(v),
    }
}

fn show_percent(v: Option<f64>, raw: bool) -> String {
    show_fraction(v.map(|p| p / 100.0), raw)
}

fn csv_field(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn demand_csv(cells: &[DemandCell], raw: bool) -> String {
    let mut out = String::from("horizon,gamma,percentile,x,myopic_pct,hedging_pct\n");
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            c.horizon,
            c.gamma,
            c.percentile,
            c.x,
            csv_pct(c.myopic, raw),
            csv_pct(c.hedging, raw)
        );
    }
    out
}

pub fn comparison_csv(cells: &[ComparisonCell], raw: bool) -> String {
    let mut out = String::from("horizon,gamma,percentile,x,lt_pct,gs_pct,delta_pct\n");
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            c.horizon,
            c.gamma,
            c.percentile,
            c.x,
            csv_pct(c.constrained, raw),
            csv_field(c.reference_pct),
            csv_pct(c.delta_pct().map(|d| d / 100.0), raw)
        );
    }
    out
}

fn csv_pct(v: Option<f64>, raw: bool) -> String {
    match v {
        None => String::new(),
        Some(v) if raw => (v * 100.0).to_string(),
        Some(v) => pct1(v),
    }
}

const W: usize = 8;

struct Layout<'a> {
    gammas: &'a [f64],
    percentiles: &'a [f64],
}

impl Layout<'_> {
    fn header(&self, out: &mut String, title: &str, xs: &[f64]) {
        let _ = writeln!(out, "{title}");
        let block = W * self.percentiles.len();
        let mut line = format!("{:>4} {:>5} ", "", "");
        for g in self.gammas {
            let _ = write!(line, " |{:^block$}", format!("gamma = {g}"));
        }
        let _ = writeln!(out, "{}", line.trim_end());
        let mut line = format!("{:>4} {:>5} ", "T", "");
        for _ in self.gammas {
            line.push_str(" |");
            for p in self.percentiles {
                let _ = write!(line, "{:>W$}", format!("p{p}"));
            }
        }
        let _ = writeln!(out, "{line}");
        let mut line = format!("{:>4} {:>5} ", "", "X");
        for _ in self.gammas {
            line.push_str(" |");
            for x in xs {
                let _ = write!(line, "{:>W$.3}", x);
            }
        }
        let _ = writeln!(out, "{line}");
    }

    /// One text row; `value(gamma_index, percentile_index)`.
    fn row(&self, out: &mut String, horizon: Option<f64>, label: &str, value: impl Fn(usize, usize) -> String) {
        let t = horizon.map(|h| h.to_string()).unwrap_or_default();
        let mut line = format!("{t:>4} {label:>5} ");
        for g in 0..self.gammas.len() {
            line.push_str(" |");
            for p in 0..self.percentiles.len() {
                let _ = write!(line, "{:>W$}", value(g, p));
            }
        }
        let _ = writeln!(out, "{line}");
    }
}

pub fn demand_text(cfg: &RunConfig, cells: &[DemandCell], raw: bool) -> String {
    let layout = Layout { gammas: &cfg.gammas, percentiles: &cfg.percentiles };
    let (ng, np) = (cfg.gammas.len(), cfg.percentiles.len());
    let xs: Vec<f64> = cells.iter().take(np).map(|c| c.x).collect();
    let mut out = String::new();
    layout.header(&mut out, "Myopic (MD) and hedging (HD) demand, percent of wealth", &xs);
    for (h, &horizon) in cfg.horizons.iter().enumerate() {
        let at = |g: usize, p: usize| &cells[(h * ng + g) * np + p];
        layout.row(&mut out, Some(horizon), "MD", |g, p| show_fraction(at(g, p).myopic, raw));
        layout.row(&mut out, None, "HD", |g, p| show_fraction(at(g, p).hedging, raw));
    }
    out
}

pub fn comparison_text(cfg: &RunConfig, cells: &[ComparisonCell], raw: bool) -> String {
    let layout = Layout { gammas: &cfg.gammas, percentiles: &cfg.percentiles };
    let (ng, np) = (cfg.gammas.len(), cfg.percentiles.len());
    let xs: Vec<f64> = cells.iter().take(np).map(|c| c.x).collect();
    let mut out = String::new();
    layout.header(
        &mut out,
        "Constrained allocation to stocks (LT), discrete-time benchmark (GS) and LT - GS, percent",
        &xs,
    );
    for (h, &horizon) in cfg.horizons.iter().enumerate() {
        let at = |g: usize, p: usize| &cells[(h * ng + g) * np + p];
        layout.row(&mut out, Some(horizon), "LT", |g, p| show_fraction(at(g, p).constrained, raw));
        layout.row(&mut out, None, "GS", |g, p| show_percent(at(g, p).reference_pct, raw));
        layout.row(&mut out, None, "Δ", |g, p| show_percent(at(g, p).delta_pct(), raw));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demand_cells_follow_grid_order() {
        let cfg = RunConfig::default();
        let cells = demand_table(&cfg).unwrap();
        assert_eq!(cells.len(), 4 * 2 * 5);
        assert_eq!((cells[7].horizon, cells[7].gamma, cells[7].percentile), (10.0, 15.0, 50.0));
        assert_eq!(pct1(cells[2].myopic.unwrap()), "28.6");
        assert_eq!(pct1(cells[2].hedging.unwrap()), "13.5");
    }

    #[test]
    fn comparison_delta_uses_unrounded_values() {
        let cells = comparison_table(&RunConfig::default()).unwrap();
        let c = cells[1];
        assert_eq!(c.reference_pct, Some(13.3));
        let d = c.delta_pct().unwrap();
        assert!((d - (c.constrained.unwrap() * 100.0 - 13.3)).abs() < 1e-12);
    }

    #[test]
    fn missing_reference_prints_na() {
        let cfg = RunConfig { horizons: vec![12.0], ..RunConfig::default() };
        let cells = comparison_table(&cfg).unwrap();
        let text = comparison_text(&cfg, &cells, false);
        assert!(text.lines().any(|l| l.contains("GS") && l.contains("n/a")));
    }
}
