//! Monte Carlo open-loop grid search with its report.

use std::time::Instant;

use serde::Serialize;
use sharpe_horizon::aggregation::{x_distribution, x_percentile, x_to_z};
use sharpe_horizon::strategy_search::{exhaustive_search, strategy_count};
use sharpe_horizon::var_kernel::simulate_paths;
use sharpe_horizon::Error;

use crate::config::RunConfig;
use crate::error::Result;
use crate::figures::closed_form_path;

pub const DEFAULT_GRID: [f64; 5] = [0.05, 0.10, 0.15, 0.20, 0.25];
pub const REPORT_FILE: &str = "search-report.json";

pub const CRITERION: &str = "maximizes expected CRRA utility of terminal wealth, estimated as the mean \
over all simulated paths (W_0 = 1, one allocation per quarter fixed in advance, open loop)";

#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec {
    pub grid: Vec<f64>,
    pub n_paths: usize,
    pub gamma: f64,
    pub horizon: usize,
    pub x_percentile: f64,
    pub budget: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub criterion: &'static str,
    pub grid: Vec<f64>,
    pub gamma: f64,
    pub horizon: usize,
    pub x_percentile: f64,
    pub initial_sharpe_ratio: f64,
    pub initial_predictor: f64,
    pub n_paths: usize,
    pub seed: u64,
    pub budget: u128,
    pub best_sequence: Vec<f64>,
    pub expected_utility: f64,
    pub n_strategies_evaluated: u64,
    pub ties: Vec<Vec<f64>>,
    pub n_ties: u64,
    pub wall_time_seconds: f64,
    pub closed_form_path: Vec<f64>,
}

pub fn run_search(cfg: &RunConfig, spec: &SearchSpec) -> Result<SearchReport> {
    // Refuse before simulating anything.
    let required = strategy_count(spec.grid.len(), spec.horizon);
    if required > spec.budget {
        return Err(Error::BudgetExceeded { required, allowed: spec.budget }.into());
    }
    let params = cfg.params.validate()?;
    let x0 = x_percentile(&x_distribution(&params)?, spec.x_percentile)?;
    let z0 = x_to_z(&params, x0);
    let closed_form: Vec<f64> =
        closed_form_path(cfg, spec.gamma, spec.horizon, spec.x_percentile)?.points.iter().map(|p| p.1).collect();

    let start = Instant::now();
    let batch = simulate_paths(&params, spec.n_paths, spec.horizon, z0, cfg.seed)?;
    let result = exhaustive_search(&batch, &spec.grid, spec.gamma, params.rf_quarterly, spec.budget)?;
    let wall_time_seconds = start.elapsed().as_secs_f64();

    Ok(SearchReport {
        criterion: CRITERION,
        grid: spec.grid.clone(),
        gamma: spec.gamma,
        horizon: spec.horizon,
        x_percentile: spec.x_percentile,
        initial_sharpe_ratio: x0,
        initial_predictor: z0,
        n_paths: spec.n_paths,
        seed: cfg.seed,
        budget: spec.budget,
        best_sequence: result.best.sequence().to_vec(),
        expected_utility: result.expected_utility,
        n_strategies_evaluated: result.n_strategies_evaluated,
        ties: result.ties.iter().map(|s| s.sequence().to_vec()).collect(),
        n_ties: result.n_ties,
        wall_time_seconds,
        closed_form_path: closed_form,
    })
}

impl SearchReport {
    pub fn render(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = writeln!(out, "Open-loop grid search: {}", self.criterion);
        let _ = writeln!(
            out,
            "gamma {}, {} quarters, X0 at percentile {} = {:.6}, {} paths, seed {}",
            self.gamma, self.horizon, self.x_percentile, self.initial_sharpe_ratio, self.n_paths, self.seed
        );
        let _ = writeln!(
            out,
            "{} sequences evaluated in {:.2} s, expected utility {:.10e}",
            self.n_strategies_evaluated, self.wall_time_seconds, self.expected_utility
        );
        if self.n_ties > 0 {
            let _ = writeln!(out, "{} other sequences tie with the best", self.n_ties);
        }
        let _ = writeln!(out, "{:>7} {:>10} {:>12}", "quarter", "search", "closed form");
        for (t, cf) in self.closed_form_path.iter().enumerate() {
            let searched = self.best_sequence.get(t).map(|a| format!("{a:.2}")).unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "{t:>7} {searched:>10} {cf:>12.4}");
        }
        out
    }
}
