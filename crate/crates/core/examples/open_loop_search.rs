//! Times the full grid search at the default configuration.
//! Usage: open_loop_search [n_paths] [seed]

use std::time::Instant;

use sharpe_horizon::aggregation::{recover_continuous, x_distribution, x_percentile, x_to_z};
use sharpe_horizon::closed_form::expected_path;
use sharpe_horizon::strategy_search::{exhaustive_search, DEFAULT_BUDGET};
use sharpe_horizon::var_kernel::{simulate_paths, DiscreteVarParams};

fn main() {
    let n_paths: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let seed: u64 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(2024);
    let params = DiscreteVarParams::brandt();
    let cont = recover_continuous(&params).unwrap();
    let x0 = x_percentile(&x_distribution(&params).unwrap(), 30.0).unwrap();
    let batch = simulate_paths(&params, n_paths, 10, x_to_z(&params, x0), seed).unwrap();
    let start = Instant::now();
    let grid = [0.05, 0.10, 0.15, 0.20, 0.25];
    let result = exhaustive_search(&batch, &grid, 5.0, params.rf_quarterly, DEFAULT_BUDGET).unwrap();
    println!("{:?} in {:.1?}", result.best.sequence(), start.elapsed());
    let path: Vec<f64> = expected_path(&cont, 5.0, x0, 10).unwrap().iter().map(|a| a.total).collect();
    println!("closed form {path:.3?}");
}
