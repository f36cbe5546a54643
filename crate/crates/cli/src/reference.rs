//! Discrete-time benchmark allocations (Garlappi and Skoulakis),
//! embedded as reference data. They are not reproduced by this crate and
//! serve only as the comparison row of the allocation table.

pub const HORIZONS: [u32; 4] = [10, 20, 30, 40];
pub const GAMMAS: [u32; 2] = [5, 15];
pub const PERCENTILES: [u32; 5] = [10, 30, 50, 70, 90];

/// Allocation to stocks in percent, indexed `[horizon][gamma][percentile]`
/// following the constant arrays above.
pub const GS_ALLOCATION_PCT: [[[f64; 5]; 2]; 4] = [
    [[0.0, 13.3, 43.2, 73.1, 100.0], [0.0, 4.3, 15.4, 27.0, 44.7]],
    [[0.0, 24.4, 57.2, 89.7, 100.0], [0.0, 10.7, 25.1, 40.4, 63.2]],
    [[0.0, 32.8, 68.4, 100.0, 100.0], [0.0, 17.5, 35.2, 54.0, 80.7]],
    [[0.0, 38.8, 77.6, 100.0, 100.0], [0.0, 24.1, 44.5, 65.7, 94.6]],
];

/// Reference allocation (percent) for one cell, if it is tabulated.
pub fn gs_allocation_pct(horizon: f64, gamma: f64, percentile: f64) -> Option<f64> {
    let h = HORIZONS.iter().position(|&v| f64::from(v) == horizon)?;
    let g = GAMMAS.iter().position(|&v| f64::from(v) == gamma)?;
    let p = PERCENTILES.iter().position(|&v| f64::from(v) == percentile)?;
    Some(GS_ALLOCATION_PCT[h][g][p])
}
