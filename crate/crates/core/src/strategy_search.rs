//! Brute-force check of the closed form: enumerate every open-loop allocation
//! sequence over a finite grid and score it by expected CRRA utility of
//! terminal wealth across a simulated [`PathBatch`].
//!
//! A strategy fixes one allocation per quarter in advance, identical on every
//! path. It never reacts to the realized predictor, unlike the closed-form
//! policy, which is feedback.
//!
//! Wealth starts at 1 and compounds arithmetically,
//! `W_{t+1} = W_t (α_t R_t + (1 − α_t) R_f)` with stock gross return
//! `R_t = exp(r_f + excess_t)` and `R_f = exp(r_f)`.
//!
//! # Evaluation
//!
//! Utility `W^{1−γ}/(1−γ)` factorizes over quarters, so every per-quarter
//! gross return is raised to `1 − γ` once (or logged, for γ = 1) and a
//! sequence's per-path value is the product (sum) of its factors. The search
//! walks the |grid|-ary tree depth first, keeping one buffer of partial
//! products per depth, so a prefix shared by many sequences is multiplied out
//! once. The per-path values of a sequence are always combined left to right
//! in quarter order and averaged with a fixed 8-lane summation, so
//! [`naive_search`] reproduces [`exhaustive_search`] bit for bit.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::var_kernel::PathBatch;

/// Default cap on the number of sequences a search may enumerate.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// At most this many co-optimal sequences are listed in a [`SearchResult`].
pub const MAX_REPORTED_TIES: usize = 64;

const LANES: usize = 8;

/// An open-loop allocation sequence drawn from a finite grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridStrategy {
    grid: Vec<f64>,
    sequence: Vec<f64>,
}

impl GridStrategy {
    pub fn new(grid: Vec<f64>, sequence: Vec<f64>) -> Result<Self> {
        check_grid(&grid)?;
        if sequence.is_empty() {
            return Err(Error::InvalidStrategy("empty allocation sequence".into()));
        }
        if let Some(bad) = sequence.iter().find(|a| !grid.contains(a)) {
            return Err(Error::InvalidStrategy(format!("allocation {bad} is not on the grid")));
        }
        Ok(Self { grid, sequence })
    }

    pub fn constant(grid: Vec<f64>, alpha: f64, horizon: usize) -> Result<Self> {
        Self::new(grid, vec![alpha; horizon])
    }

    fn from_indices(grid: &[f64], idx: &[usize]) -> Self {
        Self { grid: grid.to_vec(), sequence: idx.iter().map(|&i| grid[i]).collect() }
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn sequence(&self) -> &[f64] {
        &self.sequence
    }

    pub fn horizon(&self) -> usize {
        self.sequence.len()
    }
}

/// Grids must be non-empty, strictly ascending and inside [0, 1].
pub fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidStrategy("empty grid".into()));
    }
    if grid.iter().any(|a| !(0.0..=1.0).contains(a)) {
        return Err(Error::InvalidStrategy("grid allocations must lie in [0, 1]".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidStrategy("grid must be strictly ascending".into()));
    }
    Ok(())
}

/// Gross returns per path and quarter.
#[derive(Debug, Clone, PartialEq)]
pub struct WealthFactors {
    n_paths: usize,
    horizon: usize,
    rf_gross: f64,
    stock_gross: Vec<f64>,
}

impl WealthFactors {
    pub fn rf_gross(&self) -> f64 {
        self.rf_gross
    }

    /// Stock gross returns of every path over quarter `t`.
    pub fn stock_gross_at(&self, t: usize) -> &[f64] {
        &self.stock_gross[t * self.n_paths..(t + 1) * self.n_paths]
    }

    pub fn portfolio_gross(&self, t: usize, path: usize, alpha: f64) -> f64 {
        alpha * self.stock_gross[t * self.n_paths + path] + (1.0 - alpha) * self.rf_gross
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }
}

pub fn wealth_factors(batch: &PathBatch, rf_quarterly: f64) -> WealthFactors {
    let stock_gross =
        (0..batch.horizon()).flat_map(|t| batch.excess_at(t).iter().map(|&e| (rf_quarterly + e).exp())).collect();
    WealthFactors { n_paths: batch.n_paths(), horizon: batch.horizon(), rf_gross: rf_quarterly.exp(), stock_gross }
}

/// Expected utility of terminal wealth, computed path by path from the
/// compounded wealth: mean of `W_T^{1−γ}/(1−γ)`, or mean of `ln W_T` at γ = 1.
pub fn expected_crra_utility(batch: &PathBatch, strategy: &GridStrategy, gamma: f64, rf_quarterly: f64) -> Result<f64> {
    let utility = Utility::new(gamma)?;
    check_horizon(batch, strategy.horizon())?;
    let factors = wealth_factors(batch, rf_quarterly);
    let mut per_path = Vec::with_capacity(batch.n_paths());
    for i in 0..batch.n_paths() {
        let mut wealth = 1.0;
        for (t, &alpha) in strategy.sequence().iter().enumerate() {
            let g = factors.portfolio_gross(t, i, alpha);
            if !(g > 0.0) {
                return Err(Error::NonPositiveWealth { path: i, quarter: t });
            }
            wealth *= g;
        }
        per_path.push(match utility {
            Utility::Power { exponent } => wealth.powf(exponent) / exponent,
            Utility::Log => wealth.ln(),
        });
    }
    Ok(lane_sum(&per_path) / batch.n_paths() as f64)
}

/// Expected utility of one sequence via the factorized route used by the
/// searches.
pub fn sequence_utility(batch: &PathBatch, strategy: &GridStrategy, gamma: f64, rf_quarterly: f64) -> Result<f64> {
    let utility = Utility::new(gamma)?;
    check_horizon(batch, strategy.horizon())?;
    let table = FactorTable::build(batch, strategy.grid(), utility, rf_quarterly)?;
    let idx: Vec<usize> =
        strategy.sequence().iter().map(|a| strategy.grid().iter().position(|g| g == a).expect("validated")).collect();
    Ok(match utility {
        Utility::Power { .. } => table.evaluate::<Product>(&idx),
        Utility::Log => table.evaluate::<Sum>(&idx),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub best: GridStrategy,
    pub expected_utility: f64,
    pub n_strategies_evaluated: u64,
    /// Other sequences with exactly the best utility, in lexicographic
    /// order, truncated to [`MAX_REPORTED_TIES`].
    pub ties: Vec<GridStrategy>,
    /// Total number of other co-optimal sequences.
    pub n_ties: u64,
}

/// Number of sequences a search over `grid_len` allocations and `horizon`
/// quarters enumerates, saturating at `u128::MAX`.
pub fn strategy_count(grid_len: usize, horizon: usize) -> u128 {
    let mut n: u128 = 1;
    for _ in 0..horizon {
        n = n.saturating_mul(grid_len as u128);
    }
    n
}

/// Finds the utility-maximizing sequence by prefix-shared tree evaluation.
/// Ties go to the lexicographically smallest sequence. The first-quarter
/// subtrees are searched in parallel and merged in grid order.
pub fn exhaustive_search(
    batch: &PathBatch,
    grid: &[f64],
    gamma: f64,
    rf_quarterly: f64,
    budget: u128,
) -> Result<SearchResult> {
    let (utility, table) = prepare(batch, grid, gamma, rf_quarterly, budget)?;
    let partials: Vec<Partial> = (0..grid.len())
        .into_par_iter()
        .map(|first| match utility {
            Utility::Power { .. } => table.subtree::<Product>(first),
            Utility::Log => table.subtree::<Sum>(first),
        })
        .collect();
    Ok(merge(partials, grid))
}

/// Same contract as [`exhaustive_search`], evaluating every sequence from
/// scratch without sharing prefixes. Exists to check the tree search.
pub fn naive_search(
    batch: &PathBatch,
    grid: &[f64],
    gamma: f64,
    rf_quarterly: f64,
    budget: u128,
) -> Result<SearchResult> {
    let (utility, table) = prepare(batch, grid, gamma, rf_quarterly, budget)?;
    let horizon = batch.horizon();
    let mut idx = vec![0usize; horizon];
    let mut part = Partial::new();
    loop {
        let u = match utility {
            Utility::Power { .. } => table.evaluate::<Product>(&idx),
            Utility::Log => table.evaluate::<Sum>(&idx),
        };
        part.offer(u, &idx);
        // Odometer increment, last quarter fastest: lexicographic order.
        let mut pos = horizon;
        loop {
            if pos == 0 {
                return Ok(merge(vec![part], grid));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < grid.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn prepare(batch: &PathBatch, grid: &[f64], gamma: f64, rf: f64, budget: u128) -> Result<(Utility, FactorTable)> {
    let utility = Utility::new(gamma)?;
    check_grid(grid)?;
    let required = strategy_count(grid.len(), batch.horizon());
    if required > budget {
        return Err(Error::BudgetExceeded { required, allowed: budget });
    }
    let table = FactorTable::build(batch, grid, utility, rf)?;
    Ok((utility, table))
}

fn check_horizon(batch: &PathBatch, horizon: usize) -> Result<()> {
    if horizon != batch.horizon() {
        return Err(Error::InvalidStrategy(format!(
            "strategy covers {horizon} quarters, batch has {}",
            batch.horizon()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Utility {
    Power { exponent: f64 },
    Log,
}

impl Utility {
    fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParams(format!("gamma must be positive, got {gamma}")));
        }
        Ok(if gamma == 1.0 { Utility::Log } else { Utility::Power { exponent: 1.0 - gamma } })
    }

    fn transform(self, gross: f64) -> f64 {
        match self {
            Utility::Power { exponent } => gross.powf(exponent),
            Utility::Log => gross.ln(),
        }
    }

    fn finish(self, mean: f64) -> f64 {
        match self {
            Utility::Power { exponent } => mean / exponent,
            Utility::Log => mean,
        }
    }
}

/// How per-quarter factors of one path combine into a sequence value.
trait Combine {
    const IDENTITY: f64;
    fn combine(acc: f64, factor: f64) -> f64;
}

struct Product;
struct Sum;

impl Combine for Product {
    const IDENTITY: f64 = 1.0;
    #[inline(always)]
    fn combine(acc: f64, factor: f64) -> f64 {
        acc * factor
    }
}

impl Combine for Sum {
    const IDENTITY: f64 = 0.0;
    #[inline(always)]
    fn combine(acc: f64, factor: f64) -> f64 {
        acc + factor
    }
}

/// Transformed gross portfolio returns, row `(t, a)` holding every path's
/// factor for allocation `grid[a]` in quarter `t`.
struct FactorTable {
    n_paths: usize,
    horizon: usize,
    grid_len: usize,
    utility: Utility,
    rows: Vec<f64>,
}

impl FactorTable {
    fn build(batch: &PathBatch, grid: &[f64], utility: Utility, rf: f64) -> Result<Self> {
        let factors = wealth_factors(batch, rf);
        let (n, m) = (batch.n_paths(), grid.len());
        let mut rows = Vec::with_capacity(batch.horizon() * m * n);
        for t in 0..batch.horizon() {
            let stock = factors.stock_gross_at(t);
            for &alpha in grid {
                for (i, &s) in stock.iter().enumerate() {
                    let g = alpha * s + (1.0 - alpha) * factors.rf_gross;
                    if !(g > 0.0) {
                        return Err(Error::NonPositiveWealth { path: i, quarter: t });
                    }
                    rows.push(utility.transform(g));
                }
            }
        }
        Ok(Self { n_paths: n, horizon: batch.horizon(), grid_len: m, utility, rows })
    }

    fn row(&self, t: usize, a: usize) -> &[f64] {
        let start = (t * self.grid_len + a) * self.n_paths;
        &self.rows[start..start + self.n_paths]
    }

    fn score(&self, total: f64) -> f64 {
        self.utility.finish(total / self.n_paths as f64)
    }

    fn evaluate<C: Combine>(&self, idx: &[usize]) -> f64 {
        let last = self.horizon - 1;
        let mut acc = vec![C::IDENTITY; self.n_paths];
        for (t, &a) in idx[..last].iter().enumerate() {
            for (v, &f) in acc.iter_mut().zip(self.row(t, a)) {
                *v = C::combine(*v, f);
            }
        }
        self.score(combine_sum::<C>(&acc, self.row(last, idx[last])))
    }

    fn subtree<C: Combine>(&self, first: usize) -> Partial {
        let mut part = Partial::new();
        let mut levels = vec![vec![C::IDENTITY; self.n_paths]; self.horizon];
        let mut prefix = Vec::with_capacity(self.horizon);
        self.descend::<C>(0, Some(first), &mut levels, &mut prefix, &mut part);
        part
    }

    /// `levels[t]` holds the combined factors of quarters `0..t` for the
    /// current prefix; `only` restricts the choice at depth `t`.
    fn descend<C: Combine>(
        &self,
        t: usize,
        only: Option<usize>,
        levels: &mut [Vec<f64>],
        prefix: &mut Vec<usize>,
        part: &mut Partial,
    ) {
        let choices = match only {
            Some(a) => a..a + 1,
            None => 0..self.grid_len,
        };
        if t + 1 == self.horizon {
            for a in choices {
                let u = self.score(combine_sum::<C>(&levels[t], self.row(t, a)));
                prefix.push(a);
                part.offer(u, prefix);
                prefix.pop();
            }
            return;
        }
        for a in choices {
            let (done, rest) = levels.split_at_mut(t + 1);
            for ((next, &v), &f) in rest[0].iter_mut().zip(&done[t]).zip(self.row(t, a)) {
                *next = C::combine(v, f);
            }
            prefix.push(a);
            self.descend::<C>(t + 1, None, levels, prefix, part);
            prefix.pop();
        }
    }
}

/// Σᵢ combine(acc[i], factor[i]) in a fixed lane order.
#[inline(always)]
fn combine_sum<C: Combine>(acc: &[f64], factor: &[f64]) -> f64 {
    let mut lanes = [0.0f64; LANES];
    let a = acc.chunks_exact(LANES);
    let f = factor.chunks_exact(LANES);
    let (ar, fr) = (a.remainder(), f.remainder());
    for (x, y) in a.zip(f) {
        for k in 0..LANES {
            lanes[k] += C::combine(x[k], y[k]);
        }
    }
    for k in 0..ar.len() {
        lanes[k] += C::combine(ar[k], fr[k]);
    }
    fold_lanes(lanes)
}

fn lane_sum(values: &[f64]) -> f64 {
    let mut lanes = [0.0f64; LANES];
    let chunks = values.chunks_exact(LANES);
    let rest = chunks.remainder();
    for c in chunks {
        for k in 0..LANES {
            lanes[k] += c[k];
        }
    }
    for (k, &v) in rest.iter().enumerate() {
        lanes[k] += v;
    }
    fold_lanes(lanes)
}

#[inline(always)]
fn fold_lanes(l: [f64; LANES]) -> f64 {
    ((l[0] + l[1]) + (l[2] + l[3])) + ((l[4] + l[5]) + (l[6] + l[7]))
}

struct Partial {
    best: Option<(f64, Vec<usize>)>,
    ties: Vec<Vec<usize>>,
    n_ties: u64,
    evaluated: u64,
}

impl Partial {
    fn new() -> Self {
        Self { best: None, ties: Vec::new(), n_ties: 0, evaluated: 0 }
    }

    /// Sequences must be offered in lexicographic order.
    fn offer(&mut self, utility: f64, seq: &[usize]) {
        self.evaluated += 1;
        match &mut self.best {
            Some((u, _)) if utility < *u || utility.is_nan() => {}
            Some((u, _)) if utility == *u => {
                self.n_ties += 1;
                if self.ties.len() < MAX_REPORTED_TIES {
                    self.ties.push(seq.to_vec());
                }
            }
            _ => {
                self.best = Some((utility, seq.to_vec()));
                self.ties.clear();
                self.n_ties = 0;
            }
        }
    }

    fn absorb(&mut self, other: Partial) {
        self.evaluated += other.evaluated;
        let Some((u, seq)) = other.best else { return };
        match &self.best {
            Some((mine, _)) if u < *mine => {}
            Some((mine, _)) if u == *mine => {
                self.n_ties += 1 + other.n_ties;
                let room = MAX_REPORTED_TIES.saturating_sub(self.ties.len());
                self.ties.extend(std::iter::once(seq).chain(other.ties).take(room));
            }
            _ => {
                self.best = Some((u, seq));
                self.ties = other.ties;
                self.n_ties = other.n_ties;
            }
        }
    }
}

fn merge(parts: Vec<Partial>, grid: &[f64]) -> SearchResult {
    let mut all = Partial::new();
    for p in parts {
        all.absorb(p);
    }
    let (expected_utility, best) = all.best.expect("at least one sequence is evaluated");
    SearchResult {
        best: GridStrategy::from_indices(grid, &best),
        expected_utility,
        n_strategies_evaluated: all.evaluated,
        ties: all.ties.iter().map(|s| GridStrategy::from_indices(grid, s)).collect(),
        n_ties: all.n_ties,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::var_kernel::{simulate_paths, simulate_paths_with, DiscreteVarParams, Innovations};

    fn flat_batch(n: usize, horizon: usize) -> PathBatch {
        PathBatch::from_columns(vec![vec![0.0; n]; horizon], vec![vec![0.0; n]; horizon + 1], 0).unwrap()
    }

    fn drifted_batch(drift: f64, n: usize, horizon: usize, seed: u64) -> PathBatch {
        let base = DiscreteVarParams::brandt();
        // Zero slope, intercept chosen so the excess log return has mean `drift`.
        let p = DiscreteVarParams { a_r: drift, b_r: 0.0, ..base };
        simulate_paths(&p, n, horizon, 0.0, seed).unwrap()
    }

    #[test]
    fn strategy_validation() {
        let grid = vec![0.05, 0.10];
        assert!(GridStrategy::new(grid.clone(), vec![0.05, 0.10, 0.10]).is_ok());
        assert!(GridStrategy::new(grid.clone(), vec![0.05, 0.2]).is_err());
        assert!(GridStrategy::new(grid.clone(), vec![]).is_err());
        assert!(GridStrategy::new(vec![0.2, 0.1], vec![0.2]).is_err());
        assert!(GridStrategy::new(vec![0.5, 1.5], vec![0.5]).is_err());
        assert!(GridStrategy::new(vec![], vec![]).is_err());
    }

    #[test]
    fn allocation_is_irrelevant_without_excess_returns() {
        let rf = 0.015;
        let f = wealth_factors(&flat_batch(4, 3), rf);
        for alpha in [0.0, 0.3, 1.0] {
            assert!((f.portfolio_gross(1, 2, alpha) - rf.exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn all_cash_compounds_at_risk_free() {
        let batch = drifted_batch(0.01, 20, 6, 1);
        let s = GridStrategy::constant(vec![0.0, 1.0], 0.0, 6).unwrap();
        let u = expected_crra_utility(&batch, &s, 1.0, 0.015).unwrap();
        assert!((u - 6.0 * 0.015).abs() < 1e-14);
    }

    #[test]
    fn all_stock_is_log_additive() {
        let excess = vec![vec![0.03], vec![-0.01], vec![0.02]];
        let batch = PathBatch::from_columns(excess, vec![vec![0.0]; 4], 0).unwrap();
        let s = GridStrategy::constant(vec![1.0], 1.0, 3).unwrap();
        let u = expected_crra_utility(&batch, &s, 1.0, 0.015).unwrap();
        assert!((u - (3.0 * 0.015 + 0.04)).abs() < 1e-14);
    }

    #[test]
    fn deterministic_wealth_utility() {
        let rf: f64 = 0.015;
        let batch = flat_batch(7, 10);
        let s = GridStrategy::constant(vec![0.05, 0.25], 0.25, 10).unwrap();
        let expect = (10.0 * rf).exp().powi(-4) / -4.0;
        let direct = expected_crra_utility(&batch, &s, 5.0, rf).unwrap();
        let factored = sequence_utility(&batch, &s, 5.0, rf).unwrap();
        assert!((direct / expect - 1.0).abs() < 1e-13);
        assert!((factored / expect - 1.0).abs() < 1e-13);
    }

    #[test]
    fn log_case_sums_log_gross() {
        let batch = drifted_batch(0.0, 9, 2, 3);
        let f = wealth_factors(&batch, 0.015);
        let s = GridStrategy::new(vec![0.2, 0.6], vec![0.2, 0.6]).unwrap();
        let expect: f64 =
            (0..9).map(|i| f.portfolio_gross(0, i, 0.2).ln() + f.portfolio_gross(1, i, 0.6).ln()).sum::<f64>() / 9.0;
        let u = expected_crra_utility(&batch, &s, 1.0, 0.015).unwrap();
        assert!((u - expect).abs() < 1e-14);
    }

    #[test]
    fn negative_drift_prefers_small_allocation() {
        let batch = drifted_batch(-0.05, 2000, 4, 11);
        let lo = GridStrategy::constant(vec![0.05, 0.25], 0.05, 4).unwrap();
        let hi = GridStrategy::constant(vec![0.05, 0.25], 0.25, 4).unwrap();
        assert!(
            expected_crra_utility(&batch, &lo, 5.0, 0.015).unwrap()
                > expected_crra_utility(&batch, &hi, 5.0, 0.015).unwrap()
        );
    }

    #[test]
    fn factored_route_matches_direct_route() {
        let p = DiscreteVarParams::brandt();
        let batch = simulate_paths(&p, 300, 5, -3.7, 2).unwrap();
        let s = GridStrategy::new(vec![0.1, 0.5, 0.9], vec![0.1, 0.9, 0.5, 0.5, 0.1]).unwrap();
        for gamma in [0.5, 1.0, 2.0, 5.0, 15.0] {
            let a = expected_crra_utility(&batch, &s, gamma, 0.015).unwrap();
            let b = sequence_utility(&batch, &s, gamma, 0.015).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs(), "gamma {gamma}: {a} vs {b}");
        }
    }

    #[test]
    fn single_point_grid() {
        let batch = drifted_batch(0.01, 50, 3, 4);
        let r = exhaustive_search(&batch, &[0.4], 5.0, 0.015, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.n_strategies_evaluated, 1);
        assert_eq!(r.best.sequence(), &[0.4, 0.4, 0.4]);
        assert!(r.ties.is_empty());
    }

    #[test]
    fn one_quarter_two_choices() {
        let batch = drifted_batch(0.02, 500, 1, 5);
        let r = exhaustive_search(&batch, &[0.0, 1.0], 5.0, 0.015, DEFAULT_BUDGET).unwrap();
        let u = |a: f64| {
            expected_crra_utility(&batch, &GridStrategy::constant(vec![0.0, 1.0], a, 1).unwrap(), 5.0, 0.015).unwrap()
        };
        let expect = if u(1.0) > u(0.0) { 1.0 } else { 0.0 };
        assert_eq!(r.best.sequence(), &[expect]);
        assert_eq!(r.n_strategies_evaluated, 2);
    }

    #[test]
    fn budget_is_enforced() {
        let batch = drifted_batch(0.0, 5, 10, 6);
        let grid = [0.05, 0.10, 0.15, 0.20, 0.25];
        match exhaustive_search(&batch, &grid, 5.0, 0.015, 1000) {
            Err(Error::BudgetExceeded { required, allowed }) => {
                assert_eq!(required, 9_765_625);
                assert_eq!(allowed, 1000);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ties_go_to_smallest_sequence() {
        let batch = flat_batch(3, 3);
        let r = exhaustive_search(&batch, &[0.1, 0.2], 5.0, 0.015, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.best.sequence(), &[0.1, 0.1, 0.1]);
        assert_eq!(r.n_ties, 7);
        assert_eq!(r.ties.len(), 7);
        assert_eq!(r.ties[0].sequence(), &[0.1, 0.1, 0.2]);
        assert_eq!(naive_search(&batch, &[0.1, 0.2], 5.0, 0.015, DEFAULT_BUDGET).unwrap(), r);
    }

    #[test]
    fn tree_matches_naive_bitwise() {
        let p = DiscreteVarParams::brandt();
        for (horizon, grid, n, gamma) in [
            (1, vec![0.2, 0.7], 13, 5.0),
            (3, vec![0.0, 0.5, 1.0], 100, 5.0),
            (4, vec![0.05, 0.15, 0.25], 37, 15.0),
            (4, vec![0.3, 0.6], 64, 1.0),
        ] {
            let batch = simulate_paths(&p, n, horizon, -3.8, 17).unwrap();
            let a = exhaustive_search(&batch, &grid, gamma, 0.015, DEFAULT_BUDGET).unwrap();
            let b = naive_search(&batch, &grid, gamma, 0.015, DEFAULT_BUDGET).unwrap();
            assert_eq!(a.expected_utility.to_bits(), b.expected_utility.to_bits());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn noiseless_batch_search() {
        let p = DiscreteVarParams::brandt();
        let batch = simulate_paths_with(&p, 8, 2, p.z_unconditional().unwrap().mean, 0, Innovations::Zero).unwrap();
        // Deterministic positive excess return: the largest allocation wins.
        let r = exhaustive_search(&batch, &[0.0, 0.5, 1.0], 5.0, 0.015, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.best.sequence(), &[1.0, 1.0]);
    }
}
