//! Command-line front end: parameter recovery, allocation tables, figure
//! data and the Monte Carlo grid search.

pub mod config;
pub mod error;
pub mod figures;
pub mod format;
pub mod reference;
pub mod search;
pub mod tables;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use sharpe_horizon::aggregation::{recover_continuous, x_distribution, x_percentile, x_to_z};
use sharpe_horizon::closed_form::{allocation, Preferences};
use sharpe_horizon::strategy_search::DEFAULT_BUDGET;

pub use config::RunConfig;
pub use error::{CliError, Result};

use crate::figures::Series;
use crate::search::{SearchSpec, DEFAULT_GRID, REPORT_FILE};

#[derive(Debug, Parser)]
#[command(name = "sharpe-horizon", version, about = "Long-horizon allocation under a mean-reverting Sharpe ratio")]
pub struct Cli {
    /// JSON file with the eight VAR fields (defaults to the built-in estimates).
    #[arg(long, global = true, value_name = "JSON")]
    pub params: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = config::DEFAULT_SEED)]
    pub seed: u64,

    /// Directory for CSV, data and report files.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,

    /// Print full-precision numbers instead of rounded percentages.
    #[arg(long, global = true)]
    pub raw: bool,

    #[arg(long, global = true, value_delimiter = ',', value_name = "LIST")]
    pub percentiles: Option<Vec<f64>>,

    #[arg(long, global = true, value_delimiter = ',', value_name = "LIST")]
    pub gammas: Option<Vec<f64>>,

    #[arg(long, global = true, value_delimiter = ',', value_name = "LIST")]
    pub horizons: Option<Vec<f64>>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continuous-time parameters implied by the VAR estimates.
    Recover,
    /// Sharpe-ratio percentiles of the unconditional distribution.
    Percentiles,
    /// Myopic, hedging and total demand for one state.
    Allocate(AllocateArgs),
    /// Allocation tables: 2 = demand decomposition, 3 = constrained vs benchmark.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(2..=3))]
        id: u8,
    },
    /// Figure data: 1 = demand vs gamma, 2 = allocation vs horizon, 3 = path over time.
    Figure(FigureArgs),
    /// Exhaustive open-loop grid search by Monte Carlo.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("state").required(true).args(["x", "x_percentile"]))]
pub struct AllocateArgs {
    #[arg(long)]
    pub gamma: f64,
    /// Investment horizon in quarters.
    #[arg(long)]
    pub horizon: f64,
    /// Quarters to go (defaults to the horizon).
    #[arg(long)]
    pub tau: Option<f64>,
    /// Sharpe ratio.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Sharpe ratio given as a percentile of its unconditional distribution.
    #[arg(long)]
    pub x_percentile: Option<f64>,
    /// Also report the allocation restricted to [0, 1].
    #[arg(long)]
    pub constrained: bool,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub id: u8,
    /// Add the grid-search staircase to figure 3.
    #[arg(long)]
    pub with_search: bool,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args, Clone)]
pub struct SearchArgs {
    /// Allocation grid, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_GRID.to_vec())]
    pub grid: Vec<f64>,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub paths: u64,
    #[arg(long, default_value_t = 5.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 10)]
    pub horizon: usize,
    #[arg(long, default_value_t = 30.0)]
    pub x_percentile: f64,
    /// Maximum number of sequences to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

impl SearchArgs {
    fn spec(&self) -> SearchSpec {
        SearchSpec {
            grid: self.grid.clone(),
            n_paths: self.paths as usize,
            gamma: self.gamma,
            horizon: self.horizon,
            x_percentile: self.x_percentile,
            budget: self.budget,
        }
    }
}

/// Text for stdout plus any files written.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub files: Vec<PathBuf>,
}

impl Cli {
    pub fn config(&self) -> Result<RunConfig> {
        let defaults = RunConfig::default();
        let params = match &self.params {
            Some(path) => config::load_params(path)?,
            None => defaults.params,
        };
        RunConfig {
            params,
            percentiles: self.percentiles.clone().unwrap_or(defaults.percentiles),
            gammas: self.gammas.clone().unwrap_or(defaults.gammas),
            horizons: self.horizons.clone().unwrap_or(defaults.horizons),
            output_dir: self.out.clone(),
            seed: self.seed,
        }
        .validate()
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = cli.config()?;
    match &cli.command {
        Command::Recover => cmd_recover(&cfg, cli.raw),
        Command::Percentiles => cmd_percentiles(&cfg),
        Command::Allocate(args) => cmd_allocate(&cfg, args, cli.raw),
        Command::Table { id } => cmd_table(&cfg, *id, cli.raw),
        Command::Figure(args) => cmd_figure(&cfg, args),
        Command::Search(args) => cmd_search(&cfg, args),
    }
}

/// Discrete estimates beside the recovered continuous-time parameters.
pub fn cmd_recover(cfg: &RunConfig, raw: bool) -> Result<Outcome> {
    let p = cfg.params;
    let c = recover_continuous(&p)?;
    let show = |v: f64, decimals: usize| if raw { format!("{v}") } else { format!("{v:.decimals$}") };
    let left = [
        ("r_f", show(p.rf_quarterly, 3)),
        ("a_r", show(p.a_r, 3)),
        ("b_r", show(p.b_r, 3)),
        ("a_z", show(p.a_z, 3)),
        ("b_z", show(p.b_z, 3)),
        ("var_r", show(p.var_r, 4)),
        ("var_z", show(p.var_z, 4)),
        ("cov_rz", show(p.cov_rz, 4)),
    ];
    let right = [
        ("r", show(c.r, 3)),
        ("theta", show(c.theta, 3)),
        ("kappa", show(c.kappa, 4)),
        ("sigma", show(c.sigma, 4)),
        ("zeta", show(c.zeta, 4)),
        ("rho", show(c.rho, 3)),
    ];
    let mut text = format!("{:<28}{}\n", "Discrete time (VAR)", "Continuous time");
    for (i, (k, v)) in left.iter().enumerate() {
        let l = format!("  {k:<8}{v:>12}");
        let r = right.get(i).map(|(k, v)| format!("  {k:<8}{v:>12}")).unwrap_or_default();
        let _ = writeln!(text, "{:<28}{}", l, r.trim_end());
    }
    Ok(Outcome { text, files: vec![] })
}

pub fn cmd_percentiles(cfg: &RunConfig) -> Result<Outcome> {
    let dist = x_distribution(&cfg.params)?;
    let mut text = format!(
        "Sharpe ratio ~ N({:.6}, {:.6}^2)\n{:>10} {:>12} {:>12}\n",
        dist.mean,
        dist.std_dev(),
        "percentile",
        "X",
        "z"
    );
    for &p in &cfg.percentiles {
        let x = x_percentile(&dist, p)?;
        let _ = writeln!(text, "{p:>10} {x:>12.6} {:>12.6}", x_to_z(&cfg.params, x));
    }
    Ok(Outcome { text, files: vec![] })
}

pub fn cmd_allocate(cfg: &RunConfig, args: &AllocateArgs, raw: bool) -> Result<Outcome> {
    let cont = recover_continuous(&cfg.params)?;
    let x = match (args.x, args.x_percentile) {
        (Some(x), _) => x,
        (None, Some(p)) => x_percentile(&x_distribution(&cfg.params)?, p)?,
        (None, None) => return Err(CliError::Config("one of --x or --x-percentile is required".into())),
    };
    let tau = args.tau.unwrap_or(args.horizon);
    let a = allocation(&cont, &Preferences::new(args.gamma, args.horizon), x, tau)?;
    let show = |v: f64| if raw { format!("{}", v * 100.0) } else { format::pct1(v) };
    let mut text = format!("gamma {}, horizon {}, {} quarters to go, X = {:.6}\n", args.gamma, args.horizon, tau, x);
    let _ = writeln!(text, "{:<18}{:>10}%", "myopic demand", show(a.myopic));
    let _ = writeln!(text, "{:<18}{:>10}%", "hedging demand", show(a.hedging));
    let _ = writeln!(text, "{:<18}{:>10}%", "total", show(a.total));
    if args.constrained {
        let _ = writeln!(text, "{:<18}{:>10}%", "constrained", show(a.constrained));
    }
    if raw {
        let _ = writeln!(text, "C1 {}\nC2 {}", a.c1, a.c2);
    }
    Ok(Outcome { text, files: vec![] })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

pub fn cmd_table(cfg: &RunConfig, id: u8, raw: bool) -> Result<Outcome> {
    let (text, csv) = match id {
        2 => {
            let cells = tables::demand_table(cfg)?;
            (tables::demand_text(cfg, &cells, raw), tables::demand_csv(&cells, raw))
        }
        3 => {
            let cells = tables::comparison_table(cfg)?;
            (tables::comparison_text(cfg, &cells, raw), tables::comparison_csv(&cells, raw))
        }
        _ => return Err(CliError::Config(format!("no table {id}"))),
    };
    let files = vec![
        write_file(&cfg.output_dir, &format!("table-{id}.csv"), &csv)?,
        write_file(&cfg.output_dir, &format!("table-{id}.txt"), &text)?,
    ];
    Ok(Outcome { text, files })
}

fn write_series(cfg: &RunConfig, series: &[Series]) -> Result<Vec<PathBuf>> {
    series.iter().map(|s| write_file(&cfg.output_dir, &s.file_name, &s.render())).collect()
}

pub fn cmd_figure(cfg: &RunConfig, args: &FigureArgs) -> Result<Outcome> {
    let mut text = String::new();
    let series = match args.id {
        1 => figures::demand_vs_gamma(cfg)?,
        2 => figures::allocation_vs_horizon(cfg)?,
        3 => {
            let spec = args.search.spec();
            let mut series = vec![figures::closed_form_path(cfg, spec.gamma, spec.horizon, spec.x_percentile)?];
            if args.with_search {
                let report = search::run_search(cfg, &spec)?;
                text.push_str(&report.render());
                series.push(figures::staircase(&report.best_sequence));
            }
            series
        }
        id => return Err(CliError::Config(format!("no figure {id}"))),
    };
    let files = write_series(cfg, &series)?;
    for f in &files {
        let _ = writeln!(text, "wrote {}", f.display());
    }
    Ok(Outcome { text, files })
}

pub fn cmd_search(cfg: &RunConfig, args: &SearchArgs) -> Result<Outcome> {
    let report = search::run_search(cfg, &args.spec())?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    let files = vec![
        write_file(&cfg.output_dir, REPORT_FILE, &json)?,
        write_series(cfg, &[figures::staircase(&report.best_sequence)])?.remove(0),
    ];
    Ok(Outcome { text: report.render(), files })
}
