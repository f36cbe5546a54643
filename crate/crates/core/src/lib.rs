//! Long-horizon portfolio choice when the Sharpe ratio mean-reverts.
//!
//! - [`var_kernel`]: the quarterly return/dividend-yield VAR(1) and path
//!   simulation.
//! - [`aggregation`]: continuous-time parameters implied by the VAR, the
//!   unconditional Sharpe-ratio distribution and exact-discretization moments.
//! - [`closed_form`]: the explicit optimal allocation, split into myopic and
//!   hedging demands.
//! - [`oracle`]: Runge–Kutta integration of the coefficient ODEs, for tests.
//! - [`strategy_search`]: exhaustive open-loop grid search by Monte Carlo.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aggregation;
pub mod closed_form;
pub mod error;
pub mod normal;
pub mod oracle;
pub mod strategy_search;
pub mod var_kernel;

pub use aggregation::{ContinuousParams, XDistribution};
pub use closed_form::{AllocationDecomposition, NormalSolutionCoefficients, Preferences};
pub use error::{Error, Result};
pub use strategy_search::{GridStrategy, SearchResult};
pub use var_kernel::{DiscreteVarParams, PathBatch};
