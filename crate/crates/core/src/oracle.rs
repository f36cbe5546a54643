//! Numerical reference for the closed-form Riccati coefficients.
//!
//! Integrates the coefficient ODEs in time-to-go,
//!
//! ```text
//! dC₂/dτ = a C₂² + b C₂ + c
//! dC₁/dτ = κθ C₂ + (b/2 + a C₂) C₁
//! ```
//!
//! from `C₁ = C₂ = 0` at `τ = 0` with the classical fourth-order Runge–Kutta
//! scheme. It shares nothing with the closed-form evaluation beyond the
//! constants `a`, `b`, `c`, and is meant for tests.

use crate::aggregation::ContinuousParams;
use crate::closed_form::NormalSolutionCoefficients;

pub const MIN_ORACLE_STEPS: usize = 1000;

/// `(C₁, C₂)` at time-to-go `tau` using `steps` RK4 steps.
///
/// # Panics
///
/// If `steps < MIN_ORACLE_STEPS` or `tau` is negative.
pub fn riccati_ode_oracle(
    k: &NormalSolutionCoefficients,
    cont: &ContinuousParams,
    tau: f64,
    steps: usize,
) -> (f64, f64) {
    assert!(steps >= MIN_ORACLE_STEPS, "oracle needs at least {MIN_ORACLE_STEPS} steps");
    assert!(tau >= 0.0, "time-to-go must be non-negative");
    if tau == 0.0 {
        return (0.0, 0.0);
    }
    let kt = cont.kappa * cont.theta;
    let rhs =
        |c1: f64, c2: f64| -> (f64, f64) { (kt * c2 + (k.b / 2.0 + k.a * c2) * c1, k.a * c2 * c2 + k.b * c2 + k.c) };

    let h = tau / steps as f64;
    let (mut c1, mut c2) = (0.0, 0.0);
    for _ in 0..steps {
        let (p1, q1) = rhs(c1, c2);
        let (p2, q2) = rhs(c1 + 0.5 * h * p1, c2 + 0.5 * h * q1);
        let (p3, q3) = rhs(c1 + 0.5 * h * p2, c2 + 0.5 * h * q2);
        let (p4, q4) = rhs(c1 + h * p3, c2 + h * q3);
        c1 += h / 6.0 * (p1 + 2.0 * p2 + 2.0 * p3 + p4);
        c2 += h / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
    }
    (c1, c2)
}
