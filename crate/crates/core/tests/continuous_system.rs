use sharpe_horizon::aggregation::{exact_moments, recover_continuous, simulate_continuous};
use sharpe_horizon::var_kernel::DiscreteVarParams;

fn mean_var(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    (m, v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0))
}

// Conditional means of the exact discretization against direct SDE draws.
#[test]
fn conditional_means_follow_the_transition() {
    let cont = recover_continuous(&DiscreteVarParams::brandt()).unwrap();
    let x0 = 0.3;
    for (dt, seed) in [(1.0, 1), (4.0, 2)] {
        let m = exact_moments(&cont, dt).unwrap();
        let sample = simulate_continuous(&cont, dt, x0, 50_000, 100, seed).unwrap();
        let n = sample.x_end.len() as f64;

        let want_x = m.intercept[1] + m.transition[1][1] * x0;
        let (got_x, var_x) = mean_var(&sample.x_end);
        assert!((got_x - want_x).abs() < 4.0 * (var_x / n).sqrt(), "dt={dt}: {got_x} vs {want_x}");

        // The state carries the discounted level, so add r·dt back.
        let want_r = m.intercept[0] + m.transition[0][1] * x0 + cont.r * dt;
        let (got_r, var_r) = mean_var(&sample.log_return);
        assert!((got_r - want_r).abs() < 4.0 * (var_r / n).sqrt(), "dt={dt}: {got_r} vs {want_r}");
    }
}

#[test]
fn short_step_moments_are_first_order() {
    let cont = recover_continuous(&DiscreteVarParams::brandt()).unwrap();
    let dt = 1e-6;
    let m = exact_moments(&cont, dt).unwrap();
    assert!((m.var_x / (cont.zeta.powi(2) * dt) - 1.0).abs() < 1e-5);
    assert!((m.var_return / (cont.sigma.powi(2) * dt) - 1.0).abs() < 1e-5);
    assert!((m.cov_x_return / (cont.rho * cont.sigma * cont.zeta * dt) - 1.0).abs() < 1e-5);
}
