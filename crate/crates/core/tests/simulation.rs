use sharpe_horizon::var_kernel::{simulate_paths, DiscreteVarParams};

fn mean_var(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    (m, v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0))
}

#[test]
fn predictor_moments_match_the_ar1_law() {
    let p = DiscreteVarParams::brandt();
    let stat = p.z_unconditional().unwrap();
    let (n, horizon) = (100_000, 40);
    let z0 = stat.mean - 0.2;
    let batch = simulate_paths(&p, n, horizon, z0, 11).unwrap();

    // Conditional law of z_T given z_0.
    let decay = p.b_z.powi(horizon as i32);
    let mean = stat.mean + decay * (z0 - stat.mean);
    let var = stat.variance * (1.0 - decay * decay);

    let (m, v) = mean_var(batch.predictor_at(horizon));
    let n = n as f64;
    assert!((m - mean).abs() < 4.0 * (var / n).sqrt(), "mean {m} vs {mean}");
    assert!((v - var).abs() < 4.0 * var * (2.0 / n).sqrt(), "variance {v} vs {var}");
}

#[test]
fn innovation_correlation() {
    let p = DiscreteVarParams::brandt();
    let (n, horizon) = (10_000, 100);
    let batch = simulate_paths(&p, n, horizon, p.z_unconditional().unwrap().mean, 3).unwrap();
    let (mut er, mut ez) = (Vec::with_capacity(n * horizon), Vec::with_capacity(n * horizon));
    for t in 0..horizon {
        let (zs, ze, r) = (batch.predictor_at(t), batch.predictor_at(t + 1), batch.excess_at(t));
        for i in 0..n {
            er.push(r[i] - p.a_r - p.b_r * zs[i]);
            ez.push(ze[i] - p.a_z - p.b_z * zs[i]);
        }
    }
    let (mr, vr) = mean_var(&er);
    let (mz, vz) = mean_var(&ez);
    let cov = er.iter().zip(&ez).map(|(a, b)| (a - mr) * (b - mz)).sum::<f64>() / (er.len() as f64 - 1.0);
    let corr = cov / (vr * vz).sqrt();
    let target = p.cov_rz / (p.var_r * p.var_z).sqrt();
    assert!((corr - target).abs() < 0.01, "{corr} vs {target}");
    assert!((vr / p.var_r - 1.0).abs() < 0.01);
    assert!((vz / p.var_z - 1.0).abs() < 0.01);
}

#[test]
fn fixed_seed_is_reproducible_and_paths_are_independent_of_batch_size() {
    let p = DiscreteVarParams::brandt();
    let a = simulate_paths(&p, 300, 12, -3.7, 5).unwrap();
    let b = simulate_paths(&p, 300, 12, -3.7, 5).unwrap();
    assert_eq!(a, b);

    let small = simulate_paths(&p, 100, 12, -3.7, 5).unwrap();
    for t in 0..12 {
        assert_eq!(small.excess_at(t), &a.excess_at(t)[..100]);
    }
    let other = simulate_paths(&p, 300, 12, -3.7, 6).unwrap();
    assert_ne!(a.excess_at(0), other.excess_at(0));
}
