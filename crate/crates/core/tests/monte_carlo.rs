use internodal::analysis::{moment, quantile};
use internodal::montecarlo::{rwp_density_crosscheck, simulate, simulate_detailed, validate};
use internodal::{Dimension, NetworkConfig, Scenario};

const N: usize = 1_000_000;

fn cfg(dim: Dimension, s: Scenario, r1: f64, r2: f64) -> NetworkConfig {
    NetworkConfig::new(dim, s, r1, r2).unwrap()
}

#[test]
fn empirical_moments_converge_for_all_configs() {
    for (i, c) in NetworkConfig::reference_set().into_iter().enumerate() {
        let m: Vec<f64> = (0..=4).map(|k| moment(c, k).unwrap()).collect();
        let s = simulate(c, N, 1000 + i as u64, 10).unwrap();
        let sd1 = ((m[2] - m[1] * m[1]) / N as f64).sqrt();
        let sd2 = ((m[4] - m[2] * m[2]) / N as f64).sqrt();
        assert!((s.mean - m[1]).abs() < 5.0 * sd1, "{c}: mean {} vs {}", s.mean, m[1]);
        assert!((s.second_moment - m[2]).abs() < 5.0 * sd2, "{c}: E[r^2] {} vs {}", s.second_moment, m[2]);
        assert_eq!(s.histogram.total(), N as u64);
    }
}

#[test]
fn disk_line_picking_mean() {
    let c = cfg(Dimension::Planar2D, Scenario::S4, 1.0, 1.0);
    let exact = 128.0 / (45.0 * std::f64::consts::PI);
    assert!((moment(c, 1).unwrap() - exact).abs() < 1e-10);
    let s = simulate(c, N, 5, 10).unwrap();
    let sd = ((moment(c, 2).unwrap() - exact * exact) / N as f64).sqrt();
    assert!((s.mean - exact).abs() < 3.0 * sd);
}

#[test]
fn spatial_second_moment_within_three_sigma() {
    let c = cfg(Dimension::Spatial3D, Scenario::S1, 1.0, 2.0);
    let (m2, m4) = (moment(c, 2).unwrap(), moment(c, 4).unwrap());
    let s = simulate(c, N, 6, 10).unwrap();
    assert!((s.second_moment - m2).abs() < 3.0 * ((m4 - m2 * m2) / N as f64).sqrt());
}

#[test]
fn median_matches_cdf_inverse() {
    let c = cfg(Dimension::Planar2D, Scenario::S4, 1.0, 1.0);
    let sim = simulate_detailed(c, N, 8, 10, None).unwrap();
    let empirical = 0.5 * (sim.sorted[N / 2 - 1] + sim.sorted[N / 2]);
    assert!((empirical - quantile(c, 0.5).unwrap()).abs() < 0.002);
}

#[test]
fn ks_below_critical_value() {
    let c = cfg(Dimension::Planar2D, Scenario::S1, 1.0, 2.0);
    assert!(simulate(c, N, 7, 100).unwrap().ks_statistic < 0.002);
}

#[test]
fn thread_count_does_not_change_results() {
    let c = cfg(Dimension::Spatial3D, Scenario::S3, 1.0, 2.0);
    let runs: Vec<String> = [Some(1), Some(3), None]
        .into_iter()
        .map(|t| serde_json::to_string(&simulate_detailed(c, 100_000, 42, 100, t).unwrap().summary).unwrap())
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn validation_reports_both_statistics() {
    let c = cfg(Dimension::Planar2D, Scenario::S4, 1.0, 2.0);
    let v = validate(c, 10_000, 3, None).unwrap();
    assert!((v.ks_threshold - 0.0163).abs() < 1e-12);
    assert!(v.passed);
    assert!(v.ks_beta > 0.0 && v.ks_beta < 1.0);
    assert!(validate(c, 9_999, 3, None).is_err());
}

#[test]
fn waypoint_cross_check() {
    for dim in Dimension::ALL {
        let small = rwp_density_crosscheck(dim, 1.0, 100_000, 9, None).unwrap();
        let large = rwp_density_crosscheck(dim, 1.0, N, 9, None).unwrap();
        println!("{dim}: TV {:.4} at 1e5, {:.4} at 1e6", small.tv_distance, large.tv_distance);
        // more samples must not make the agreement worse beyond noise
        assert!(large.tv_distance <= small.tv_distance + 0.01);
        assert!(large.tv_distance < 0.1);
    }
    let spatial = rwp_density_crosscheck(Dimension::Spatial3D, 1.0, N, 9, None).unwrap();
    assert!(spatial.within_threshold, "{}", spatial.tv_distance);
}
