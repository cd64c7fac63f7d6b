use internodal::analysis::quadrature::integrate_piecewise;
use internodal::analysis::{mixture_pdf_oracle, MixtureOracle};
use internodal::closedform::{pdf, pdf_2d_equal, pdf_2d_general, pdf_3d_equal, pdf_3d_general, pdf_curve};
use internodal::validation::{corollary_gap, oracle_max_deviation};
use internodal::{ClosedForm, Dimension, DistanceDensity, NetworkConfig, Scenario};

fn general() -> Vec<NetworkConfig> {
    NetworkConfig::reference_set().into_iter().filter(|c| !c.equal_radius()).collect()
}

#[test]
fn normalization_all_sixteen() {
    for cfg in NetworkConfig::reference_set() {
        let m = ClosedForm::new(cfg).unwrap();
        let total = integrate_piecewise(|r| m.pdf(r), 0.0, cfg.r_plus(), &cfg.breakpoints(), 1e-12).unwrap();
        assert!((total - 1.0).abs() < 1e-9, "{cfg}: {total}");
    }
}

#[test]
fn oracle_agrees_on_thousand_point_grids() {
    for cfg in NetworkConfig::reference_set() {
        let m = ClosedForm::new(cfg).unwrap();
        let dev = oracle_max_deviation(&m, 1000).unwrap();
        assert!(dev < 1e-8, "{cfg}: {dev}");
    }
}

#[test]
fn oracle_agrees_for_wide_and_narrow_radius_ratios() {
    for (r1, r2) in [(0.01, 1.0), (0.2, 3.0), (0.7, 3.1), (0.999, 1.0)] {
        for dim in Dimension::ALL {
            for s in Scenario::ALL {
                let cfg = NetworkConfig::new(dim, s, r1, r2).unwrap();
                let m = ClosedForm::new(cfg).unwrap();
                let dev = oracle_max_deviation(&m, 400).unwrap();
                assert!(dev < 1e-8, "{cfg}: {dev}");
            }
        }
    }
}

#[test]
fn oracle_agrees_beyond_the_outer_radius() {
    for cfg in general() {
        let m = ClosedForm::new(cfg).unwrap();
        for k in 1..50 {
            let r = cfg.r2 + (cfg.r_plus() - cfg.r2) * k as f64 / 50.0;
            let o = mixture_pdf_oracle(cfg, r).unwrap();
            assert!((o - m.pdf(r)).abs() < 1e-8, "{cfg} r={r}");
        }
    }
}

#[test]
fn oracle_itself_is_normalized() {
    for cfg in NetworkConfig::reference_set() {
        let o = MixtureOracle::new(cfg).unwrap();
        let total = integrate_piecewise(|r| o.pdf(r), 0.0, cfg.r_plus(), &cfg.breakpoints(), 1e-10).unwrap();
        assert!((total - 1.0).abs() < 1e-8, "{cfg}: {total}");
    }
}

#[test]
fn branches_meet_and_edges_vanish() {
    for cfg in general() {
        let m = ClosedForm::new(cfg).unwrap();
        let (inner, outer) = m.branch_values(cfg.r_minus());
        assert!((inner.unwrap() - outer).abs() < 1e-9, "{cfg}");
        assert!(m.pdf(cfg.r_plus()).abs() < 1e-9);
        assert!(m.pdf(cfg.r_plus() * (1.0 - 1e-12)).abs() < 1e-9, "{cfg}");
    }
}

#[test]
fn corollary_is_the_equal_radius_limit() {
    for dim in Dimension::ALL {
        for s in Scenario::ALL {
            let cfg = NetworkConfig::new(dim, s, 1.0, 1.0).unwrap();
            let gap = corollary_gap(&cfg, 1e-6).unwrap();
            assert!(gap < 1e-4, "{cfg}: {gap}");
        }
    }
    // also direct, at a non-unit radius
    let r = 2.5;
    for s in Scenario::ALL {
        for k in 1..100 {
            let x = 2.0 * r * k as f64 / 100.0;
            let a = pdf_2d_general(s, r * (1.0 - 1e-6), r, x).unwrap();
            assert!((a - pdf_2d_equal(s, r, x).unwrap()).abs() < 1e-4);
            let b = pdf_3d_general(s, r * (1.0 - 1e-6), r, x).unwrap();
            assert!((b - pdf_3d_equal(s, r, x).unwrap()).abs() < 1e-4);
        }
    }
}

#[test]
fn nonnegative_on_fine_grids() {
    for cfg in NetworkConfig::reference_set() {
        let m = ClosedForm::new(cfg).unwrap();
        let min = (0..=10_000).map(|k| m.pdf(cfg.r_plus() * k as f64 / 10_000.0)).fold(f64::INFINITY, f64::min);
        assert!(min >= -1e-12, "{cfg}: {min}");
    }
}

#[test]
fn scale_covariance() {
    for cfg in NetworkConfig::reference_set() {
        for c in [0.1, 10.0] {
            let scaled = cfg.scaled(c).unwrap();
            for k in 0..=200 {
                let r = cfg.r_plus() * k as f64 / 200.0;
                let a = pdf(scaled, c * r).unwrap() * c;
                let b = pdf(cfg, r).unwrap();
                assert!((a - b).abs() < 1e-12 * b.abs().max(1.0), "{cfg} c={c} r={r}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn dispatch_outside_support() {
    let c = NetworkConfig::new(Dimension::Spatial3D, Scenario::S2, 1.0, 2.0).unwrap();
    assert_eq!(pdf(c, -1.0).unwrap(), 0.0);
    let c = NetworkConfig::new(Dimension::Planar2D, Scenario::S1, 1.0, 2.0).unwrap();
    assert_eq!(pdf(c, 3.5).unwrap(), 0.0);
    let c = NetworkConfig::new(Dimension::Planar2D, Scenario::S4, 1.0, 1.0).unwrap();
    assert_eq!(pdf(c, 1.0).unwrap(), pdf_2d_equal(Scenario::S4, 1.0, 1.0).unwrap());
}

#[test]
fn curves_are_valid() {
    for cfg in NetworkConfig::reference_set() {
        let c = pdf_curve(cfg, 4097).unwrap();
        assert!(c.grid.windows(2).all(|w| w[0] < w[1]));
        assert!(c.values.iter().all(|&v| v >= 0.0));
        assert_eq!(*c.grid.last().unwrap(), cfg.r_plus());
        let trap: f64 =
            c.grid.windows(2).zip(c.values.windows(2)).map(|(g, v)| (g[1] - g[0]) * (v[0] + v[1]) / 2.0).sum();
        assert!((trap - 1.0).abs() < 1e-5, "{cfg}: {trap}");
    }
}
