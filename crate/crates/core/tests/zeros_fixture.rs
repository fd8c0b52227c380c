//! The shipped ordinate fixture: first 649 critical-line zeros (gamma <
//! 1000), generated by the test-suite Hardy-Z locator and validated here on
//! every run. `regenerate_zeros_fixture` rebuilds the file; it is ignored by
//! default because the committed fixture is part of the repository.

mod common;

use std::io::Write;

use zeta_edge_core::engine::zeta::zeta_reference;
use zeta_edge_core::engine::ComplexPoint;
use zeta_edge_core::zerolab::ingest_zeros;

/// First three ordinates, standard table values.
const FIRST_THREE: [f64; 3] = [14.134725141734694, 21.022039638771555, 25.010857580145688];

/// Zeros with gamma < 1000.
const EXPECTED_COUNT: usize = 649;

#[test]
#[ignore = "rebuilds the committed fixture; run explicitly when regenerating"]
fn regenerate_zeros_fixture() {
    let zeros = common::find_zero_ordinates(10.0, 1000.0);
    assert_eq!(zeros.len(), EXPECTED_COUNT);
    for (got, want) in zeros.iter().zip(FIRST_THREE) {
        assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    }
    let path = common::zeros_fixture_path();
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(
        f,
        "# ordinates of the first {EXPECTED_COUNT} nontrivial zeta zeros (0 < gamma < 1000)"
    )
    .unwrap();
    writeln!(f, "# one ordinate per line, ascending; beta = 1/2 implied").unwrap();
    writeln!(
        f,
        "# located by Hardy-Z sign changes over Euler-Maclaurin zeta; accuracy ~1e-10"
    )
    .unwrap();
    for z in &zeros {
        writeln!(f, "{z:.12}").unwrap();
    }
}

#[test]
fn fixture_present_and_counts() {
    let ds = ingest_zeros(&common::zeros_fixture_path(), f64::INFINITY).expect("fixture readable");
    assert_eq!(ds.len(), EXPECTED_COUNT);
    for (z, want) in ds.zeros().iter().zip(FIRST_THREE) {
        assert!((z.gamma - want).abs() < 1e-8, "{} vs {want}", z.gamma);
    }
    assert!(ds.gamma_max() < 1000.0);
    // 29 ordinates below 100, a standard table value
    assert_eq!(ds.zeros().iter().filter(|z| z.gamma < 100.0).count(), 29);
}

#[test]
fn fixture_ordinates_really_vanish() {
    let ds = ingest_zeros(&common::zeros_fixture_path(), f64::INFINITY).unwrap();
    for z in ds.zeros().iter().step_by(60).chain(ds.zeros().last()) {
        let v = zeta_reference(ComplexPoint::new(0.5, z.gamma)).unwrap();
        assert!(
            v.norm() < 1e-6,
            "gamma = {}: |zeta| = {}",
            z.gamma,
            v.norm()
        );
    }
}

#[test]
fn fixture_count_matches_theta_main_term() {
    // N(T) = theta(T)/pi + 1 + S(T) with |S| small at this height
    let ds = ingest_zeros(&common::zeros_fixture_path(), f64::INFINITY).unwrap();
    let estimate = common::riemann_siegel_theta(1000.0) / std::f64::consts::PI + 1.0;
    assert!((ds.len() as f64 - estimate).abs() < 2.5);
}
