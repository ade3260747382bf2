//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).
//! Thresholds are pinned here and inside the verify suites; the seeds are
//! fixed so every run is reproducible.

use std::time::Instant;

use symkit::verify;

const SEED: u64 = 7;

fn report(criterion: &str, suite: verify::SuiteReport) {
    let mut pass = true;
    let mut worst: f64 = 0.0;
    for check in &suite.checks {
        pass &= check.pass;
        worst = worst.max(check.max_deviation);
        assert!(
            check.pass,
            "criterion {criterion}: '{}' deviated {:.3e} beyond {:.3e}",
            check.property, check.max_deviation, check.threshold
        );
    }
    println!(
        "[{}] criterion {criterion} (worst deviation {:.3e})",
        if pass { "PASS" } else { "FAIL" },
        worst
    );
}

#[test]
fn criterion_01_closed_form_contraction() {
    let start = Instant::now();
    let suite = verify::closed_form_flow(SEED);

    // Frozen value for the x = 2 branch: sqrt(2^2 - 2^-2).
    let b = symkit::contraction::Sl2c::new(
        nalgebra::Matrix2::new(
            num_complex::Complex64::new(2.0, 0.0),
            num_complex::Complex64::new(0.0, 0.0),
            num_complex::Complex64::new(0.0, 0.0),
            num_complex::Complex64::new(0.5, 0.0),
        ),
        1e-9,
    )
    .unwrap();
    let out = symkit::contraction::su2_flow_closed_form(&b);
    assert!((out[(0, 0)].re - 1.936_491_673_103_708_5).abs() < 1e-9);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    report("1 (closed-form contraction)", suite);
}

#[test]
fn criterion_02_numerical_vs_closed_form() {
    let start = Instant::now();
    let suite = verify::flow_agreement(SEED);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "took {elapsed:?}, budget 30 s"
    );
    report("2 (numerical flow agreement)", suite);
}

#[test]
fn criterion_03_phi_separation() {
    report("3 (phi separation)", verify::phi_separation(SEED));
}

#[test]
fn criterion_04_quadric_and_minimal_orbit() {
    report(
        "4 (quadric and minimal orbit)",
        verify::quadric_minors(SEED),
    );
}

#[test]
fn criterion_05_weyl_arrangement_combinatorics() {
    report(
        "5 (Weyl-arrangement combinatorics)",
        verify::arrangement_combinatorics(SEED).expect("suite runs"),
    );
}

#[test]
fn criterion_06_weyl_equivariance() {
    report(
        "6 (moment-map equivariance)",
        verify::weyl_equivariance(SEED).expect("suite runs"),
    );
}

#[test]
fn criterion_07_nilpotent_cone() {
    report(
        "7 (nilpotent cone)",
        verify::nilpotent_cone(SEED).expect("suite runs"),
    );
}

#[test]
fn criterion_08_real_moment_solver() {
    report(
        "8 (real-moment solver)",
        verify::real_moment_solver(SEED).expect("solver converges"),
    );
}

#[test]
fn criterion_09_dimension_arithmetic() {
    report(
        "9 (dimension arithmetic)",
        verify::dimension_arithmetic(SEED).expect("suite runs"),
    );
}

#[test]
fn criterion_10_nahm_integration() {
    report(
        "10 (Nahm integration)",
        verify::nahm_convergence(SEED).expect("suite runs"),
    );
}

#[test]
fn criterion_11_psi_well_definedness() {
    report(
        "11 (psi well-definedness)",
        verify::psi_borel(SEED).expect("suite runs"),
    );
}
