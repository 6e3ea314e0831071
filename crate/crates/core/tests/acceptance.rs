//! End-to-end acceptance checks. Each test prints a single `criterion N:
//! PASS/FAIL` line (visible with `cargo test --test acceptance -- --nocapture`)
//! and then asserts, so a regression both fails the suite and labels itself.

use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use restriction_lab::experiments::{
    classify_region, default_deltas, default_lambdas, dilation_p_probe,
    dimension_independence, grid_range, knapp_sweep, ratio, tensor_factorization_check,
    RegionConfig,
};
use restriction_lab::extension::{
    bessel_j0, bessel_j0_first_zero, extension_operator, lp_tail_probe, GrowthClass,
};
use restriction_lab::fourier::{numeric_ft, OracleConfig};
use restriction_lab::functions::TestFunction;
use restriction_lab::geometry::TorusGrid;
use restriction_lab::norms::minkowski_check;
use restriction_lab::ExponentPair64;

fn report(criterion: u32, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion}: {detail}");
}

#[test]
fn criterion_1_region_classification_agrees_with_the_predicate() {
    let start = Instant::now();
    let p_grid = grid_range(1.0, 1.6, 0.05).unwrap();
    let q_grid = grid_range(1.0, 4.0, 0.05).unwrap();
    let table = classify_region(&p_grid, &q_grid, &RegionConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let ok = table.agreement == 1.0
        && table.non_boundary > 0
        && table.cells.len() == p_grid.len() * q_grid.len()
        && elapsed.as_secs_f64() < 120.0;
    report(
        1,
        ok,
        &format!(
            "agreement {:.1}% on {}/{} non-boundary cells in {:.2}s (limit 120s)",
            100.0 * table.agreement,
            table.non_boundary,
            table.cells.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_cap_growth_rates_match_the_exponent_formula() {
    let start = Instant::now();
    let deltas = default_deltas::<f64>();
    let pairs = [
        (1.0, 1.0),
        (1.2, 1.0),
        (1.25, 1.2),
        (1.2, 3.0),
        (1.25, 4.0),
        (1.3, 3.0),
    ];
    let mut ok = true;
    let mut worst_gap = 0.0f64;
    let mut worst_res = 0.0f64;
    for (p, q) in pairs {
        let pair = ExponentPair64::new(p, q).unwrap();
        let sweep = knapp_sweep(&pair, &deltas, 2, None).unwrap();
        let expected_growth = 2.0 * (3.0 * (1.0 - 1.0 / p) - 1.0 / q);
        let gap = (sweep.blowup_slope - expected_growth).abs();
        worst_gap = worst_gap.max(gap);
        worst_res = worst_res.max(sweep.residual_rms);
        ok &= gap <= 0.05 && sweep.residual_rms < 0.05;
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 30.0;
    report(
        2,
        ok,
        &format!(
            "6 exponent pairs, worst slope gap {worst_gap:.4} (tol 0.05), worst residual \
             {worst_res:.4} (tol 0.05), in {:.2}s (limit 30s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_3_tail_probe_reproduces_the_integrability_trichotomy() {
    let start = Instant::now();
    let ladder = |rmax: f64| -> Vec<f64> {
        (0..=4).map(|i| rmax / f64::powi(2.0, 4 - i)).collect()
    };
    let cases = [
        (3.5, 200.0, GrowthClass::Polynomial),
        (4.0, 400.0, GrowthClass::Logarithmic),
        (4.5, 200.0, GrowthClass::Converged),
    ];
    let mut ok = true;
    let mut labels = Vec::new();
    for (p_prime, rmax, want) in cases {
        for factors in [1usize, 2] {
            let probe = lp_tail_probe(p_prime, &ladder(rmax), factors, 24).unwrap();
            let monotone = probe
                .truncated_norms
                .windows(2)
                .all(|w| w[1] >= w[0] - 1e-12);
            ok &= probe.growth_class == want && monotone;
            if factors == 1 {
                labels.push(format!("p'={p_prime}: {}", probe.growth_class));
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs_f64() < 60.0;
    report(
        3,
        ok,
        &format!(
            "{} at both factor counts, monotone truncations, in {:.2}s (limit 60s)",
            labels.join(", "),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_4_surface_quadrature_matches_the_bessel_kernel() {
    let grid = TorusGrid::<f64>::new(1, 256).unwrap();
    let unit = |_: &[f64]| Complex::new(1.0, 0.0);
    let mut ok = true;
    let mut worst = 0.0f64;
    for r in [0.5, 1.0, 2.0, 5.0, 10.0] {
        let got = extension_operator(unit, &[r, 0.0], &grid).unwrap();
        let want = bessel_j0(2.0 * std::f64::consts::PI * r).unwrap();
        let gap = (got - Complex::new(want, 0.0)).norm();
        worst = worst.max(gap);
        ok &= gap <= 1e-10;
    }
    let zero: f64 = bessel_j0_first_zero();
    let zero_gap = (zero - 2.404_825_557_695_773).abs();
    ok &= zero_gap <= 1e-9;
    report(
        4,
        ok,
        &format!(
            "kernel agreement to {worst:.2e} (tol 1e-10) at 5 radii, first zero off by \
             {zero_gap:.2e} (tol 1e-9)"
        ),
    );
}

#[test]
fn criterion_5_tensor_ratios_factor_across_circles() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let draw = |rng: &mut ChaCha8Rng| -> TestFunction<f64> {
        if rng.random_bool(0.5) {
            TestFunction::gaussian(rng.random_range(0.6..1.6), 2).unwrap()
        } else {
            TestFunction::knapp_tube(
                rng.random_range(0.075..0.25),
                rng.random_range(0.0..1.0),
            )
            .unwrap()
        }
    };
    let mut ok = true;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = draw(&mut rng);
        let h = draw(&mut rng);
        let p = rng.random_range(1.0..1.35);
        let q = rng.random_range(1.0..4.0);
        let pair = ExponentPair64::new(p, q).unwrap();
        let gap = tensor_factorization_check(&g, &h, &pair, 64).unwrap();
        worst = worst.max(gap);
        ok &= gap < 1e-10;
    }
    report(
        5,
        ok,
        &format!("20 random factor pairs, worst relative gap {worst:.2e} (tol 1e-10)"),
    );
}

#[test]
fn criterion_6_norm_interchange_holds_on_random_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut ok = true;
    let mut worst_violation = 0.0f64;
    for trial in 0..1000 {
        let ns = rng.random_range(2..5usize);
        let na = rng.random_range(2..5usize);
        let values: Vec<f64> = (0..ns * na).map(|_| rng.random_range(0.0..10.0)).collect();
        let sw: Vec<f64> = (0..ns).map(|_| rng.random_range(0.01..1.0)).collect();
        let aw: Vec<f64> = (0..na).map(|_| rng.random_range(0.01..1.0)).collect();
        let p = rng.random_range(1.0..3.0);
        let q = p + rng.random_range(0.0..2.0);
        let rep = minkowski_check(&values, &sw, &aw, p, q).unwrap();
        let violation = (rep.lhs - rep.rhs) / rep.rhs.max(1e-300);
        worst_violation = worst_violation.max(violation);
        ok &= rep.holds && rep.guaranteed;

        // Exponent-equality and separable cases collapse to equalities.
        if trial < 100 {
            let eq = minkowski_check(&values, &sw, &aw, p, p).unwrap();
            ok &= (eq.lhs - eq.rhs).abs() <= 1e-14 * eq.rhs.max(1.0);
            let row: Vec<f64> = (0..na).map(|_| rng.random_range(0.0..3.0)).collect();
            let col: Vec<f64> = (0..ns).map(|_| rng.random_range(0.0..3.0)).collect();
            let sep: Vec<f64> = col
                .iter()
                .flat_map(|&c| row.iter().map(move |&r| c * r))
                .collect();
            let se = minkowski_check(&sep, &sw, &aw, p, q).unwrap();
            ok &= (se.lhs - se.rhs).abs() <= 1e-14 * se.rhs.max(1.0);
        }
    }
    report(
        6,
        ok,
        &format!(
            "1000 random arrays hold (worst signed violation {worst_violation:.2e} vs slack \
             1e-12), equality cases within 1e-14"
        ),
    );
}

#[test]
fn criterion_7_classification_is_dimension_independent() {
    let start = Instant::now();
    let p_grid = grid_range(1.0, 1.6, 0.05).unwrap();
    let q_grid = grid_range(1.0, 4.0, 0.05).unwrap();
    let report_nd =
        dimension_independence(&[1, 2, 3], &p_grid, &q_grid, &RegionConfig::default())
            .unwrap();
    let elapsed = start.elapsed();
    let ok = report_nd.identical && elapsed.as_secs_f64() < 300.0;
    report(
        7,
        ok,
        &format!(
            "factor counts 1, 2, 3 give identical tables ({} cells) in {:.2}s (limit 300s){}",
            report_nd.runs[0].cells.len(),
            elapsed.as_secs_f64(),
            match report_nd.first_divergence {
                Some((p, q)) => format!("; first divergence at ({p}, {q})"),
                None => String::new(),
            }
        ),
    );
}

#[test]
fn criterion_8_closed_forms_match_the_quadrature_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let gaussian = TestFunction::gaussian(0.8, 2).unwrap();
    let tube = TestFunction::knapp_tube(0.25, 0.37).unwrap();
    let mixed = TestFunction::tensor(vec![
        TestFunction::knapp_tube(0.2, 0.1).unwrap(),
        TestFunction::gaussian(1.1, 2).unwrap(),
    ])
    .unwrap();
    let families: [(&TestFunction<f64>, OracleConfig<f64>, &str); 3] = [
        (
            &gaussian,
            OracleConfig {
                radius: 6.0,
                nodes_per_axis: 128,
            },
            "gaussian",
        ),
        (
            &tube,
            OracleConfig {
                radius: 6.0,
                nodes_per_axis: 64,
            },
            "tube",
        ),
        (
            &mixed,
            OracleConfig {
                radius: 3.5,
                nodes_per_axis: 48,
            },
            "tensor",
        ),
    ];
    let mut ok = true;
    let mut worst = 0.0f64;
    for (f, cfg, _name) in &families {
        let peak = f.lp_norm_closed_form(1.0).unwrap();
        for _ in 0..20 {
            // Frequencies of Euclidean length up to 2, any direction.
            let mut xi: Vec<f64> = (0..f.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let len = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
            let target = rng.random_range(0.0..2.0);
            for v in xi.iter_mut() {
                *v *= target / len.max(1e-9);
            }
            let want = f.fourier_closed_form(&xi).unwrap();
            let got = numeric_ft(f, &xi, cfg).unwrap();
            let rel = (got - want).norm() / want.norm().max(1e-4 * peak);
            worst = worst.max(rel);
            ok &= rel <= 1e-8;
        }
    }
    // Plancherel: the transform of a Gaussian has the same L² norm.
    let mut worst_plancherel = 0.0f64;
    for (s, d) in [(0.5f64, 2usize), (1.0, 4), (2.0, 2), (1.3, 4)] {
        let f = TestFunction::gaussian(s, d).unwrap();
        let fhat_l2 = s.powi(d as i32)
            * TestFunction::gaussian(1.0 / s, d)
                .unwrap()
                .lp_norm_closed_form(2.0)
                .unwrap();
        let gap = (f.lp_norm_closed_form(2.0).unwrap() - fhat_l2).abs()
            / f.lp_norm_closed_form(2.0).unwrap();
        worst_plancherel = worst_plancherel.max(gap);
        ok &= gap <= 1e-12;
    }
    report(
        8,
        ok,
        &format!(
            "60 random frequencies across 3 families, worst relative gap {worst:.2e} \
             (tol 1e-8); Plancherel gap {worst_plancherel:.2e} (tol 1e-12)"
        ),
    );
}

#[test]
fn ratio_helper_reproduces_the_constant_gaussian_value() {
    // A cheap cross-check that the acceptance harness drives the same public
    // API the sweeps use.
    let grid = TorusGrid::<f64>::new(2, 16).unwrap();
    let f = TestFunction::gaussian(1.0, 4).unwrap();
    let pair = ExponentPair64::new(2.0, 2.0).unwrap();
    let r = ratio(&f, &pair, &grid).unwrap();
    let expect = 2.0 * (-2.0 * std::f64::consts::PI).exp();
    assert!((r - expect).abs() <= 1e-12 * expect);
    // The shell probe API stays wired up as well.
    let pair11 = ExponentPair64::new(1.0, 1.0).unwrap();
    let probe = dilation_p_probe(&pair11, &default_lambdas(), 1).unwrap();
    assert!(probe.blowup_slope < 0.0);
}
