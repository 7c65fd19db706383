//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trigmie::analysis::{
    cumulative_error, per_mode_relative_error, pointwise_error_sweep, SweepConfig, SweepFamily,
    DEFAULT_POINTS_PER_PI,
};
use trigmie::bench::{bench_sweep, BenchConfig};
use trigmie::mie::{
    an_bn_homogeneous, an_bn_layered, cross_sections, default_n_max, experiment_n_max,
    mode_coefficients, HomogeneousSphere, LayeredSphere, Sphere,
};
use trigmie::special::{chi, chi_asymptotic, psi, psi_asymptotic, psi_fraunhofer, riccati_pair};
use trigmie::trig::approx_cross_section;
use trigmie::uncertainty::{
    convergence_study, reference_experiments, Evaluator, ForwardModel, Integrand, Rect,
    CONVERGENCE_ORDERS, REFERENCE_SHELL,
};
use trigmie::{Execution, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_layered(r: &mut ChaCha8Rng, m_range: (f64, f64)) -> LayeredSphere {
    let y = r.gen_range(1.0..100.0);
    let x = y * r.gen_range(0.05..1.0);
    let m1 = r.gen_range(m_range.0..m_range.1);
    let m2 = r.gen_range(m_range.0..m_range.1);
    LayeredSphere::new(x, m1, y, m2).unwrap()
}

fn circular_law() -> Result<Outcome> {
    let start = Instant::now();
    let mut r = rng(1);
    let mut worst = 0.0_f64;
    for _ in 0..10_000 {
        let x: f64 = r.gen_range(1.0..100.0);
        let m = r.gen_range(1.05..2.0);
        let n = r.gen_range(1..=(x.floor() as usize).min(30));
        let c = an_bn_homogeneous(&HomogeneousSphere::new(x, m)?, n)?;
        let (ra, rb) = c.circular_residuals();
        worst = worst.max(ra.abs()).max(rb.abs());
    }
    for _ in 0..1_000 {
        let s = random_layered(&mut r, (1.05, 2.0));
        let n = r.gen_range(1..=(s.y().floor() as usize).min(30));
        let (ra, rb) = an_bn_layered(&s, n)?.circular_residuals();
        worst = worst.max(ra.abs()).max(rb.abs());
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && elapsed < Duration::from_secs(10),
        format!(
            "max |residual| = {worst:.2e} over 10000 homogeneous + 1000 layered (bound 1e-9), {:.2} s (bound 10 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn energy_balance() -> Result<Outcome> {
    let mut r = rng(2);
    let mut worst = 0.0_f64;
    let mut check = |s: Sphere| -> Result<()> {
        let cs = cross_sections(&s, 1.0, default_n_max(s.outer_size()))?;
        worst = worst.max((cs.mode_sum_ext - cs.mode_sum_sca).abs() / cs.mode_sum_sca);
        Ok(())
    };
    for _ in 0..100 {
        let x = r.gen_range(1.0..100.0);
        let m = r.gen_range(1.05..2.0);
        check(HomogeneousSphere::new(x, m)?.into())?;
    }
    for _ in 0..100 {
        check(random_layered(&mut r, (1.05, 2.0)).into())?;
    }
    outcome(
        worst <= 1e-8,
        format!("max relative |ext - sca| = {worst:.2e} over 200 spheres at full truncation (bound 1e-8)"),
    )
}

fn oracle_equivalence() -> Result<Outcome> {
    let mut r = rng(3);
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let x = r.gen_range(1.0..100.0);
        let m = r.gen_range(1.05..2.0);
        let c = an_bn_homogeneous(&HomogeneousSphere::new(x, m)?, 1)?;
        let (a, b) = common::mie_log_derivative(x, m, 1)[0];
        worst = worst
            .max(common::relative_error(c.a, a))
            .max(common::relative_error(c.b, b));
    }
    outcome(
        worst <= 1e-9,
        format!("max relative deviation of a_1, b_1 from log-derivative oracle = {worst:.2e} at 50 points (bound 1e-9)"),
    )
}

fn error_structure() -> Result<Outcome> {
    let config = SweepConfig::new(SweepFamily::ConstantPath { c: 100.0 }, 1, (10.0, 100.0));
    let curve = pointwise_error_sweep(&config, Execution::default())?;
    let max = curve.max_abs_error();
    let changes = curve.sign_changes();
    let signed = cumulative_error(&curve)?.abs();
    let absolute = curve.absolute_integral();
    outcome(
        max <= 1.0 && changes >= 10 && signed <= 0.2 * absolute,
        format!(
            "mx = 100, n = 1: max |error| = {max:.3}, {changes} sign changes (>= 10), |int error| / int |error| = {:.4} (<= 0.2), {} points",
            signed / absolute,
            curve.len()
        ),
    )
}

fn per_mode_error() -> Result<Outcome> {
    let errors = per_mode_relative_error(1..=20, DEFAULT_POINTS_PER_PI, Execution::default())?;
    let worst = errors
        .iter()
        .max_by(|a, b| a.relative_error.total_cmp(&b.relative_error))
        .unwrap();
    let over: Vec<String> = errors
        .iter()
        .filter(|e| e.relative_error > 0.25)
        .map(|e| format!("n = {}: {:.4}", e.n, e.relative_error))
        .collect();
    let rest = errors
        .iter()
        .filter(|e| e.relative_error <= 0.25)
        .map(|e| e.relative_error)
        .fold(0.0, f64::max);
    outcome(
        over.is_empty(),
        format!(
            "worst n = {} at {:.4} (bound 0.25); over bound: [{}]; max of the rest {rest:.4}",
            worst.n,
            worst.relative_error,
            over.join(", ")
        ),
    )
}

fn distribution_experiments() -> Result<Outcome> {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for e in reference_experiments()? {
        let f = Integrand::new(e.model, Evaluator::Exact, 1.0, experiment_n_max());
        let study = convergence_study(&e.distribution, &f, &CONVERGENCE_ORDERS, Execution::default())?;
        let rel = study.finest().relative_error();
        let oe = study.self_converged_order(Evaluator::Exact, 0.01);
        let oa = study.self_converged_order(Evaluator::Approx, 0.01);
        pass &= rel <= 0.01 && oe == oa;
        parts.push(format!("{} {:.2e} ({oe}/{oa})", e.name, rel));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(120);
    outcome(
        pass,
        format!(
            "relative |I_approx - I_exact| at 128x128 (self-converged order exact/approx): {}; {:.2} s (bound 120 s)",
            parts.join(", "),
            elapsed.as_secs_f64()
        ),
    )
}

fn speedup() -> Result<Outcome> {
    let config = BenchConfig::default();
    let cases = [
        ("homogeneous", ForwardModel::Homogeneous, Rect::new((10.0, 20.0), (1.2, 1.8))?),
        ("layered", REFERENCE_SHELL, Rect::new((40.0, 60.0), (1.25, 1.4))?),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    let mut resolution = 0.0;
    for (name, model, domain) in cases {
        let b = bench_sweep(model, domain, (60, 60), experiment_n_max(), &config, 20)?;
        pass &= b.median_speedup >= 5.0;
        resolution = b.timer_resolution;
        parts.push(format!("{name} median {:.1}x", b.median_speedup));
    }
    outcome(
        pass,
        format!(
            "60x60 sweeps, n_max = 3: {} (bound 5x); timer resolution {:.1e} s",
            parts.join(", "),
            resolution
        ),
    )
}

fn special_functions() -> Result<Outcome> {
    let mut r = rng(8);

    let mut wronskian = 0.0_f64;
    for _ in 0..2000 {
        let n = r.gen_range(0..=50);
        let rho = r.gen_range(0.5..200.0);
        wronskian = wronskian.max((riccati_pair(n, rho)?.wronskian() - 1.0).abs());
    }

    let mut recurrence = 0.0_f64;
    for _ in 0..2000 {
        let n = r.gen_range(1..50);
        let rho = r.gen_range(0.5..200.0);
        let k = (2 * n + 1) as f64 / rho;
        for f in [psi, chi] {
            let next = f(n + 1, rho)?;
            if next.abs() > 1e-6 {
                let predicted = k * f(n, rho)? - f(n - 1, rho)?;
                recurrence = recurrence.max((predicted - next).abs() / next.abs());
            }
        }
    }

    // Relative to the envelope |xi_n|, since psi_n and chi_n cross zero.
    let mut reconstruction = 0.0_f64;
    for _ in 0..2000 {
        let n = r.gen_range(0..=10);
        let rho = r.gen_range((2.0 * n as f64).max(0.5)..100.0);
        let (p, c) = (psi(n, rho)?, chi(n, rho)?);
        let envelope = p.hypot(c);
        let dp = (psi_asymptotic(n, rho, None)? - p).abs();
        let dc = (chi_asymptotic(n, rho, None)? - c).abs();
        reconstruction = reconstruction.max(dp.max(dc) / envelope);
    }

    // Largest residual over one period, so phase zeros do not matter.
    let window_residual = |n: usize, rho: f64| -> Result<f64> {
        let mut worst = 0.0_f64;
        for i in 0..128 {
            let t = rho + 2.0 * PI * i as f64 / 128.0;
            worst = worst.max((psi(n, t)? - psi_fraunhofer(n, t)).abs());
        }
        Ok(worst)
    };
    let mut decay = f64::INFINITY;
    for _ in 0..200 {
        let n = r.gen_range(1..=5);
        let lo = 10.0 * (n * n) as f64;
        let rho = r.gen_range(lo..3.0 * lo);
        decay = decay.min(window_residual(n, rho)? / window_residual(n, 10.0 * rho)?);
    }

    outcome(
        wronskian <= 1e-10 && recurrence <= 1e-9 && reconstruction <= 1e-10 && decay >= 5.0,
        format!(
            "Wronskian {wronskian:.1e} (1e-10), recurrence {recurrence:.1e} (1e-9), P/Q reconstruction {reconstruction:.1e} (1e-10), Fraunhofer residual decay min {decay:.2}x (>= 5x)"
        ),
    )
}

fn degenerate_inputs() -> Result<Outcome> {
    let mut r = rng(9);
    let mut nonzero = 0usize;
    let mut collapse = 0.0_f64;
    for _ in 0..100 {
        let y: f64 = r.gen_range(1.0..100.0);
        let x = y * r.gen_range(0.05..1.0);
        let spheres: [Sphere; 2] = [
            HomogeneousSphere::new(y, 1.0)?.into(),
            LayeredSphere::new(x, 1.0, y, 1.0)?.into(),
        ];
        for s in &spheres {
            let n_max = default_n_max(y);
            let zero = mode_coefficients(s, n_max)?
                .iter()
                .all(|c| c.a.re == 0.0 && c.a.im == 0.0 && c.b.re == 0.0 && c.b.im == 0.0);
            let exact = cross_sections(s, 1.0, n_max)?;
            let approx = approx_cross_section(s, 1.0, n_max)?;
            let sums = [exact.c_sca, exact.c_ext, exact.sigma_b, exact.sigma_f,
                approx.c_sca, approx.c_ext, approx.sigma_b, approx.sigma_f];
            if !zero || sums.iter().any(|&v| v != 0.0) {
                nonzero += 1;
            }
        }

        let m = r.gen_range(1.05..2.0);
        let h = HomogeneousSphere::new(y, m)?;
        let l = LayeredSphere::new(x, m, y, m)?;
        for n in 1..=10 {
            let (ch, cl) = (an_bn_homogeneous(&h, n)?, an_bn_layered(&l, n)?);
            collapse = collapse.max((ch.a - cl.a).norm()).max((ch.b - cl.b).norm());
        }
    }
    outcome(
        nonzero == 0 && collapse <= 1e-9,
        format!(
            "m = 1: {nonzero} of 200 spheres with a nonzero coefficient or cross-section (exact and approximate); m1 = m2 collapse max |difference| {collapse:.1e} for n <= 10 (bound 1e-9)"
        ),
    )
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("circular law", circular_law),
        ("dielectric energy balance", energy_balance),
        ("oracle equivalence", oracle_equivalence),
        ("approximation error structure", error_structure),
        ("per-mode integral error", per_mode_error),
        ("distribution experiments", distribution_experiments),
        ("speedup", speedup),
        ("special functions", special_functions),
        ("degenerate inputs", degenerate_inputs),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = match check() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!("{} {}. {name}: {detail}", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
