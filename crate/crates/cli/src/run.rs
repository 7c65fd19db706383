use std::time::Instant;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trigmie::analysis::{
    cumulative_error, per_mode_relative_error, pointwise_error_sweep, Channel, ErrorCurve,
    SweepConfig, SweepFamily,
};
use trigmie::bench::{bench_sweep, BenchConfig, SweepBench};
use trigmie::mie::{
    an_bn_homogeneous, an_bn_layered, cross_sections, default_n_max, mode_coefficients,
    HomogeneousSphere, LayeredSphere, Sphere,
};
use trigmie::trig::{approx_coefficients, approx_cross_section, constant_optical_path_sweep};
use trigmie::uncertainty::{
    expected_cross_section, grid_for, reference_experiments, Evaluator, ForwardModel, Integrand,
    Normal2, ParametricDistribution, Rect,
};
use trigmie::Execution;

use crate::args::*;
use crate::report::{config_error, num, Failure, Report, Table};

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub exec: Execution,
    pub seed: u64,
}

fn sphere_from(a: &SphereArgs) -> Result<Sphere, Failure> {
    match a.model {
        Model::Homogeneous => {
            if a.y.is_some() || a.m2.is_some() {
                return Err(config_error("--y and --m2 only apply to --model layered"));
            }
            Ok(HomogeneousSphere::new(a.x, a.m)?.into())
        }
        Model::Layered => {
            let y = a.y.ok_or_else(|| config_error("--model layered needs --y"))?;
            let m2 = a.m2.ok_or_else(|| config_error("--model layered needs --m2"))?;
            Ok(LayeredSphere::new(a.x, a.m, y, m2)?.into())
        }
    }
}

fn describe(s: &Sphere) -> String {
    match s {
        Sphere::Homogeneous(h) => format!("homogeneous x={} m={}", h.x(), h.m()),
        Sphere::Layered(l) => format!("layered x={} m1={} y={} m2={}", l.x(), l.m1(), l.y(), l.m2()),
    }
}

/// `model, x, m, y, m2` cells; shell cells empty for homogeneous spheres.
fn sphere_cells(s: &Sphere) -> Vec<String> {
    match s {
        Sphere::Homogeneous(h) => {
            vec!["homogeneous".into(), num(h.x()), num(h.m()), String::new(), String::new()]
        }
        Sphere::Layered(l) => {
            vec!["layered".into(), num(l.x()), num(l.m1()), num(l.y()), num(l.m2())]
        }
    }
}

pub fn coeffs(a: &CoeffsArgs) -> Result<Report, Failure> {
    let s = sphere_from(&a.sphere)?;
    let n_max = a.n.unwrap_or_else(|| default_n_max(s.outer_size()));
    if n_max == 0 {
        return Err(config_error("--n must be at least 1"));
    }
    let mut header = vec!["n"];
    if a.evaluator.exact() {
        header.extend(["a_re", "a_im", "b_re", "b_im", "sin2_alpha", "sin2_beta", "residual_a", "residual_b"]);
    }
    if a.evaluator.approx() {
        header.extend(["approx_sin2_alpha", "approx_sin2_beta"]);
    }
    let mut table = Table::new(&header);

    let exact = if a.evaluator.exact() { Some(mode_coefficients(&s, n_max)?) } else { None };
    let (mut worst_residual, mut worst_gap) = (0.0_f64, 0.0_f64);
    for n in 1..=n_max {
        let mut row = vec![n.to_string()];
        let mut sin2 = None;
        if let Some(modes) = &exact {
            let c = modes[n - 1];
            let (ra, rb) = c.circular_residuals();
            worst_residual = worst_residual.max(ra.abs()).max(rb.abs());
            sin2 = Some((c.a.norm_sqr(), c.b.norm_sqr()));
            for v in [c.a.re, c.a.im, c.b.re, c.b.im, c.a.norm_sqr(), c.b.norm_sqr(), ra, rb] {
                row.push(num(v));
            }
        }
        if a.evaluator.approx() {
            let p = approx_coefficients(&s, n)?;
            if let Some((ea, eb)) = sin2 {
                worst_gap = worst_gap.max((ea - p.sin2_alpha).abs()).max((eb - p.sin2_beta).abs());
            }
            row.push(num(p.sin2_alpha));
            row.push(num(p.sin2_beta));
        }
        table.push(row);
    }

    let mut summary = format!("coeffs {}: modes 1..{n_max}", describe(&s));
    if a.evaluator.exact() {
        summary += &format!(", max |circular residual| {}", num(worst_residual));
    }
    if a.evaluator == EvaluatorArg::Both {
        summary += &format!(", max |sin^2 exact - approx| {}", num(worst_gap));
    }
    Ok(Report { table, summary, ..Default::default() })
}

pub fn cross_section(a: &CrossSectionArgs) -> Result<Report, Failure> {
    let s = sphere_from(&a.sphere)?;
    let n_max = match a.n_max {
        NMax::Standard => default_n_max(s.outer_size()),
        NMax::Fixed(n) => n,
    };
    let mut table = Table::new(&[
        "evaluator", "n_max", "mode_sum_sca", "mode_sum_ext", "c_sca", "c_ext", "sigma_b", "sigma_f", "seconds",
    ]);
    let mut values = Vec::new();
    for (evaluator, enabled) in [(Evaluator::Exact, a.evaluator.exact()), (Evaluator::Approx, a.evaluator.approx())] {
        if !enabled {
            continue;
        }
        let start = Instant::now();
        let cs = match evaluator {
            Evaluator::Exact => cross_sections(&s, a.k, n_max)?,
            Evaluator::Approx => approx_cross_section(&s, a.k, n_max)?,
        };
        let seconds = start.elapsed().as_secs_f64();
        table.push(vec![
            evaluator.name().into(),
            n_max.to_string(),
            num(cs.mode_sum_sca),
            num(cs.mode_sum_ext),
            num(cs.c_sca),
            num(cs.c_ext),
            num(cs.sigma_b),
            num(cs.sigma_f),
            num(seconds),
        ]);
        values.push((evaluator, cs.c_sca, seconds));
    }
    let parts: Vec<String> = values
        .iter()
        .map(|(e, v, t)| format!("{}={} ({} s)", e.name(), num(*v), num(*t)))
        .collect();
    let mut summary = format!("cross-section {} k={} n_max={n_max}: c_sca {}", describe(&s), a.k, parts.join(", "));
    if let [(_, exact, _), (_, approx, _)] = values[..] {
        summary += &format!(", relative error {}", num(relative(approx, exact)));
    }
    Ok(Report { table, summary, ..Default::default() })
}

fn relative(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        if value == 0.0 { 0.0 } else { f64::INFINITY }
    } else {
        (value - reference).abs() / reference.abs()
    }
}

pub fn sweep(a: &SweepArgs, ctx: Context) -> Result<Report, Failure> {
    let Interval(lo, hi) = a.x.unwrap_or(Interval(1.0, a.c));
    let points = constant_optical_path_sweep(a.c, (lo, hi), a.n, a.points, ctx.exec)?;
    let exact = if a.evaluator.exact() {
        Some(ctx.exec.try_map(&points, |p| {
            an_bn_homogeneous(&HomogeneousSphere::new(p.x, p.m)?, a.n).map(|c| (c.a.norm_sqr(), c.b.norm_sqr()))
        })?)
    } else {
        None
    };

    let mut header = vec!["x", "m"];
    if a.evaluator.approx() {
        header.extend(["approx_sin2_alpha", "approx_sin2_beta"]);
    }
    if a.evaluator.exact() {
        header.extend(["exact_sin2_alpha", "exact_sin2_beta"]);
    }
    let mut table = Table::new(&header);
    let mut mean_gap = 0.0;
    for (i, p) in points.iter().enumerate() {
        let mut row = vec![num(p.x), num(p.m)];
        if a.evaluator.approx() {
            row.extend([num(p.sin2_alpha), num(p.sin2_beta)]);
        }
        if let Some(e) = &exact {
            row.extend([num(e[i].0), num(e[i].1)]);
            mean_gap += (e[i].0 - p.sin2_alpha).abs();
        }
        table.push(row);
    }
    let mut summary = format!("sweep m x = {} over x in [{lo}, {hi}], n = {}: {} points", a.c, a.n, points.len());
    if a.evaluator == EvaluatorArg::Both {
        summary += &format!(", mean |sin^2 alpha exact - approx| {}", num(mean_gap / points.len() as f64));
    }
    Ok(Report { table, summary, ..Default::default() })
}

fn require(v: Option<f64>, flag: &str, dist: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| config_error(format!("--dist {dist} needs --{flag}")))
}

fn distribution(a: &IntegrateArgs) -> Result<(String, ParametricDistribution, ForwardModel), Failure> {
    if let Some(p) = a.preset {
        let name = p.to_possible_value().expect("presets have names").get_name().to_string();
        let e = reference_experiments()?
            .into_iter()
            .find(|e| e.name == name)
            .expect("every preset names a reference experiment");
        return Ok((name, e.distribution, e.model));
    }
    let model = match a.model {
        Model::Homogeneous => ForwardModel::Homogeneous,
        Model::Layered => ForwardModel::Layered {
            shell_offset: a.shell_offset,
            shell_index: a.shell_index,
        },
    };
    let normal = |mx, sx, mm, sm, suffix: &str, dist: &str| -> Result<Normal2, Failure> {
        Ok(Normal2::new(
            require(mx, &format!("mu-x{suffix}"), dist)?,
            require(sx, &format!("sigma-x{suffix}"), dist)?,
            require(mm, &format!("mu-m{suffix}"), dist)?,
            require(sm, &format!("sigma-m{suffix}"), dist)?,
        )?)
    };
    let d = match a.dist {
        Dist::Uniform => {
            let x = a.x.ok_or_else(|| config_error("--dist uniform needs --x lo:hi"))?;
            let m = a.m.ok_or_else(|| config_error("--dist uniform needs --m lo:hi"))?;
            ParametricDistribution::uniform((x.0, x.1), (m.0, m.1))?
        }
        Dist::Normal => ParametricDistribution::normal(normal(a.mu_x, a.sigma_x, a.mu_m, a.sigma_m, "", "normal")?)?,
        Dist::Bimodal => ParametricDistribution::bimodal(
            normal(a.mu_x, a.sigma_x, a.mu_m, a.sigma_m, "", "bimodal")?,
            normal(a.mu_x2, a.sigma_x2, a.mu_m2, a.sigma_m2, "2", "bimodal")?,
            a.w1,
            a.w2,
        )?,
    };
    let name = format!("{}-{}", a.dist.to_possible_value().unwrap().get_name(), model.name());
    Ok((name, d, model))
}

/// Smallest order whose value, and every finer one, is within `tol` of the last.
pub fn self_converged(orders: &[usize], values: &[f64], tol: f64) -> usize {
    let reference = *values.last().expect("non-empty ladder");
    let mut order = *orders.last().unwrap();
    for (o, v) in orders.iter().zip(values).rev() {
        if (v - reference).abs() > tol * reference.abs() {
            break;
        }
        order = *o;
    }
    order
}

pub fn integrate(a: &IntegrateArgs, ctx: Context) -> Result<Report, Failure> {
    let (name, d, model) = distribution(a)?;
    let grids: Vec<(usize, usize)> = match &a.grid {
        GridSpec::Single(nx, nm) => vec![(*nx, *nm)],
        GridSpec::Ladder(v) => v.iter().map(|&n| (n, n)).collect(),
    };
    let mut table = Table::new(&[
        "grid_x", "grid_m", "n_points", "exact", "approx", "relative_error", "seconds_exact", "seconds_approx",
    ]);
    let base = Integrand::new(model, Evaluator::Exact, a.k, a.n_max);
    let mut exact_values = Vec::new();
    let mut approx_values = Vec::new();
    let mut last = String::new();
    for &(nx, nm) in &grids {
        let grid = grid_for(&d, nx, nm)?;
        let run = |e: Evaluator, on: bool| -> Result<Option<(f64, f64)>, Failure> {
            if !on {
                return Ok(None);
            }
            let r = expected_cross_section(&d, &grid, &base.with_evaluator(e), ctx.exec)?;
            Ok(Some((r.value, r.elapsed)))
        };
        let exact = run(Evaluator::Exact, a.evaluator.exact())?;
        let approx = run(Evaluator::Approx, a.evaluator.approx())?;
        let rel = match (exact, approx) {
            (Some((e, _)), Some((p, _))) => Some(relative(p, e)),
            _ => None,
        };
        let cell = |v: Option<f64>| v.map(num).unwrap_or_default();
        table.push(vec![
            nx.to_string(),
            nm.to_string(),
            grid.n_points().to_string(),
            cell(exact.map(|v| v.0)),
            cell(approx.map(|v| v.0)),
            cell(rel),
            cell(exact.map(|v| v.1)),
            cell(approx.map(|v| v.1)),
        ]);
        let mut parts = Vec::new();
        if let Some((v, t)) = exact {
            exact_values.push(v);
            parts.push(format!("exact={} ({} s)", num(v), num(t)));
        }
        if let Some((v, t)) = approx {
            approx_values.push(v);
            parts.push(format!("approx={} ({} s)", num(v), num(t)));
        }
        if let Some(r) = rel {
            parts.push(format!("relative error {}", num(r)));
        }
        last = format!("{nx}x{nm}: {}", parts.join(", "));
    }
    let mut summary = format!("integrate {name} n_max={}: {last}", a.n_max);
    if grids.len() > 1 {
        let orders: Vec<usize> = grids.iter().map(|g| g.0).collect();
        for (label, values) in [("exact", &exact_values), ("approx", &approx_values)] {
            if !values.is_empty() {
                summary += &format!("; {label} within 1% from {}", self_converged(&orders, values, 0.01));
            }
        }
    }
    Ok(Report { table, summary, ..Default::default() })
}

pub fn curve_table(label: &str, curve: &ErrorCurve) -> Table {
    let mut table = Table::new(&[
        "family", "t", "sin2_exact", "sin2_approx", "error", "factorized_error", "cumulative_error",
    ]);
    for i in 0..curve.len() {
        table.push(vec![
            label.to_string(),
            num(curve.abscissa[i]),
            num(curve.sin2_exact[i]),
            num(curve.sin2_approx[i]),
            num(curve.pointwise_error[i]),
            num(curve.factorized_error[i]),
            num(curve.cumulative_integral[i]),
        ]);
    }
    table
}

pub fn curve_summary(label: &str, curve: &ErrorCurve) -> Result<String, Failure> {
    let signed = cumulative_error(curve)?;
    let absolute = curve.absolute_integral();
    Ok(format!(
        "{label}: max |error| {}, {} sign changes, integral of error {} vs integral of |error| {} (ratio {})",
        num(curve.max_abs_error()),
        curve.sign_changes(),
        num(signed),
        num(absolute),
        num(signed.abs() / absolute)
    ))
}

fn family(a: &ErrorsArgs) -> Result<(String, SweepFamily, (f64, f64)), Failure> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| config_error(format!("this --family needs --{flag}")))
    };
    let range = a.range.map(|r| (r.0, r.1));
    Ok(match a.family {
        Family::ConstantPath => {
            let c = need(a.c, "c")?;
            (format!("constant-path c={c}"), SweepFamily::ConstantPath { c }, range.unwrap_or((c / 10.0, c)))
        }
        Family::ConstantIndex => {
            let m = need(a.m, "m")?;
            let r = range.ok_or_else(|| config_error("--family constant-index needs --range lo:hi"))?;
            (format!("constant-index m={m}"), SweepFamily::ConstantIndex { m }, r)
        }
        Family::Layered => {
            let (c1, c2, c3) = (need(a.c1, "c1")?, need(a.c2, "c2")?, need(a.c3, "c3")?);
            (
                format!("layered c1={c1} c2={c2} c3={c3}"),
                SweepFamily::LayeredConstantPath { c1, c2, c3 },
                range.unwrap_or((0.4 * c3, c3)),
            )
        }
    })
}

pub fn errors(a: &ErrorsArgs, ctx: Context) -> Result<Report, Failure> {
    match a.study {
        Study::Pointwise => {
            let (label, fam, range) = family(a)?;
            let config = SweepConfig {
                n_points: trigmie::analysis::points_for(range, a.points_per_pi),
                channel: match a.channel {
                    ChannelArg::Alpha => Channel::Alpha,
                    ChannelArg::Beta => Channel::Beta,
                },
                ..SweepConfig::new(fam, a.n, range)
            };
            let curve = pointwise_error_sweep(&config, ctx.exec)?;
            let label = format!("{label} n={}", a.n);
            Ok(Report {
                summary: format!("errors {}", curve_summary(&label, &curve)?),
                table: curve_table(&label, &curve),
                ..Default::default()
            })
        }
        Study::PerMode => {
            let Interval(first, last) = a.modes;
            if first < 1.0 || last < first || first.fract() != 0.0 || last.fract() != 0.0 {
                return Err(config_error(format!("--modes must be integers 1 <= first <= last, got {}", a.modes)));
            }
            let modes = per_mode_relative_error(first as usize..=last as usize, a.points_per_pi, ctx.exec)?;
            Ok(per_mode_report(&modes))
        }
    }
}

pub fn per_mode_report(modes: &[trigmie::analysis::ModeError]) -> Report {
    let mut table = Table::new(&["n", "integral_exact", "integral_approx", "relative_error"]);
    for m in modes {
        table.push(vec![m.n.to_string(), num(m.integral_exact), num(m.integral_approx), num(m.relative_error)]);
    }
    let worst = modes
        .iter()
        .max_by(|a, b| a.relative_error.total_cmp(&b.relative_error))
        .expect("at least one mode");
    Report {
        table,
        summary: format!(
            "errors per-mode n={}..{}: largest relative integral error {} at n={}",
            modes[0].n,
            modes[modes.len() - 1].n,
            num(worst.relative_error),
            worst.n
        ),
        ..Default::default()
    }
}

pub fn bench_tables(label: &str, b: &SweepBench) -> (Table, Table) {
    let mut records = Table::new(&["model", "x", "m", "y", "m2", "n_max", "t_exact", "t_approx", "speedup"]);
    for r in &b.records {
        let mut row = sphere_cells(&r.sphere);
        row.extend([r.n_max.to_string(), num(r.t_exact), num(r.t_approx), num(r.speedup)]);
        records.push(row);
    }
    let mut hist = Table::new(&["model", "bin_lo", "bin_hi", "count", "median_speedup", "timer_resolution"]);
    for (i, count) in b.histogram.counts.iter().enumerate() {
        hist.push(vec![
            label.to_string(),
            num(b.histogram.edges[i]),
            num(b.histogram.edges[i + 1]),
            count.to_string(),
            num(b.median_speedup),
            num(b.timer_resolution),
        ]);
    }
    (records, hist)
}

pub fn bench_model(
    model: Model,
    x: Option<Interval>,
    m: Option<Interval>,
    shell: (f64, f64),
) -> Result<(ForwardModel, Rect), Failure> {
    let (fm, dx, dm) = match model {
        Model::Homogeneous => (ForwardModel::Homogeneous, (10.0, 20.0), (1.2, 1.8)),
        Model::Layered => (
            ForwardModel::Layered { shell_offset: shell.0, shell_index: shell.1 },
            (40.0, 60.0),
            (1.25, 1.4),
        ),
    };
    let x = x.map(|i| (i.0, i.1)).unwrap_or(dx);
    let m = m.map(|i| (i.0, i.1)).unwrap_or(dm);
    Ok((fm, Rect::new(x, m)?))
}

pub fn bench(a: &BenchArgs, histogram: Option<&std::path::Path>) -> Result<Report, Failure> {
    let GridSpec::Single(nx, nm) = a.grid else {
        return Err(config_error("bench takes a single NxM grid"));
    };
    let (model, domain) = bench_model(a.model, a.x, a.m, (a.shell_offset, a.shell_index))?;
    let config = BenchConfig { reps: a.reps, warmup: a.warmup, ..Default::default() };
    let b = bench_sweep(model, domain, (nx, nm), a.n_max, &config, a.bins)?;
    let (table, hist) = bench_tables(model.name(), &b);
    Ok(Report {
        table,
        extra: histogram.map(|p| (p.to_path_buf(), hist)).into_iter().collect(),
        summary: format!(
            "bench {} {nx}x{nm} n_max={}: median speedup {} (timer resolution {} s)",
            model.name(),
            a.n_max,
            num(b.median_speedup),
            num(b.timer_resolution)
        ),
        ..Default::default()
    })
}

fn random_homogeneous(r: &mut ChaCha8Rng) -> HomogeneousSphere {
    HomogeneousSphere::new(r.gen_range(1.0..100.0), r.gen_range(1.05..2.0)).expect("valid range")
}

/// Random coated sphere; indices drawn from [1.05, 2) unless `fixed`,
/// and equal when `equal`.
fn random_layered(r: &mut ChaCha8Rng, fixed: Option<f64>, equal: bool) -> LayeredSphere {
    let y = r.gen_range(1.0..100.0);
    let x = y * r.gen_range(0.05..1.0);
    let m1 = fixed.unwrap_or_else(|| r.gen_range(1.05..2.0));
    let m2 = if equal { m1 } else { fixed.unwrap_or_else(|| r.gen_range(1.05..2.0)) };
    LayeredSphere::new(x, m1, y, m2).expect("valid range")
}

pub fn verify(a: &VerifyArgs, ctx: Context) -> Result<Report, Failure> {
    if a.samples == 0 {
        return Err(config_error("--samples must be at least 1"));
    }
    let mut r = ChaCha8Rng::seed_from_u64(ctx.seed);
    let tolerance = a.tolerance.unwrap_or(match a.law {
        Law::Circular | Law::Collapse => 1e-9,
        Law::Balance => 1e-8,
        Law::Vacuum => 0.0,
    });
    let law = a.law.to_possible_value().unwrap().get_name().to_string();
    // Draw every sample first so results do not depend on scheduling.
    let (table, worst, what) = match a.law {
        Law::Circular => {
            let samples: Vec<(Sphere, usize)> = (0..a.samples)
                .map(|i| {
                    let s: Sphere = if i % 10 == 9 {
                        random_layered(&mut r, None, false).into()
                    } else {
                        random_homogeneous(&mut r).into()
                    };
                    let n = r.gen_range(1..=(s.outer_size().floor() as usize).min(30));
                    (s, n)
                })
                .collect();
            let coeffs = ctx.exec.try_map(&samples, |(s, n)| match s {
                Sphere::Homogeneous(h) => an_bn_homogeneous(h, *n),
                Sphere::Layered(l) => an_bn_layered(l, *n),
            })?;
            let mut t = Table::new(&[
                "model", "x", "m", "y", "m2", "n", "a_re", "a_im", "b_re", "b_im", "residual_a", "residual_b",
            ]);
            let mut worst = 0.0_f64;
            for ((s, n), c) in samples.iter().zip(&coeffs) {
                let (ra, rb) = c.circular_residuals();
                worst = worst.max(ra.abs()).max(rb.abs());
                let mut row = sphere_cells(s);
                row.push(n.to_string());
                row.extend([c.a.re, c.a.im, c.b.re, c.b.im, ra, rb].map(num));
                t.push(row);
            }
            (t, worst, "max |circular residual|")
        }
        Law::Balance => {
            let samples: Vec<Sphere> = (0..a.samples)
                .map(|i| {
                    if i % 2 == 1 {
                        random_layered(&mut r, None, false).into()
                    } else {
                        random_homogeneous(&mut r).into()
                    }
                })
                .collect();
            let sums = ctx.exec.try_map(&samples, |s| {
                let n_max = default_n_max(s.outer_size());
                cross_sections(s, 1.0, n_max).map(|cs| (n_max, cs))
            })?;
            let mut t = Table::new(&[
                "model", "x", "m", "y", "m2", "n_max", "mode_sum_sca", "mode_sum_ext", "relative_difference",
            ]);
            let mut worst = 0.0_f64;
            for (s, (n_max, cs)) in samples.iter().zip(&sums) {
                let d = relative(cs.mode_sum_ext, cs.mode_sum_sca);
                worst = worst.max(d);
                let mut row = sphere_cells(s);
                row.extend([n_max.to_string(), num(cs.mode_sum_sca), num(cs.mode_sum_ext), num(d)]);
                t.push(row);
            }
            (t, worst, "max relative |ext - sca|")
        }
        Law::Collapse => {
            let samples: Vec<(LayeredSphere, usize)> = (0..a.samples)
                .map(|_| (random_layered(&mut r, None, true), r.gen_range(1..=10)))
                .collect();
            let diffs = ctx.exec.try_map(&samples, |(l, n)| -> trigmie::Result<(f64, f64)> {
                let h = HomogeneousSphere::new(l.y(), l.m2())?;
                let (ch, cl) = (an_bn_homogeneous(&h, *n)?, an_bn_layered(l, *n)?);
                Ok(((ch.a - cl.a).norm(), (ch.b - cl.b).norm()))
            })?;
            let mut t = Table::new(&["x", "y", "m", "n", "difference_a", "difference_b"]);
            let mut worst = 0.0_f64;
            for ((l, n), (da, db)) in samples.iter().zip(&diffs) {
                worst = worst.max(*da).max(*db);
                t.push(vec![num(l.x()), num(l.y()), num(l.m1()), n.to_string(), num(*da), num(*db)]);
            }
            (t, worst, "max |layered - homogeneous|")
        }
        Law::Vacuum => {
            let samples: Vec<Sphere> = (0..a.samples)
                .map(|i| {
                    if i % 2 == 1 {
                        random_layered(&mut r, Some(1.0), true).into()
                    } else {
                        HomogeneousSphere::new(r.gen_range(0.1..100.0), 1.0).expect("valid range").into()
                    }
                })
                .collect();
            let values = ctx.exec.try_map(&samples, |s| -> trigmie::Result<(usize, f64, f64, f64)> {
                let n_max = default_n_max(s.outer_size());
                let coeff = mode_coefficients(s, n_max)?
                    .iter()
                    .fold(0.0_f64, |m, c| m.max(c.a.norm()).max(c.b.norm()));
                let exact = cross_sections(s, 1.0, n_max)?.c_sca;
                let approx = approx_cross_section(s, 1.0, n_max)?.c_sca;
                Ok((n_max, coeff, exact, approx))
            })?;
            let mut t = Table::new(&["model", "x", "m", "y", "m2", "n_max", "max_abs_coefficient", "exact_c_sca", "approx_c_sca"]);
            let mut worst = 0.0_f64;
            for (s, (n_max, coeff, exact, approx)) in samples.iter().zip(&values) {
                worst = worst.max(*coeff).max(exact.abs()).max(approx.abs());
                let mut row = sphere_cells(s);
                row.extend([n_max.to_string(), num(*coeff), num(*exact), num(*approx)]);
                t.push(row);
            }
            (t, worst, "max |coefficient or cross-section|")
        }
    };
    // NaN counts as a violation.
    let violated = worst.is_nan() || worst > tolerance;
    Ok(Report {
        table,
        summary: format!(
            "verify {law}: {} samples (seed {}), {what} {} (tolerance {}): {}",
            a.samples,
            ctx.seed,
            num(worst),
            num(tolerance),
            if violated { "VIOLATED" } else { "ok" }
        ),
        violated,
        ..Default::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_converged_order() {
        let orders = [8, 16, 32, 64];
        assert_eq!(self_converged(&orders, &[1.5, 1.009, 1.001, 1.0], 0.01), 16);
        assert_eq!(self_converged(&orders, &[1.0, 1.5, 1.0, 1.0], 0.01), 32);
        assert_eq!(self_converged(&orders, &[1.0, 1.0, 1.0, 1.0], 0.0), 8);
    }
}
