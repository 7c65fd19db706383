//! Data behind the reference figures, with their parameters built in.

use std::path::Path;

use trigmie::analysis::{
    cumulative_trapezoid, per_mode_relative_error, pointwise_error_sweep, SweepConfig,
    SweepFamily, DEFAULT_POINTS_PER_PI,
};
use trigmie::bench::{bench_sweep, BenchConfig};
use trigmie::mie::experiment_n_max;
use trigmie::uncertainty::{
    convergence_study, reference_experiments, Evaluator, Integrand, CONVERGENCE_ORDERS,
};

use crate::args::{EvaluatorArg, Figure, Law, Model, SweepArgs, VerifyArgs};
use crate::report::{num, Failure, Report, Table};
use crate::run::{self, Context};

/// Error sweeps along constant optical paths: homogeneous `m x = 100`,
/// layered `m1 x = 50`, `m2 x = 30`, `m2 y = 100`.
fn error_sweeps() -> [(&'static str, SweepConfig); 2] {
    [
        (
            "homogeneous c=100",
            SweepConfig::new(SweepFamily::ConstantPath { c: 100.0 }, 1, (10.0, 100.0)),
        ),
        (
            "layered c1=50 c2=30 c3=100",
            SweepConfig::new(
                SweepFamily::LayeredConstantPath { c1: 50.0, c2: 30.0, c3: 100.0 },
                1,
                (40.0, 100.0),
            ),
        ),
    ]
}

pub fn run(figure: Figure, ctx: Context, histogram: Option<&Path>) -> Result<Report, Failure> {
    match figure {
        Figure::CircularLaw => {
            let mut r = run::verify(&VerifyArgs { law: Law::Circular, samples: 10_000, tolerance: None }, ctx)?;
            r.summary = format!("figure 1: {}", r.summary);
            Ok(r)
        }
        Figure::ConstantPath => {
            let args = SweepArgs {
                c: 20.0,
                x: None,
                n: 1,
                points: 2000,
                evaluator: EvaluatorArg::Both,
            };
            let mut r = run::sweep(&args, ctx)?;
            r.summary = format!("figure 2b: {}", r.summary);
            Ok(r)
        }
        Figure::PointwiseError => {
            let mut table = None::<Table>;
            let mut parts = Vec::new();
            for (label, config) in error_sweeps() {
                let curve = pointwise_error_sweep(&config, ctx.exec)?;
                parts.push(run::curve_summary(label, &curve)?);
                let t = run::curve_table(label, &curve);
                match &mut table {
                    Some(all) => all.extend(t),
                    None => table = Some(t),
                }
            }
            Ok(Report {
                table: table.unwrap_or_default(),
                summary: format!("figure 4: {}", parts.join("; ")),
                ..Default::default()
            })
        }
        Figure::CumulativeError => {
            let mut table = Table::new(&["family", "t", "cumulative_error", "cumulative_abs_error"]);
            let mut parts = Vec::new();
            for (label, config) in error_sweeps() {
                let curve = pointwise_error_sweep(&config, ctx.exec)?;
                let abs: Vec<f64> = curve.pointwise_error.iter().map(|e| e.abs()).collect();
                let abs_cumulative = cumulative_trapezoid(&curve.abscissa, &abs);
                let columns = curve.abscissa.iter().zip(&curve.cumulative_integral).zip(&abs_cumulative);
                for ((&t, &signed), &unsigned) in columns {
                    table.push(vec![label.to_string(), num(t), num(signed), num(unsigned)]);
                }
                parts.push(run::curve_summary(label, &curve)?);
            }
            Ok(Report { table, summary: format!("figure 5: {}", parts.join("; ")), ..Default::default() })
        }
        Figure::PerModeError => {
            let modes = per_mode_relative_error(1..=20, DEFAULT_POINTS_PER_PI, ctx.exec)?;
            let mut r = run::per_mode_report(&modes);
            r.summary = format!("figure 6: {}", r.summary);
            Ok(r)
        }
        Figure::Speedup => {
            let mut records = None::<Table>;
            let mut hist = None::<Table>;
            let mut parts = Vec::new();
            for model in [Model::Homogeneous, Model::Layered] {
                let (fm, domain) = run::bench_model(model, None, None, (20.0, 1.51))?;
                let b = bench_sweep(fm, domain, (60, 60), experiment_n_max(), &BenchConfig::default(), 20)?;
                let (r, h) = run::bench_tables(fm.name(), &b);
                parts.push(format!("{} median speedup {}", fm.name(), num(b.median_speedup)));
                for (acc, t) in [(&mut records, r), (&mut hist, h)] {
                    match acc {
                        Some(all) => all.extend(t),
                        None => *acc = Some(t),
                    }
                }
            }
            Ok(Report {
                table: records.unwrap_or_default(),
                extra: histogram.map(|p| (p.to_path_buf(), hist.unwrap_or_default())).into_iter().collect(),
                summary: format!("figure 7: 60x60 sweeps, n_max=3: {}", parts.join(", ")),
                ..Default::default()
            })
        }
        Figure::Uniform | Figure::Normal | Figure::Bimodal => {
            let (id, prefix) = match figure {
                Figure::Uniform => (8, "uniform"),
                Figure::Normal => (9, "normal"),
                _ => (10, "bimodal"),
            };
            let mut table = Table::new(&[
                "experiment", "order", "n_points", "exact", "approx", "relative_error",
                "mean_pointwise_relative_error", "seconds_exact", "seconds_approx",
            ]);
            let mut parts = Vec::new();
            for e in reference_experiments()?.into_iter().filter(|e| e.name.starts_with(prefix)) {
                let f = Integrand::new(e.model, Evaluator::Exact, 1.0, experiment_n_max());
                let study = convergence_study(&e.distribution, &f, &CONVERGENCE_ORDERS, ctx.exec)?;
                for c in &study.levels {
                    table.push(vec![
                        e.name.to_string(),
                        c.order.to_string(),
                        c.exact.n_points.to_string(),
                        num(c.exact.value),
                        num(c.approx.value),
                        num(c.relative_error()),
                        num(c.mean_pointwise_relative_error),
                        num(c.exact.elapsed),
                        num(c.approx.elapsed),
                    ]);
                }
                parts.push(format!(
                    "{} relative error {} at {}x{}, 1% self-convergence exact {} approx {}",
                    e.name,
                    num(study.finest().relative_error()),
                    study.finest().order,
                    study.finest().order,
                    study.self_converged_order(Evaluator::Exact, 0.01),
                    study.self_converged_order(Evaluator::Approx, 0.01),
                ));
            }
            Ok(Report { table, summary: format!("figure {id}: {}", parts.join("; ")), ..Default::default() })
        }
    }
}
