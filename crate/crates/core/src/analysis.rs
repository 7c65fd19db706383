//! Structure of the trigonometric approximation error along parameter sweeps.
//!
//! For one channel the pointwise error is `sin^2(alpha) - sin^2(alpha_f)`,
//! with `alpha` the exact angle and `alpha_f` the approximate one. It equals
//! `sin(alpha + alpha_f) sin(alpha - alpha_f)`: bounded by one and
//! oscillating in sign, so its running integral stays small.

use std::f64::consts::PI;

use crate::circular::angle_from_coefficient;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::mie::{an_bn_homogeneous, an_bn_layered, HomogeneousSphere, LayeredSphere, Sphere};
use crate::trig::{approx_homogeneous, approx_layered, linspace};

/// Sweep samples per interval of length `pi` (the quasi-period in `x`).
pub const DEFAULT_POINTS_PER_PI: usize = 2000;

/// One-parameter families of spheres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepFamily {
    /// Homogeneous, `m = c / x`; sweep variable `x`.
    ConstantPath { c: f64 },
    /// Homogeneous, fixed `m`; sweep variable `x`.
    ConstantIndex { m: f64 },
    /// Coated, with `m1 x = c1`, `m2 x = c2`, `m2 y = c3`. Sweep variable
    /// `y`; then `m2 = c3 / y`, `m1 = c1 m2 / c2`, `x = c2 / m2`.
    LayeredConstantPath { c1: f64, c2: f64, c3: f64 },
}

impl SweepFamily {
    fn validate(&self) -> Result<()> {
        match *self {
            SweepFamily::ConstantPath { c } if !(c > 0.0) => {
                Err(Error::Config(format!("optical path must be positive, got {c}")))
            }
            SweepFamily::ConstantIndex { m } if !(m > 0.0) => {
                Err(Error::Config(format!("refractive index must be positive, got {m}")))
            }
            SweepFamily::LayeredConstantPath { c1, c2, c3 } => {
                if !(c1 > 0.0 && c2 > 0.0 && c3 > 0.0) {
                    return Err(Error::Config(format!(
                        "optical paths must be positive, got ({c1}, {c2}, {c3})"
                    )));
                }
                // x / y = c2 / c3 independent of the sweep variable
                if c2 > c3 {
                    return Err(Error::Config(format!(
                        "core path m2 x = {c2} exceeds shell path m2 y = {c3}; core would exceed the shell"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Sphere at sweep coordinate `t`.
    pub fn sphere(&self, t: f64) -> Result<Sphere> {
        Ok(match *self {
            SweepFamily::ConstantPath { c } => HomogeneousSphere::new(t, c / t)?.into(),
            SweepFamily::ConstantIndex { m } => HomogeneousSphere::new(t, m)?.into(),
            SweepFamily::LayeredConstantPath { c1, c2, c3 } => {
                let m2 = c3 / t;
                let m1 = c1 * m2 / c2;
                // x <= y can fail by an ulp when c2 == c3
                let x = (c2 / m2).min(t);
                LayeredSphere::new(x, m1, t, m2)?.into()
            }
        })
    }
}

/// Which coefficient the error is measured on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Channel {
    #[default]
    Alpha,
    Beta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub family: SweepFamily,
    pub n: usize,
    pub range: (f64, f64),
    pub n_points: usize,
    pub channel: Channel,
}

impl SweepConfig {
    /// Sweep with [`DEFAULT_POINTS_PER_PI`] resolution on the alpha channel.
    pub fn new(family: SweepFamily, n: usize, range: (f64, f64)) -> Self {
        Self {
            family,
            n,
            range,
            n_points: points_for(range, DEFAULT_POINTS_PER_PI),
            channel: Channel::Alpha,
        }
    }
}

/// Number of samples covering `range` at `per_pi` samples per length `pi`.
pub fn points_for(range: (f64, f64), per_pi: usize) -> usize {
    let span = (range.1 - range.0).abs();
    ((span / PI * per_pi as f64).ceil() as usize).max(2) + 1
}

/// Exact and approximate values of one channel at one sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSample {
    pub t: f64,
    pub sin2_exact: f64,
    pub sin2_approx: f64,
    /// `sin(alpha + alpha_f) sin(alpha - alpha_f)` with `alpha_f` shifted by
    /// a multiple of `pi` to the representative nearest `alpha`.
    pub factorized: f64,
}

impl ErrorSample {
    pub fn direct(&self) -> f64 {
        self.sin2_exact - self.sin2_approx
    }
}

fn sample(sphere: &Sphere, n: usize, channel: Channel, t: f64) -> Result<ErrorSample> {
    let (exact, approx) = match sphere {
        Sphere::Homogeneous(s) => (an_bn_homogeneous(s, n)?, approx_homogeneous(s, n)?),
        Sphere::Layered(s) => (an_bn_layered(s, n)?, approx_layered(s, n)?),
    };
    let (z, angle_f, sin2_approx) = match channel {
        Channel::Alpha => (exact.a, approx.alpha, approx.sin2_alpha),
        Channel::Beta => (exact.b, approx.beta, approx.sin2_beta),
    };
    let angle = angle_from_coefficient(z)?;
    let angle_f = angle_f + ((angle - angle_f) / PI).round() * PI;
    Ok(ErrorSample {
        t,
        sin2_exact: z.norm_sqr(),
        sin2_approx,
        factorized: (angle + angle_f).sin() * (angle - angle_f).sin(),
    })
}

/// Pointwise error along a sweep and its running integral.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ErrorCurve {
    pub abscissa: Vec<f64>,
    pub sin2_exact: Vec<f64>,
    pub sin2_approx: Vec<f64>,
    /// `sin^2_exact - sin^2_approx`.
    pub pointwise_error: Vec<f64>,
    pub factorized_error: Vec<f64>,
    /// Running trapezoid integral of `pointwise_error`, starting at 0.
    pub cumulative_integral: Vec<f64>,
}

impl ErrorCurve {
    fn from_samples(samples: Vec<ErrorSample>) -> Self {
        let mut c = ErrorCurve::default();
        for s in &samples {
            c.abscissa.push(s.t);
            c.sin2_exact.push(s.sin2_exact);
            c.sin2_approx.push(s.sin2_approx);
            c.pointwise_error.push(s.direct());
            c.factorized_error.push(s.factorized);
        }
        c.cumulative_integral = cumulative_trapezoid(&c.abscissa, &c.pointwise_error);
        c
    }

    pub fn len(&self) -> usize {
        self.abscissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissa.is_empty()
    }

    /// Largest `|direct - factorized|`.
    pub fn factorization_gap(&self) -> f64 {
        self.pointwise_error
            .iter()
            .zip(&self.factorized_error)
            .map(|(d, f)| (d - f).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_error(&self) -> f64 {
        self.pointwise_error.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    /// Strict sign changes of the pointwise error, ignoring exact zeros.
    pub fn sign_changes(&self) -> usize {
        let mut last = 0.0_f64;
        let mut count = 0;
        for &e in &self.pointwise_error {
            if e != 0.0 {
                if last != 0.0 && e.signum() != last.signum() {
                    count += 1;
                }
                last = e;
            }
        }
        count
    }

    /// Trapezoid integral of `|pointwise_error|`.
    pub fn absolute_integral(&self) -> f64 {
        let abs: Vec<f64> = self.pointwise_error.iter().map(|e| e.abs()).collect();
        trapezoid(&self.abscissa, &abs)
    }
}

pub fn pointwise_error_sweep(config: &SweepConfig, exec: Execution) -> Result<ErrorCurve> {
    config.family.validate()?;
    let (lo, hi) = config.range;
    if !(lo > 0.0) || !(lo < hi) || !hi.is_finite() {
        return Err(Error::InvalidInterval { a: lo, b: hi });
    }
    if config.n_points < 2 {
        return Err(Error::Config("a sweep needs at least two points".into()));
    }
    let ts = linspace(lo, hi, config.n_points);
    let samples = exec.try_map(&ts, |&t| {
        let sphere = config.family.sphere(t)?;
        sample(&sphere, config.n, config.channel, t)
    })?;
    Ok(ErrorCurve::from_samples(samples))
}

/// Composite trapezoid rule.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// Running trapezoid integral; same length as the input, first entry 0.
pub fn cumulative_trapezoid(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    if !xs.is_empty() {
        out.push(0.0);
    }
    for (x, y) in xs.windows(2).zip(ys.windows(2)) {
        acc += 0.5 * (x[1] - x[0]) * (y[0] + y[1]);
        out.push(acc);
    }
    out
}

/// Integral of the pointwise error over the whole sweep.
pub fn cumulative_error(curve: &ErrorCurve) -> Result<f64> {
    curve
        .cumulative_integral
        .last()
        .copied()
        .ok_or_else(|| Error::Config("empty error curve".into()))
}

/// Relative error of the integrated `sin^2(alpha_n)` for one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeError {
    pub n: usize,
    pub integral_exact: f64,
    pub integral_approx: f64,
    pub relative_error: f64,
}

/// For each `n`: integrate exact and approximate `sin^2(alpha_n)` over
/// `n <= x <= 2 pi n` along `m x = 2 pi n`.
pub fn per_mode_relative_error(
    modes: std::ops::RangeInclusive<usize>,
    points_per_pi: usize,
    exec: Execution,
) -> Result<Vec<ModeError>> {
    if *modes.start() == 0 {
        return Err(Error::Domain("mode index starts at 1".into()));
    }
    modes
        .map(|n| {
            let c = 2.0 * PI * n as f64;
            let range = (n as f64, c);
            let config = SweepConfig {
                n_points: points_for(range, points_per_pi),
                ..SweepConfig::new(SweepFamily::ConstantPath { c }, n, range)
            };
            let curve = pointwise_error_sweep(&config, exec)?;
            let exact = trapezoid(&curve.abscissa, &curve.sin2_exact);
            let approx = trapezoid(&curve.abscissa, &curve.sin2_approx);
            Ok(ModeError {
                n,
                integral_exact: exact,
                integral_approx: approx,
                relative_error: (exact - approx).abs() / exact,
            })
        })
        .collect()
}
