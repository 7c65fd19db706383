//! Wall-clock comparison of the exact and approximate cross-section paths.
//!
//! Each timing is the median of `reps` batches after `warmup` untimed
//! calls. A batch repeats the call enough times to span many ticks of the
//! clock, and every result is folded into a checksum passed through
//! [`black_box`] so the optimizer cannot drop the work. Measurement is
//! always single-threaded.

use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::mie::{self, Sphere};
use crate::trig::{self, linspace};
use crate::uncertainty::{ForwardModel, Rect};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchConfig {
    /// Timed batches per path; odd and at least 11.
    pub reps: usize,
    /// Untimed calls before measuring; at least 3.
    pub warmup: usize,
    /// Minimum wall time of one batch.
    pub min_batch: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            reps: 11,
            warmup: 3,
            min_batch: Duration::from_micros(20),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.reps < 11 || self.reps.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "repetitions must be odd and at least 11, got {}",
                self.reps
            )));
        }
        if self.warmup < 3 {
            return Err(Error::Config(format!(
                "at least 3 warmup calls required, got {}",
                self.warmup
            )));
        }
        Ok(())
    }
}

/// Timings at one point of parameter space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRecord {
    pub sphere: Sphere,
    pub n_max: usize,
    /// Median seconds per exact evaluation.
    pub t_exact: f64,
    /// Median seconds per approximate evaluation.
    pub t_approx: f64,
    pub speedup: f64,
    /// Sum of every cross-section computed while timing.
    pub checksum: f64,
}

/// Smallest nonzero step observed on the monotonic clock, in seconds.
pub fn timer_resolution() -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..200 {
        let t0 = Instant::now();
        let mut t1 = Instant::now();
        while t1 == t0 {
            t1 = Instant::now();
        }
        best = best.min((t1 - t0).as_secs_f64());
    }
    best
}

/// Median seconds per call of `f`, accumulating outputs into `checksum`.
fn time_call<F>(f: F, config: &BenchConfig, checksum: &mut f64) -> Result<f64>
where
    F: Fn() -> Result<f64>,
{
    for _ in 0..config.warmup {
        *checksum += black_box(f()?);
    }

    // Grow the batch until it spans `min_batch`.
    let mut batch = 1usize;
    loop {
        let start = Instant::now();
        for _ in 0..batch {
            *checksum += black_box(f()?);
        }
        if start.elapsed() >= config.min_batch || batch >= 1 << 24 {
            break;
        }
        batch *= 2;
    }

    let mut samples = Vec::with_capacity(config.reps);
    for _ in 0..config.reps {
        let mut acc = 0.0;
        let start = Instant::now();
        for _ in 0..batch {
            acc += black_box(f()?);
        }
        let elapsed = start.elapsed();
        *checksum += acc;
        samples.push(elapsed.as_secs_f64() / batch as f64);
    }
    samples.sort_by(f64::total_cmp);
    Ok(samples[samples.len() / 2])
}

/// Median per-call times of the exact and approximate cross-sections.
pub fn bench_point(sphere: &Sphere, n_max: usize, config: &BenchConfig) -> Result<BenchRecord> {
    config.validate()?;
    let k = 1.0;
    let mut checksum = 0.0;
    let t_exact = time_call(
        || Ok(mie::cross_sections(black_box(sphere), k, n_max)?.c_sca),
        config,
        &mut checksum,
    )?;
    let t_approx = time_call(
        || Ok(trig::approx_cross_section(black_box(sphere), k, n_max)?.c_sca),
        config,
        &mut checksum,
    )?;
    Ok(BenchRecord {
        sphere: *sphere,
        n_max,
        t_exact,
        t_approx,
        speedup: t_exact / t_approx,
        checksum: black_box(checksum),
    })
}

/// Equal-width histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// `counts.len() + 1` ascending bin edges.
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    /// `bins` equal bins spanning the data; the maximum lands in the last bin.
    pub fn new(values: &[f64], bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::Config("histogram needs at least one bin".into()));
        }
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("histogram needs finite values".into()));
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi == lo {
            hi = lo + 1.0;
        }
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0; bins];
        for &v in values {
            let i = (((v - lo) / width) as usize).min(bins - 1);
            counts[i] += 1;
        }
        Ok(Self {
            edges: linspace(lo, hi, bins + 1),
            counts,
        })
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Benchmark over a regular grid of `(x, m)` points.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepBench {
    pub records: Vec<BenchRecord>,
    pub histogram: Histogram,
    pub median_speedup: f64,
    pub timer_resolution: f64,
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Sequential sweep of [`bench_point`] over `grid.0 x grid.1` evenly
/// spaced points of `domain` (endpoints included).
pub fn bench_sweep(
    model: ForwardModel,
    domain: Rect,
    grid: (usize, usize),
    n_max: usize,
    config: &BenchConfig,
    bins: usize,
) -> Result<SweepBench> {
    if grid.0 < 2 || grid.1 < 2 {
        return Err(Error::Config(format!(
            "benchmark grid must be at least 2x2, got {}x{}",
            grid.0, grid.1
        )));
    }
    config.validate()?;
    let resolution = timer_resolution();
    let mut records = Vec::with_capacity(grid.0 * grid.1);
    for x in linspace(domain.x.0, domain.x.1, grid.0) {
        for m in linspace(domain.m.0, domain.m.1, grid.1) {
            let sphere = model.sphere(x, m)?;
            records.push(bench_point(&sphere, n_max, config)?);
        }
    }
    let speedups: Vec<f64> = records.iter().map(|r| r.speedup).collect();
    Ok(SweepBench {
        histogram: Histogram::new(&speedups, bins)?,
        median_speedup: median(&speedups),
        records,
        timer_resolution: resolution,
    })
}
