//! Riccati-Bessel functions of real argument.
//!
//! Conventions:
//!
//! * `psi_n(rho) = rho * j_n(rho)`, so `psi_0 = sin`.
//! * `chi_n(rho) = rho * y_n(rho)`, so `chi_0 = -cos`. Some texts use the
//!   opposite sign (`chi_n = -rho * y_n`); with the sign used here the
//!   outgoing Riccati-Hankel function is `xi_n = psi_n + i chi_n` and the
//!   large-argument form of `chi_n` is `(-1)^(n+1) cos(rho + n pi/2)`.
//!
//! With these conventions the Wronskian is `psi_n chi_n' - psi_n' chi_n = 1`.
//!
//! `psi_n` is computed by downward recurrence from a starting order above
//! `n`, seeded with the ratio `psi_N / psi_(N-1)` from its continued
//! fraction and normalized against `psi_0` or `psi_1`. Upward recurrence
//! for `psi_n` loses all accuracy once `n > rho`. `chi_n` grows with `n`
//! and is computed by upward recurrence.

use crate::error::{Error, Result};

/// Highest mode order accepted unless configured otherwise.
pub const DEFAULT_MAX_ORDER: usize = 200;

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;
const CF_MAX_ITERATIONS: usize = 1_000_000;

/// `psi_n`, `chi_n` and their derivatives at one order and argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiPair {
    pub psi: f64,
    pub psi_prime: f64,
    pub chi: f64,
    pub chi_prime: f64,
}

impl RiccatiPair {
    /// `psi chi' - psi' chi`; equal to 1 for exact values.
    pub fn wronskian(&self) -> f64 {
        self.psi * self.chi_prime - self.psi_prime * self.chi
    }
}

/// Values of one Riccati-Bessel function for orders `0..=n_max` at a fixed
/// argument, with derivatives from `f_n' = f_(n-1) - (n / rho) f_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiSequence {
    rho: f64,
    values: Vec<f64>,
    // f_0'(rho); not reachable from the recurrence.
    first_derivative: f64,
}

impl RiccatiSequence {
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn value(&self, n: usize) -> f64 {
        self.values[n]
    }

    #[inline]
    pub fn derivative(&self, n: usize) -> f64 {
        if n == 0 {
            self.first_derivative
        } else {
            self.values[n - 1] - n as f64 / self.rho * self.values[n]
        }
    }
}

/// Evaluator with a configurable order ceiling.
///
/// Orders beyond the ceiling mean the caller's truncation logic went wrong,
/// so they are rejected rather than silently computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RiccatiBessel {
    max_order: usize,
}

impl Default for RiccatiBessel {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl RiccatiBessel {
    pub fn new(max_order: usize) -> Self {
        Self { max_order }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    fn check(&self, n: usize, rho: f64) -> Result<()> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Domain(format!(
                "Riccati-Bessel argument must be positive and finite, got {rho}"
            )));
        }
        if n > self.max_order {
            return Err(Error::Domain(format!(
                "order {n} exceeds the configured maximum {}",
                self.max_order
            )));
        }
        Ok(())
    }

    /// `psi_0(rho) ..= psi_n_max(rho)`.
    pub fn psi_sequence(&self, n_max: usize, rho: f64) -> Result<RiccatiSequence> {
        self.check(n_max, rho)?;
        Ok(RiccatiSequence {
            rho,
            values: psi_values(n_max, rho),
            first_derivative: rho.cos(),
        })
    }

    /// `chi_0(rho) ..= chi_n_max(rho)`.
    pub fn chi_sequence(&self, n_max: usize, rho: f64) -> Result<RiccatiSequence> {
        self.check(n_max, rho)?;
        Ok(RiccatiSequence {
            rho,
            values: chi_values(n_max, rho),
            first_derivative: rho.sin(),
        })
    }

    pub fn psi(&self, n: usize, rho: f64) -> Result<f64> {
        Ok(self.psi_sequence(n, rho)?.value(n))
    }

    pub fn chi(&self, n: usize, rho: f64) -> Result<f64> {
        Ok(self.chi_sequence(n, rho)?.value(n))
    }

    pub fn pair(&self, n: usize, rho: f64) -> Result<RiccatiPair> {
        let psi = self.psi_sequence(n, rho)?;
        let chi = self.chi_sequence(n, rho)?;
        Ok(RiccatiPair {
            psi: psi.value(n),
            psi_prime: psi.derivative(n),
            chi: chi.value(n),
            chi_prime: chi.derivative(n),
        })
    }
}

/// `psi_n(rho)` with the default order ceiling.
pub fn psi(n: usize, rho: f64) -> Result<f64> {
    RiccatiBessel::default().psi(n, rho)
}

/// `chi_n(rho) = rho * y_n(rho)` with the default order ceiling.
pub fn chi(n: usize, rho: f64) -> Result<f64> {
    RiccatiBessel::default().chi(n, rho)
}

/// `psi_n`, `psi_n'`, `chi_n`, `chi_n'` at one point.
pub fn riccati_pair(n: usize, rho: f64) -> Result<RiccatiPair> {
    RiccatiBessel::default().pair(n, rho)
}

/// Order at which the downward recurrence for orders `..= n` starts.
pub fn downward_start_order(n: usize) -> usize {
    let margin = (40.0 * n as f64).sqrt().ceil() as usize;
    n + margin.max(30)
}

/// `psi_n(rho) / psi_(n-1)(rho)` by the modified Lentz method applied to
/// `1 / (b_n - 1 / (b_(n+1) - 1 / (b_(n+2) - ...)))`, `b_k = (2k + 1) / rho`.
pub(crate) fn psi_ratio(n: usize, rho: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let b = |k: usize| (2 * k + 1) as f64 / rho;

    let mut f = b(n);
    if f == 0.0 {
        f = TINY;
    }
    let mut c = f;
    let mut d = 0.0;
    for j in 1..CF_MAX_ITERATIONS {
        let bj = b(n + j);
        d = bj - d;
        if d == 0.0 {
            d = TINY;
        }
        c = bj - 1.0 / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            break;
        }
    }
    1.0 / f
}

fn psi_values(n_max: usize, rho: f64) -> Vec<f64> {
    let start = downward_start_order(n_max);
    let mut f = vec![0.0; start + 1];
    f[start - 1] = 1.0;
    f[start] = psi_ratio(start, rho);

    for k in (1..start).rev() {
        let next = (2 * k + 1) as f64 / rho * f[k] - f[k + 1];
        f[k - 1] = next;
        if next.abs() > RESCALE_ABOVE {
            f[k - 1..].iter_mut().for_each(|v| *v *= RESCALE_BY);
        }
    }

    // Normalize against whichever of psi_0, psi_1 carries more weight; for
    // rho < 1 the closed form of psi_1 cancels badly, but psi_0 dominates.
    let scale = if f[0].abs() >= f[1].abs() {
        rho.sin() / f[0]
    } else {
        (rho.sin() / rho - rho.cos()) / f[1]
    };
    f.truncate(n_max + 1);
    f.iter_mut().for_each(|v| *v *= scale);
    f
}

fn chi_values(n_max: usize, rho: f64) -> Vec<f64> {
    let (s, c) = rho.sin_cos();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(-c);
    if n_max >= 1 {
        out.push(-c / rho - s);
    }
    for k in 1..n_max {
        let next = (2 * k + 1) as f64 / rho * out[k] - out[k - 1];
        out.push(next);
    }
    out
}

/// Partial sums of the terminating asymptotic series `P(n + 1/2, rho)` and
/// `Q(n + 1/2, rho)`.
///
/// The full series have `n/2 + 1` and `(n - 1)/2 + 1` terms (integer
/// division, none for `Q` at `n = 0`); `n_terms` caps both, `None` keeps all.
/// With every term kept they reproduce `psi_n` and `chi_n` exactly through
/// [`psi_asymptotic`] and [`chi_asymptotic`].
pub fn pq_series(n: usize, rho: f64, n_terms: Option<usize>) -> Result<(f64, f64)> {
    if !(rho > 0.0) {
        return Err(Error::Domain(format!("argument must be positive, got {rho}")));
    }
    if n_terms == Some(0) {
        return Err(Error::Domain("at least one series term is required".into()));
    }
    let cap = n_terms.unwrap_or(usize::MAX);

    // t_j = (n + j)! / (j! (n - j)!) (2 rho)^-j, built by its term ratio.
    let mut p = 0.0;
    let mut q = 0.0;
    let mut t = 1.0;
    for j in 0..=n {
        let k = j / 2;
        if k >= cap {
            break;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        if j % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
        t *= ((n + j + 1) * (n - j)) as f64 / ((j + 1) as f64 * 2.0 * rho);
    }
    Ok((p, q))
}

/// `(sin(rho - n pi/2), cos(rho - n pi/2))` without rounding `n pi/2`.
fn shifted_sin_cos(n: usize, rho: f64) -> (f64, f64) {
    let (s, c) = rho.sin_cos();
    match n % 4 {
        0 => (s, c),
        1 => (-c, s),
        2 => (-s, -c),
        _ => (c, -s),
    }
}

/// `(sin(rho + n pi/2), cos(rho + n pi/2))`.
fn advanced_sin_cos(n: usize, rho: f64) -> (f64, f64) {
    let (s, c) = rho.sin_cos();
    match n % 4 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

fn parity_sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        -1.0
    } else {
        1.0
    }
}

/// `P sin(rho - n pi/2) + Q cos(rho - n pi/2)` with `n_terms` series terms.
pub fn psi_asymptotic(n: usize, rho: f64, n_terms: Option<usize>) -> Result<f64> {
    let (p, q) = pq_series(n, rho, n_terms)?;
    let (s, c) = shifted_sin_cos(n, rho);
    Ok(p * s + q * c)
}

/// `(-1)^(n+1) (P cos(rho + n pi/2) - Q sin(rho + n pi/2))`.
pub fn chi_asymptotic(n: usize, rho: f64, n_terms: Option<usize>) -> Result<f64> {
    let (p, q) = pq_series(n, rho, n_terms)?;
    let (s, c) = advanced_sin_cos(n, rho);
    Ok(parity_sign(n) * (p * c - q * s))
}

/// One-term large-argument form `sin(rho - n pi/2)`.
pub fn psi_fraunhofer(n: usize, rho: f64) -> f64 {
    shifted_sin_cos(n, rho).0
}

/// One-term large-argument form `(-1)^(n+1) cos(rho + n pi/2)`.
pub fn chi_fraunhofer(n: usize, rho: f64) -> f64 {
    parity_sign(n) * advanced_sin_cos(n, rho).1
}
