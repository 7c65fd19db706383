//! Exact scattering coefficients and cross-sections of homogeneous and
//! two-layer (coated) dielectric spheres.
//!
//! Every coefficient is assembled as `N / (N + i D)` with real `N`, `D`,
//! which puts it on the circle `Re(z) = |z|^2` by construction whenever the
//! refractive indices are real.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::circular;
use crate::error::{Error, Result};
use crate::special::{RiccatiBessel, RiccatiSequence};

/// Complex scattering coefficient.
pub type ComplexValue = Complex64;

/// Below this magnitude a coefficient denominator counts as zero.
pub const DEGENERATE_DENOMINATOR: f64 = 1e-300;

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Homogeneous sphere: size parameter `x = kR` and real relative index `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousSphere {
    x: f64,
    m: f64,
}

impl HomogeneousSphere {
    pub fn new(x: f64, m: f64) -> Result<Self> {
        check_positive("size parameter x", x)?;
        check_positive("refractive index m", m)?;
        Ok(Self { x, m })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn m(&self) -> f64 {
        self.m
    }
}

/// Core of size `x = kR1` and index `m1` inside a shell of outer size
/// `y = kR2` and index `m2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayeredSphere {
    x: f64,
    m1: f64,
    y: f64,
    m2: f64,
}

impl LayeredSphere {
    pub fn new(x: f64, m1: f64, y: f64, m2: f64) -> Result<Self> {
        check_positive("core size parameter x", x)?;
        check_positive("outer size parameter y", y)?;
        check_positive("core index m1", m1)?;
        check_positive("shell index m2", m2)?;
        if x > y {
            return Err(Error::Domain(format!(
                "core size parameter {x} exceeds outer size parameter {y}"
            )));
        }
        Ok(Self { x, m1, y, m2 })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn m2(&self) -> f64 {
        self.m2
    }
}

/// Either kind of sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sphere {
    Homogeneous(HomogeneousSphere),
    Layered(LayeredSphere),
}

impl Sphere {
    /// Size parameter of the outer boundary; drives truncation.
    pub fn outer_size(&self) -> f64 {
        match self {
            Sphere::Homogeneous(s) => s.x,
            Sphere::Layered(s) => s.y,
        }
    }
}

impl From<HomogeneousSphere> for Sphere {
    fn from(s: HomogeneousSphere) -> Self {
        Sphere::Homogeneous(s)
    }
}

impl From<LayeredSphere> for Sphere {
    fn from(s: LayeredSphere) -> Self {
        Sphere::Layered(s)
    }
}

/// Electric (`a`) and magnetic (`b`) coefficients of mode `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoefficients {
    pub n: usize,
    pub a: ComplexValue,
    pub b: ComplexValue,
}

impl ModeCoefficients {
    /// `(|a|^2 - Re a, |b|^2 - Re b)`; both vanish for lossless spheres.
    pub fn circular_residuals(&self) -> (f64, f64) {
        (
            circular::circular_residual(self.a),
            circular::circular_residual(self.b),
        )
    }

    /// `(alpha_n, beta_n)`, the angles with `a_n = sin(alpha)(sin(alpha) + i cos(alpha))`.
    pub fn angles(&self) -> Result<(f64, f64)> {
        Ok((
            circular::angle_from_coefficient(self.a)?,
            circular::angle_from_coefficient(self.b)?,
        ))
    }
}

/// Truncated cross-section sums.
///
/// `c_sca`, `c_ext` carry the `2 pi / k^2` prefactor; `sigma_b`, `sigma_f`
/// are the differential back- and forward-scattering cross-sections with
/// prefactor `1 / (2k)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CrossSections {
    pub mode_sum_sca: f64,
    pub mode_sum_ext: f64,
    pub c_sca: f64,
    pub c_ext: f64,
    pub sigma_b: f64,
    pub sigma_f: f64,
    pub n_max: usize,
}

impl CrossSections {
    /// Accumulate all fields from a single pass over the mode coefficients.
    pub fn from_modes<I>(modes: I, k: f64) -> Self
    where
        I: IntoIterator<Item = ModeCoefficients>,
    {
        let mut sca = 0.0;
        let mut ext = 0.0;
        let mut back = ComplexValue::new(0.0, 0.0);
        let mut fwd = ComplexValue::new(0.0, 0.0);
        let mut n_max = 0;
        for mode in modes {
            let w = (2 * mode.n + 1) as f64;
            sca += w * (mode.a.norm_sqr() + mode.b.norm_sqr());
            ext += w * (mode.a.re + mode.b.re);
            let alt = if mode.n % 2 == 0 { w } else { -w };
            back += (mode.a - mode.b) * alt;
            fwd += (mode.a + mode.b) * w;
            n_max = n_max.max(mode.n);
        }
        let area = 2.0 * PI / (k * k);
        let diff = 1.0 / (4.0 * k * k);
        Self {
            mode_sum_sca: sca,
            mode_sum_ext: ext,
            c_sca: area * sca,
            c_ext: area * ext,
            sigma_b: diff * back.norm_sqr(),
            sigma_f: diff * fwd.norm_sqr(),
            n_max,
        }
    }
}

/// Mode cutoff `ceil(x + 4 x^(1/3) + 2)` for converged sums.
pub fn default_n_max(size_param: f64) -> usize {
    (size_param + 4.0 * size_param.cbrt() + 2.0).ceil() as usize
}

/// The three lowest modes used by the distribution experiments.
pub fn experiment_n_max() -> usize {
    3
}

/// How many modes a cross-section sum keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// [`default_n_max`] of the outer size parameter.
    #[default]
    Standard,
    /// Exactly this many modes.
    Fixed(usize),
}

impl Truncation {
    pub fn n_max(self, sphere: &Sphere) -> usize {
        match self {
            Truncation::Standard => default_n_max(sphere.outer_size()),
            Truncation::Fixed(n) => n,
        }
    }
}

/// `num / (num + i den)`, rejecting vanishing denominators.
fn on_circle(num: f64, den: f64, what: &str, n: usize) -> Result<ComplexValue> {
    if num.is_finite() && den.is_infinite() {
        return Ok(ComplexValue::new(0.0, 0.0));
    }
    let r = num.hypot(den);
    if !r.is_finite() || r < DEGENERATE_DENOMINATOR {
        return Err(Error::Degenerate(format!(
            "{what} denominator for mode {n} is {r:e} (N = {num:e}, D = {den:e})"
        )));
    }
    let (u, v) = (num / r, den / r);
    Ok(ComplexValue::new(u * u, -u * v))
}

/// Real ratio `num / den` of the coated-sphere intermediates `A_n`, `B_n`.
/// An overflowing denominator (tiny core, high order) means the ratio is 0.
fn shell_ratio(num: f64, den: f64, what: &str, n: usize) -> Result<f64> {
    if num.is_finite() && !den.is_finite() {
        return Ok(0.0);
    }
    if !(den.abs() >= DEGENERATE_DENOMINATOR) || !num.is_finite() {
        return Err(Error::Degenerate(format!(
            "{what} for mode {n}: numerator {num:e}, denominator {den:e}"
        )));
    }
    Ok(num / den)
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("mode index starts at 1".into()))
    } else {
        Ok(())
    }
}

/// Riccati-Bessel tables needed by the homogeneous coefficients.
struct HomogeneousTables {
    m: f64,
    psi_x: RiccatiSequence,
    chi_x: RiccatiSequence,
    psi_mx: RiccatiSequence,
}

impl HomogeneousTables {
    fn new(rb: &RiccatiBessel, s: &HomogeneousSphere, n_max: usize) -> Result<Self> {
        Ok(Self {
            m: s.m,
            psi_x: rb.psi_sequence(n_max, s.x)?,
            chi_x: rb.chi_sequence(n_max, s.x)?,
            psi_mx: rb.psi_sequence(n_max, s.m * s.x)?,
        })
    }

    fn mode(&self, n: usize) -> Result<ModeCoefficients> {
        let m = self.m;
        let (p, dp) = (self.psi_x.value(n), self.psi_x.derivative(n));
        let (c, dc) = (self.chi_x.value(n), self.chi_x.derivative(n));
        let (pm, dpm) = (self.psi_mx.value(n), self.psi_mx.derivative(n));

        let a_num = m * (pm * dp) - p * dpm;
        let a_den = m * (pm * dc) - c * dpm;
        let b_num = pm * dp - m * (p * dpm);
        let b_den = pm * dc - m * (c * dpm);
        Ok(ModeCoefficients {
            n,
            a: on_circle(a_num, a_den, "a", n)?,
            b: on_circle(b_num, b_den, "b", n)?,
        })
    }
}

/// Riccati-Bessel tables needed by the coated-sphere coefficients.
struct LayeredTables {
    m1: f64,
    m2: f64,
    psi_m1x: RiccatiSequence,
    psi_m2x: RiccatiSequence,
    chi_m2x: RiccatiSequence,
    psi_m2y: RiccatiSequence,
    chi_m2y: RiccatiSequence,
    psi_y: RiccatiSequence,
    chi_y: RiccatiSequence,
}

impl LayeredTables {
    fn new(rb: &RiccatiBessel, s: &LayeredSphere, n_max: usize) -> Result<Self> {
        Ok(Self {
            m1: s.m1,
            m2: s.m2,
            psi_m1x: rb.psi_sequence(n_max, s.m1 * s.x)?,
            psi_m2x: rb.psi_sequence(n_max, s.m2 * s.x)?,
            chi_m2x: rb.chi_sequence(n_max, s.m2 * s.x)?,
            psi_m2y: rb.psi_sequence(n_max, s.m2 * s.y)?,
            chi_m2y: rb.chi_sequence(n_max, s.m2 * s.y)?,
            psi_y: rb.psi_sequence(n_max, s.y)?,
            chi_y: rb.chi_sequence(n_max, s.y)?,
        })
    }

    /// `(A_n, B_n)`, the core terms carried into the shell.
    fn core_ratios(&self, n: usize) -> Result<(f64, f64)> {
        let (m1, m2) = (self.m1, self.m2);
        let (p1, dp1) = (self.psi_m1x.value(n), self.psi_m1x.derivative(n));
        let (p2, dp2) = (self.psi_m2x.value(n), self.psi_m2x.derivative(n));
        let (c2, dc2) = (self.chi_m2x.value(n), self.chi_m2x.derivative(n));

        // Products grouped so that m1 == m2 cancels exactly.
        let a_num = m2 * (p2 * dp1) - m1 * (dp2 * p1);
        let a_den = m2 * (c2 * dp1) - m1 * (dc2 * p1);
        let b_num = m2 * (p1 * dp2) - m1 * (p2 * dp1);
        let b_den = m2 * (dc2 * p1) - m1 * (dp1 * c2);
        Ok((
            shell_ratio(a_num, a_den, "A", n)?,
            shell_ratio(b_num, b_den, "B", n)?,
        ))
    }

    fn mode(&self, n: usize) -> Result<ModeCoefficients> {
        let m2 = self.m2;
        let (big_a, big_b) = self.core_ratios(n)?;
        let (py, dpy) = (self.psi_y.value(n), self.psi_y.derivative(n));
        let (cy, dcy) = (self.chi_y.value(n), self.chi_y.derivative(n));
        let (ps, dps) = (self.psi_m2y.value(n), self.psi_m2y.derivative(n));
        let (cs, dcs) = (self.chi_m2y.value(n), self.chi_m2y.derivative(n));

        let shell = |ratio: f64| {
            if ratio == 0.0 {
                (dps, ps)
            } else {
                (dps - ratio * dcs, ps - ratio * cs)
            }
        };

        let (pa, qa) = shell(big_a);
        let a_num = py * pa - m2 * (dpy * qa);
        let a_den = cy * pa - m2 * (dcy * qa);

        let (pb, qb) = shell(big_b);
        let b_num = m2 * (py * pb) - dpy * qb;
        let b_den = m2 * (cy * pb) - dcy * qb;

        Ok(ModeCoefficients {
            n,
            a: on_circle(a_num, a_den, "a", n)?,
            b: on_circle(b_num, b_den, "b", n)?,
        })
    }
}

/// Coefficients for modes `1..=n_max`, sharing one set of recurrences.
pub fn mode_coefficients(sphere: &Sphere, n_max: usize) -> Result<Vec<ModeCoefficients>> {
    mode_coefficients_with(&RiccatiBessel::default(), sphere, n_max)
}

/// [`mode_coefficients`] with an explicit order ceiling.
pub fn mode_coefficients_with(
    rb: &RiccatiBessel,
    sphere: &Sphere,
    n_max: usize,
) -> Result<Vec<ModeCoefficients>> {
    check_order(n_max)?;
    match sphere {
        Sphere::Homogeneous(s) => {
            let t = HomogeneousTables::new(rb, s, n_max)?;
            (1..=n_max).map(|n| t.mode(n)).collect()
        }
        Sphere::Layered(s) => {
            let t = LayeredTables::new(rb, s, n_max)?;
            (1..=n_max).map(|n| t.mode(n)).collect()
        }
    }
}

/// Exact `a_n`, `b_n` of a homogeneous sphere.
pub fn an_bn_homogeneous(s: &HomogeneousSphere, n: usize) -> Result<ModeCoefficients> {
    check_order(n)?;
    HomogeneousTables::new(&RiccatiBessel::default(), s, n)?.mode(n)
}

/// Exact `a_n`, `b_n` of a coated sphere.
pub fn an_bn_layered(s: &LayeredSphere, n: usize) -> Result<ModeCoefficients> {
    check_order(n)?;
    LayeredTables::new(&RiccatiBessel::default(), s, n)?.mode(n)
}

/// Cross-sections summed over modes `1..=n_max` at wavenumber `k`.
pub fn cross_sections(sphere: &Sphere, k: f64, n_max: usize) -> Result<CrossSections> {
    check_positive("wavenumber k", k)?;
    let modes = mode_coefficients(sphere, n_max)?;
    Ok(CrossSections::from_modes(modes, k))
}
