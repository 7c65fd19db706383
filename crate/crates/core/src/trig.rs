//! Trigonometric approximations of `|a_n|^2 = sin^2(alpha_n)` and
//! `|b_n|^2 = sin^2(beta_n)`.
//!
//! Replacing the Riccati-Bessel functions by their one-term large-argument
//! forms reduces each coefficient angle to a nested arctangent:
//!
//! * homogeneous sphere, odd `n`: `alpha = x - delta`, `beta = x - gamma`
//!   with `delta = atan(tan(mx) / m)` and `gamma = atan(m tan(mx))`;
//! * coated sphere, odd `n`: `alpha = y - atan(tan(m2 y - d1) / m2)` with
//!   `d1 = m2 x - atan((m2 / m1) tan(m1 x))`, and
//!   `beta = y - atan(m2 tan(m2 y - g1))` with
//!   `g1 = m2 x - atan((m1 / m2) tan(m1 x))`;
//! * even `n`: the a- and b-channel formulas trade places. The one-term
//!   forms satisfy `f_(n+2) = -f_n`, so nothing else depends on `n`.
//!
//! Each `atan(v tan u)` is carried as the unnormalized direction
//! `(v sin u, cos u)` and angle differences use the subtraction formulas,
//! so no tangent is ever formed and the poles at `u = pi/2 + k pi` never
//! appear. The angles are only defined modulo `pi`, which is all that
//! `sin^2` and [`crate::circular::coefficient_from_angle`] need.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::mie::{
    ComplexValue, CrossSections, HomogeneousSphere, LayeredSphere, ModeCoefficients, Sphere,
};

/// Approximate angles and `sin^2` values for one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxCoefficients {
    pub n: usize,
    pub sin2_alpha: f64,
    pub sin2_beta: f64,
    /// Representative of `alpha_n` in `(-pi, pi]`.
    pub alpha: f64,
    /// Representative of `beta_n` in `(-pi, pi]`.
    pub beta: f64,
}

/// Which b-channel formula the coated-sphere approximation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LayeredBetaForm {
    /// `beta = y - atan(m2 tan(m2 y - g1))`, `g1 = m2 x - atan((m1/m2) tan(m1 x))`.
    /// Follows from the one-term forms and vanishes for `m1 = m2 = 1`.
    #[default]
    Symmetric,
    /// `beta = y - m2 (m2 y - g1)`, `g1 = m1 x - atan((m1/m2) tan(m1 x))`, as
    /// the expression is sometimes printed. Kept for comparison only; it
    /// does not vanish for an index-matched sphere.
    Literal,
}

/// An angle stored as an unnormalized `(sin, cos)` direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Phasor {
    s: f64,
    c: f64,
}

impl Phasor {
    #[inline]
    fn new(s: f64, c: f64) -> Self {
        Self { s, c }
    }

    #[inline]
    fn of(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self { s, c }
    }

    /// Direction of `self - other`.
    #[inline]
    fn minus(self, other: Phasor) -> Self {
        Self {
            s: self.s * other.c - self.c * other.s,
            c: self.c * other.c + self.s * other.s,
        }
    }

    #[inline]
    fn normalized(self) -> Self {
        let r = self.s.hypot(self.c);
        Self {
            s: self.s / r,
            c: self.c / r,
        }
    }

    #[inline]
    pub(crate) fn sin2(self) -> f64 {
        let r2 = self.s * self.s + self.c * self.c;
        if r2 == 0.0 {
            0.0
        } else {
            self.s * self.s / r2
        }
    }

    #[inline]
    pub(crate) fn angle(self) -> f64 {
        self.s.atan2(self.c)
    }

    /// `sin(t) (sin(t) + i cos(t))` for this direction.
    #[inline]
    pub(crate) fn coefficient(self) -> ComplexValue {
        let r2 = self.s * self.s + self.c * self.c;
        if r2 == 0.0 {
            return ComplexValue::new(0.0, 0.0);
        }
        ComplexValue::new(self.s * self.s / r2, self.s * self.c / r2)
    }
}

/// Approximate angles of the odd modes; even modes swap the channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct OddModeAngles {
    pub(crate) alpha: Phasor,
    pub(crate) beta: Phasor,
}

impl OddModeAngles {
    #[inline]
    pub(crate) fn for_mode(&self, n: usize) -> (Phasor, Phasor) {
        if n % 2 == 1 {
            (self.alpha, self.beta)
        } else {
            (self.beta, self.alpha)
        }
    }

    fn coefficients(&self, n: usize) -> ApproxCoefficients {
        let (a, b) = self.for_mode(n);
        let alpha = a.angle();
        let beta = b.angle();
        ApproxCoefficients {
            n,
            sin2_alpha: a.sin2(),
            sin2_beta: b.sin2(),
            alpha,
            beta,
        }
    }
}

/// Homogeneous-sphere angles from `sin/cos` of `x` and of `mx`.
#[inline]
fn homogeneous_angles(size: Phasor, path: Phasor, m: f64) -> OddModeAngles {
    // delta = atan(tan(mx) / m), gamma = atan(m tan(mx))
    let delta = Phasor::new(path.s, m * path.c);
    let gamma = Phasor::new(m * path.s, path.c);
    OddModeAngles {
        alpha: size.minus(delta),
        beta: size.minus(gamma),
    }
}

pub(crate) fn homogeneous_odd_angles(s: &HomogeneousSphere) -> OddModeAngles {
    homogeneous_angles(Phasor::of(s.x()), Phasor::of(s.m() * s.x()), s.m())
}

pub(crate) fn layered_odd_angles(s: &LayeredSphere, form: LayeredBetaForm) -> OddModeAngles {
    let (x, m1, y, m2) = (s.x(), s.m1(), s.y(), s.m2());
    let core = Phasor::of(m1 * x);
    let core_outer = Phasor::of(m2 * x);
    let shell = Phasor::of(m2 * y);
    let outer = Phasor::of(y);

    // d1 = m2 x - atan((m2/m1) tan(m1 x))
    let d1 = core_outer
        .minus(Phasor::new(m2 / m1 * core.s, core.c))
        .normalized();
    let w = shell.minus(d1);
    let alpha = outer.minus(Phasor::new(w.s, m2 * w.c));

    let beta = match form {
        LayeredBetaForm::Symmetric => {
            let g1 = core_outer
                .minus(Phasor::new(m1 / m2 * core.s, core.c))
                .normalized();
            let w = shell.minus(g1);
            outer.minus(Phasor::new(m2 * w.s, w.c))
        }
        LayeredBetaForm::Literal => {
            let g1 = m1 * x - (m1 / m2 * core.s).atan2(core.c);
            Phasor::of(y - m2 * (m2 * y - g1))
        }
    };
    OddModeAngles { alpha, beta }
}

pub(crate) fn odd_angles(sphere: &Sphere) -> OddModeAngles {
    match sphere {
        Sphere::Homogeneous(s) => homogeneous_odd_angles(s),
        Sphere::Layered(s) => layered_odd_angles(s, LayeredBetaForm::Symmetric),
    }
}

fn check_mode(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("mode index starts at 1".into()))
    } else {
        Ok(())
    }
}

/// Approximate `sin^2(alpha_n)`, `sin^2(beta_n)` of a homogeneous sphere.
/// Intended for the regime `n <= x`.
pub fn approx_homogeneous(s: &HomogeneousSphere, n: usize) -> Result<ApproxCoefficients> {
    check_mode(n)?;
    Ok(homogeneous_odd_angles(s).coefficients(n))
}

/// Approximate `sin^2(alpha_n)`, `sin^2(beta_n)` of a coated sphere.
pub fn approx_layered(s: &LayeredSphere, n: usize) -> Result<ApproxCoefficients> {
    approx_layered_with(s, n, LayeredBetaForm::Symmetric)
}

/// [`approx_layered`] with an explicit b-channel formula.
pub fn approx_layered_with(
    s: &LayeredSphere,
    n: usize,
    form: LayeredBetaForm,
) -> Result<ApproxCoefficients> {
    check_mode(n)?;
    Ok(layered_odd_angles(s, form).coefficients(n))
}

/// Approximate coefficients for either kind of sphere.
pub fn approx_coefficients(sphere: &Sphere, n: usize) -> Result<ApproxCoefficients> {
    check_mode(n)?;
    Ok(odd_angles(sphere).coefficients(n))
}

/// Approximate cross-sections over modes `1..=n_max`.
///
/// `c_sca` sums `(2n + 1)(sin^2 alpha_n + sin^2 beta_n)`; `sigma_b`,
/// `sigma_f` use coefficients rebuilt from the approximate angles. For a
/// lossless sphere extinction equals scattering, so `c_ext` is set to `c_sca`.
pub fn approx_cross_section(sphere: &Sphere, k: f64, n_max: usize) -> Result<CrossSections> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    check_mode(n_max)?;
    let angles = odd_angles(sphere);
    let modes = (1..=n_max).map(|n| {
        let (a, b) = angles.for_mode(n);
        ModeCoefficients {
            n,
            a: a.coefficient(),
            b: b.coefficient(),
        }
    });
    let mut cs = CrossSections::from_modes(modes, k);

    let mut sca = 0.0;
    for n in 1..=n_max {
        let (a, b) = angles.for_mode(n);
        sca += (2 * n + 1) as f64 * (a.sin2() + b.sin2());
    }
    cs.mode_sum_sca = sca;
    cs.mode_sum_ext = sca;
    cs.c_sca = 2.0 * std::f64::consts::PI / (k * k) * sca;
    cs.c_ext = cs.c_sca;
    Ok(cs)
}

/// One point of a constant-optical-path sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub x: f64,
    pub m: f64,
    pub sin2_alpha: f64,
    pub sin2_beta: f64,
}

/// `n_points` equally spaced values covering `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n_points: usize) -> Vec<f64> {
    match n_points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n_points - 1) as f64;
            (0..n_points)
                .map(|i| if i + 1 == n_points { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Approximations along the line `m x = c`, `x` in `x_range`.
///
/// `sin(c)` and `cos(c)` are shared by the whole sweep, so each point costs
/// one `sin/cos` pair of `x`.
pub fn constant_optical_path_sweep(
    c: f64,
    x_range: (f64, f64),
    n: usize,
    n_points: usize,
    exec: Execution,
) -> Result<Vec<SweepPoint>> {
    check_mode(n)?;
    let (lo, hi) = x_range;
    if !(c > 0.0) || !(lo > 0.0) || !(hi <= c) || !(lo <= hi) {
        return Err(Error::Domain(format!(
            "sweep range [{lo}, {hi}] must lie in (0, c] with c = {c}"
        )));
    }
    let path = Phasor::of(c);
    let xs = linspace(lo, hi, n_points);
    Ok(exec.map(&xs, |&x| {
        let m = c / x;
        let angles = homogeneous_angles(Phasor::of(x), path, m);
        let (a, b) = angles.for_mode(n);
        SweepPoint {
            x,
            m,
            sin2_alpha: a.sin2(),
            sin2_beta: b.sin2(),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mie::{an_bn_homogeneous, cross_sections};

    fn hom(x: f64, m: f64) -> HomogeneousSphere {
        HomogeneousSphere::new(x, m).unwrap()
    }

    #[test]
    fn index_one_vanishes() {
        for n in 1..6 {
            let c = approx_homogeneous(&hom(7.0, 1.0), n).unwrap();
            assert_eq!(c.sin2_alpha, 0.0);
            assert_eq!(c.sin2_beta, 0.0);
        }
        let s = LayeredSphere::new(13.0, 1.0, 31.0, 1.0).unwrap();
        for n in 1..6 {
            let c = approx_layered(&s, n).unwrap();
            assert_eq!(c.sin2_alpha, 0.0);
            assert_eq!(c.sin2_beta, 0.0);
        }
        let cs = approx_cross_section(&s.into(), 1.0, 5).unwrap();
        assert_eq!(cs, CrossSections { n_max: 5, ..Default::default() });
    }

    #[test]
    fn closed_form_first_mode() {
        let (x, m) = (50.0_f64, 1.33_f64);
        let c = approx_homogeneous(&hom(x, m), 1).unwrap();
        let direct = (x - (m * x).sin().atan2(m * (m * x).cos())).sin().powi(2);
        assert!((c.sin2_alpha - direct).abs() < 1e-12);
        let direct_b = (x - (m * (m * x).sin()).atan2((m * x).cos())).sin().powi(2);
        assert!((c.sin2_beta - direct_b).abs() < 1e-12);
        assert!((c.sin2_alpha - c.alpha.sin().powi(2)).abs() < 1e-14);
        assert!((c.sin2_beta - c.beta.sin().powi(2)).abs() < 1e-14);
    }

    #[test]
    fn even_modes_swap_channels() {
        let s = hom(23.0, 1.41);
        let odd = approx_homogeneous(&s, 1).unwrap();
        let even = approx_homogeneous(&s, 2).unwrap();
        assert_eq!(odd.sin2_alpha, even.sin2_beta);
        assert_eq!(odd.sin2_beta, even.sin2_alpha);
        let next = approx_homogeneous(&s, 3).unwrap();
        assert_eq!(next.sin2_alpha, odd.sin2_alpha);
    }

    #[test]
    fn close_to_exact_on_the_c20_line() {
        let (x, m) = (20.0 / 1.4, 1.4);
        let approx = approx_homogeneous(&hom(x, m), 1).unwrap();
        let exact = an_bn_homogeneous(&hom(x, m), 1).unwrap();
        assert!((approx.sin2_alpha - exact.a.norm_sqr()).abs() < 0.05);
    }

    #[test]
    fn zero_thickness_shell_is_homogeneous() {
        let l = approx_layered(&LayeredSphere::new(40.0, 1.4, 40.0, 1.4).unwrap(), 1).unwrap();
        let h = approx_homogeneous(&hom(40.0, 1.4), 1).unwrap();
        assert!((l.sin2_alpha - h.sin2_alpha).abs() < 1e-12);
        assert!((l.sin2_beta - h.sin2_beta).abs() < 1e-12);
    }

    #[test]
    fn nested_closed_form() {
        let (x, m1, y, m2) = (40.0_f64, 1.33_f64, 60.0_f64, 1.51_f64);
        let c = approx_layered(&LayeredSphere::new(x, m1, y, m2).unwrap(), 1).unwrap();
        let d1 = m2 * x - (m2 / m1 * (m1 * x).tan()).atan();
        let alpha = y - ((m2 * y - d1).tan() / m2).atan();
        let g1 = m2 * x - (m1 / m2 * (m1 * x).tan()).atan();
        let beta = y - (m2 * (m2 * y - g1).tan()).atan();
        assert!((c.sin2_alpha - alpha.sin().powi(2)).abs() < 1e-10);
        assert!((c.sin2_beta - beta.sin().powi(2)).abs() < 1e-10);
    }

    #[test]
    fn literal_beta_form_does_not_vanish() {
        let s = LayeredSphere::new(13.0, 1.0, 31.0, 1.0).unwrap();
        let lit = approx_layered_with(&s, 1, LayeredBetaForm::Literal).unwrap();
        assert_eq!(lit.sin2_alpha, 0.0);
        assert!(lit.sin2_beta.is_finite());
        let s = LayeredSphere::new(13.0, 1.2, 31.0, 1.3).unwrap();
        let lit = approx_layered_with(&s, 1, LayeredBetaForm::Literal).unwrap();
        let sym = approx_layered(&s, 1).unwrap();
        assert_eq!(lit.sin2_alpha, sym.sin2_alpha);
    }

    #[test]
    fn cross_section_is_weighted_mode_sum() {
        let s = hom(15.0, 1.5);
        let cs = approx_cross_section(&s.into(), 1.0, 3).unwrap();
        let mut sum = 0.0;
        for n in 1..=3 {
            let c = approx_homogeneous(&s, n).unwrap();
            sum += (2 * n + 1) as f64 * (c.sin2_alpha + c.sin2_beta);
        }
        assert!((cs.c_sca - 2.0 * std::f64::consts::PI * sum).abs() < 1e-12 * cs.c_sca);
        assert_eq!(cs.c_ext, cs.c_sca);
        let exact = cross_sections(&s.into(), 1.0, 3).unwrap();
        assert!(cs.sigma_b >= 0.0 && cs.sigma_f >= 0.0 && exact.sigma_f > 0.0);
    }

    #[test]
    fn sweep_matches_pointwise_calls() {
        let pts = constant_optical_path_sweep(20.0, (5.0, 20.0), 1, 301, Execution::Parallel)
            .unwrap();
        assert_eq!(pts.len(), 301);
        for p in &pts {
            let c = approx_homogeneous(&hom(p.x, p.m), 1).unwrap();
            assert!((c.sin2_alpha - p.sin2_alpha).abs() < 1e-12);
            assert!((c.sin2_beta - p.sin2_beta).abs() < 1e-12);
        }
        let last = pts.last().unwrap();
        assert_eq!(last.m, 1.0);
        assert!(last.sin2_alpha < 1e-28 && last.sin2_beta < 1e-28);
        assert!(constant_optical_path_sweep(20.0, (5.0, 21.0), 1, 3, Execution::Sequential).is_err());
        assert!(constant_optical_path_sweep(20.0, (0.0, 10.0), 1, 3, Execution::Sequential).is_err());
    }

    #[test]
    fn linspace_endpoints() {
        assert_eq!(linspace(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
        assert!(linspace(1.0, 2.0, 0).is_empty());
    }
}
