//! Angle form of coefficients lying on the circle `Re(z) = |z|^2`
//! (center 1/2, radius 1/2).
//!
//! A coefficient on the circle is written `z = sin(t) (sin(t) + i cos(t))`
//! with `t = pi/2 - Arg(z)`, so that `|z|^2 = sin^2(t)`. This form is
//! periodic in `t` with period `pi`, which is what lets the approximate
//! angles (known only modulo `pi`) be turned back into coefficients.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::mie::ComplexValue;

/// Residual above which a coefficient is refused by [`angle_from_coefficient`].
pub const OFF_CIRCLE_TOLERANCE: f64 = 1e-6;

/// Which coefficient an angle belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleKind {
    Alpha,
    Beta,
}

/// `alpha_n` or `beta_n` for one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientAngle {
    pub angle: f64,
    pub kind: AngleKind,
    pub n: usize,
}

impl CoefficientAngle {
    pub fn coefficient(&self) -> ComplexValue {
        coefficient_from_angle(self.angle)
    }
}

/// `|z|^2 - Re(z)`.
pub fn circular_residual(z: ComplexValue) -> f64 {
    z.norm_sqr() - z.re
}

/// `pi/2 - Arg(z)`; zero for `z = 0`.
pub fn angle_from_coefficient(z: ComplexValue) -> Result<f64> {
    let residual = circular_residual(z);
    if !(residual.abs() <= OFF_CIRCLE_TOLERANCE) {
        return Err(Error::OffCircle {
            re: z.re,
            im: z.im,
            residual,
        });
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(0.0);
    }
    Ok(FRAC_PI_2 - z.im.atan2(z.re))
}

/// `sin(t) (sin(t) + i cos(t))`, always on the circle.
///
/// For `t` in `[0, pi]` this is `|sin t| (sin t + i cos t)`; outside that
/// range the signed form keeps the point on the circle.
pub fn coefficient_from_angle(angle: f64) -> ComplexValue {
    let (s, c) = angle.sin_cos();
    ComplexValue::new(s * s, s * c)
}
