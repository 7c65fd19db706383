//! Probability densities over the `(x, m)` parameter rectangle.

use statrs::function::erf::erf;

use crate::error::{Error, Result};

/// Normal tails are cut at this many standard deviations.
pub const TRUNCATION_SIGMAS: f64 = 4.0;

/// Axis-aligned rectangle `[x.0, x.1] x [m.0, m.1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: (f64, f64),
    pub m: (f64, f64),
}

impl Rect {
    pub fn new(x: (f64, f64), m: (f64, f64)) -> Result<Self> {
        for (name, (lo, hi)) in [("x", x), ("m", m)] {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::Config(format!("empty {name} interval [{lo}, {hi}]")));
            }
        }
        if x.0 < 0.0 || m.0 <= 0.0 {
            return Err(Error::Config(format!(
                "support {x:?} x {m:?} leaves the physical region x > 0, m > 0"
            )));
        }
        Ok(Self { x, m })
    }

    pub fn contains(&self, x: f64, m: f64) -> bool {
        x >= self.x.0 && x <= self.x.1 && m >= self.m.0 && m <= self.m.1
    }

    pub fn area(&self) -> f64 {
        (self.x.1 - self.x.0) * (self.m.1 - self.m.0)
    }

    fn union(&self, other: &Rect) -> Rect {
        Rect {
            x: (self.x.0.min(other.x.0), self.x.1.max(other.x.1)),
            m: (self.m.0.min(other.m.0), self.m.1.max(other.m.1)),
        }
    }
}

/// Independent normals in `x` and `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normal2 {
    pub mu_x: f64,
    pub sigma_x: f64,
    pub mu_m: f64,
    pub sigma_m: f64,
}

impl Normal2 {
    pub fn new(mu_x: f64, sigma_x: f64, mu_m: f64, sigma_m: f64) -> Result<Self> {
        if !(sigma_x > 0.0) || !(sigma_m > 0.0) {
            return Err(Error::Config(format!(
                "standard deviations must be positive, got {sigma_x} and {sigma_m}"
            )));
        }
        Ok(Self {
            mu_x,
            sigma_x,
            mu_m,
            sigma_m,
        })
    }

    /// `mu +- 4 sigma` per axis, clipped to `x > 0`, `m >= 1`.
    pub fn truncated_support(&self) -> Result<Rect> {
        let k = TRUNCATION_SIGMAS;
        let x = (
            (self.mu_x - k * self.sigma_x).max(0.0),
            self.mu_x + k * self.sigma_x,
        );
        let m = (
            (self.mu_m - k * self.sigma_m).max(1.0),
            self.mu_m + k * self.sigma_m,
        );
        Rect::new(x, m)
    }

    fn unnormalized(&self, x: f64, m: f64) -> f64 {
        let zx = (x - self.mu_x) / self.sigma_x;
        let zm = (m - self.mu_m) / self.sigma_m;
        (-0.5 * (zx * zx + zm * zm)).exp()
            / (2.0 * std::f64::consts::PI * self.sigma_x * self.sigma_m)
    }

    /// Probability mass of the untruncated density inside `r`.
    fn mass(&self, r: &Rect) -> f64 {
        let axis = |lo: f64, hi: f64, mu: f64, sigma: f64| {
            let s = sigma * std::f64::consts::SQRT_2;
            0.5 * (erf((hi - mu) / s) - erf((lo - mu) / s))
        };
        axis(r.x.0, r.x.1, self.mu_x, self.sigma_x) * axis(r.m.0, r.m.1, self.mu_m, self.sigma_m)
    }
}

/// Shape of a [`ParametricDistribution`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionKind {
    Uniform,
    Normal(Normal2),
    Bimodal {
        first: Normal2,
        second: Normal2,
        w1: f64,
        w2: f64,
    },
}

/// A density on a rectangle, renormalized to unit mass there.
///
/// Normal components are truncated to the support and each is rescaled by
/// its mass inside it, so the mixture integrates to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricDistribution {
    kind: DistributionKind,
    support: Rect,
    // 1 / (mass inside the support) per normal component.
    scale: [f64; 2],
}

impl ParametricDistribution {
    pub fn uniform(x: (f64, f64), m: (f64, f64)) -> Result<Self> {
        let support = Rect::new(x, m)?;
        Ok(Self {
            kind: DistributionKind::Uniform,
            support,
            scale: [1.0 / support.area(), 0.0],
        })
    }

    pub fn normal(f: Normal2) -> Result<Self> {
        let support = f.truncated_support()?;
        Ok(Self {
            kind: DistributionKind::Normal(f),
            support,
            scale: [1.0 / f.mass(&support), 0.0],
        })
    }

    /// Mixture `w1 f1 + w2 f2`; the support covers both truncated components.
    pub fn bimodal(first: Normal2, second: Normal2, w1: f64, w2: f64) -> Result<Self> {
        if !(w1 >= 0.0) || !(w2 >= 0.0) || ((w1 + w2) - 1.0).abs() > 1e-12 {
            return Err(Error::Config(format!(
                "mixture weights must be nonnegative and sum to 1, got {w1} and {w2}"
            )));
        }
        let support = first.truncated_support()?.union(&second.truncated_support()?);
        let d = Self {
            kind: DistributionKind::Bimodal {
                first,
                second,
                w1,
                w2,
            },
            support,
            scale: [1.0 / first.mass(&support), 1.0 / second.mass(&support)],
        };
        for w in d.warnings() {
            log::warn!("{w}");
        }
        Ok(d)
    }

    pub fn kind(&self) -> &DistributionKind {
        &self.kind
    }

    pub fn support(&self) -> Rect {
        self.support
    }

    /// Renormalized density; zero outside the support.
    pub fn density(&self, x: f64, m: f64) -> f64 {
        if !self.support.contains(x, m) {
            return 0.0;
        }
        match &self.kind {
            DistributionKind::Uniform => self.scale[0],
            DistributionKind::Normal(f) => self.scale[0] * f.unnormalized(x, m),
            DistributionKind::Bimodal {
                first,
                second,
                w1,
                w2,
            } => {
                w1 * self.scale[0] * first.unnormalized(x, m)
                    + w2 * self.scale[1] * second.unnormalized(x, m)
            }
        }
    }

    /// Axes on which a bimodal mixture fails the two-peak separation
    /// `|mu1 - mu2| >= 2 * mean(sigma1, sigma2)`. Advisory only.
    pub fn warnings(&self) -> Vec<String> {
        let DistributionKind::Bimodal { first, second, .. } = &self.kind else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let axes = [
            ("x", first.mu_x, second.mu_x, first.sigma_x, second.sigma_x),
            ("m", first.mu_m, second.mu_m, first.sigma_m, second.sigma_m),
        ];
        for (name, mu1, mu2, s1, s2) in axes {
            let gap = (mu1 - mu2).abs();
            let need = s1 + s2;
            if gap < need {
                out.push(format!(
                    "bimodal components overlap along {name}: |mu1 - mu2| = {gap} < 2 sigma = {need}"
                ));
            }
        }
        out
    }
}
