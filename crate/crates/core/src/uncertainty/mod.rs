//! Expected cross-sections under uncertainty in size and refractive index.
//!
//! The expectation `E[C_sca] = integral p(x, m) C_sca(x, m) dx dm` is
//! evaluated by tensor-product Gauss-Legendre quadrature over the support
//! of the density. Layered spheres vary only the core `(x, m1)`; the shell
//! follows deterministically as `y = x + shell_offset`, `m2 = shell_index`.

pub mod distribution;
pub mod quadrature;

use std::time::Instant;

pub use distribution::{DistributionKind, Normal2, ParametricDistribution, Rect};
pub use quadrature::{gauss_legendre, QuadratureGrid};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::mie::{self, HomogeneousSphere, LayeredSphere, Sphere};
use crate::trig;

/// Default per-axis quadrature order.
pub const DEFAULT_GRID: usize = 60;

/// Per-axis orders used by [`convergence_study`].
pub const CONVERGENCE_ORDERS: [usize; 5] = [8, 16, 32, 64, 128];

/// Maps an integration point `(x, m)` to a sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ForwardModel {
    Homogeneous,
    /// Core `(x, m1)`, shell `y = x + shell_offset` with index `shell_index`.
    Layered { shell_offset: f64, shell_index: f64 },
}

impl ForwardModel {
    pub fn sphere(&self, x: f64, m: f64) -> Result<Sphere> {
        Ok(match *self {
            ForwardModel::Homogeneous => HomogeneousSphere::new(x, m)?.into(),
            ForwardModel::Layered {
                shell_offset,
                shell_index,
            } => LayeredSphere::new(x, m, x + shell_offset, shell_index)?.into(),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ForwardModel::Homogeneous => "homogeneous",
            ForwardModel::Layered { .. } => "layered",
        }
    }
}

/// Which cross-section computation backs the integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Evaluator {
    Exact,
    Approx,
}

impl Evaluator {
    pub fn name(&self) -> &'static str {
        match self {
            Evaluator::Exact => "exact",
            Evaluator::Approx => "approx",
        }
    }
}

/// `C_sca` at a point for a fixed model, evaluator, wavenumber and truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrand {
    pub model: ForwardModel,
    pub evaluator: Evaluator,
    pub k: f64,
    pub n_max: usize,
}

impl Integrand {
    pub fn new(model: ForwardModel, evaluator: Evaluator, k: f64, n_max: usize) -> Self {
        Self {
            model,
            evaluator,
            k,
            n_max,
        }
    }

    pub fn with_evaluator(self, evaluator: Evaluator) -> Self {
        Self { evaluator, ..self }
    }

    pub fn eval(&self, x: f64, m: f64) -> Result<f64> {
        let sphere = self.model.sphere(x, m)?;
        let cs = match self.evaluator {
            Evaluator::Exact => mie::cross_sections(&sphere, self.k, self.n_max)?,
            Evaluator::Approx => trig::approx_cross_section(&sphere, self.k, self.n_max)?,
        };
        Ok(cs.c_sca)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub n_points: usize,
    pub evaluator: Evaluator,
    /// Wall seconds spent in integrand evaluations.
    pub elapsed: f64,
}

/// Quadrature grid of `n_x * n_m` points over the distribution's support.
pub fn grid_for(d: &ParametricDistribution, n_x: usize, n_m: usize) -> Result<QuadratureGrid> {
    QuadratureGrid::new(d.support(), n_x, n_m)
}

fn check_grid(d: &ParametricDistribution, grid: &QuadratureGrid) -> Result<()> {
    if grid.support() != d.support() {
        return Err(Error::Config(format!(
            "quadrature support {:?} does not match distribution support {:?}",
            grid.support(),
            d.support()
        )));
    }
    Ok(())
}

/// `sum w p(x, m) f(x, m)` over the grid, with the seconds spent in `f`.
///
/// Values are collected in grid order and summed sequentially, so the
/// result does not depend on the execution policy.
pub fn integrate<F>(
    d: &ParametricDistribution,
    grid: &QuadratureGrid,
    exec: Execution,
    f: F,
) -> Result<(f64, f64)>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    check_grid(d, grid)?;
    let points = grid.points();
    let start = Instant::now();
    let values = exec.try_map(&points, |&(x, m, _)| f(x, m))?;
    let elapsed = start.elapsed().as_secs_f64();
    let value = points
        .iter()
        .zip(&values)
        .map(|(&(x, m, w), v)| w * d.density(x, m) * v)
        .sum();
    Ok((value, elapsed))
}

pub fn expected_cross_section(
    d: &ParametricDistribution,
    grid: &QuadratureGrid,
    integrand: &Integrand,
    exec: Execution,
) -> Result<IntegralResult> {
    let (value, elapsed) = integrate(d, grid, exec, |x, m| integrand.eval(x, m))?;
    Ok(IntegralResult {
        value,
        n_points: grid.n_points(),
        evaluator: integrand.evaluator,
        elapsed,
    })
}

/// Exact and approximate integrals on one grid, plus the pointwise
/// disagreement of the integrands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluatorComparison {
    pub order: usize,
    pub exact: IntegralResult,
    pub approx: IntegralResult,
    /// Mean of `|C_approx - C_exact| / C_exact` over the grid nodes.
    pub mean_pointwise_relative_error: f64,
}

impl EvaluatorComparison {
    pub fn relative_error(&self) -> f64 {
        (self.approx.value - self.exact.value).abs() / self.exact.value.abs()
    }
}

/// Both evaluators on a `order x order` grid.
pub fn compare_evaluators(
    d: &ParametricDistribution,
    integrand: &Integrand,
    order: usize,
    exec: Execution,
) -> Result<EvaluatorComparison> {
    let grid = grid_for(d, order, order)?;
    let points = grid.points();
    let exact_f = integrand.with_evaluator(Evaluator::Exact);
    let approx_f = integrand.with_evaluator(Evaluator::Approx);

    let start = Instant::now();
    let exact_v = exec.try_map(&points, |&(x, m, _)| exact_f.eval(x, m))?;
    let t_exact = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let approx_v = exec.try_map(&points, |&(x, m, _)| approx_f.eval(x, m))?;
    let t_approx = start.elapsed().as_secs_f64();

    let (mut ie, mut ia, mut rel) = (0.0, 0.0, 0.0);
    for ((&(x, m, w), e), a) in points.iter().zip(&exact_v).zip(&approx_v) {
        let p = w * d.density(x, m);
        ie += p * e;
        ia += p * a;
        rel += (a - e).abs() / e.abs();
    }
    let n = points.len();
    let result = |value, evaluator, elapsed| IntegralResult {
        value,
        n_points: n,
        evaluator,
        elapsed,
    };
    Ok(EvaluatorComparison {
        order,
        exact: result(ie, Evaluator::Exact, t_exact),
        approx: result(ia, Evaluator::Approx, t_approx),
        mean_pointwise_relative_error: rel / n as f64,
    })
}

/// Integrals of both evaluators over a ladder of grid sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub levels: Vec<EvaluatorComparison>,
}

impl ConvergenceStudy {
    pub fn finest(&self) -> &EvaluatorComparison {
        self.levels.last().expect("convergence study has at least one level")
    }

    /// Smallest order whose integral, and every finer one, lies within
    /// `tol` (relative) of the finest level.
    pub fn self_converged_order(&self, evaluator: Evaluator, tol: f64) -> usize {
        let pick = |c: &EvaluatorComparison| match evaluator {
            Evaluator::Exact => c.exact.value,
            Evaluator::Approx => c.approx.value,
        };
        let reference = pick(self.finest());
        let mut order = self.finest().order;
        for c in self.levels.iter().rev() {
            if (pick(c) - reference).abs() > tol * reference.abs() {
                break;
            }
            order = c.order;
        }
        order
    }
}

pub fn convergence_study(
    d: &ParametricDistribution,
    integrand: &Integrand,
    orders: &[usize],
    exec: Execution,
) -> Result<ConvergenceStudy> {
    if orders.is_empty() {
        return Err(Error::Config("convergence study needs at least one grid".into()));
    }
    let levels = orders
        .iter()
        .map(|&n| compare_evaluators(d, integrand, n, exec))
        .collect::<Result<_>>()?;
    Ok(ConvergenceStudy { levels })
}

/// A distribution paired with a forward model.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub name: &'static str,
    pub distribution: ParametricDistribution,
    pub model: ForwardModel,
}

/// Shell used by the layered experiments: 20 size units thick, index 1.51.
pub const REFERENCE_SHELL: ForwardModel = ForwardModel::Layered {
    shell_offset: 20.0,
    shell_index: 1.51,
};

/// The six reference experiments: uniform, normal and bimodal densities,
/// each over homogeneous and layered spheres.
pub fn reference_experiments() -> Result<Vec<Experiment>> {
    use ForwardModel::Homogeneous;
    let n = Normal2::new;
    Ok(vec![
        Experiment {
            name: "uniform-homogeneous",
            distribution: ParametricDistribution::uniform((10.0, 20.0), (1.2, 1.8))?,
            model: Homogeneous,
        },
        Experiment {
            name: "uniform-layered",
            distribution: ParametricDistribution::uniform((40.0, 60.0), (1.25, 1.4))?,
            model: REFERENCE_SHELL,
        },
        Experiment {
            name: "normal-homogeneous",
            distribution: ParametricDistribution::normal(n(15.0, 1.67, 1.5, 0.1)?)?,
            model: Homogeneous,
        },
        Experiment {
            name: "normal-layered",
            distribution: ParametricDistribution::normal(n(50.0, 3.33, 1.325, 0.025)?)?,
            model: REFERENCE_SHELL,
        },
        Experiment {
            name: "bimodal-homogeneous",
            distribution: ParametricDistribution::bimodal(
                n(13.0, 1.0, 1.4, 0.06)?,
                n(17.0, 1.0, 1.6, 0.06)?,
                0.5,
                0.5,
            )?,
            model: Homogeneous,
        },
        Experiment {
            name: "bimodal-layered",
            distribution: ParametricDistribution::bimodal(
                n(45.0, 3.33, 1.30, 0.02)?,
                n(55.0, 3.33, 1.35, 0.02)?,
                0.5,
                0.5,
            )?,
            model: REFERENCE_SHELL,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mie::experiment_n_max;

    fn uniform() -> ParametricDistribution {
        ParametricDistribution::uniform((10.0, 20.0), (1.2, 1.8)).unwrap()
    }

    #[test]
    fn constant_integrand() {
        for e in reference_experiments().unwrap() {
            let d = &e.distribution;
            let grid = grid_for(d, 48, 48).unwrap();
            let (v, _) = integrate(d, &grid, Execution::Sequential, |_, _| Ok(1.0)).unwrap();
            // The densities are smooth but not polynomial; 48 points per
            // axis resolve them far below this tolerance.
            assert!((v - 1.0).abs() < 1e-10, "{}: {v}", e.name);
        }
    }

    #[test]
    fn compositional_identity() {
        let d = uniform();
        let grid = grid_for(&d, 6, 5).unwrap();
        let f = Integrand::new(ForwardModel::Homogeneous, Evaluator::Approx, 1.0, 3);
        let r = expected_cross_section(&d, &grid, &f, Execution::Sequential).unwrap();
        let mut manual = 0.0;
        for (x, m, w) in grid.points() {
            let s = HomogeneousSphere::new(x, m).unwrap().into();
            let c = trig::approx_cross_section(&s, 1.0, 3).unwrap().c_sca;
            manual += w * d.density(x, m) * c;
        }
        assert!((r.value - manual).abs() <= 1e-14 * manual);
        assert_eq!(r.n_points, 30);
        assert_eq!(r.evaluator, Evaluator::Approx);
    }

    #[test]
    fn execution_policies_agree() {
        let d = uniform();
        let grid = grid_for(&d, 12, 12).unwrap();
        let f = Integrand::new(ForwardModel::Homogeneous, Evaluator::Exact, 1.0, 3);
        let a = expected_cross_section(&d, &grid, &f, Execution::Sequential).unwrap();
        let b = expected_cross_section(&d, &grid, &f, Execution::Parallel).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn mismatched_grid_rejected() {
        let d = uniform();
        let grid = QuadratureGrid::new(Rect::new((0.5, 1.0), (1.0, 2.0)).unwrap(), 4, 4).unwrap();
        let f = Integrand::new(ForwardModel::Homogeneous, Evaluator::Exact, 1.0, 3);
        assert!(expected_cross_section(&d, &grid, &f, Execution::Sequential).is_err());
    }

    #[test]
    fn uniform_homogeneous_evaluators_agree() {
        let d = uniform();
        let f = Integrand::new(ForwardModel::Homogeneous, Evaluator::Exact, 1.0, experiment_n_max());
        let c = compare_evaluators(&d, &f, 64, Execution::default()).unwrap();
        assert!(c.relative_error() < 0.01, "{}", c.relative_error());
        assert!(c.exact.value > 0.0);
    }

    #[test]
    fn self_convergence_order() {
        let d = uniform();
        let f = Integrand::new(ForwardModel::Homogeneous, Evaluator::Exact, 1.0, 3);
        let study = convergence_study(&d, &f, &[4, 8, 16, 32], Execution::default()).unwrap();
        assert_eq!(study.levels.len(), 4);
        let o = study.self_converged_order(Evaluator::Exact, 0.01);
        assert!(o <= 32);
        assert_eq!(study.self_converged_order(Evaluator::Exact, 0.0), 32);
    }

    #[test]
    fn layered_model_shell() {
        let s = REFERENCE_SHELL.sphere(40.0, 1.3).unwrap();
        match s {
            Sphere::Layered(l) => {
                assert_eq!((l.x(), l.m1(), l.y(), l.m2()), (40.0, 1.3, 60.0, 1.51));
            }
            _ => panic!("expected a layered sphere"),
        }
    }
}
