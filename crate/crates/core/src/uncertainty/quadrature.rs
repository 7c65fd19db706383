//! Gauss-Legendre rules and tensor-product grids.

use crate::error::{Error, Result};
use crate::uncertainty::distribution::Rect;

/// Nodes and weights of the `order`-point Gauss-Legendre rule on `[a, b]`,
/// nodes ascending.
///
/// Roots of `P_order` come from Newton iteration started at the Tricomi
/// estimate `cos(pi (i - 1/4) / (order + 1/2))`; weights are
/// `2 / ((1 - t^2) P'(t)^2)`. Exact for polynomials of degree `2 order - 1`.
pub fn gauss_legendre(order: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if order == 0 {
        return Err(Error::Config("quadrature order must be at least 1".into()));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { a, b });
    }

    let n = order;
    let half = (b - a) / 2.0;
    let mid = (a + b) / 2.0;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];

    for i in 0..n.div_ceil(2) {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, t);
            dp = d;
            let step = p / d;
            t -= step;
            if step.abs() <= 4.0 * f64::EPSILON {
                dp = legendre_with_derivative(n, t).1;
                break;
            }
        }
        let w = 2.0 / ((1.0 - t * t) * dp * dp);
        // t is the i-th largest root; mirror it.
        nodes[n - 1 - i] = mid + half * t;
        nodes[i] = mid - half * t;
        weights[n - 1 - i] = half * w;
        weights[i] = half * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = mid;
    }
    Ok((nodes, weights))
}

/// `(P_n(t), P_n'(t))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

/// Tensor-product Gauss-Legendre grid over a rectangle in `(x, m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub nodes_x: Vec<f64>,
    pub weights_x: Vec<f64>,
    pub nodes_m: Vec<f64>,
    pub weights_m: Vec<f64>,
    support: Rect,
}

impl QuadratureGrid {
    pub fn new(support: Rect, n_x: usize, n_m: usize) -> Result<Self> {
        let (nodes_x, weights_x) = gauss_legendre(n_x, support.x.0, support.x.1)?;
        let (nodes_m, weights_m) = gauss_legendre(n_m, support.m.0, support.m.1)?;
        Ok(Self {
            nodes_x,
            weights_x,
            nodes_m,
            weights_m,
            support,
        })
    }

    pub fn n_x(&self) -> usize {
        self.nodes_x.len()
    }

    pub fn n_m(&self) -> usize {
        self.nodes_m.len()
    }

    pub fn n_points(&self) -> usize {
        self.n_x() * self.n_m()
    }

    pub fn support(&self) -> Rect {
        self.support
    }

    /// `(x, m, weight)` for every node, `m` varying fastest.
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.n_points());
        for (&x, &wx) in self.nodes_x.iter().zip(&self.weights_x) {
            for (&m, &wm) in self.nodes_m.iter().zip(&self.weights_m) {
                out.push((x, m, wx * wm));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        let (x, w) = gauss_legendre(1, -1.0, 1.0).unwrap();
        assert_eq!(x, vec![0.0]);
        assert!((w[0] - 2.0).abs() < 1e-15);

        let (x, w) = gauss_legendre(2, -1.0, 1.0).unwrap();
        let r = 1.0 / 3.0f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15 && (x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn integrates_sine() {
        let (x, w) = gauss_legendre(16, 0.0, std::f64::consts::PI).unwrap();
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.sin()).sum();
        assert!((s - 2.0).abs() < 1e-12);
    }

    #[test]
    fn polynomial_exactness() {
        for order in 1..=40 {
            let (x, w) = gauss_legendre(order, 1.0, 3.0).unwrap();
            let deg = 2 * order - 1;
            let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            let exact = (3f64.powi(deg as i32 + 1) - 1.0) / (deg + 1) as f64;
            assert!((s - exact).abs() / exact < 1e-12, "order {order}");
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-13);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            assert!(x[0] > 1.0 && x[order - 1] < 3.0);
        }
    }

    #[test]
    fn high_order_weights() {
        let (x, w) = gauss_legendre(128, -1.0, 1.0).unwrap();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        assert!(x.iter().all(|v| v.abs() < 1.0));
    }

    #[test]
    fn invalid_input() {
        assert!(matches!(gauss_legendre(4, 1.0, 1.0), Err(Error::InvalidInterval { .. })));
        assert!(gauss_legendre(0, 0.0, 1.0).is_err());
    }
}
