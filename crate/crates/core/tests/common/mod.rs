//! Reference Mie coefficients computed independently of the library.
//!
//! Homogeneous-sphere `a_n`, `b_n` in the logarithmic-derivative form:
//! `D_n(mx)` by downward recurrence from zero, `psi_n(x)` and
//! `xi_n(x) = psi_n + i chi_n` by upward recurrence from closed forms.
//! Accurate for `n <= x`; upward `psi` loses digits beyond that.

#![allow(dead_code)]

use num_complex::Complex64;

pub fn log_derivative(n_max: usize, rho: f64) -> Vec<f64> {
    // Generous start; errors in the seed decay only once n exceeds rho.
    let start = 2 * n_max.max(rho.abs().ceil() as usize) + 32;
    let mut d = vec![0.0; start + 1];
    for n in (1..=start).rev() {
        let q = n as f64 / rho;
        d[n - 1] = q - 1.0 / (d[n] + q);
    }
    d.truncate(n_max + 1);
    d
}

/// `(a_n, b_n)` for `n = 1..=n_max`.
pub fn mie_log_derivative(x: f64, m: f64, n_max: usize) -> Vec<(Complex64, Complex64)> {
    let d = log_derivative(n_max, m * x);
    let (s, c) = x.sin_cos();
    // n = -1 and n = 0
    let mut psi_prev = c;
    let mut psi = s;
    let mut chi_prev = s;
    let mut chi = -c;
    let mut out = Vec::with_capacity(n_max);
    for (n, &dn) in d.iter().enumerate().take(n_max + 1).skip(1) {
        let f = (2 * n - 1) as f64 / x;
        let psi_n = f * psi - psi_prev;
        let chi_n = f * chi - chi_prev;
        let xi_n = Complex64::new(psi_n, chi_n);
        let xi_prev = Complex64::new(psi, chi);
        let ta = dn / m + n as f64 / x;
        let tb = dn * m + n as f64 / x;
        let a = (ta * psi_n - psi) / (ta * xi_n - xi_prev);
        let b = (tb * psi_n - psi) / (tb * xi_n - xi_prev);
        out.push((a, b));
        psi_prev = psi;
        psi = psi_n;
        chi_prev = chi;
        chi = chi_n;
    }
    out
}

pub fn relative_error(z: Complex64, reference: Complex64) -> f64 {
    (z - reference).norm() / reference.norm()
}
