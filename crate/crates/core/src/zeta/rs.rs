//! Riemann-Siegel evaluation of Z at large height.

use crate::error::ZetaError;
use crate::num::Kahan;
use crate::zeta::psi_taylor::{PSI_COEFFS, PSI_DEGREE};
use crate::zeta::rs_theta;

/// j-th derivative of the phase quotient cos(2 pi (p^2 - p - 1/16))/cos(2 pi p)
/// for p in [0, 1], by Taylor expansion about the nearest tabulated center.
pub(crate) fn psi_deriv(p: f64, j: usize) -> f64 {
    debug_assert!((-0.01..=1.01).contains(&p) && j <= 6);
    let k = (p * 8.0).round().clamp(0.0, 8.0) as usize;
    let dx = p - k as f64 / 8.0;
    let table = &PSI_COEFFS[k];
    // sum a_n * n!/(n-j)! * dx^(n-j), highest order first
    let mut s = 0.0;
    for n in (j..=PSI_DEGREE).rev() {
        let mut f = 1.0;
        for i in (n - j + 1)..=n {
            f *= i as f64;
        }
        s = s * dx + table[n] * f;
    }
    s
}

/// First correction coefficients of the main-sum remainder.
pub(crate) fn correction_coeffs(p: f64) -> (f64, f64, f64) {
    let pi = std::f64::consts::PI;
    let c0 = psi_deriv(p, 0);
    let c1 = -psi_deriv(p, 3) / (96.0 * pi * pi);
    let c2 = psi_deriv(p, 2) / (64.0 * pi * pi) + psi_deriv(p, 6) / (18432.0 * pi.powi(4));
    (c0, c1, c2)
}

/// Z(t) from the main sum to sqrt(t/2pi) plus three correction terms.
/// The truncation error decays like t^{-7/4}; together with phase rounding
/// in the cosine arguments the result is good to a few times 1e-8 up to 1e7.
pub fn rs_z(t: f64) -> Result<f64, ZetaError> {
    if !(100.0..=1.0e7).contains(&t) {
        return Err(ZetaError::DomainError(format!(
            "t = {t:e} outside [1e2, 1e7] for the large-height evaluator"
        )));
    }
    let a = (t / (2.0 * std::f64::consts::PI)).sqrt();
    let n = a.floor() as u64;
    let p = a - n as f64;
    let th = rs_theta(t)?;
    let mut sum = Kahan::new();
    for k in 1..=n {
        let kf = k as f64;
        sum.add((th - t * kf.ln()).cos() / kf.sqrt());
    }
    let (c0, c1, c2) = correction_coeffs(p);
    let corr = c0 + c1 / a + c2 / (a * a);
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(2.0 * sum.value() + sign * corr / a.sqrt())
}
