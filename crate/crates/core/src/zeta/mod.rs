//! Evaluators for the functions on the critical line: the phase theta, the
//! real rotation Z of zeta, the argument function S and its integral, and a
//! counting engine that locates ordinates by sign changes of Z.

mod em;
mod engine;
mod gamma;
mod psi_taylor;
mod rs;

pub use em::{zeta_em, EM_T_MAX};
pub(crate) use engine::scan_ordinates;
pub use engine::{CountResult, SFunSample, SMethod, ZetaEngine};
pub use gamma::ln_gamma;
pub use rs::rs_z;

use num_complex::Complex64;

use crate::error::ZetaError;

/// Where hardy_z switches from Euler-Maclaurin to the main-sum formula.
/// Below the switch the truncation error of the latter would approach the
/// promised 1e-6; above it the former costs O(t) per call.
pub const HYBRID_SWITCH_T: f64 = 2000.0;

/// Largest height hardy_z accepts.
pub const HARDY_T_MAX: f64 = 1.0e7;

/// theta(t) = t/2 log(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3)
/// + 31/(80640 t^5), valid for t >= 10 with absolute error below 1e-10.
pub fn rs_theta(t: f64) -> Result<f64, ZetaError> {
    if t < 10.0 {
        return Err(ZetaError::DomainError(format!(
            "t = {t} below 10; the asymptotic phase needs t >= 10"
        )));
    }
    let pi = std::f64::consts::PI;
    let t2 = t * t;
    Ok(0.5 * t * (t / (2.0 * pi)).ln() - 0.5 * t - pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2))
}

/// The phase on all of t >= 0: asymptotic above 10, the log-gamma
/// definition Im log Gamma(1/4 + it/2) - (t/2) log pi below.
pub fn theta(t: f64) -> f64 {
    assert!(t >= 0.0, "theta needs t >= 0, got {t}");
    if t >= 10.0 {
        rs_theta(t).expect("t >= 10")
    } else {
        let g = ln_gamma(Complex64::new(0.25, 0.5 * t));
        g.im - 0.5 * t * std::f64::consts::PI.ln()
    }
}

/// Z(t) = e^{i theta(t)} zeta(1/2 + it), real by the functional equation.
/// Euler-Maclaurin below the hybrid switch, main-sum formula above; the
/// absolute error stays below 1e-6 on all of [0, 1e7].
pub fn hardy_z(t: f64) -> Result<f64, ZetaError> {
    if !(0.0..=HARDY_T_MAX).contains(&t) {
        return Err(ZetaError::DomainError(format!(
            "t = {t:e} outside [0, {HARDY_T_MAX:e}]"
        )));
    }
    if t < HYBRID_SWITCH_T {
        let z = zeta_em(Complex64::new(0.5, t))?;
        let th = theta(t);
        Ok((Complex64::new(0.0, th).exp() * z).re)
    } else {
        rs_z(t)
    }
}
