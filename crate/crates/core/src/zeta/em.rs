//! Euler-Maclaurin evaluation of zeta on the critical strip.

use num_complex::Complex64;

use crate::error::ZetaError;
use crate::num::Kahan;

// B_2 .. B_28
const B2K: [f64; 14] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
];

/// Cutoff t = |Im s| beyond which the O(t) term count makes this evaluator
/// the wrong tool.
pub const EM_T_MAX: f64 = 2.0e5;

/// zeta(s) for 0.1 <= Re s <= 4 and |Im s| <= 2e5, with roughly 1e-12
/// absolute accuracy. Truncates at N = ceil(|t|/2) + 20 terms so every
/// correction term decays at least like (1/pi)^{2k}.
pub fn zeta_em(s: Complex64) -> Result<Complex64, ZetaError> {
    if !(0.1..=4.0).contains(&s.re) {
        return Err(ZetaError::DomainError(format!(
            "Re s = {} outside [0.1, 4]",
            s.re
        )));
    }
    let t = s.im.abs();
    if t > EM_T_MAX {
        return Err(ZetaError::DomainError(format!(
            "|Im s| = {t:e} beyond the Euler-Maclaurin cutoff {EM_T_MAX:e}"
        )));
    }
    let n = (t / 2.0).ceil() as u64 + 20;
    let nf = n as f64;
    let mut re = Kahan::new();
    let mut im = Kahan::new();
    for k in 1..n {
        let term = (-s * (k as f64).ln()).exp();
        re.add(term.re);
        im.add(term.im);
    }
    let ns = (-s * nf.ln()).exp(); // N^{-s}
    let tail = ns * nf / (s - 1.0) + 0.5 * ns;
    re.add(tail.re);
    im.add(tail.im);
    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut poch = s;
    let mut npow = ns / nf;
    let mut fact = 2.0;
    for (k, b) in B2K.iter().enumerate() {
        let term = (b / fact) * poch * npow;
        re.add(term.re);
        im.add(term.im);
        npow /= nf * nf;
        let m = 2.0 * (k + 1) as f64;
        poch *= (s + (m - 1.0)) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
    }
    Ok(Complex64::new(re.value(), im.value()))
}
