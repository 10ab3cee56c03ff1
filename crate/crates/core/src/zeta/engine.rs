//! Locating ordinates and evaluating the argument function.
//!
//! The engine scans Z for sign changes on a grid of spacing 0.2/log t,
//! halves the spacing until the count is unchanged twice in a row, then
//! bisects each bracket down to the requested radius. Scans are incremental
//! and cached, so counting to 2T after counting to T only pays for the new
//! stretch.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::ZetaError;
use crate::num::{kronrod15_panels, Kahan};
use crate::zeta::{hardy_z, theta, zeta_em, EM_T_MAX, HARDY_T_MAX};

pub const DEFAULT_RADIUS: f64 = 1e-9;
const SCAN_START: f64 = 2.0;
const BASE_SPACING: f64 = 0.2;

/// How S(t) was produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SMethod {
    /// Sign-change count minus the smooth main term theta/pi + 1.
    CountMinusMain,
    /// Phase continuation of log zeta along Re s = 2 and then inward.
    ArgTracking,
}

impl SMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SMethod::CountMinusMain => "COUNT_MINUS_MAIN",
            SMethod::ArgTracking => "ARG_TRACKING",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SFunSample {
    pub t: f64,
    pub s_value: f64,
    pub method: SMethod,
    pub est_error: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CountResult {
    pub count: u64,
    /// count - theta(t)/pi - 1; the argument function this count implies.
    pub implied_s: f64,
    /// The implied argument stays within the range observed at these
    /// heights; a missed or spurious ordinate would push it out.
    pub certified: bool,
}

pub struct ZetaEngine {
    radius: f64,
    scanned_to: f64,
    ordinates: Vec<f64>,
}

impl Default for ZetaEngine {
    fn default() -> Self {
        ZetaEngine::new(DEFAULT_RADIUS)
    }
}

impl ZetaEngine {
    pub fn new(radius: f64) -> ZetaEngine {
        assert!(
            (1.0e-12..=1.0e-3).contains(&radius),
            "bisection radius {radius:e} outside [1e-12, 1e-3]"
        );
        ZetaEngine {
            radius,
            scanned_to: SCAN_START,
            ordinates: Vec::new(),
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn scanned_to(&self) -> f64 {
        self.scanned_to
    }

    /// All ordinates located so far, ascending.
    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    /// Ordinates in (0, t]; requires a prior scan covering t.
    pub fn ordinates_up_to(&self, t: f64) -> &[f64] {
        assert!(t <= self.scanned_to + self.radius, "not scanned to {t}");
        let k = self.ordinates.partition_point(|&g| g <= t);
        &self.ordinates[..k]
    }

    fn nearest_ordinate_dist(&self, t: f64) -> Option<f64> {
        let k = self.ordinates.partition_point(|&g| g <= t);
        let mut best: Option<f64> = None;
        if k > 0 {
            best = Some(t - self.ordinates[k - 1]);
        }
        if k < self.ordinates.len() {
            let d = self.ordinates[k] - t;
            if best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
        best
    }

    /// Extends the sign-change scan through tmax.
    pub fn ensure_scanned(&mut self, tmax: f64) -> Result<(), ZetaError> {
        if tmax <= self.scanned_to {
            return Ok(());
        }
        if tmax > HARDY_T_MAX {
            return Err(ZetaError::DomainError(format!(
                "scan target {tmax:e} beyond {HARDY_T_MAX:e}"
            )));
        }
        let found = scan_ordinates(self.scanned_to, tmax, 1.0, self.radius)?;
        self.ordinates.extend(found);
        self.scanned_to = tmax;
        Ok(())
    }

    /// Zeros of Z on (0, t], counted by sign change.
    pub fn count_n(&mut self, t: f64) -> Result<CountResult, ZetaError> {
        if !(0.0..=HARDY_T_MAX).contains(&t) {
            return Err(ZetaError::DomainError(format!(
                "t = {t:e} outside [0, {HARDY_T_MAX:e}]"
            )));
        }
        self.ensure_scanned(t)?;
        let count = self.ordinates.partition_point(|&g| g <= t) as u64;
        let implied_s = count as f64 - theta(t) / std::f64::consts::PI - 1.0;
        Ok(CountResult {
            count,
            implied_s,
            certified: implied_s.abs() <= 1.1,
        })
    }

    /// S(t) by the requested method. Within 1e-6 of an ordinate the value
    /// jumps and neither method is meaningful, so that region is refused.
    pub fn s_of_t(&mut self, t: f64, method: SMethod) -> Result<SFunSample, ZetaError> {
        if !(10.0..=HARDY_T_MAX).contains(&t) {
            return Err(ZetaError::DomainError(format!(
                "t = {t:e} outside [10, {HARDY_T_MAX:e}]"
            )));
        }
        match method {
            SMethod::CountMinusMain => {
                self.ensure_scanned(t)?;
                if let Some(d) = self.nearest_ordinate_dist(t) {
                    if d < 1.0e-6 {
                        return Err(ZetaError::TooCloseToZero { t, dist: d });
                    }
                }
                let c = self.ordinates.partition_point(|&g| g <= t) as f64;
                Ok(SFunSample {
                    t,
                    s_value: c - theta(t) / std::f64::consts::PI - 1.0,
                    method,
                    // the count is exact once certified; what remains is the
                    // phase asymptotics and f64 rounding
                    est_error: 1.0e-9,
                })
            }
            SMethod::ArgTracking => self.s_by_arg(t),
        }
    }

    fn s_by_arg(&self, t: f64) -> Result<SFunSample, ZetaError> {
        if t > EM_T_MAX {
            return Err(ZetaError::DomainError(format!(
                "phase continuation needs strip values; t = {t:e} beyond {EM_T_MAX:e}"
            )));
        }
        // a sign change of Z within 1e-6 means an ordinate is closer than
        // the phase step tolerance
        let zm = hardy_z(t - 1.0e-6)?;
        let zp = hardy_z(t + 1.0e-6)?;
        if (zm < 0.0) != (zp < 0.0) {
            return Err(ZetaError::TooCloseToZero { t, dist: 1.0e-6 });
        }
        // |log zeta(2 + iu)| <= log zeta(2) = 0.4977 < pi/2, so the principal
        // argument is already the continuous one along the vertical leg
        let v = zeta_em(Complex64::new(2.0, t))?;
        let mut phase = v.arg();
        let mut prev = v;
        let mut sigma: f64 = 2.0;
        let mut step = 0.25;
        while sigma > 0.5 {
            let next = (sigma - step).max(0.5);
            let w = zeta_em(Complex64::new(next, t))?;
            let d = (w / prev).arg();
            if d.abs() >= std::f64::consts::FRAC_PI_2 {
                step *= 0.5;
                if step < 1.0e-7 {
                    return Err(ZetaError::TooCloseToZero { t, dist: 1.0e-6 });
                }
                continue;
            }
            phase += d;
            prev = w;
            sigma = next;
        }
        Ok(SFunSample {
            t,
            s_value: phase / std::f64::consts::PI,
            method: SMethod::ArgTracking,
            est_error: 1.0e-8,
        })
    }

    /// Integral of S from 0 to t. The counting identity turns the jump part
    /// into an exact sum over ordinates, leaving only the smooth phase to
    /// quadrature: sum of (t - gamma) - t - (1/pi) integral of theta.
    pub fn s1_of_t(&mut self, t: f64) -> Result<f64, ZetaError> {
        if !(10.0..=HARDY_T_MAX).contains(&t) {
            return Err(ZetaError::DomainError(format!(
                "t = {t:e} outside [10, {HARDY_T_MAX:e}]"
            )));
        }
        self.ensure_scanned(t)?;
        let mut jumps = Kahan::new();
        for &g in self.ordinates_up_to(t) {
            jumps.add(t - g);
        }
        let (th_int, _) = kronrod15_panels(theta, 0.0, t, 2.0);
        Ok(jumps.value() - t - th_int / std::f64::consts::PI)
    }
}

/// Sign-change scan of Z on [a, b]: base spacing scale * 0.2/log u, grid halved
/// until the change count repeats twice, then each bracket bisected to `radius`.
pub(crate) fn scan_ordinates(
    a: f64,
    b: f64,
    scale: f64,
    radius: f64,
) -> Result<Vec<f64>, ZetaError> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut u = a;
    loop {
        pts.push((u, hardy_z(u)?));
        if u >= b {
            break;
        }
        u = (u + scale * BASE_SPACING / u.max(20.0).ln()).min(b);
    }
    let mut count = sign_changes(&pts);
    let mut stable = 0;
    let mut rounds = 0;
    while stable < 2 {
        rounds += 1;
        if rounds > 8 {
            return Err(ZetaError::DomainError(format!(
                "sign-change count on [{a}, {b}] did not stabilize"
            )));
        }
        let mut finer = Vec::with_capacity(2 * pts.len());
        for w in pts.windows(2) {
            let m = 0.5 * (w[0].0 + w[1].0);
            finer.push(w[0]);
            finer.push((m, hardy_z(m)?));
        }
        finer.push(*pts.last().expect("nonempty grid"));
        pts = finer;
        let c = sign_changes(&pts);
        if c == count {
            stable += 1;
        } else {
            stable = 0;
            count = c;
        }
    }
    let mut out = Vec::with_capacity(count as usize);
    for w in pts.windows(2) {
        if (w[0].1 < 0.0) != (w[1].1 < 0.0) {
            out.push(bisect(w[0], w[1], radius)?);
        }
    }
    Ok(out)
}

fn bisect(mut lo: (f64, f64), mut hi: (f64, f64), radius: f64) -> Result<f64, ZetaError> {
    while hi.0 - lo.0 > 2.0 * radius {
        let m = 0.5 * (lo.0 + hi.0);
        let fm = hardy_z(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == (lo.1 < 0.0) {
            lo = (m, fm);
        } else {
            hi = (m, fm);
        }
    }
    Ok(0.5 * (lo.0 + hi.0))
}

fn sign_changes(pts: &[(f64, f64)]) -> u64 {
    let mut n = 0;
    for w in pts.windows(2) {
        if (w[0].1 < 0.0) != (w[1].1 < 0.0) {
            n += 1;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const GAMMA1: f64 = 14.1347251417346938;
    const GAMMA2: f64 = 21.022039638771555;

    #[test]
    fn first_two_ordinates() {
        let mut e = ZetaEngine::default();
        e.ensure_scanned(25.0).unwrap();
        let ords = e.ordinates_up_to(25.0);
        assert_eq!(ords.len(), 2);
        assert_abs_diff_eq!(ords[0], GAMMA1, epsilon = 1e-8);
        assert_abs_diff_eq!(ords[1], GAMMA2, epsilon = 1e-8);
    }

    #[test]
    fn counts_and_s_values_to_one_hundred() {
        let mut e = ZetaEngine::default();
        let c = e.count_n(100.0).unwrap();
        assert_eq!(c.count, 29);
        assert!(c.certified);
        assert_abs_diff_eq!(c.implied_s, -0.00240990227181678, epsilon = 1e-7);
        let s = e.s_of_t(100.0, SMethod::CountMinusMain).unwrap();
        assert_abs_diff_eq!(s.s_value, -0.00240990227181678, epsilon = 1e-7);
        let s10 = e.s_of_t(10.0, SMethod::CountMinusMain).unwrap();
        assert_abs_diff_eq!(s10.s_value, -0.0237198979997449, epsilon = 1e-8);
    }

    #[test]
    fn phase_continuation_matches_reference_values() {
        let e = ZetaEngine::default();
        for (t, want) in [
            (10.0, -0.0237198979997449),
            (100.0, -0.00240990227181678),
            (500.5, 0.0649401673701187),
            (1000.25, 0.182029039454978),
            (1500.5, 0.27975106225095),
            (1999.5, -0.534477053915847),
        ] {
            let s = e.s_by_arg(t).unwrap();
            assert_abs_diff_eq!(s.s_value, want, epsilon = 1e-7);
            assert_eq!(s.method, SMethod::ArgTracking);
        }
    }

    #[test]
    fn both_methods_agree_away_from_ordinates() {
        let mut e = ZetaEngine::default();
        let a = e.s_of_t(500.5, SMethod::CountMinusMain).unwrap();
        let b = e.s_of_t(500.5, SMethod::ArgTracking).unwrap();
        assert_abs_diff_eq!(a.s_value, b.s_value, epsilon = 1e-7);
    }

    #[test]
    fn jump_across_the_first_ordinate() {
        let e = ZetaEngine::default();
        let lo = e.s_by_arg(GAMMA1 - 0.01).unwrap().s_value;
        let hi = e.s_by_arg(GAMMA1 + 0.01).unwrap().s_value;
        assert_abs_diff_eq!(lo, -0.448457705499475, epsilon = 1e-7);
        assert_abs_diff_eq!(hi, 0.548962237980873, epsilon = 1e-7);
        assert_abs_diff_eq!(hi - lo, 0.997419943480348, epsilon = 1e-7);
    }

    #[test]
    fn near_an_ordinate_is_refused() {
        let mut e = ZetaEngine::default();
        let r = e.s_of_t(GAMMA1 + 1.0e-8, SMethod::CountMinusMain);
        assert!(matches!(r, Err(ZetaError::TooCloseToZero { .. })));
        let r = e.s_of_t(GAMMA1 - 1.0e-8, SMethod::ArgTracking);
        assert!(matches!(r, Err(ZetaError::TooCloseToZero { .. })));
    }

    #[test]
    fn integrated_argument_reference_values() {
        let mut e = ZetaEngine::default();
        assert_abs_diff_eq!(
            e.s1_of_t(GAMMA1 - 1.0e-9).unwrap(),
            -1.48890762439973,
            epsilon = 1e-7
        );
        assert_abs_diff_eq!(e.s1_of_t(20.0).unwrap(), -0.825385753833386, epsilon = 1e-7);
        assert_abs_diff_eq!(e.s1_of_t(50.0).unwrap(), -1.19876356601862, epsilon = 1e-7);
        assert_abs_diff_eq!(e.s1_of_t(100.0).unwrap(), -0.524019388165608, epsilon = 1e-7);
    }

    #[test]
    fn domain_is_enforced() {
        let mut e = ZetaEngine::default();
        assert!(e.s_of_t(5.0, SMethod::ArgTracking).is_err());
        assert!(e.s1_of_t(9.0).is_err());
        assert!(e.count_n(-1.0).is_err());
    }
}
