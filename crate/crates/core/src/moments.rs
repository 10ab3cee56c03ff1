//! Moment integrals of the argument-function increment S(t+h)-S(t), the
//! prime-frequency polynomials P_k/Q_k that approximate it, the smoothed
//! prime-sum residual, and brute-force checks of the two mean-value
//! inequalities that drive the second-moment machinery.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{MomentError, PrimeError};
use crate::num::{kronrod15, Kahan};
use crate::primes::{lambda_weight, prime_cos_sum, r_xt, PrimeTable};
use crate::zeros::{sigma_xt, ZeroList};
use crate::zeta::theta;

/// Finite sum f(t) = sum over n <= cutoff of a_n n^{-it}.
#[derive(Clone, Debug)]
pub struct DirichletPoly {
    pub coefficients: BTreeMap<u64, Complex64>,
    pub cutoff: u64,
}

impl DirichletPoly {
    pub fn new(coefficients: BTreeMap<u64, Complex64>, cutoff: u64) -> DirichletPoly {
        assert!(cutoff >= 2, "cutoff below 2");
        assert!(
            coefficients.keys().all(|&n| n >= 1 && n <= cutoff),
            "index outside [1, cutoff]"
        );
        DirichletPoly {
            coefficients,
            cutoff,
        }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&n, &a) in &self.coefficients {
            let phase = -t * (n as f64).ln();
            acc += a * Complex64::from_polar(1.0, phase);
        }
        acc
    }

    /// Sum of n |a_n|^2, the weight both mean-value bounds are built from.
    pub fn weighted_norm_sq(&self) -> f64 {
        let mut acc = Kahan::new();
        for (&n, &a) in &self.coefficients {
            acc.add(n as f64 * a.norm_sqr());
        }
        acc.value()
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MomentEstimate {
    pub n: u32,
    #[serde(rename = "T")]
    pub big_t: f64,
    pub h: f64,
    pub value: f64,
    pub quad_error: f64,
    pub main_term: f64,
    /// value / main_term when the main term is positive, else 0.
    pub ratio: f64,
}

/// Smooth part of the counting function, t/2pi log(t/2pi) - t/2pi + 7/8.
fn count_main(u: f64) -> f64 {
    let v = u / (2.0 * PI);
    v * (v.ln() - 1.0) + 7.0 / 8.0
}

fn dmain(t: f64, h: f64) -> f64 {
    count_main(t + h) - count_main(t)
}

/// Integrates |count in (t, t+h] minus the smooth increment|^n over [a, b],
/// partitioning exactly at the jump set {gamma} and {gamma - h}. Returns
/// (value, summed quadrature error estimate).
pub(crate) fn moment_between(
    n: u32,
    a: f64,
    b: f64,
    h: f64,
    zl: &ZeroList,
) -> Result<(f64, f64), MomentError> {
    if n == 0 {
        return Err(MomentError::OutOfRange("power must be positive".into()));
    }
    if !(0.0..=1.0).contains(&h) {
        return Err(MomentError::OutOfRange(format!("h = {h} outside [0, 1]")));
    }
    if !(a < b) {
        return Err(MomentError::OutOfRange(format!("empty range [{a}, {b}]")));
    }
    if zl.t_min > a || zl.t_max < b + h {
        return Err(MomentError::OutOfRange(format!(
            "need tabulated zeros on [{a}, {}], have [{}, {}]",
            b + h,
            zl.t_min,
            zl.t_max
        )));
    }
    if h == 0.0 {
        return Ok((0.0, 0.0));
    }
    let gammas: Vec<f64> = zl.gammas().collect();
    let mut brk: Vec<f64> = vec![a, b];
    for &g in &gammas {
        if g > a && g < b {
            brk.push(g);
        }
        let gm = g - h;
        if gm > a && gm < b {
            brk.push(gm);
        }
    }
    brk.sort_by(f64::total_cmp);
    let mut value = Kahan::new();
    let mut err = Kahan::new();
    for w in brk.windows(2) {
        let (pa, pb) = (w[0], w[1]);
        if pb - pa < 1e-13 {
            continue;
        }
        let mid = 0.5 * (pa + pb);
        let cnt = (gammas.partition_point(|&g| g <= mid + h)
            - gammas.partition_point(|&g| g <= mid)) as f64;
        let g = |t: f64| cnt - dmain(t, h);
        let f = |t: f64| g(t).abs().powi(n as i32);
        // the increment difference is strictly decreasing, so at most one
        // sign crossing per piece; split there to keep |.|^n smooth
        let (v, e) = if g(pa) > 0.0 && g(pb) < 0.0 {
            let (mut lo, mut hi) = (pa, pb);
            while hi - lo > 1e-12 {
                let m = 0.5 * (lo + hi);
                if g(m) > 0.0 {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            let r = 0.5 * (lo + hi);
            let (v1, e1) = kronrod15(f, pa, r);
            let (v2, e2) = kronrod15(f, r, pb);
            (v1 + v2, e1 + e2)
        } else {
            kronrod15(f, pa, pb)
        };
        value.add(v);
        err.add(e);
    }
    Ok((value.value(), err.value()))
}

/// J_n(T, h): integral over [T, 2T] of |S(t+h) - S(t)|^n, with the
/// even-order reference main term (2k)!/(2^k pi^{2k} k!) T log^k(2+h log T).
pub fn moment_j(n: u32, big_t: f64, h: f64, zl: &ZeroList) -> Result<MomentEstimate, MomentError> {
    let (value, quad_error) = moment_between(n, big_t, 2.0 * big_t, h, zl)?;
    let main_term = if n % 2 == 0 {
        let k = n / 2;
        let mut fact = 1.0;
        for j in 1..=k {
            // (2k)!/(2^k k!) telescopes to the product of odd numbers
            fact *= (2 * j - 1) as f64;
        }
        fact / PI.powi(n as i32) * big_t * (2.0 + h * big_t.ln()).ln().powi(k as i32)
    } else {
        0.0
    };
    let ratio = if main_term > 0.0 {
        value / main_term
    } else {
        0.0
    };
    Ok(MomentEstimate {
        n,
        big_t,
        h,
        value,
        quad_error,
        main_term,
        ratio,
    })
}

/// Argument function read off an absolute ordinate list: (count of gamma
/// <= t) - theta(t)/pi - 1. The list must start below the first ordinate
/// so its count really is N(t).
pub fn s_from_list(t: f64, zl: &ZeroList) -> Result<f64, MomentError> {
    if zl.t_min > 14.0 {
        return Err(MomentError::OutOfRange(format!(
            "list starts at {}, above the first ordinate",
            zl.t_min
        )));
    }
    if t > zl.t_max || t < zl.t_min {
        return Err(MomentError::OutOfRange(format!(
            "t = {t} outside tabulated [{}, {}]",
            zl.t_min, zl.t_max
        )));
    }
    let count = zl.ordinates.partition_point(|&(g, _)| g <= t);
    Ok(count as f64 - theta(t) / PI - 1.0)
}

fn cutoff_primes(big_t: f64, eps: f64, k: u32, table: &PrimeTable) -> Result<&[u64], MomentError> {
    assert!(k >= 1 && eps > 0.0);
    let x = big_t.powf(eps / k as f64);
    table.primes_upto(x).map_err(|e| match e {
        PrimeError::TableTooSmall { have, need } => MomentError::TableTooSmall { have, need },
        other => MomentError::OutOfRange(other.to_string()),
    })
}

/// P_k(t): (1/pi) sum over p <= T^{eps/k} of Im{p^{-1/2}(p^{-ih}-1)p^{-it}}.
pub fn dirichlet_p(
    k: u32,
    t: f64,
    h: f64,
    big_t: f64,
    eps: f64,
    table: &PrimeTable,
) -> Result<f64, MomentError> {
    let primes = cutoff_primes(big_t, eps, k, table)?;
    let mut acc = Kahan::new();
    for &p in primes {
        let lp = (p as f64).ln();
        let shift = Complex64::from_polar(1.0, -h * lp) - 1.0;
        let rot = Complex64::from_polar(1.0, -t * lp);
        acc.add((shift * rot).im / (p as f64).sqrt());
    }
    Ok(acc.value() / PI)
}

/// Q_k(t): S(t) plus (1/pi) sum over p <= T^{eps/k} of sin(t log p)/sqrt p.
pub fn dirichlet_q(
    k: u32,
    t: f64,
    big_t: f64,
    eps: f64,
    table: &PrimeTable,
    zl: &ZeroList,
) -> Result<f64, MomentError> {
    let primes = cutoff_primes(big_t, eps, k, table)?;
    let s = s_from_list(t, zl)?;
    let mut acc = Kahan::new();
    for &p in primes {
        let lp = (p as f64).ln();
        acc.add((t * lp).sin() / (p as f64).sqrt());
    }
    Ok(s + acc.value() / PI)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SelbergResidual {
    pub residual: f64,
    pub bound: f64,
    pub sigma: f64,
}

/// How far S(t) sits from minus the smoothed prime sum at exponent
/// sigma_{x,t}, next to the remainder-times-window cap it should obey at
/// scale. Desk heights violate the x >= e^16 hypothesis, so callers treat
/// the pair as a report, not a verdict.
pub fn selberg_residual(
    t: f64,
    x: f64,
    table: &PrimeTable,
    zl: &ZeroList,
) -> Result<SelbergResidual, MomentError> {
    let sigma = sigma_xt(x, t, zl).map_err(|e| MomentError::OutOfRange(e.to_string()))?;
    let s = s_from_list(t, zl)?;
    let x3 = x * x * x;
    if x3 > table.limit() as f64 {
        return Err(MomentError::TableTooSmall {
            have: table.limit(),
            need: x3.ceil() as u64,
        });
    }
    let mut sum = Kahan::new();
    let mut push = |p: u64, r: u32| {
        let lp = (p as f64).ln();
        let ln_n = r as f64 * lp;
        let w = lambda_weight(ln_n.exp(), x);
        if w == 0.0 {
            return;
        }
        // Lambda_x(n) sin(t log n)/(n^sigma log n) with Lambda cancelling
        // one log p against log n = r log p
        sum.add(w * (t * ln_n).sin() * (-sigma * ln_n).exp() / r as f64);
    };
    let primes = table
        .primes_upto(x3)
        .map_err(|e| MomentError::OutOfRange(e.to_string()))?;
    for &p in primes {
        push(p, 1);
    }
    let small = table
        .primes_upto(x.powf(1.5))
        .map_err(|e| MomentError::OutOfRange(e.to_string()))?;
    for &p in small {
        let mut r = 2u32;
        while r as f64 * (p as f64).ln() <= x3.ln() + 1e-12 {
            push(p, r);
            r += 1;
        }
    }
    let residual = (s + sum.value() / PI).abs();
    let rmag = r_xt(x, t, sigma, table)
        .map_err(|e| MomentError::OutOfRange(e.to_string()))?
        .norm();
    let bound = (sigma - 0.5) * (coeff_a1_f64() * rmag + coeff_a2_f64(x.ln()) * t.abs().ln());
    Ok(SelbergResidual {
        residual,
        bound,
        sigma,
    })
}

// f64 copies of the smoothing-bound coefficients; the rigorous versions
// live in the constants module and the tests tie these to them.
fn coeff_a1_f64() -> f64 {
    13.0 + 26.0 / (10.0 * PI) + 13.0 / (3.0 * PI * std::f64::consts::E)
}

fn coeff_a2_f64(x0_ln: f64) -> f64 {
    13.0 / 2.0
        + 18.0 / (10.0 * PI)
        + 13.0 / (6.0 * PI * std::f64::consts::E)
        + 2.0 / x0_ln * (52.0 + 124.0 / (10.0 * PI) + 52.0 / (3.0 * PI * std::f64::consts::E))
}

fn m0_f64() -> f64 {
    (1.0 + 2.0 / 3.0 * (6.0f64 / 5.0).sqrt()).sqrt()
}

/// Cross-term constant 3 pi m0 4^{-k} sum over m of (2k)!/sqrt(m!(2k-m)!).
fn c1_f64(k: u32) -> f64 {
    let two_k = 2 * k;
    let mut fact = vec![1.0f64];
    for j in 1..=two_k {
        fact.push(fact[j as usize - 1] * j as f64);
    }
    let mut s = 0.0;
    for m in 0..=two_k {
        s += fact[two_k as usize] / (fact[m as usize] * fact[(two_k - m) as usize]).sqrt();
    }
    3.0 * PI * m0_f64() * 4.0f64.powi(-(k as i32)) * s
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MvhReport {
    /// |integral of f conj(g) minus (T2-T1) sum a_n conj(b_n)|.
    pub lhs_dev: f64,
    /// 3 pi m0 sqrt(sum n|a_n|^2) sqrt(sum n|b_n|^2).
    pub rhs: f64,
    pub holds: bool,
}

/// Closed-form off-diagonal integral: every cross term n != m integrates
/// to (e^{iLT2} - e^{iLT1})/(iL) with L = log(m/n), so the deviation from
/// the diagonal is exact up to rounding.
pub fn mvh_check(a: &DirichletPoly, b: &DirichletPoly, t1: f64, t2: f64) -> MvhReport {
    assert!(t1 < t2, "empty integration range");
    let mut dev = Complex64::new(0.0, 0.0);
    for (&n, &an) in &a.coefficients {
        for (&m, &bm) in &b.coefficients {
            if n == m {
                continue;
            }
            let l = (m as f64).ln() - (n as f64).ln();
            let num = Complex64::from_polar(1.0, l * t2) - Complex64::from_polar(1.0, l * t1);
            dev += an * bm.conj() * num / Complex64::new(0.0, l);
        }
    }
    let rhs = 3.0 * PI * m0_f64() * (a.weighted_norm_sq() * b.weighted_norm_sq()).sqrt();
    let lhs_dev = dev.norm();
    MvhReport {
        lhs_dev,
        rhs,
        holds: lhs_dev <= rhs,
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ImagMomentReport {
    pub lhs: f64,
    pub main: f64,
    pub error_bound: f64,
    pub holds: bool,
}

const IMAG_SUPPORT_CAP: usize = 12;
const IMAG_K_CAP: u32 = 3;

fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn binom(n: u32, k: u32) -> f64 {
    let mut v = 1.0;
    for j in 0..k {
        v = v * (n - j) as f64 / (j + 1) as f64;
    }
    v
}

/// 2k-th moment of Im sum a_p p^{-it} over [T1, T2], fully expanded:
/// (Im f)^{2k} = (-1)^k 4^{-k} sum_j C(2k,j)(-1)^j f^j conj(f)^{2k-j},
/// every monomial integrated in closed form with exact integer frequency
/// matching. The reference main term enumerates prime tuples weighted by
/// their squared permutation count.
pub fn imag_moment_check(
    k: u32,
    coeffs: &BTreeMap<u64, Complex64>,
    t1: f64,
    t2: f64,
) -> Result<ImagMomentReport, MomentError> {
    if k == 0 {
        return Err(MomentError::OutOfRange("k must be positive".into()));
    }
    if k > IMAG_K_CAP {
        return Err(MomentError::KTooLarge { k, cap: IMAG_K_CAP });
    }
    if coeffs.len() > IMAG_SUPPORT_CAP {
        return Err(MomentError::SupportTooLarge {
            support: coeffs.len(),
            cap: IMAG_SUPPORT_CAP,
        });
    }
    if let Some((&p, _)) = coeffs.iter().find(|(&p, _)| !is_small_prime(p)) {
        return Err(MomentError::OutOfRange(format!("index {p} is not prime")));
    }
    assert!(t1 < t2, "empty integration range");
    let delta = t2 - t1;
    let two_k = 2 * k;

    // powers of f as monomial maps: product-of-primes key -> coefficient
    let mut powers: Vec<BTreeMap<u128, Complex64>> = Vec::with_capacity(two_k as usize + 1);
    let mut cur = BTreeMap::new();
    cur.insert(1u128, Complex64::new(1.0, 0.0));
    powers.push(cur.clone());
    for _ in 0..two_k {
        let mut next: BTreeMap<u128, Complex64> = BTreeMap::new();
        for (&key, &c) in &cur {
            for (&p, &a) in coeffs {
                *next.entry(key * p as u128).or_insert(Complex64::new(0.0, 0.0)) += c * a;
            }
        }
        cur = next;
        powers.push(cur.clone());
    }

    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=two_k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * binom(two_k, j);
        let fj = &powers[j as usize];
        let fbar = &powers[(two_k - j) as usize];
        let mut part = Complex64::new(0.0, 0.0);
        for (&u, &cu) in fj {
            for (&v, &cv) in fbar {
                // monomial c_u u^{-it} conj(c_v) v^{+it}
                let coeff = cu * cv.conj();
                if u == v {
                    part += coeff * delta;
                } else {
                    let l = (v as f64).ln() - (u as f64).ln();
                    let num = Complex64::from_polar(1.0, l * t2)
                        - Complex64::from_polar(1.0, l * t1);
                    part += coeff * num / Complex64::new(0.0, l);
                }
            }
        }
        acc += w * part;
    }
    let k_sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let lhs = (k_sign * 4.0f64.powi(-(k as i32)) * acc).re;

    // sum over ordered prime tuples of (multiset permutation count) times
    // the squared coefficient product; each multiset is hit count times,
    // giving the squared-count weight
    let ps: Vec<(u64, f64)> = coeffs.iter().map(|(&p, a)| (p, a.norm_sqr())).collect();
    let mut comb = 0.0;
    let mut tuple = vec![0usize; k as usize];
    loop {
        let mut weights = 1.0;
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &i in &tuple {
            weights *= ps[i].1;
            *counts.entry(i).or_insert(0) += 1;
        }
        let mut perms = 1.0;
        let mut used = 0u32;
        for (_, &c) in &counts {
            perms *= binom(used + c, c);
            used += c;
        }
        comb += perms * weights;
        // odometer over support^k
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                break;
            }
            tuple[pos] += 1;
            if tuple[pos] < ps.len() {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
        if pos == tuple.len() {
            break;
        }
    }
    let main = delta * 4.0f64.powi(-(k as i32)) * binom(two_k, k) * comb;

    let norm: f64 = ps.iter().map(|&(_, w)| w).sum();
    let error_bound = c1_f64(k) * norm.powi(k as i32);
    let holds = (lhs - main).abs() <= error_bound;
    Ok(ImagMomentReport {
        lhs,
        main,
        error_bound,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm41Report {
    #[serde(rename = "T")]
    pub big_t: f64,
    pub h: f64,
    pub eps: f64,
    pub alpha: f64,
    pub j2: MomentEstimate,
    pub j4: MomentEstimate,
    /// (T/pi^2) log(alpha + h log T).
    pub main2_alpha: f64,
    /// (3T/pi^4) log^2(alpha + h log T).
    pub main4_alpha: f64,
    pub ratio2: f64,
    pub ratio4: f64,
    /// Predicted mean of P_1^2 over [T, 2T]: (1/pi^2) sum (1-cos(h log p))/p.
    pub p1_mean_prediction: f64,
}

/// Second and fourth moments next to their alpha-shifted main terms.
/// Desk-scale T sits far below the theorem's threshold, so the ratios are
/// reported without a verdict; acceptance bands are applied by callers.
pub fn thm41_bandcheck(
    big_t: f64,
    h: f64,
    eps: f64,
    alpha: f64,
    zl: &ZeroList,
    table: &PrimeTable,
) -> Result<Thm41Report, MomentError> {
    let j2 = moment_j(2, big_t, h, zl)?;
    let j4 = moment_j(4, big_t, h, zl)?;
    let lt = (alpha + h * big_t.ln()).ln();
    let main2_alpha = big_t / (PI * PI) * lt;
    let main4_alpha = 3.0 * big_t / PI.powi(4) * lt * lt;
    let ratio2 = if main2_alpha > 0.0 {
        j2.value / main2_alpha
    } else {
        0.0
    };
    let ratio4 = if main4_alpha > 0.0 {
        j4.value / main4_alpha
    } else {
        0.0
    };
    let cos_sum = prime_cos_sum(big_t.powf(eps), h, table).map_err(|e| match e {
        PrimeError::TableTooSmall { have, need } => MomentError::TableTooSmall { have, need },
        other => MomentError::OutOfRange(other.to_string()),
    })?;
    Ok(Thm41Report {
        big_t,
        h,
        eps,
        alpha,
        j2,
        j4,
        main2_alpha,
        main4_alpha,
        ratio2,
        ratio4,
        p1_mean_prediction: cos_sum / (PI * PI),
    })
}
