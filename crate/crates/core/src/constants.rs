//! The error-constant pipeline, evaluated as certified enclosures.
//!
//! Everything here is pure arithmetic on RigorousBound values: the Dirichlet
//! polynomial error constants (the R-tilde family and the C-hat products they
//! feed), the moment error constants D1..C3, the large-height gate that checks
//! the second-moment margin, the gap and multiplicity constants, and the audit
//! that compares each computed enclosure against its published value.
//!
//! Heights at the interesting scale (log log of the height near 30.76) only
//! ever appear through their logarithms, so every function takes log-scale
//! parameters (`x0_ln`, `t1_ln`, bounds on h·log T) rather than the raw
//! quantities, which would not be representable.

use std::cmp::Ordering;

use astro_float::RoundingMode;
use serde_json::{json, Value};

use crate::error::ConstError;
use crate::num::big::{self, Ctx};
use crate::num::{factorial_bound, find_root, LogReal, RigorousBound, Round};

/// Largest admissible eps for the R-tilde family.
pub const EPS_CAP: f64 = 1.0 / 88.0;
/// log x0 used by the audit and the gate.
pub const DEFAULT_X0_LN: f64 = 2.0e4;
/// log T1 at the audit scale: max of (6/eps) log x0 at eps = 3/88 and log(2 T0).
pub const DEFAULT_T1_LN: f64 = 3_520_000.0;

fn u(ctx: &mut Ctx, n: u64) -> RigorousBound {
    RigorousBound::from_u64(n, ctx)
}

fn dec(ctx: &mut Ctx, m: i64, pow10: i32) -> RigorousBound {
    RigorousBound::from_decimal(m, pow10, ctx)
}

/// e^(m * 10^pow10): the decimal exponent is converted outward, then the
/// exponential is exact in log space.
fn exp_dec(ctx: &mut Ctx, m: i64, pow10: i32) -> RigorousBound {
    let p = ctx.p;
    let lo = big::from_decimal(m, pow10, p, RoundingMode::Down);
    let hi = big::from_decimal(m, pow10, p, RoundingMode::Up);
    RigorousBound::new(
        LogReal::from_ln(1, lo).widen(ctx, Round::Down),
        LogReal::from_ln(1, hi).widen(ctx, Round::Up),
    )
}

fn e_b(ctx: &Ctx) -> RigorousBound {
    RigorousBound::from_ln_f64(1, 1.0, ctx)
}

fn a1_b(ctx: &mut Ctx) -> RigorousBound {
    let pi = RigorousBound::pi(ctx);
    let e = e_b(ctx);
    let n13 = u(ctx, 13);
    let ten_pi = u(ctx, 10).mul(&pi, ctx);
    let t1 = u(ctx, 26).div(&ten_pi, ctx);
    let three_pi_e = u(ctx, 3).mul(&pi, ctx).mul(&e, ctx);
    let t2 = n13.div(&three_pi_e, ctx);
    n13.add(&t1, ctx).add(&t2, ctx)
}

fn m0_b(ctx: &mut Ctx) -> RigorousBound {
    // sqrt(1 + (2/3) sqrt(6/5))
    let six_fifths = u(ctx, 6).div(&u(ctx, 5), ctx);
    let inner = u(ctx, 2).mul(&six_fifths.sqrt(ctx), ctx).div(&u(ctx, 3), ctx);
    RigorousBound::one(ctx.p).add(&inner, ctx).sqrt(ctx)
}

/// The fixed coefficients of the pipeline: a0, a1, m0, the smoothing length
/// L0, the large constant K = 8 pi^2 e^99.8, and omega0 = e^12.8471.
pub struct BaseConstants {
    pub a0: RigorousBound,
    pub a1: RigorousBound,
    pub m0: RigorousBound,
    pub l0: RigorousBound,
    pub big_k: RigorousBound,
    pub omega0: RigorousBound,
}

impl BaseConstants {
    pub fn new(ctx: &mut Ctx) -> BaseConstants {
        let pi = RigorousBound::pi(ctx);
        let e998 = exp_dec(ctx, 998, -1);
        let big_k = u(ctx, 8).mul(&pi.powi(2, ctx), ctx).mul(&e998, ctx);
        BaseConstants {
            a0: dec(ctx, 15453, -4),
            a1: a1_b(ctx),
            m0: m0_b(ctx),
            l0: dec(ctx, 64286, -2),
            big_k,
            omega0: exp_dec(ctx, 128471, -4),
        }
    }
}

/// 13/2 + 18/(10 pi) + 13/(6 pi e) + (2/log x0)(52 + 124/(10 pi) + 52/(3 pi e)).
pub fn coeff_a2(ctx: &mut Ctx, x0_ln: f64) -> RigorousBound {
    let pi = RigorousBound::pi(ctx);
    let e = e_b(ctx);
    let ten_pi = u(ctx, 10).mul(&pi, ctx);
    let lead = dec(ctx, 65, -1)
        .add(&u(ctx, 18).div(&ten_pi, ctx), ctx)
        .add(
            &{
                let d = u(ctx, 6).mul(&pi, ctx).mul(&e, ctx);
                u(ctx, 13).div(&d, ctx)
            },
            ctx,
        );
    let inner = u(ctx, 52)
        .add(&u(ctx, 124).div(&ten_pi, ctx), ctx)
        .add(
            &{
                let d = u(ctx, 3).mul(&pi, ctx).mul(&e, ctx);
                u(ctx, 52).div(&d, ctx)
            },
            ctx,
        );
    let x0b = RigorousBound::from_f64(x0_ln, ctx);
    let tail = u(ctx, 2).div(&x0b, ctx).mul(&inner, ctx);
    lead.add(&tail, ctx)
}

/// 3 pi a1/2 + 139/75 + 62 pi a1/(75 log x0).
pub fn coeff_a3(ctx: &mut Ctx, x0_ln: f64) -> RigorousBound {
    let pi = RigorousBound::pi(ctx);
    let a1 = a1_b(ctx);
    let pa = pi.mul(&a1, ctx);
    let t1 = u(ctx, 3).mul(&pa, ctx).div(&u(ctx, 2), ctx);
    let t2 = u(ctx, 139).div(&u(ctx, 75), ctx);
    let x0b = RigorousBound::from_f64(x0_ln, ctx);
    let d = u(ctx, 75).mul(&x0b, ctx);
    let t3 = u(ctx, 62).mul(&pa, ctx).div(&d, ctx);
    t1.add(&t2, ctx).add(&t3, ctx)
}

fn a4_b(ctx: &mut Ctx, x0_ln: f64, eps: &RigorousBound, k: u64) -> RigorousBound {
    let a2 = coeff_a2(ctx, x0_ln);
    let a3 = coeff_a3(ctx, x0_ln);
    let pi = RigorousBound::pi(ctx);
    let x0b = RigorousBound::from_f64(x0_ln, ctx);
    let ln2 = RigorousBound::ln2(ctx);
    let inner = ln2
        .div(&x0b, ctx)
        .add(&a3.div(&pi.mul(&a2, ctx), ctx), ctx);
    let kb = u(ctx, k);
    RigorousBound::one(ctx.p).add(&eps.div(&kb, ctx).mul(&inner, ctx), ctx)
}

/// 1 + (eps/k)(log 2/log x0 + a3/(pi a2)).
pub fn coeff_a4(ctx: &mut Ctx, x0_ln: f64, eps: f64, k: u64) -> RigorousBound {
    let eb = RigorousBound::from_f64(eps, ctx);
    a4_b(ctx, x0_ln, &eb, k)
}

fn check_chat_domain(eps: f64, k: u64, x0_ln: f64) -> Result<(), ConstError> {
    if !(eps > 0.0 && eps <= EPS_CAP) {
        return Err(ConstError::DomainError(format!(
            "eps {eps} outside (0, 1/88]"
        )));
    }
    if k == 0 {
        return Err(ConstError::DomainError("k must be >= 1".into()));
    }
    if x0_ln < 16.0 {
        return Err(ConstError::DomainError(format!(
            "log x0 = {x0_ln} below 16"
        )));
    }
    Ok(())
}

/// The four remainder terms of the smoothed Dirichlet-polynomial bound.
pub fn eval_r_tilde(
    ctx: &mut Ctx,
    eps: f64,
    k: u64,
    x0_ln: f64,
    l: f64,
) -> Result<[RigorousBound; 4], ConstError> {
    check_chat_domain(eps, k, x0_ln)?;
    if l <= 0.0 {
        return Err(ConstError::DomainError(format!("L = {l} not positive")));
    }
    let ki = k as i64;
    let one = RigorousBound::one(ctx.p);
    let pi = RigorousBound::pi(ctx);
    let e = e_b(ctx);
    let a0 = dec(ctx, 15453, -4);
    let a1 = a1_b(ctx);
    let a2 = coeff_a2(ctx, x0_ln);
    let eb = RigorousBound::from_f64(eps, ctx);
    let a4 = a4_b(ctx, x0_ln, &eb, k);
    let aa = a2.mul(&a4, ctx);
    let kb = u(ctx, k);
    let sqrt_k = kb.sqrt(ctx);
    let sqrt_2k = u(ctx, 2 * k).sqrt(ctx);
    let lb = RigorousBound::from_f64(l, ctx);
    let common = u(ctx, 8).mul(&a0, ctx).mul(&lb, ctx).div(&eb, ctx);
    let eight_eps = u(ctx, 8).mul(&eb, ctx);
    let s13 = u(ctx, 13).sqrt(ctx);

    let f2k = factorial_bound(2 * k, ctx);
    let f4k = factorial_bound(4 * k, ctx);
    let f8k = factorial_bound(8 * k, ctx);

    // (8 a0 L/eps)(8 eps)^{2k}(2k)!/k^{2k-1} + (3 eps/(2 pi a2 a4 sqrt(2k)))^{2k}(13 + 18^{-k})
    let r1a = common
        .mul(&eight_eps.powi(2 * ki, ctx), ctx)
        .mul(&f2k, ctx)
        .div(&kb.powi(2 * ki - 1, ctx), ctx);
    let d1 = u(ctx, 2).mul(&pi, ctx).mul(&aa, ctx).mul(&sqrt_2k, ctx);
    let b1 = u(ctx, 3).mul(&eb, ctx).div(&d1, ctx);
    let tail18 = u(ctx, 13).add(&u(ctx, 18).powi(-ki, ctx), ctx);
    let r1b = b1.powi(2 * ki, ctx).mul(&tail18, ctx);
    let rt1 = r1a.add(&r1b, ctx);

    // sqrt(13)((12e)^2 a1 eps/(a2 a4 sqrt k))^{2k} sqrt(1 + (8 a0 L/eps)(8 eps/e)^{8k}(8k)!/k^{8k-1})
    let b2 = u(ctx, 144)
        .mul(&e.powi(2, ctx), ctx)
        .mul(&a1, ctx)
        .mul(&eb, ctx)
        .div(&aa.mul(&sqrt_k, ctx), ctx);
    let in2 = one.add(
        &common
            .mul(&eight_eps.div(&e, ctx).powi(8 * ki, ctx), ctx)
            .mul(&f8k, ctx)
            .div(&kb.powi(8 * ki - 1, ctx), ctx),
        ctx,
    );
    let rt2 = s13.mul(&b2.powi(2 * ki, ctx), ctx).mul(&in2.sqrt(ctx), ctx);

    // sqrt(13)(24 e^2 eps/(pi a2 a4 sqrt k))^{2k} sqrt(1 + (8 a0 L/eps)(8 eps/e^2)^{4k}(4k)!/k^{4k-1})
    let d3 = pi.mul(&aa, ctx).mul(&sqrt_k, ctx);
    let b3 = u(ctx, 24).mul(&e.powi(2, ctx), ctx).mul(&eb, ctx).div(&d3, ctx);
    let in3 = one.add(
        &common
            .mul(&eight_eps.div(&e.powi(2, ctx), ctx).powi(4 * ki, ctx), ctx)
            .mul(&f4k, ctx)
            .div(&kb.powi(4 * ki - 1, ctx), ctx),
        ctx,
    );
    let rt3 = s13.mul(&b3.powi(2 * ki, ctx), ctx).mul(&in3.sqrt(ctx), ctx);

    // sqrt(13)(6 a1 eps/(a2 a4 sqrt k))^{2k} sqrt(1 + (8 a0 L/eps)(8 eps)^{4k}(4k)!/k^{4k-1})
    let b4 = u(ctx, 6)
        .mul(&a1, ctx)
        .mul(&eb, ctx)
        .div(&aa.mul(&sqrt_k, ctx), ctx);
    let in4 = one.add(
        &common
            .mul(&eight_eps.powi(4 * ki, ctx), ctx)
            .mul(&f4k, ctx)
            .div(&kb.powi(4 * ki - 1, ctx), ctx),
        ctx,
    );
    let rt4 = s13.mul(&b4.powi(2 * ki, ctx), ctx).mul(&in4.sqrt(ctx), ctx);

    Ok([rt1, rt2, rt3, rt4])
}

fn c_hat_b(
    ctx: &mut Ctx,
    eps1: f64,
    eps2: &RigorousBound,
    k: u64,
    x0_ln: f64,
) -> Result<RigorousBound, ConstError> {
    if !eps2.is_positive() {
        return Err(ConstError::DomainError("eps2 not positive".into()));
    }
    let rt = eval_r_tilde(ctx, eps1, k, x0_ln, 642.86)?;
    let s = rt[0]
        .add(&rt[1], ctx)
        .add(&rt[2], ctx)
        .add(&rt[3], ctx);
    let a2 = coeff_a2(ctx, x0_ln);
    let a4 = a4_b(ctx, x0_ln, eps2, k);
    let kb = u(ctx, k);
    let lead = u(ctx, 12)
        .mul(&a2, ctx)
        .mul(&a4, ctx)
        .mul(&kb, ctx)
        .div(eps2, ctx)
        .powi(2 * k as i64, ctx);
    let one = RigorousBound::one(ctx.p);
    Ok(one.add(&s, ctx).mul(&lead, ctx).div(&u(ctx, 6), ctx))
}

/// (1/6)(1 + sum of the R-tilde terms at eps1)(12 a2 a4(eps2) k/eps2)^{2k}.
pub fn eval_c_hat(
    ctx: &mut Ctx,
    eps1: f64,
    eps2: f64,
    k: u64,
    x0_ln: f64,
) -> Result<RigorousBound, ConstError> {
    let e2 = RigorousBound::from_f64(eps2, ctx);
    c_hat_b(ctx, eps1, &e2, k, x0_ln)
}

pub fn eval_c(ctx: &mut Ctx, eps: f64, k: u64, x0_ln: f64) -> Result<RigorousBound, ConstError> {
    eval_c_hat(ctx, eps, eps, k, x0_ln)
}

/// (1 + x0^{-k/eps}) * C-hat with the second eps contracted by the same tail.
pub fn eval_c_prime(
    ctx: &mut Ctx,
    eps: f64,
    k: u64,
    x0_ln: f64,
) -> Result<RigorousBound, ConstError> {
    check_chat_domain(eps, k, x0_ln)?;
    let eb = RigorousBound::from_f64(eps, ctx);
    let kb = u(ctx, k);
    let x0b = RigorousBound::from_f64(x0_ln, ctx);
    let q = kb.mul(&x0b, ctx).div(&eb, ctx).neg().exp(ctx);
    let one = RigorousBound::one(ctx.p);
    let denom = one.add(&eb.mul(&q, ctx).div(&kb.mul(&x0b, ctx), ctx), ctx);
    let eps2 = eb.div(&denom, ctx);
    let chat = c_hat_b(ctx, eps, &eps2, k, x0_ln)?;
    Ok(one.add(&q, ctx).mul(&chat, ctx))
}

/// The cross-term constant of the mean value bound, as (exact sum, cheap cap):
/// (3 pi m0/4^k) sum_m binom(2k,m) sqrt(m!(2k-m)!) and 6 pi m0 k^k.
pub fn eval_c1(ctx: &mut Ctx, k: u64) -> (RigorousBound, RigorousBound) {
    assert!(k >= 1);
    let ki = k as i64;
    let pi = RigorousBound::pi(ctx);
    let m0 = m0_b(ctx);
    let f2k = factorial_bound(2 * k, ctx);
    // binom(2k,m) sqrt(m!(2k-m)!) = (2k)!/sqrt(m!(2k-m)!)
    let mut s = RigorousBound::zero();
    for m in 0..=(2 * k) {
        let fa = factorial_bound(m, ctx);
        let fb = factorial_bound(2 * k - m, ctx);
        let d = fa.mul(&fb, ctx).sqrt(ctx);
        s = s.add(&f2k.div(&d, ctx), ctx);
    }
    let pref = u(ctx, 3).mul(&pi, ctx).mul(&m0, ctx);
    let exact = pref.div(&u(ctx, 4).powi(ki, ctx), ctx).mul(&s, ctx);
    let kb = u(ctx, k);
    let cheap = u(ctx, 6).mul(&pi, ctx).mul(&m0, ctx).mul(&kb.powi(ki, ctx), ctx);
    (exact, cheap)
}

/// |log a| + 13.88 + log(1 + a/log 2) + 3/log^2 X, with X given as log X.
pub fn eval_a(ctx: &mut Ctx, a: f64, x_ln: f64) -> Result<RigorousBound, ConstError> {
    if !(a > 0.0 && a <= 0.7) {
        return Err(ConstError::DomainError(format!("a = {a} outside (0, 0.7]")));
    }
    if x_ln < std::f64::consts::LN_2 - 1e-12 {
        return Err(ConstError::DomainError(format!("log X = {x_ln} below log 2")));
    }
    let ab = RigorousBound::from_f64(a, ctx);
    let abs_ln_a = ab.ln(ctx).neg(); // a <= 0.7 < 1, so log a < 0
    let ln2 = RigorousBound::ln2(ctx);
    let one = RigorousBound::one(ctx.p);
    let third = one.add(&ab.div(&ln2, ctx), ctx).ln(ctx);
    let xb = RigorousBound::from_f64(x_ln, ctx);
    let fourth = u(ctx, 3).div(&xb.powi(2, ctx), ctx);
    let c1388 = dec(ctx, 1388, -2);
    Ok(abs_ln_a.add(&c1388, ctx).add(&third, ctx).add(&fourth, ctx))
}

/// 2^nu xi^{2/log x} + L a0 2^{4nu+3} nu! (log x/log T)^nu (log T/log x).
pub fn eval_cal_c(
    ctx: &mut Ctx,
    x_ln: f64,
    t_ln: f64,
    xi: f64,
    nu: u32,
    l: f64,
) -> Result<RigorousBound, ConstError> {
    let ln2 = std::f64::consts::LN_2;
    if x_ln < ln2 - 1e-12 || t_ln < ln2 - 1e-12 {
        return Err(ConstError::DomainError(
            "x and T must both be >= 2".into(),
        ));
    }
    if xi < 1.0 {
        return Err(ConstError::DomainError(format!("xi = {xi} below 1")));
    }
    if l <= 0.0 {
        return Err(ConstError::DomainError(format!("L = {l} not positive")));
    }
    let two = u(ctx, 2);
    let xb = RigorousBound::from_f64(x_ln, ctx);
    let tb = RigorousBound::from_f64(t_ln, ctx);
    let xib = RigorousBound::from_f64(xi, ctx);
    let xi_pow = xib.ln(ctx).mul(&two.div(&xb, ctx), ctx).exp(ctx);
    let first = two.powi(nu as i64, ctx).mul(&xi_pow, ctx);
    let a0 = dec(ctx, 15453, -4);
    let lb = RigorousBound::from_f64(l, ctx);
    let fact = factorial_bound(nu as u64, ctx);
    let ratio = xb.div(&tb, ctx).powi(nu as i64, ctx);
    let second = lb
        .mul(&a0, ctx)
        .mul(&two.powi(4 * nu as i64 + 3, ctx), ctx)
        .mul(&fact, ctx)
        .mul(&ratio, ctx)
        .mul(&tb.div(&xb, ctx), ctx);
    Ok(first.add(&second, ctx))
}

/// The moment error constants evaluated at one value of X = log(alpha + h log T).
#[derive(Clone)]
pub struct MomentErrorConstants {
    pub d1: RigorousBound,
    pub d2: RigorousBound,
    pub e1: RigorousBound,
    pub e2: RigorousBound,
    pub f1: RigorousBound,
    pub f2: RigorousBound,
    pub c2: RigorousBound,
    pub c3: RigorousBound,
}

fn moment_constants_at_x(
    ctx: &mut Ctx,
    eps: f64,
    alpha: f64,
    x: &RigorousBound,
    t1_ln: f64,
    x0_ln: f64,
) -> Result<MomentErrorConstants, ConstError> {
    if !(eps > 0.0 && eps <= 3.0 / 88.0) {
        return Err(ConstError::DomainError(format!(
            "eps = {eps} outside (0, 3/88]"
        )));
    }
    if !(1.0 <= alpha && alpha * eps <= 0.7) {
        return Err(ConstError::DomainError(format!(
            "alpha = {alpha} outside [1, 7/(10 eps)]"
        )));
    }
    if t1_ln < 1408.0 || t1_ln < 6.0 * x0_ln / eps - 1e-3 {
        return Err(ConstError::DomainError(format!(
            "log T1 = {t1_ln} below the admissible floor"
        )));
    }
    if !x.is_positive() {
        return Err(ConstError::DomainError(
            "X = log(alpha + h log T) must be positive".into(),
        ));
    }
    let one = RigorousBound::one(ctx.p);
    let pi = RigorousBound::pi(ctx);
    let pi2 = pi.powi(2, ctx);
    let pi4 = pi.powi(4, ctx);
    let eb = RigorousBound::from_f64(eps, ctx);
    let abs_ln_eps = eb.ln(ctx).neg();
    let half_eps = eb.div(&u(ctx, 2), ctx);
    let abs_ln_half_eps = half_eps.ln(ctx).neg();

    // tails 1/T1^{1-eps}, with T1 given through its log
    let t1b = RigorousBound::from_f64(t1_ln, ctx);
    let decay = one.sub(&eb, ctx).mul(&t1b, ctx).neg().exp(ctx);
    let (c1_1, _) = eval_c1(ctx, 1);
    let (c1_2, _) = eval_c1(ctx, 2);

    let a_big = eval_a(ctx, alpha * eps, eps * t1_ln)?;
    let d1 = abs_ln_eps
        .add(&a_big, ctx)
        .add(&u(ctx, 4).mul(&c1_1, ctx).mul(&decay, ctx), ctx)
        .div(&pi2, ctx);

    let a_half = eval_a(ctx, alpha * eps / 2.0, eps * t1_ln / 2.0)?;
    let lead2 = u(ctx, 6)
        .div(&pi4, ctx)
        .mul(&a_half.add(&abs_ln_half_eps, ctx), ctx);
    let tail2 = u(ctx, 16).mul(&c1_2, ctx).mul(&decay, ctx).div(&u(ctx, 3), ctx);
    let inner2 = a_half
        .powi(2, ctx)
        .add(&u(ctx, 3).mul(&pi4, ctx).div(&u(ctx, 160), ctx), ctx)
        .add(&tail2, ctx);
    let d2 = lead2.add(&u(ctx, 3).div(&pi4.mul(x, ctx), ctx).mul(&inner2, ctx), ctx);

    let e1 = one.div(&pi2, ctx).add(&d1.div(x, ctx), ctx);
    let f1 = u(ctx, 3).div(&pi4, ctx).add(&d2.div(x, ctx), ctx);

    let third = eps / 3.0;
    let c_1 = eval_c(ctx, third, 1, x0_ln)?;
    let cp_1 = eval_c_prime(ctx, third, 1, x0_ln)?;
    let e2 = u(ctx, 2).mul(&c_1.add(&cp_1, ctx), ctx);
    let c_2 = eval_c(ctx, third, 2, x0_ln)?;
    let cp_2 = eval_c_prime(ctx, third, 2, x0_ln)?;
    let f2 = u(ctx, 8).mul(&c_2.add(&cp_2, ctx), ctx);

    let sx = x.sqrt(ctx);
    let c2 = u(ctx, 2)
        .mul(&e1.mul(&e2, ctx).sqrt(ctx), ctx)
        .add(&e1.add(&d1, ctx).div(&sx, ctx), ctx);

    let quarter = big::bf(0.25, ctx.p);
    let t31 = u(ctx, 4).mul(&f1.powi(3, ctx).mul(&f2, ctx).pow_scalar(&quarter, ctx), ctx);
    let t32 = u(ctx, 6)
        .mul(&f1.mul(&f2, ctx).sqrt(ctx), ctx)
        .add(&d2, ctx)
        .div(&sx, ctx);
    let t33 = u(ctx, 4)
        .mul(&f1.mul(&f2.powi(3, ctx), ctx).pow_scalar(&quarter, ctx), ctx)
        .div(x, ctx);
    let three_halves = big::bf(1.5, ctx.p);
    let t34 = f2.div(&x.pow_scalar(&three_halves, ctx), ctx);
    let c3 = t31.add(&t32, ctx).add(&t33, ctx).add(&t34, ctx);

    Ok(MomentErrorConstants {
        d1,
        d2,
        e1,
        e2,
        f1,
        f2,
        c2,
        c3,
    })
}

/// D1..C3 at X = log(alpha + h log T), with h log T supplied as an enclosure
/// (at the interesting heights it is far too large for any direct float).
pub fn eval_moment_error_constants(
    ctx: &mut Ctx,
    eps: f64,
    alpha: f64,
    h_log_t: &RigorousBound,
    t1_ln: f64,
    x0_ln: f64,
) -> Result<MomentErrorConstants, ConstError> {
    if !h_log_t.is_positive() {
        return Err(ConstError::DomainError("h log T must be positive".into()));
    }
    let ab = RigorousBound::from_f64(alpha, ctx);
    let x = ab.add(h_log_t, ctx).ln(ctx);
    moment_constants_at_x(ctx, eps, alpha, &x, t1_ln, x0_ln)
}

/// Outcome of the second-moment margin check at one height scale.
pub struct GateReport {
    pub loglog: f64,
    /// X = e^loglog, the log of the height product the margin divides by.
    pub x: RigorousBound,
    pub constants: MomentErrorConstants,
    /// 1 - pi^2 C2/sqrt(X); the lower bound of the true margin over the
    /// admissible window (C2 decreases in X, so X at the window floor is the
    /// worst case).
    pub margin: RigorousBound,
    pub passes: bool,
}

/// Evaluates the margin 1 - pi^2 C2/sqrt(X) at X = e^loglog with
/// eps = 3/88, alpha = 1, log T1 = 3.52e6, log x0 = 2e4.
pub fn audit_m2_gate(ctx: &mut Ctx, loglog: f64) -> GateReport {
    let x = RigorousBound::from_f64(loglog, ctx).exp(ctx);
    let mec = moment_constants_at_x(ctx, 3.0 / 88.0, 1.0, &x, DEFAULT_T1_LN, DEFAULT_X0_LN)
        .expect("gate parameters are in-domain");
    let pi = RigorousBound::pi(ctx);
    let pi2 = pi.powi(2, ctx);
    let one = RigorousBound::one(ctx.p);
    let margin = one.sub(&pi2.mul(&mec.c2, ctx).div(&x.sqrt(ctx), ctx), ctx);
    let passes = margin.is_positive();
    GateReport {
        loglog,
        x,
        constants: mec,
        margin,
        passes,
    }
}

/// The gap-theorem constants at a given (lambda, mu).
pub struct GapConstantsReport {
    pub lambda: RigorousBound,
    pub mu: f64,
    /// log(2 pi M) = e^30.76.
    pub log_two_pi_m: RigorousBound,
    /// log of sqrt(M2^3/M3); encloses 4.3.
    pub m1_ln: RigorousBound,
    /// (3*2249 - 5887)/2 = 430 hundredths: the identity in exact decimals.
    pub m1_ln_exact_decimal: bool,
    pub c0: RigorousBound,
    /// pi e^4.3/e^{e^30.76} and M1/(2M) agree.
    pub c0_consistent: bool,
    pub c1: RigorousBound,
    /// Same c1 through pi^2/(2K) instead of the literal 1/(16 e^99.8).
    pub c1_via_horn: RigorousBound,
    pub c2: RigorousBound,
}

pub fn eval_gap_constants(
    ctx: &mut Ctx,
    lambda: &RigorousBound,
    mu: f64,
) -> Result<GapConstantsReport, ConstError> {
    if !(mu > 0.0 && mu <= 1.0) {
        return Err(ConstError::DomainError(format!("mu = {mu} outside (0, 1]")));
    }
    let lam_lo = lambda.lo.value_f64();
    let lam_hi = lambda.hi.value_f64();
    if !(lam_lo >= 1.0 - 1e-9 && lam_hi <= 2.0 + 1e-9) {
        return Err(ConstError::DomainError(format!(
            "lambda in [{lam_lo}, {lam_hi}] outside [1, 2]"
        )));
    }
    let p = ctx.p;
    let one = RigorousBound::one(p);
    let two = u(ctx, 2);
    let pi = RigorousBound::pi(ctx);
    let g = exp_dec(ctx, 3076, -2); // log(2 pi M)
    let two_pi_m = g.exp(ctx);
    let m_big = two_pi_m.div(&two.mul(&pi, ctx), ctx);
    let m1 = exp_dec(ctx, 43, -1);
    let m2 = exp_dec(ctx, 2249, -2);
    let m3 = exp_dec(ctx, 5887, -2);
    let m1_ln = m2.powi(3, ctx).div(&m3, ctx).sqrt(ctx).ln(ctx);
    let hundredths = 3 * 2249 - 5887;
    let m1_ln_exact_decimal = hundredths % 2 == 0 && hundredths / 2 == 430;

    let ln_c0 = pi.ln(ctx).add(&dec(ctx, 43, -1), ctx).sub(&g, ctx);
    let c0 = ln_c0.exp(ctx);
    let c0_alt = m1.div(&two.mul(&m_big, ctx), ctx);
    let overlap = !(c0.certainly_lt(&c0_alt) || c0.certainly_gt(&c0_alt));
    let width = |b: &RigorousBound| {
        let d = b.hi.ln_mag().sub(b.lo.ln_mag(), p, RoundingMode::Up);
        big::to_f64(&d).abs()
    };
    let c0_consistent = overlap && width(&c0) < 1e-10 && width(&c0_alt) < 1e-10;

    let e998 = exp_dec(ctx, 998, -1);
    let sixteen_k = u(ctx, 16).mul(&e998, ctx);
    let lam_term = one.add(&c0, ctx).sub(lambda, ctx);
    let c1 = lam_term.powi(2, ctx).div(&sixteen_k, ctx);

    let big_k = u(ctx, 8).mul(&pi.powi(2, ctx), ctx).mul(&e998, ctx);
    let horn_term = c0_alt.add(&one, ctx).sub(lambda, ctx);
    let c1_via_horn = pi
        .powi(2, ctx)
        .div(&two.mul(&big_k, ctx), ctx)
        .mul(&horn_term.powi(2, ctx), ctx);

    let mu_b = RigorousBound::from_f64(mu, ctx);
    let c2 = one
        .sub(&two.mul(&c1, ctx), ctx)
        .mul(&mu_b, ctx)
        .add(&two.mul(lambda, ctx).mul(&c1, ctx), ctx)
        .sub(&one, ctx)
        .div(&two.mul(&mu_b, ctx), ctx);

    Ok(GapConstantsReport {
        lambda: lambda.clone(),
        mu,
        log_two_pi_m: g,
        m1_ln,
        m1_ln_exact_decimal,
        c0,
        c0_consistent,
        c1,
        c1_via_horn,
        c2,
    })
}

pub struct MultiplicityConstants {
    /// 2/(3 e omega0).
    pub kappa: RigorousBound,
    /// Root of (x-1)^2/x = 2 e^5 kappa.
    pub delta: RigorousBound,
    /// delta rounded up at the fifth decimal.
    pub density_coefficient: f64,
}

pub fn eval_multiplicity_constants(ctx: &mut Ctx) -> MultiplicityConstants {
    let omega0 = exp_dec(ctx, 128471, -4);
    let e = e_b(ctx);
    let denom = u(ctx, 3).mul(&e, ctx).mul(&omega0, ctx);
    let kappa = u(ctx, 2).div(&denom, ctx);
    let rhs = 2.0 * 5.0f64.exp() * kappa.mid_f64();
    let delta_f = find_root(|d| (d - 1.0) * (d - 1.0) / d - rhs, 1.0001, 1.2, 1e-13)
        .expect("the defect function brackets its root");
    let lo = RigorousBound::from_f64(delta_f - 1e-11, ctx);
    let hi = RigorousBound::from_f64(delta_f + 1e-11, ctx);
    MultiplicityConstants {
        kappa,
        delta: lo.hull(&hi),
        density_coefficient: (delta_f * 1e5).ceil() / 1e5,
    }
}

/// Fixed point of lambda = 1 + sqrt(log(2 pi lambda)/(3 pi^2))/2.
pub fn solve_ideal_lambda() -> f64 {
    let pi = std::f64::consts::PI;
    let f = |l: f64| l - 1.0 - 0.5 * ((2.0 * pi * l).ln() / (3.0 * pi * pi)).sqrt();
    find_root(f, 1.05, 1.5, 1e-13).expect("fixed point is bracketed")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AuditStatus {
    WithinPublishedBound,
    OutsidePublishedBound,
    NoPublishedValue,
}

impl AuditStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AuditStatus::WithinPublishedBound => "WITHIN_PUBLISHED_BOUND",
            AuditStatus::OutsidePublishedBound => "OUTSIDE_PUBLISHED_BOUND",
            AuditStatus::NoPublishedValue => "NO_PUBLISHED_VALUE",
        }
    }

    pub fn acceptable(self) -> bool {
        !matches!(self, AuditStatus::OutsidePublishedBound)
    }
}

/// What the literature states about a constant, when anything.
#[derive(Clone, Debug)]
pub enum Published {
    Upper(LogReal),
    Lower(LogReal),
    Band(LogReal, LogReal),
}

pub struct ConstantReport {
    pub name: String,
    pub formula_anchor: String,
    pub computed: RigorousBound,
    pub published: Option<Published>,
    pub status: AuditStatus,
    /// An enclosure more than a factor 2 below a published cap usually means
    /// the wrong formula was computed; flagged, not failed.
    pub suspicious: bool,
}

impl ConstantReport {
    pub fn new(
        name: &str,
        formula_anchor: &str,
        computed: RigorousBound,
        published: Option<Published>,
    ) -> ConstantReport {
        let (status, suspicious) = match &published {
            None => (AuditStatus::NoPublishedValue, false),
            Some(Published::Upper(cap)) => {
                let ok = computed.hi.cmp_real(cap) != Ordering::Greater;
                let susp = ok
                    && computed.hi.sign() > 0
                    && cap.sign() > 0
                    && computed.hi.ln_mag_f64() < cap.ln_mag_f64() - std::f64::consts::LN_2;
                (
                    if ok {
                        AuditStatus::WithinPublishedBound
                    } else {
                        AuditStatus::OutsidePublishedBound
                    },
                    susp,
                )
            }
            Some(Published::Lower(floor)) => {
                let ok = computed.lo.cmp_real(floor) != Ordering::Less;
                (
                    if ok {
                        AuditStatus::WithinPublishedBound
                    } else {
                        AuditStatus::OutsidePublishedBound
                    },
                    false,
                )
            }
            Some(Published::Band(lo, hi)) => {
                let ok = computed.lo.cmp_real(lo) == Ordering::Greater
                    && computed.hi.cmp_real(hi) == Ordering::Less;
                (
                    if ok {
                        AuditStatus::WithinPublishedBound
                    } else {
                        AuditStatus::OutsidePublishedBound
                    },
                    false,
                )
            }
        };
        ConstantReport {
            name: name.into(),
            formula_anchor: formula_anchor.into(),
            computed,
            published,
            status,
            suspicious,
        }
    }

    pub fn to_json(&self) -> Value {
        fn ln_json(v: &LogReal) -> Value {
            if v.is_zero() {
                Value::Null
            } else {
                Value::from(v.ln_mag_f64())
            }
        }
        let sign = if self.computed.lo.sign() > 0 {
            1
        } else if self.computed.hi.sign() < 0 {
            -1
        } else {
            0
        };
        let published = match &self.published {
            None => Value::Null,
            Some(Published::Upper(v)) => json!({"kind": "upper", "sign": v.sign(), "ln": ln_json(v)}),
            Some(Published::Lower(v)) => json!({"kind": "lower", "sign": v.sign(), "ln": ln_json(v)}),
            Some(Published::Band(a, b)) => {
                json!({"kind": "band", "lo_ln": ln_json(a), "hi_ln": ln_json(b)})
            }
        };
        json!({
            "name": self.name,
            "formula_anchor": self.formula_anchor,
            "computed_lo_ln": ln_json(&self.computed.lo),
            "computed_hi_ln": ln_json(&self.computed.hi),
            "computed_sign": sign,
            "published": published,
            "status": self.status.as_str(),
            "suspicious": self.suspicious,
        })
    }
}

fn upper_dec(ctx: &mut Ctx, m: i64, pow10: i32) -> Published {
    // rounded down so a certification against it is conservative
    Published::Upper(LogReal::from_decimal(m, pow10, ctx, Round::Down))
}

fn band_dec(ctx: &mut Ctx, lo: (i64, i32), hi: (i64, i32)) -> Published {
    Published::Band(
        LogReal::from_decimal(lo.0, lo.1, ctx, Round::Up),
        LogReal::from_decimal(hi.0, hi.1, ctx, Round::Down),
    )
}

/// Every constant the pipeline produces, checked against its published value
/// where one exists.
pub fn audit(ctx: &mut Ctx) -> Vec<ConstantReport> {
    let mut out = Vec::new();
    let base = BaseConstants::new(ctx);
    out.push(ConstantReport::new("a0", "1.5453", base.a0.clone(), None));
    out.push(ConstantReport::new(
        "a1",
        "13 + 26/(10 pi) + 13/(3 pi e)",
        base.a1.clone(),
        None,
    ));
    let a2 = coeff_a2(ctx, DEFAULT_X0_LN);
    out.push(ConstantReport::new(
        "a2",
        "13/2 + 18/(10 pi) + 13/(6 pi e) + (2/log x0)(52 + 124/(10 pi) + 52/(3 pi e)), log x0 = 20000",
        a2,
        None,
    ));
    let a3 = coeff_a3(ctx, DEFAULT_X0_LN);
    out.push(ConstantReport::new(
        "a3",
        "3 pi a1/2 + 139/75 + 62 pi a1/(75 log x0), log x0 = 20000",
        a3,
        None,
    ));
    let a4 = coeff_a4(ctx, DEFAULT_X0_LN, EPS_CAP, 1);
    out.push(ConstantReport::new(
        "a4",
        "1 + (eps/k)(log 2/log x0 + a3/(pi a2)), eps = 1/88, k = 1",
        a4,
        None,
    ));
    out.push(ConstantReport::new(
        "m0",
        "sqrt(1 + (2/3) sqrt(6/5))",
        base.m0.clone(),
        None,
    ));
    out.push(ConstantReport::new("L0", "642.86", base.l0.clone(), None));
    out.push(ConstantReport::new(
        "K",
        "8 pi^2 exp(99.8)",
        base.big_k.clone(),
        None,
    ));
    out.push(ConstantReport::new(
        "omega0",
        "exp(12.8471)",
        base.omega0.clone(),
        None,
    ));

    let c_1 = eval_c(ctx, EPS_CAP, 1, DEFAULT_X0_LN).expect("in-domain");
    let pub_c1 = upper_dec(ctx, 144161, 6);
    out.push(ConstantReport::new(
        "C_k1",
        "(1/6)(1 + R1 + R2 + R3 + R4)(12 a2 a4 k/eps)^(2k), eps = 1/88, k = 1, x0 = exp(20000)",
        c_1.clone(),
        Some(pub_c1),
    ));
    let c_2 = eval_c(ctx, EPS_CAP, 2, DEFAULT_X0_LN).expect("in-domain");
    let pub_c2 = upper_dec(ctx, 269927, 16);
    out.push(ConstantReport::new(
        "C_k2",
        "same with k = 2",
        c_2.clone(),
        Some(pub_c2),
    ));
    let cp_1 = eval_c_prime(ctx, EPS_CAP, 1, DEFAULT_X0_LN).expect("in-domain");
    let pub_cp1 = upper_dec(ctx, 144161, 6);
    out.push(ConstantReport::new(
        "C_prime_k1",
        "(1 + x0^(-k/eps)) C-hat(eps, contracted eps, k, x0), eps = 1/88, k = 1",
        cp_1,
        Some(pub_cp1),
    ));
    let cp_2 = eval_c_prime(ctx, EPS_CAP, 2, DEFAULT_X0_LN).expect("in-domain");
    let pub_cp2 = upper_dec(ctx, 269927, 16);
    out.push(ConstantReport::new(
        "C_prime_k2",
        "same with k = 2",
        cp_2,
        Some(pub_cp2),
    ));

    for k in [1u64, 2] {
        let (exact, cheap) = eval_c1(ctx, k);
        out.push(ConstantReport::new(
            &format!("C1_k{k}"),
            "(3 pi m0/4^k) sum_m binom(2k,m) sqrt(m!(2k-m)!), capped by 6 pi m0 k^k",
            exact,
            Some(Published::Upper(cheap.lo.clone())),
        ));
    }

    let mult = eval_multiplicity_constants(ctx);
    let pub_kappa = band_dec(ctx, (6459, -10), (646, -9));
    out.push(ConstantReport::new(
        "kappa",
        "2/(3 e omega0)",
        mult.kappa.clone(),
        Some(pub_kappa),
    ));
    let pub_delta = band_dec(ctx, (1013938, -6), (1013948, -6));
    out.push(ConstantReport::new(
        "delta",
        "root of (x-1)^2/x = 2 e^5 kappa",
        mult.delta.clone(),
        Some(pub_delta),
    ));
    let dc = RigorousBound::from_f64(mult.density_coefficient, ctx);
    let pub_dc = upper_dec(ctx, 1014, -3);
    out.push(ConstantReport::new(
        "density_coefficient",
        "delta rounded up at the fifth decimal",
        dc,
        Some(pub_dc),
    ));

    let one_b = RigorousBound::one(ctx.p);
    let gap = eval_gap_constants(ctx, &one_b, 1.0).expect("in-domain");
    let pub_c0 = {
        let p = ctx.p;
        let l10_dn = ctx.ln10(RoundingMode::Down);
        let l10_up = ctx.ln10(RoundingMode::Up);
        let lo_ln = big::bf(-9.94e12, p).mul(&l10_dn, p, RoundingMode::Up);
        let hi_ln = big::bf(-9.92e12, p).mul(&l10_up, p, RoundingMode::Down);
        Published::Band(LogReal::from_ln(1, lo_ln), LogReal::from_ln(1, hi_ln))
    };
    out.push(ConstantReport::new(
        "c0",
        "pi exp(4.3)/exp(exp(30.76))",
        gap.c0.clone(),
        Some(pub_c0),
    ));
    // 397*10^(-9.93e12) must sit below c0 for the gap length to be admissible
    let lam_bar_minus_one = {
        let ln397 = u(ctx, 397).ln(ctx);
        let ln10 = u(ctx, 10).ln(ctx);
        let sc = dec(ctx, -993, 10);
        ln397.add(&sc.mul(&ln10, ctx), ctx).exp(ctx)
    };
    out.push(ConstantReport::new(
        "lambda_bar_minus_one",
        "397 * 10^(-9.93e12), admissible when below c0",
        lam_bar_minus_one,
        Some(Published::Upper(gap.c0.lo.clone())),
    ));
    out.push(ConstantReport::new(
        "c1_at_lambda_one",
        "(1 + c0 - lambda)^2/(16 exp(99.8)) at lambda = 1",
        gap.c1.clone(),
        None,
    ));
    let pub_m1 = {
        let lo = LogReal::from_f64(4.3 - 1e-12, ctx, Round::Up);
        let hi = LogReal::from_f64(4.3 + 1e-12, ctx, Round::Down);
        Published::Band(lo, hi)
    };
    out.push(ConstantReport::new(
        "m1_ln",
        "(3*22.49 - 58.87)/2, the log of sqrt(M2^3/M3)",
        gap.m1_ln.clone(),
        Some(pub_m1),
    ));

    let gate76 = audit_m2_gate(ctx, 30.76);
    let gate75 = audit_m2_gate(ctx, 30.75);
    out.push(ConstantReport::new(
        "D1_at_gate",
        "(|log eps| + A(alpha eps, T1^eps) + 4 C1(1)/T1^(1-eps))/pi^2",
        gate76.constants.d1.clone(),
        None,
    ));
    out.push(ConstantReport::new(
        "D2_at_gate",
        "(6/pi^4)(A + |log(eps/2)|) + (3/(pi^4 X))(A^2 + 3 pi^4/160 + 16 C1(2)/(3 T1^(1-eps)))",
        gate76.constants.d2.clone(),
        None,
    ));
    let pub_e2 = upper_dec(ctx, 576644, 6);
    out.push(ConstantReport::new(
        "E2_at_gate",
        "2(C(eps/3, 1, x0) + C'(eps/3, 1, x0)), eps = 3/88",
        gate76.constants.e2.clone(),
        Some(pub_e2),
    ));
    let pub_f2 = upper_dec(ctx, 4318832, 16);
    out.push(ConstantReport::new(
        "F2_at_gate",
        "8(C(eps/3, 2, x0) + C'(eps/3, 2, x0)), eps = 3/88",
        gate76.constants.f2.clone(),
        Some(pub_f2),
    ));
    out.push(ConstantReport::new(
        "C2_at_gate",
        "2 sqrt(E1 E2) + (E1 + D1)/sqrt(X)",
        gate76.constants.c2.clone(),
        None,
    ));
    out.push(ConstantReport::new(
        "C3_at_gate",
        "4(F1^3 F2)^(1/4) + (6 sqrt(F1 F2) + D2)/sqrt(X) + 4(F1 F2^3)^(1/4)/X + F2/X^(3/2)",
        gate76.constants.c3.clone(),
        None,
    ));
    out.push(ConstantReport::new(
        "gate_margin_3076",
        "1 - pi^2 C2/sqrt(X) at X = exp(30.76)",
        gate76.margin.clone(),
        Some(Published::Lower(LogReal::zero())),
    ));
    out.push(ConstantReport::new(
        "gate_margin_3075",
        "1 - pi^2 C2/sqrt(X) at X = exp(30.75)",
        gate75.margin.clone(),
        Some(Published::Upper(LogReal::zero())),
    ));
    // the rate the passing margin certifies, against the published e^22.49
    let m2_rate = gate76
        .x
        .mul(&gate76.margin, ctx)
        .div(&RigorousBound::pi(ctx).powi(2, ctx), ctx);
    let pub_m2 = Published::Upper(LogReal::from_ln(
        1,
        big::from_decimal(2249, -2, ctx.p, RoundingMode::Down),
    ));
    out.push(ConstantReport::new(
        "m2_rate_at_gate",
        "X margin/pi^2 at X = exp(30.76), published cap exp(22.49)",
        m2_rate,
        Some(pub_m2),
    ));
    // the fourth-moment budget (3/pi^4) Xu^2 + C3 Xu^(3/2) against e^58.87
    let m3_budget = {
        let xu = gate76.x.add(&dec(ctx, 7, -1), ctx);
        let pi4 = RigorousBound::pi(ctx).powi(4, ctx);
        let three_halves = big::bf(1.5, ctx.p);
        u(ctx, 3)
            .div(&pi4, ctx)
            .mul(&xu.powi(2, ctx), ctx)
            .add(&gate76.constants.c3.mul(&xu.pow_scalar(&three_halves, ctx), ctx), ctx)
    };
    let pub_m3 = Published::Upper(LogReal::from_ln(
        1,
        big::from_decimal(5887, -2, ctx.p, RoundingMode::Down),
    ));
    out.push(ConstantReport::new(
        "m3_budget_at_gate",
        "(3/pi^4) Xu^2 + C3 Xu^(3/2), Xu = exp(30.76) + 0.7, published cap exp(58.87)",
        m3_budget,
        Some(pub_m3),
    ));

    let lam = solve_ideal_lambda();
    let lam_b = {
        let lo = RigorousBound::from_f64(lam - 2e-12, ctx);
        let hi = RigorousBound::from_f64(lam + 2e-12, ctx);
        lo.hull(&hi)
    };
    let pub_lam = band_dec(ctx, (11285, -4), (11287, -4));
    out.push(ConstantReport::new(
        "lambda_ideal",
        "fixed point of 1 + sqrt(log(2 pi x)/(3 pi^2))/2",
        lam_b,
        Some(pub_lam),
    ));

    let a_env = eval_a(ctx, 0.7, 1.0).expect("in-domain");
    out.push(ConstantReport::new(
        "A_small",
        "|log 0.7| + 13.88 + log(1 + 0.7/log 2) + 3",
        a_env,
        None,
    ));
    let cal = eval_cal_c(ctx, 16.0, 1408.0, 1.0, 2, 642.86).expect("in-domain");
    out.push(ConstantReport::new(
        "calC_example",
        "2^nu xi^(2/log x) + L a0 2^(4nu+3) nu! (log x/log T)^nu (log T/log x) at (exp(16), exp(1408), 1, 2, 642.86)",
        cal,
        None,
    ));

    out
}
