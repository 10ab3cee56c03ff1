//! Cin and log-factorial. Cin switches evaluation strategy at z=4 (f64
//! Taylor), z in (4,40) (extended-precision Taylor, since the alternating
//! terms peak near e^z before cancelling), z>=40 (asymptotic expansion of
//! Ci).

use astro_float::{BigFloat, RoundingMode};
use std::sync::OnceLock;

use super::big::{bf, to_f64, Ctx};
use super::bound::RigorousBound;
use super::logreal::LogReal;

pub const EULER_GAMMA: f64 = 0.5772156649015329;

/// Cin(z) = integral of (1-cos u)/u over (0, z], for z >= 0.
pub fn cin(z: f64) -> f64 {
    assert!(z.is_finite() && z >= 0.0, "cin domain is [0, inf)");
    if z == 0.0 {
        return 0.0;
    }
    if z <= 4.0 {
        cin_taylor_f64(z)
    } else if z < 40.0 {
        cin_taylor_big(z)
    } else {
        EULER_GAMMA + z.ln() - ci_asymptotic(z)
    }
}

// Cin(z) = sum_{k>=1} (-1)^(k+1) z^(2k) / ((2k) (2k)!), Kahan-compensated.
fn cin_taylor_f64(z: f64) -> f64 {
    let z2 = z * z;
    let mut term = z2 / 4.0; // z^2 / (2 * 2!)
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut k = 1u32;
    loop {
        let signed = if k % 2 == 1 { term } else { -term };
        let y = signed - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term < 1e-20 * sum.abs().max(1e-3) {
            break;
        }
        let m = 2.0 * k as f64;
        term *= z2 * m / ((m + 2.0) * (m + 1.0) * (m + 2.0));
        k += 1;
    }
    sum
}

fn cin_taylor_big(z: f64) -> f64 {
    let p = 192;
    let rm = RoundingMode::ToEven;
    let z2big = {
        let zb = bf(z, p);
        zb.mul(&zb, p, rm)
    };
    let mut term = z2big.div(&bf(4.0, p), p, rm);
    let mut sum = BigFloat::from_f64(0.0, p);
    for k in 1u32..=400 {
        sum = if k % 2 == 1 {
            sum.add(&term, p, rm)
        } else {
            sum.sub(&term, p, rm)
        };
        let m = 2.0 * k as f64;
        let ratio_num = z2big.mul(&bf(m, p), p, rm);
        let den = bf((m + 2.0) * (m + 1.0) * (m + 2.0), p);
        term = term.mul(&ratio_num, p, rm).div(&den, p, rm);
        if to_f64(&term) < 1e-45 {
            break;
        }
    }
    to_f64(&sum)
}

// Ci(z) ~ sin(z) f(z) - cos(z) g(z); series truncated at their smallest
// term, which also bounds the truncation error. Good to ~1e-15 for z >= 40.
fn ci_asymptotic(z: f64) -> f64 {
    let z2 = z * z;
    let mut f = 0.0f64;
    let mut term = 1.0 / z;
    let mut k = 0u32;
    loop {
        f += term;
        let next = -term * ((2 * k + 1) as f64) * ((2 * k + 2) as f64) / z2;
        if next.abs() >= term.abs() || next.abs() < 1e-18 * f.abs() {
            break;
        }
        term = next;
        k += 1;
    }
    let mut g = 0.0f64;
    let mut term = 1.0 / z2;
    let mut k = 0u32;
    loop {
        g += term;
        let next = -term * ((2 * k + 2) as f64) * ((2 * k + 3) as f64) / z2;
        if next.abs() >= term.abs() || next.abs() < 1e-18 * g.abs() {
            break;
        }
        term = next;
        k += 1;
    }
    z.sin() * f - z.cos() * g
}

const LNFACT_TABLE_N: u64 = 1024;
const LNFACT_TABLE_P: usize = 256;

fn lnfact_table() -> &'static Vec<BigFloat> {
    static TABLE: OnceLock<Vec<BigFloat>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let p = LNFACT_TABLE_P;
        let rm = RoundingMode::ToEven;
        let mut cc = astro_float::Consts::new().expect("constants cache");
        let mut acc = BigFloat::from_f64(0.0, p);
        let mut out = Vec::with_capacity(LNFACT_TABLE_N as usize + 1);
        out.push(acc.clone()); // 0! = 1
        for n in 1..=LNFACT_TABLE_N {
            let ln_n = BigFloat::from_u64(n, p).ln(p, rm, &mut cc);
            acc = acc.add(&ln_n, p, rm);
            out.push(acc.clone());
        }
        out
    })
}

/// ln(n!) as a plain extended-precision value. Exact cumulative table
/// through 1024, Stirling with seven correction terms beyond (remainder
/// < 3e-47 there).
pub fn ln_factorial_bf(n: u64, ctx: &mut Ctx) -> BigFloat {
    let p = ctx.p;
    let rm = RoundingMode::ToEven;
    if n <= LNFACT_TABLE_N {
        // keep the table's full 256 bits; callers round when they combine
        return lnfact_table()[n as usize].clone();
    }
    // ln n! = n ln n - n + ln(2 pi n)/2 + sum c_j / n^(2j-1)
    let nb = BigFloat::from_u64(n, p);
    let ln_n = nb.ln(p, rm, &mut ctx.cc);
    let mut s = nb.mul(&ln_n, p, rm).sub(&nb, p, rm);
    let two_pi = ctx.cc.pi(p, rm).mul(&bf(2.0, p), p, rm);
    let half_ln = two_pi.mul(&nb, p, rm).ln(p, rm, &mut ctx.cc).mul(&bf(0.5, p), p, rm);
    s = s.add(&half_ln, p, rm);
    // c_j = B_2j / (2j (2j-1)) as exact rationals
    const CORR: [(i64, i64); 7] = [
        (1, 12),
        (-1, 360),
        (1, 1260),
        (-1, 1680),
        (1, 1188),
        (-691, 360360),
        (1, 156),
    ];
    let one = bf(1.0, p);
    let inv_n2 = {
        let n2 = nb.mul(&nb, p, rm);
        one.div(&n2, p, rm)
    };
    let mut pw = one.div(&nb, p, rm); // n^-(2j-1)
    for (num, den) in CORR {
        let c = BigFloat::from_i64(num, p).div(&BigFloat::from_i64(den, p), p, rm);
        s = s.add(&c.mul(&pw, p, rm), p, rm);
        pw = pw.mul(&inv_n2, p, rm);
    }
    s
}

/// ln(n!) as a LogReal (the returned value *is* ln n!, so 0 and 1 map to
/// the exact zero).
pub fn ln_factorial(n: u64, ctx: &mut Ctx) -> LogReal {
    if n <= 1 {
        return LogReal::zero();
    }
    let v = ln_factorial_bf(n, ctx);
    let ln_of = v.ln(ctx.p, RoundingMode::ToEven, &mut ctx.cc);
    LogReal::from_ln(1, ln_of)
}

/// n! as an enclosure; covers table rounding and the Stirling remainder
/// with a blanket 1e-40 slack on ln(n!).
pub fn factorial_bound(n: u64, ctx: &mut Ctx) -> RigorousBound {
    let p = ctx.p;
    let ln = ln_factorial_bf(n, ctx);
    let slack = bf(1e-40, p);
    let lo = LogReal::from_ln(1, ln.sub(&slack, p, RoundingMode::Down));
    let hi = LogReal::from_ln(1, ln.add(&slack, p, RoundingMode::Up));
    RigorousBound::new(lo, hi)
}
