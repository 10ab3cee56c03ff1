//! Signed reals stored as (sign, ln of magnitude). The only representation
//! that survives quantities like e^(e^30.76) without overflow.

use astro_float::{BigFloat, RoundingMode};
use std::cmp::Ordering;

use super::big::{bf, cmp_bf, from_decimal, to_f64, widen_down, widen_up, Ctx};

/// Requested rounding direction on the *real value* of a result.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
    Near,
}

impl Round {
    /// Rounding mode to apply on ln_mag so the real value moves in `self`'s
    /// direction, given the sign of the result.
    fn ln_mode(self, sign: i8) -> RoundingMode {
        match (self, sign >= 0) {
            (Round::Near, _) => RoundingMode::ToEven,
            (Round::Down, true) | (Round::Up, false) => RoundingMode::Down,
            (Round::Up, true) | (Round::Down, false) => RoundingMode::Up,
        }
    }

    fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
            Round::Near => Round::Near,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LogReal {
    sign: i8,
    ln_mag: BigFloat,
}

impl LogReal {
    pub fn zero() -> LogReal {
        LogReal {
            sign: 0,
            ln_mag: BigFloat::from_f64(f64::NEG_INFINITY, 64),
        }
    }

    pub fn one(p: usize) -> LogReal {
        LogReal {
            sign: 1,
            ln_mag: bf(0.0, p),
        }
    }

    pub fn from_ln(sign: i8, ln_mag: BigFloat) -> LogReal {
        assert!(sign == -1 || sign == 0 || sign == 1);
        if sign == 0 {
            return LogReal::zero();
        }
        LogReal { sign, ln_mag }
    }

    pub fn from_ln_f64(sign: i8, ln_mag: f64, p: usize) -> LogReal {
        LogReal::from_ln(sign, bf(ln_mag, p))
    }

    pub fn from_f64(x: f64, ctx: &mut Ctx, r: Round) -> LogReal {
        if x == 0.0 {
            return LogReal::zero();
        }
        let sign = if x > 0.0 { 1 } else { -1 };
        let mag = bf(x.abs(), ctx.p);
        let ln = mag.ln(ctx.p, r.ln_mode(sign), &mut ctx.cc);
        LogReal { sign, ln_mag: ln }
    }

    /// Exact decimal m*10^pow10, with the representation error pushed in
    /// direction `r`.
    pub fn from_decimal(m: i64, pow10: i32, ctx: &mut Ctx, r: Round) -> LogReal {
        if m == 0 {
            return LogReal::zero();
        }
        let sign = if m > 0 { 1 } else { -1 };
        let mode = r.ln_mode(sign);
        let mag = from_decimal(m.abs(), pow10, ctx.p + 32, mode);
        let ln = mag.ln(ctx.p, mode, &mut ctx.cc);
        LogReal { sign, ln_mag: ln }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn ln_mag(&self) -> &BigFloat {
        &self.ln_mag
    }

    pub fn ln_mag_f64(&self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            to_f64(&self.ln_mag)
        }
    }

    /// sign * e^ln_mag as f64; under/overflows saturate to 0 / +-inf.
    pub fn value_f64(&self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            self.sign as f64 * self.ln_mag_f64().exp()
        }
    }

    pub fn neg(&self) -> LogReal {
        LogReal {
            sign: -self.sign,
            ln_mag: self.ln_mag.clone(),
        }
    }

    pub fn abs(&self) -> LogReal {
        LogReal {
            sign: self.sign.abs(),
            ln_mag: self.ln_mag.clone(),
        }
    }

    /// Total order by real value.
    pub fn cmp_real(&self, rhs: &LogReal) -> Ordering {
        match self.sign.cmp(&rhs.sign) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.sign {
            0 => Ordering::Equal,
            1 => cmp_bf(&self.ln_mag, &rhs.ln_mag),
            _ => cmp_bf(&rhs.ln_mag, &self.ln_mag),
        }
    }

    pub fn mul(&self, rhs: &LogReal, ctx: &mut Ctx, r: Round) -> LogReal {
        let sign = self.sign * rhs.sign;
        if sign == 0 {
            return LogReal::zero();
        }
        let ln = self.ln_mag.add(&rhs.ln_mag, ctx.p, r.ln_mode(sign));
        LogReal { sign, ln_mag: ln }
    }

    pub fn div(&self, rhs: &LogReal, ctx: &mut Ctx, r: Round) -> LogReal {
        assert!(rhs.sign != 0, "division by zero LogReal");
        let sign = self.sign * rhs.sign;
        if sign == 0 {
            return LogReal::zero();
        }
        let ln = self.ln_mag.sub(&rhs.ln_mag, ctx.p, r.ln_mode(sign));
        LogReal { sign, ln_mag: ln }
    }

    pub fn powi(&self, n: i64, ctx: &mut Ctx, r: Round) -> LogReal {
        if n == 0 {
            return LogReal::one(ctx.p);
        }
        if self.sign == 0 {
            assert!(n > 0, "0 to a negative power");
            return LogReal::zero();
        }
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { 1 };
        let nn = BigFloat::from_i64(n, ctx.p);
        let ln = self.ln_mag.mul(&nn, ctx.p, r.ln_mode(sign));
        LogReal { sign, ln_mag: ln }
    }

    /// Positive base raised to an exact scalar exponent.
    pub fn pow_scalar(&self, c: &BigFloat, ctx: &mut Ctx, r: Round) -> LogReal {
        assert!(self.sign > 0, "pow_scalar needs a positive base");
        let ln = self.ln_mag.mul(c, ctx.p, r.ln_mode(1));
        LogReal { sign: 1, ln_mag: ln }
    }

    pub fn sqrt(&self, ctx: &mut Ctx, r: Round) -> LogReal {
        assert!(self.sign >= 0, "sqrt of a negative LogReal");
        if self.sign == 0 {
            return LogReal::zero();
        }
        let half = bf(0.5, ctx.p);
        let ln = self.ln_mag.mul(&half, ctx.p, r.ln_mode(1)); // exact halving
        LogReal { sign: 1, ln_mag: ln }
    }

    /// Log-sum-exp addition with sign handling; exact cancellation gives the
    /// exact zero (sign 0).
    pub fn add(&self, rhs: &LogReal, ctx: &mut Ctx, r: Round) -> LogReal {
        if self.sign == 0 {
            return rhs.clone();
        }
        if rhs.sign == 0 {
            return self.clone();
        }
        // x carries the larger magnitude
        let (x, y) = if cmp_bf(&self.ln_mag, &rhs.ln_mag) == Ordering::Less {
            (rhs, self)
        } else {
            (self, rhs)
        };
        if x.sign != y.sign && cmp_bf(&x.ln_mag, &y.ln_mag) == Ordering::Equal {
            return LogReal::zero();
        }
        // separation beyond ~7e8 puts e^d outside the representable exponent
        // range; the correction is below one ulp of ln_mag at any precision
        // we run, so x padded one ulp in the requested direction encloses it
        let sep = to_f64(&x.ln_mag) - to_f64(&y.ln_mag);
        if sep > 7e8 {
            return match r {
                Round::Near => x.clone(),
                _ => x.widen(ctx, r),
            };
        }
        let p = ctx.p;
        let sign = x.sign;
        let same = x.sign == y.sign;
        // result magnitude is increasing in d for same signs, decreasing for
        // opposite; pick the rounding of the inner chain accordingly
        let mag_dir = if sign > 0 { r } else { r.flip() }; // direction on |result|
        let inner = if same { mag_dir } else { mag_dir.flip() };
        let md = |d: Round| d.ln_mode(1);
        let d = y.ln_mag.sub(&x.ln_mag, p, md(inner)); // <= 0
        let t = d.exp(p, md(inner), &mut ctx.cc); // in (0, 1]
        let one = bf(1.0, p);
        let s = if same {
            one.add(&t, p, md(mag_dir))
        } else {
            one.sub(&t, p, md(mag_dir))
        };
        if s.is_zero() {
            // rounded all the way to cancellation: only possible with opposite
            // signs and d ~ 0; treat as zero (caller widens around it)
            return LogReal::zero();
        }
        let lns = s.ln(p, md(mag_dir), &mut ctx.cc);
        let ln = x.ln_mag.add(&lns, p, md(mag_dir));
        LogReal { sign, ln_mag: ln }
    }

    pub fn sub(&self, rhs: &LogReal, ctx: &mut Ctx, r: Round) -> LogReal {
        self.add(&rhs.neg(), ctx, r)
    }

    /// Natural log of a positive value: the result *is* ln_mag, re-encoded.
    pub fn ln(&self, ctx: &mut Ctx, r: Round) -> LogReal {
        assert!(self.sign > 0, "ln of a non-positive LogReal");
        if self.ln_mag.is_zero() {
            return LogReal::zero(); // ln 1 = 0
        }
        let sign = if self.ln_mag.is_negative() { -1 } else { 1 };
        let mag = self.ln_mag.abs();
        let ln = mag.ln(ctx.p, r.ln_mode(sign), &mut ctx.cc);
        LogReal { sign, ln_mag: ln }
    }

    /// e^(value). Requires |value| small enough that it fits a BigFloat
    /// (true everywhere this pipeline uses it).
    pub fn exp(&self, ctx: &mut Ctx, r: Round) -> LogReal {
        if self.sign == 0 {
            return LogReal::one(ctx.p);
        }
        let mode = if self.sign > 0 {
            r.ln_mode(1)
        } else {
            r.flip().ln_mode(1)
        };
        let mag = self.ln_mag.exp(ctx.p, mode, &mut ctx.cc);
        let ln = if self.sign > 0 { mag } else { mag.neg() };
        LogReal { sign: 1, ln_mag: ln }
    }

    /// Nudge the real value one ulp (of ln_mag) in direction `r`.
    pub fn widen(&self, ctx: &Ctx, r: Round) -> LogReal {
        if self.sign == 0 {
            return LogReal::zero();
        }
        let grow_mag = (r == Round::Up) == (self.sign > 0);
        let ln = if grow_mag {
            widen_up(&self.ln_mag, ctx.p)
        } else {
            widen_down(&self.ln_mag, ctx.p)
        };
        LogReal {
            sign: self.sign,
            ln_mag: ln,
        }
    }
}
