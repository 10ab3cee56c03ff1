//! Interval arithmetic over LogReal endpoints. Every operation rounds the
//! low endpoint down and the high endpoint up, then widens each by one ulp,
//! so a true real result is always enclosed.

use std::cmp::Ordering;

use astro_float::{BigFloat, RoundingMode};

use super::big::Ctx;
use super::logreal::{LogReal, Round};

#[derive(Clone, Debug)]
pub struct RigorousBound {
    pub lo: LogReal,
    pub hi: LogReal,
}

impl RigorousBound {
    pub fn new(lo: LogReal, hi: LogReal) -> RigorousBound {
        assert_ne!(lo.cmp_real(&hi), Ordering::Greater, "inverted bound");
        RigorousBound { lo, hi }
    }

    pub fn point(v: LogReal) -> RigorousBound {
        RigorousBound { lo: v.clone(), hi: v }
    }

    pub fn zero() -> RigorousBound {
        RigorousBound::point(LogReal::zero())
    }

    pub fn one(p: usize) -> RigorousBound {
        RigorousBound::point(LogReal::one(p))
    }

    pub fn from_f64(x: f64, ctx: &mut Ctx) -> RigorousBound {
        let lo = LogReal::from_f64(x, ctx, Round::Down).widen(ctx, Round::Down);
        let hi = LogReal::from_f64(x, ctx, Round::Up).widen(ctx, Round::Up);
        RigorousBound { lo, hi }
    }

    /// m * 10^pow10 with outward rounding of the decimal conversion.
    pub fn from_decimal(m: i64, pow10: i32, ctx: &mut Ctx) -> RigorousBound {
        let lo = LogReal::from_decimal(m, pow10, ctx, Round::Down).widen(ctx, Round::Down);
        let hi = LogReal::from_decimal(m, pow10, ctx, Round::Up).widen(ctx, Round::Up);
        RigorousBound { lo, hi }
    }

    pub fn from_u64(n: u64, ctx: &mut Ctx) -> RigorousBound {
        RigorousBound::from_f64(n as f64, ctx) // exact for n < 2^53
    }

    /// Exact ln-domain endpoints (useful for quantities given as logs).
    pub fn from_ln_f64(sign: i8, ln_mag: f64, ctx: &Ctx) -> RigorousBound {
        let v = LogReal::from_ln_f64(sign, ln_mag, ctx.p);
        let lo = v.widen(ctx, Round::Down);
        let hi = v.widen(ctx, Round::Up);
        RigorousBound { lo, hi }
    }

    pub fn pi(ctx: &mut Ctx) -> RigorousBound {
        let p = ctx.p;
        let a = ctx.pi(RoundingMode::Down);
        let a = a.ln(p, RoundingMode::Down, &mut ctx.cc);
        let b = ctx.pi(RoundingMode::Up);
        let b = b.ln(p, RoundingMode::Up, &mut ctx.cc);
        let lo = LogReal::from_ln(1, a).widen(ctx, Round::Down);
        let hi = LogReal::from_ln(1, b).widen(ctx, Round::Up);
        RigorousBound::new(lo, hi)
    }

    pub fn ln2(ctx: &mut Ctx) -> RigorousBound {
        let p = ctx.p;
        let a = ctx.ln2(RoundingMode::Down);
        let a = a.ln(p, RoundingMode::Down, &mut ctx.cc);
        let b = ctx.ln2(RoundingMode::Up);
        let b = b.ln(p, RoundingMode::Up, &mut ctx.cc);
        let lo = LogReal::from_ln(1, a).widen(ctx, Round::Down);
        let hi = LogReal::from_ln(1, b).widen(ctx, Round::Up);
        RigorousBound::new(lo, hi)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() <= 0 && self.hi.sign() >= 0
    }

    pub fn is_positive(&self) -> bool {
        self.lo.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.sign() < 0
    }

    /// Certified strict comparison: true only if every point of self is
    /// below every point of rhs.
    pub fn certainly_lt(&self, rhs: &RigorousBound) -> bool {
        self.hi.cmp_real(&rhs.lo) == Ordering::Less
    }

    pub fn certainly_gt(&self, rhs: &RigorousBound) -> bool {
        self.lo.cmp_real(&rhs.hi) == Ordering::Greater
    }

    fn out(lo: LogReal, hi: LogReal, ctx: &Ctx) -> RigorousBound {
        RigorousBound::new(lo.widen(ctx, Round::Down), hi.widen(ctx, Round::Up))
    }

    pub fn add(&self, rhs: &RigorousBound, ctx: &mut Ctx) -> RigorousBound {
        let lo = self.lo.add(&rhs.lo, ctx, Round::Down);
        let hi = self.hi.add(&rhs.hi, ctx, Round::Up);
        Self::out(lo, hi, ctx)
    }

    pub fn sub(&self, rhs: &RigorousBound, ctx: &mut Ctx) -> RigorousBound {
        let lo = self.lo.sub(&rhs.hi, ctx, Round::Down);
        let hi = self.hi.sub(&rhs.lo, ctx, Round::Up);
        Self::out(lo, hi, ctx)
    }

    pub fn neg(&self) -> RigorousBound {
        RigorousBound {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn mul(&self, rhs: &RigorousBound, ctx: &mut Ctx) -> RigorousBound {
        // all four endpoint products, each rounded both ways
        let mut lo: Option<LogReal> = None;
        let mut hi: Option<LogReal> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&rhs.lo, &rhs.hi] {
                let d = a.mul(b, ctx, Round::Down);
                let u = a.mul(b, ctx, Round::Up);
                lo = Some(match lo {
                    None => d.clone(),
                    Some(m) => {
                        if d.cmp_real(&m) == Ordering::Less {
                            d.clone()
                        } else {
                            m
                        }
                    }
                });
                hi = Some(match hi {
                    None => u.clone(),
                    Some(m) => {
                        if u.cmp_real(&m) == Ordering::Greater {
                            u.clone()
                        } else {
                            m
                        }
                    }
                });
            }
        }
        Self::out(lo.unwrap(), hi.unwrap(), ctx)
    }

    pub fn div(&self, rhs: &RigorousBound, ctx: &mut Ctx) -> RigorousBound {
        assert!(!rhs.contains_zero(), "division by a bound spanning zero");
        let inv_lo = LogReal::one(ctx.p).div(&rhs.hi, ctx, Round::Down);
        let inv_hi = LogReal::one(ctx.p).div(&rhs.lo, ctx, Round::Up);
        let inv = Self::out(inv_lo, inv_hi, ctx);
        self.mul(&inv, ctx)
    }

    pub fn powi(&self, n: i64, ctx: &mut Ctx) -> RigorousBound {
        if n == 0 {
            return RigorousBound::one(ctx.p);
        }
        if n < 0 {
            let inv = RigorousBound::one(ctx.p).div(self, ctx);
            return inv.powi(-n, ctx);
        }
        if n % 2 == 0 && self.contains_zero() {
            // even power of a sign-spanning interval: [0, max|endpoint|^n]
            let alo = self.lo.abs();
            let ahi = self.hi.abs();
            let m = if alo.cmp_real(&ahi) == Ordering::Greater {
                alo
            } else {
                ahi
            };
            let hi = m.powi(n, ctx, Round::Up);
            return Self::out(LogReal::zero(), hi, ctx);
        }
        let c0 = self.lo.powi(n, ctx, Round::Down);
        let c1 = self.lo.powi(n, ctx, Round::Up);
        let c2 = self.hi.powi(n, ctx, Round::Down);
        let c3 = self.hi.powi(n, ctx, Round::Up);
        let mut lo = c0.clone();
        let mut hi = c1.clone();
        for c in [c1.clone(), c2, c3] {
            if c.cmp_real(&lo) == Ordering::Less {
                lo = c.clone();
            }
            if c.cmp_real(&hi) == Ordering::Greater {
                hi = c;
            }
        }
        Self::out(lo, hi, ctx)
    }

    /// Positive base, exact scalar exponent (monotone in the base when c>0).
    pub fn pow_scalar(&self, c: &BigFloat, ctx: &mut Ctx) -> RigorousBound {
        assert!(self.is_positive(), "pow_scalar needs a positive bound");
        let (a, b) = if c.is_negative() {
            (&self.hi, &self.lo)
        } else {
            (&self.lo, &self.hi)
        };
        let lo = a.pow_scalar(c, ctx, Round::Down);
        let hi = b.pow_scalar(c, ctx, Round::Up);
        Self::out(lo, hi, ctx)
    }

    pub fn sqrt(&self, ctx: &mut Ctx) -> RigorousBound {
        assert!(self.lo.sign() >= 0, "sqrt of a bound dipping negative");
        let lo = self.lo.sqrt(ctx, Round::Down);
        let hi = self.hi.sqrt(ctx, Round::Up);
        Self::out(lo, hi, ctx)
    }

    pub fn ln(&self, ctx: &mut Ctx) -> RigorousBound {
        assert!(self.is_positive(), "ln of a bound touching zero");
        let lo = self.lo.ln(ctx, Round::Down);
        let hi = self.hi.ln(ctx, Round::Up);
        Self::out(lo, hi, ctx)
    }

    pub fn exp(&self, ctx: &mut Ctx) -> RigorousBound {
        let lo = self.lo.exp(ctx, Round::Down);
        let hi = self.hi.exp(ctx, Round::Up);
        Self::out(lo, hi, ctx)
    }

    /// Union hull of two bounds.
    pub fn hull(&self, rhs: &RigorousBound) -> RigorousBound {
        let lo = if self.lo.cmp_real(&rhs.lo) == Ordering::Less {
            self.lo.clone()
        } else {
            rhs.lo.clone()
        };
        let hi = if self.hi.cmp_real(&rhs.hi) == Ordering::Greater {
            self.hi.clone()
        } else {
            rhs.hi.clone()
        };
        RigorousBound { lo, hi }
    }

    /// Midpoint estimate in f64, for reporting only.
    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.value_f64() + self.hi.value_f64())
    }

    pub fn lo_ln_f64(&self) -> f64 {
        self.lo.ln_mag_f64()
    }

    pub fn hi_ln_f64(&self) -> f64 {
        self.hi.ln_mag_f64()
    }
}
