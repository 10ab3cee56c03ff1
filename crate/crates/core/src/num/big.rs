//! Thin helpers over astro-float's BigFloat: f64 round-trips, exact decimal
//! construction, and 1-ulp outward widening used by the enclosure arithmetic.

use astro_float::{BigFloat, Consts, RoundingMode, Sign, WORD_BIT_SIZE};

/// Shared precision + cached transcendental constants. One per thread of work;
/// everything that rounds takes `&mut Ctx`.
pub struct Ctx {
    pub p: usize,
    pub cc: Consts,
}

impl Ctx {
    pub fn new(p: usize) -> Ctx {
        assert!(p >= 128, "precision below the 128-bit floor");
        Ctx {
            p,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn pi(&mut self, rm: RoundingMode) -> BigFloat {
        self.cc.pi(self.p, rm)
    }

    pub fn ln2(&mut self, rm: RoundingMode) -> BigFloat {
        self.cc.ln_2(self.p, rm)
    }

    pub fn ln10(&mut self, rm: RoundingMode) -> BigFloat {
        self.cc.ln_10(self.p, rm)
    }
}

pub fn bf(x: f64, p: usize) -> BigFloat {
    BigFloat::from_f64(x, p)
}

/// Nearest-f64 of a finite BigFloat. Top 128 mantissa bits suffice.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    let (m, _p, s, e, _) = x.as_raw_parts().expect("finite raw parts");
    let n = m.len();
    let w = WORD_BIT_SIZE as i32;
    let hi = m[n - 1] as f64;
    let lo = if n >= 2 { m[n - 2] as f64 } else { 0.0 };
    // value = (hi*2^-w + lo*2^-2w) * 2^e
    let frac = hi * (2f64).powi(-w) + lo * (2f64).powi(-2 * w);
    let v = if (-1000..=1000).contains(&e) {
        frac * (2f64).powi(e)
    } else if e > 1000 {
        // split so legitimate values near 2^1024 survive; true overflow
        // still saturates to inf
        frac * (2f64).powi(1000) * (2f64).powi((e - 1000).min(2000))
    } else {
        // subnormal territory; split the scaling to avoid premature underflow
        frac * (2f64).powi(-1000) * (2f64).powi((e + 1000).max(-2000))
    };
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

/// One unit in the last place of `x` at precision `p` (positive number).
fn ulp(x: &BigFloat, p: usize) -> BigFloat {
    let e = match x.exponent() {
        Some(e) if !x.is_zero() => e,
        _ => 1, // zero or oddball: ulp of 1
    };
    let mut u = BigFloat::from_word(1, p);
    u.set_exponent(e - p as i32 + 1); // 0.5 * 2^(e-p+1) = 2^(e-p)
    u
}

/// `x` moved one ulp toward +inf.
pub fn widen_up(x: &BigFloat, p: usize) -> BigFloat {
    if x.is_inf_pos() || x.is_nan() {
        return x.clone();
    }
    let u = ulp(x, p);
    x.add(&u, p, RoundingMode::Up)
}

/// `x` moved one ulp toward -inf.
pub fn widen_down(x: &BigFloat, p: usize) -> BigFloat {
    if x.is_inf_neg() || x.is_nan() {
        return x.clone();
    }
    let u = ulp(x, p);
    x.sub(&u, p, RoundingMode::Down)
}

/// Exact BigFloat for m * 10^pow10 (|pow10| modest). Decimal literals from the
/// published tables are reconstructed this way so nothing is lost to parsing.
pub fn from_decimal(m: i64, pow10: i32, p: usize, rm: RoundingMode) -> BigFloat {
    let pe = pow10.unsigned_abs() as usize;
    // 10^pe is exact at a generous working precision
    let wp = p + 64 + 4 * pe;
    let ten = BigFloat::from_u64(10, wp);
    let scale = ten.powi(pe, wp, RoundingMode::None);
    let mm = BigFloat::from_i64(m, wp);
    if pow10 >= 0 {
        mm.mul(&scale, p, rm)
    } else {
        mm.div(&scale, p, rm)
    }
}

pub fn cmp_bf(a: &BigFloat, b: &BigFloat) -> std::cmp::Ordering {
    match a.cmp(b) {
        Some(v) if v < 0 => std::cmp::Ordering::Less,
        Some(v) if v > 0 => std::cmp::Ordering::Greater,
        Some(_) => std::cmp::Ordering::Equal,
        None => panic!("NaN in comparison"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_roundtrip() {
        let p = 192;
        for &x in &[1.0, -2.5, 30.76, 1e300, -1e-300, 0.1, 12345.6789] {
            let b = bf(x, p);
            assert_eq!(to_f64(&b), x);
        }
        assert_eq!(to_f64(&bf(0.0, p)), 0.0);
    }

    #[test]
    fn decimal_literals_are_exact() {
        let p = 192;
        // 1.44161e11 = 144161 * 10^6 is an exact integer
        let a = from_decimal(144161, 6, p, RoundingMode::ToEven);
        assert_eq!(to_f64(&a), 1.44161e11);
        let b = from_decimal(64286, -2, p, RoundingMode::ToEven);
        assert!((to_f64(&b) - 642.86).abs() < 1e-12);
        // directed construction brackets the true decimal
        let lo = from_decimal(15453, -4, p, RoundingMode::Down);
        let hi = from_decimal(15453, -4, p, RoundingMode::Up);
        assert!(cmp_bf(&lo, &hi) != std::cmp::Ordering::Greater);
        assert!(to_f64(&lo) <= 1.5453 && 1.5453 <= to_f64(&hi));
    }

    #[test]
    fn widening_moves_outward() {
        let p = 160;
        let x = bf(1.0, p);
        let up = widen_up(&x, p);
        let dn = widen_down(&x, p);
        assert_eq!(cmp_bf(&dn, &x), std::cmp::Ordering::Less);
        assert_eq!(cmp_bf(&x, &up), std::cmp::Ordering::Less);
        // the step is tiny: 2^(1-160)
        assert!((to_f64(&up) - 1.0).abs() < 1e-40);
    }
}
