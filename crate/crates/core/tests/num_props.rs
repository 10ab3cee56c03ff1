//! Randomized cross-checks of the log-domain arithmetic against plain
//! value-domain arithmetic carried out at 320 bits.

use astro_float::{BigFloat, Consts, RoundingMode};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use std::cell::RefCell;
use std::cmp::Ordering;

use zetagaps::num::big::{bf, to_f64, Ctx};
use zetagaps::num::{cin, LogReal, RigorousBound, Round};

const REF_P: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static REF_CC: RefCell<Consts> = RefCell::new(Consts::new().unwrap());
    static CTX: RefCell<Ctx> = RefCell::new(Ctx::new(192));
}

// reused caches; fresh Consts per case would recompute pi/ln2 every time
fn with_ctx<R>(f: impl FnOnce(&mut Ctx, &mut Consts) -> R) -> R {
    CTX.with(|ctx| {
        REF_CC.with(|rc| f(&mut ctx.borrow_mut(), &mut rc.borrow_mut()))
    })
}

fn as_value(sign: i8, ln_mag: f64, cc: &mut Consts) -> BigFloat {
    let v = bf(ln_mag, REF_P).exp(REF_P, RM, cc);
    if sign < 0 {
        v.neg()
    } else {
        v
    }
}

fn ref_ln_mag(v: &BigFloat, cc: &mut Consts) -> f64 {
    to_f64(&v.abs().ln(REF_P, RM, cc))
}

fn sign_of(v: &BigFloat) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

fn ref_logreal(v: &BigFloat, cc: &mut Consts) -> LogReal {
    if v.is_zero() {
        LogReal::zero()
    } else {
        LogReal::from_ln(sign_of(v), v.abs().ln(REF_P, RM, cc))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    // add/mul agree with 320-bit value-domain arithmetic to >= 25 digits
    #[test]
    fn logreal_add_mul_match_value_domain(
        sa in prop::sample::select(vec![-1i8, 1]),
        sb in prop::sample::select(vec![-1i8, 1]),
        la in -600.0f64..600.0,
        lb in -600.0f64..600.0,
    ) {
        with_ctx(|c, cc| -> Result<(), TestCaseError> {
            let a = LogReal::from_ln_f64(sa, la, c.p);
            let b = LogReal::from_ln_f64(sb, lb, c.p);
            let va = as_value(sa, la, cc);
            let vb = as_value(sb, lb, cc);

            let m = a.mul(&b, c, Round::Near);
            let vm = va.mul(&vb, REF_P, RM);
            prop_assert_eq!(m.sign(), sign_of(&vm));
            let want = ref_ln_mag(&vm, cc);
            let got = m.ln_mag_f64();
            prop_assert!((got - want).abs() <= 1e-25 * want.abs().max(1.0),
                "mul ln_mag {} vs {}", got, want);

            let s = a.add(&b, c, Round::Near);
            let vs = va.add(&vb, REF_P, RM);
            // near-total cancellation legitimately scrambles a Near
            // comparison; the directed test below covers that regime
            let cancel = if vs.is_zero() { 0.0 } else { ref_ln_mag(&vs, cc) - la.max(lb) };
            if vs.is_zero() || cancel > -80.0 {
                prop_assert_eq!(s.sign(), sign_of(&vs));
                if !vs.is_zero() {
                    let want = ref_ln_mag(&vs, cc);
                    let got = s.ln_mag_f64();
                    prop_assert!((got - want).abs() <= 1e-25 * want.abs().max(1.0),
                        "add ln_mag {} vs {}", got, want);
                }
            }
            Ok(())
        })?;
    }

    // directed rounding brackets the value-domain result even under
    // cancellation
    #[test]
    fn logreal_directed_add_brackets_reference(
        sa in prop::sample::select(vec![-1i8, 1]),
        sb in prop::sample::select(vec![-1i8, 1]),
        la in -50.0f64..50.0,
        lb in -50.0f64..50.0,
    ) {
        with_ctx(|c, cc| -> Result<(), TestCaseError> {
            let a = LogReal::from_ln_f64(sa, la, c.p);
            let b = LogReal::from_ln_f64(sb, lb, c.p);
            let dn = a.add(&b, c, Round::Down).widen(c, Round::Down);
            let up = a.add(&b, c, Round::Up).widen(c, Round::Up);
            let va = as_value(sa, la, cc);
            let vb = as_value(sb, lb, cc);
            let refv = ref_logreal(&va.add(&vb, REF_P, RM), cc);
            prop_assert_ne!(dn.cmp_real(&refv), Ordering::Greater);
            prop_assert_ne!(refv.cmp_real(&up), Ordering::Greater);
            Ok(())
        })?;
    }

    // a composite expression's enclosure contains the 320-bit value
    #[test]
    fn bound_expression_is_conservative(
        a in -40.0f64..40.0,
        b in -40.0f64..40.0,
        c_in in -40.0f64..40.0,
        d in 0.1f64..40.0,
    ) {
        with_ctx(|c, cc| -> Result<(), TestCaseError> {
            let ba = RigorousBound::from_f64(a, c);
            let bb = RigorousBound::from_f64(b, c);
            let bc = RigorousBound::from_f64(c_in, c);
            let bd = RigorousBound::from_f64(d, c);
            // ((a+b)*c - d)^2 / d + sqrt(d)
            let e = ba.add(&bb, c)
                .mul(&bc, c)
                .sub(&bd, c)
                .powi(2, c)
                .div(&bd, c)
                .add(&bd.sqrt(c), c);

            let va = bf(a, REF_P);
            let vb = bf(b, REF_P);
            let vc = bf(c_in, REF_P);
            let vd = bf(d, REF_P);
            let inner = va.add(&vb, REF_P, RM).mul(&vc, REF_P, RM).sub(&vd, REF_P, RM);
            let vref = inner
                .mul(&inner, REF_P, RM)
                .div(&vd, REF_P, RM)
                .add(&vd.sqrt(REF_P, RM), REF_P, RM);
            let refv = ref_logreal(&vref, cc);
            prop_assert_ne!(e.lo.cmp_real(&refv), Ordering::Greater);
            prop_assert_ne!(refv.cmp_real(&e.hi), Ordering::Greater);
            Ok(())
        })?;
    }

    // cin is nonnegative, vanishes only at 0, nondecreasing on [0, pi]
    #[test]
    fn cin_monotone_on_nonnegative_integrand_range(
        z1 in 0.0f64..std::f64::consts::PI,
        z2 in 0.0f64..std::f64::consts::PI,
    ) {
        let (lo, hi) = if z1 <= z2 { (z1, z2) } else { (z2, z1) };
        prop_assert!(cin(lo) <= cin(hi) + 1e-15);
        if lo > 0.0 {
            prop_assert!(cin(lo) > 0.0);
        }
    }
}
