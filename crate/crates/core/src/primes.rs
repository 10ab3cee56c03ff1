//! Prime generation and the weighted prime sums the argument bounds rest
//! on: smoothed von Mangoldt weights, (1-cos(h log p))/p sums against
//! log(h log X), the log p/p envelope, and the Dirichlet-series segment
//! r(x,t).

use std::io::{self, Read, Write};

use num_complex::Complex64;

use crate::error::PrimeError;
use crate::num::Kahan;

const SIEVE_CAP: u64 = 1_000_000_000;
const SEGMENT: usize = 1 << 20;
const CACHE_MAGIC: &[u8; 8] = b"PRIMTBL1";

pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Segmented Eratosthenes over odd numbers.
    pub fn sieve(limit: u64) -> Result<PrimeTable, PrimeError> {
        if limit > SIEVE_CAP {
            return Err(PrimeError::LimitTooLarge { limit });
        }
        assert!(limit >= 2, "sieve limit below 2");
        let mut primes = vec![2u64];
        // base odd primes up to sqrt(limit), simple sieve
        let root = (limit as f64).sqrt() as u64 + 1;
        let base_len = (root as usize) / 2 + 1;
        let mut base = vec![true; base_len]; // index i <-> 2i+1
        base[0] = false; // 1
        let mut base_primes = Vec::new();
        for i in 1..base_len {
            if base[i] {
                let p = 2 * i as u64 + 1;
                base_primes.push(p);
                let mut j = (p * p - 1) / 2;
                while (j as usize) < base_len {
                    base[j as usize] = false;
                    j += p;
                }
            }
        }
        // segments of odd numbers
        let mut seg = vec![true; SEGMENT];
        let mut low = 3u64; // first odd of the segment
        while low <= limit {
            let high = (low + 2 * SEGMENT as u64 - 2).min(limit | 1);
            for s in seg.iter_mut() {
                *s = true;
            }
            for &p in &base_primes {
                if p * p > high {
                    break;
                }
                let mut start = p * p;
                if start < low {
                    let k = (low - start).div_ceil(2 * p);
                    start += 2 * p * k;
                }
                let mut j = ((start - low) / 2) as usize;
                while j < SEGMENT && low + 2 * j as u64 <= high {
                    seg[j] = false;
                    j += p as usize;
                }
            }
            for (j, &alive) in seg.iter().enumerate() {
                let n = low + 2 * j as u64;
                if n > limit {
                    break;
                }
                if alive && n >= 3 {
                    primes.push(n);
                }
            }
            low = high + 2;
        }
        if limit < 3 {
            primes.truncate(1);
        }
        Ok(PrimeTable { limit, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Slice of primes p <= x; errors if x exceeds the sieved range.
    pub fn primes_upto(&self, x: f64) -> Result<&[u64], PrimeError> {
        if x > self.limit as f64 {
            return Err(PrimeError::TableTooSmall {
                have: self.limit,
                need: x.ceil() as u64,
            });
        }
        let cut = self.primes.partition_point(|&p| p as f64 <= x);
        Ok(&self.primes[..cut])
    }

    pub fn is_prime(&self, n: u64) -> bool {
        debug_assert!(n <= self.limit);
        self.primes.binary_search(&n).is_ok()
    }

    pub fn write_cache<W: Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        w.write_all(&(self.primes.len() as u64).to_le_bytes())?;
        for &p in &self.primes {
            w.write_all(&p.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_cache<R: Read>(r: &mut R) -> io::Result<PrimeTable> {
        let mut hdr = [0u8; 8];
        r.read_exact(&mut hdr)?;
        if &hdr != CACHE_MAGIC {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "bad magic"));
        }
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        let limit = u64::from_le_bytes(buf);
        r.read_exact(&mut buf)?;
        let count = u64::from_le_bytes(buf) as usize;
        let mut primes = Vec::with_capacity(count);
        for _ in 0..count {
            r.read_exact(&mut buf)?;
            primes.push(u64::from_le_bytes(buf));
        }
        Ok(PrimeTable { limit, primes })
    }
}

/// (p, r) with n = p^r, or None if n is not a prime power. Table must
/// reach sqrt(n) (and n itself for the r = 1 lookup).
pub fn prime_power(n: u64, table: &PrimeTable) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    if table.is_prime(n) {
        return Some((n, 1));
    }
    let root = (n as f64).sqrt() as u64 + 1;
    for &p in table.primes.iter().take_while(|&&p| p <= root) {
        if n % p == 0 {
            let mut m = n;
            let mut r = 0u32;
            while m % p == 0 {
                m /= p;
                r += 1;
            }
            return if m == 1 { Some((p, r)) } else { None };
        }
    }
    None
}

/// Von Mangoldt Lambda(n): log p on prime powers p^r, else 0.
pub fn von_mangoldt(n: u64, table: &PrimeTable) -> f64 {
    match prime_power(n, table) {
        Some((p, _)) => (p as f64).ln(),
        None => 0.0,
    }
}

/// The smoothing factor multiplying Lambda(n), as a function of real n:
/// 1 up to x, a quadratic-in-log taper on (x, x^2], its tail on (x^2, x^3],
/// zero beyond. Continuous at both seams.
pub fn lambda_weight(n: f64, x: f64) -> f64 {
    assert!(n >= 2.0 && x >= 2.0);
    let lx = x.ln();
    let ln = n.ln();
    if n <= x {
        1.0
    } else if n <= x * x {
        let a = 3.0 * lx - ln;
        let b = 2.0 * lx - ln;
        (a * a - 2.0 * b * b) / (2.0 * lx * lx)
    } else if n <= x * x * x {
        let a = 3.0 * lx - ln;
        a * a / (2.0 * lx * lx)
    } else {
        0.0
    }
}

/// Truncated-support von Mangoldt weight Lambda_x(n).
pub fn lambda_x(n: u64, x: f64, table: &PrimeTable) -> f64 {
    let lam = von_mangoldt(n, table);
    if lam == 0.0 {
        return 0.0;
    }
    lam * lambda_weight(n as f64, x)
}

/// Sum over p <= X of (1 - cos(h log p))/p. Termwise nonnegative; the
/// 1-cos is computed as 2 sin^2 to keep tiny h exact.
pub fn prime_cos_sum(x_cap: f64, h: f64, table: &PrimeTable) -> Result<f64, PrimeError> {
    assert!((0.0..=1.0).contains(&h), "h outside [0,1]");
    let primes = table.primes_upto(x_cap)?;
    let mut acc = Kahan::new();
    for &p in primes {
        let s = (0.5 * h * (p as f64).ln()).sin();
        acc.add(2.0 * s * s / p as f64);
    }
    Ok(acc.value())
}

/// Sum over p <= X of log p / p; panics if the classical log X envelope
/// ever failed (it never does; margin > 0.34 across the sieve range).
pub fn weighted_logp_sum(x_cap: f64, table: &PrimeTable) -> Result<f64, PrimeError> {
    let primes = table.primes_upto(x_cap)?;
    let mut acc = Kahan::new();
    for &p in primes {
        let pf = p as f64;
        acc.add(pf.ln() / pf);
        assert!(
            acc.value() <= pf.ln(),
            "log p/p envelope violated at p = {p}"
        );
    }
    let v = acc.value();
    assert!(v <= x_cap.ln() || primes.is_empty());
    Ok(v)
}

/// Verdict of one (X, h) cell of the cosine-sum envelope: for h large
/// enough the sum tracks log(h log X) within 13.88 + 3/log^2 X; below the
/// log 2/log X knee it is capped by 2.02 + 3/log^2 X.
#[derive(Clone, Copy, Debug)]
pub struct CosSumBand {
    pub sum: f64,
    pub deviation: f64,
    pub cap: f64,
    pub holds: bool,
}

pub fn cos_sum_band(x_cap: f64, h: f64, table: &PrimeTable) -> Result<CosSumBand, PrimeError> {
    let sum = prime_cos_sum(x_cap, h, table)?;
    let lx = x_cap.ln();
    let knee = 2f64.ln() / lx;
    let (deviation, cap) = if h >= knee {
        (((h * lx).ln() - sum).abs(), 13.88 + 3.0 / (lx * lx))
    } else {
        (sum, 2.02 + 3.0 / (lx * lx))
    };
    Ok(CosSumBand {
        sum,
        deviation,
        cap,
        holds: deviation <= cap,
    })
}

/// r(x,t): sum over prime powers n <= x^3 of Lambda_x(n) n^(-sigma - it).
pub fn r_xt(x: f64, t: f64, sigma: f64, table: &PrimeTable) -> Result<Complex64, PrimeError> {
    assert!(x >= 2.0 && sigma >= 0.5);
    let x3 = x * x * x;
    if x3 > table.limit as f64 {
        return Err(PrimeError::TableTooSmall {
            have: table.limit,
            need: x3.ceil() as u64,
        });
    }
    let mut re = Kahan::new();
    let mut im = Kahan::new();
    let mut push_term = |p: u64, r: u32| {
        let lp = (p as f64).ln();
        let ln_n = r as f64 * lp;
        let n = ln_n.exp();
        let w = lp * lambda_weight(n, x);
        if w == 0.0 {
            return;
        }
        let mag = w * (-sigma * ln_n).exp();
        let phase = t * ln_n;
        re.add(mag * phase.cos());
        im.add(-mag * phase.sin());
    };
    for &p in table.primes_upto(x3)? {
        push_term(p, 1);
    }
    // higher powers: p <= x^(3/2)
    for &p in table.primes_upto(x.powf(1.5))? {
        let mut r = 2u32;
        while (r as f64) * (p as f64).ln() <= x3.ln() + 1e-12 {
            push_term(p, r);
            r += 1;
        }
    }
    Ok(Complex64::new(re.value(), im.value()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_1e6() -> PrimeTable {
        PrimeTable::sieve(1_000_000).unwrap()
    }

    #[test]
    fn sieve_small_lists() {
        assert_eq!(PrimeTable::sieve(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(PrimeTable::sieve(2).unwrap().primes(), &[2]);
        assert_eq!(PrimeTable::sieve(3).unwrap().primes(), &[2, 3]);
        assert_eq!(
            PrimeTable::sieve(30).unwrap().primes(),
            &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        );
    }

    #[test]
    fn sieve_against_naive_and_classic_count() {
        let t = table_1e6();
        assert_eq!(t.primes().len(), 78498);
        // naive re-sieve of a small window
        let naive: Vec<u64> = (2..=2000u64)
            .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(t.primes_upto(2000.0).unwrap(), &naive[..]);
    }

    #[test]
    fn sieve_cap_enforced() {
        assert!(matches!(
            PrimeTable::sieve(SIEVE_CAP + 1),
            Err(PrimeError::LimitTooLarge { .. })
        ));
    }

    #[test]
    fn table_too_small_is_reported() {
        let t = PrimeTable::sieve(100).unwrap();
        assert!(matches!(
            prime_cos_sum(101.0, 0.5, &t),
            Err(PrimeError::TableTooSmall { .. })
        ));
    }

    #[test]
    fn prime_power_decomposition() {
        let t = PrimeTable::sieve(10_000).unwrap();
        assert_eq!(prime_power(4, &t), Some((2, 2)));
        assert_eq!(prime_power(27, &t), Some((3, 3)));
        assert_eq!(prime_power(97, &t), Some((97, 1)));
        assert_eq!(prime_power(6, &t), None);
        assert_eq!(prime_power(100, &t), None);
        assert_eq!(prime_power(1, &t), None);
    }

    #[test]
    fn lambda_x_branches() {
        let t = PrimeTable::sieve(10_000).unwrap();
        let x = 10.0;
        // n <= x keeps the full weight
        assert!((lambda_x(4, x, &t) - 2f64.ln()).abs() < 1e-15);
        assert!((lambda_x(7, x, &t) - 7f64.ln()).abs() < 1e-15);
        // non prime powers vanish
        assert_eq!(lambda_x(6, x, &t), 0.0);
        // beyond x^3 the support ends
        assert_eq!(lambda_x(1009, x, &t), 0.0);
        // taper region weights sit strictly inside (0, 1)
        let w = lambda_x(101, x, &t) / 101f64.ln();
        assert!(w > 0.0 && w < 1.0);
    }

    #[test]
    fn weight_is_continuous_at_the_seams() {
        for x in [10.0, 123.4, 9999.0] {
            for seam in [x, x * x] {
                let a = lambda_weight(seam * (1.0 - 1e-11), x);
                let b = lambda_weight(seam * (1.0 + 1e-11), x);
                assert!((a - b).abs() < 1e-9, "x={x} seam={seam}: {a} vs {b}");
            }
            assert_eq!(lambda_weight(x * x * x + 1.0, x), 0.0);
            // seam values themselves: weight 1 at x, 1/2 at x^2
            assert!((lambda_weight(x, x) - 1.0).abs() < 1e-12);
            assert!((lambda_weight(x * x, x) - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn lambda_x_never_exceeds_lambda() {
        use rand::{Rng, SeedableRng};
        let t = PrimeTable::sieve(200_000).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let n = rng.gen_range(2u64..200_000);
            let x = rng.gen_range(2.0f64..500.0);
            let lam = von_mangoldt(n, &t);
            let lx = lambda_x(n, x, &t);
            assert!(lx <= lam + 1e-12, "n={n} x={x}: {lx} > {lam}");
            assert!(lx >= -1e-12);
        }
    }

    #[test]
    fn cos_sum_matches_frozen_reference() {
        let t = table_1e6();
        // 40-digit-arithmetic reference values
        let s1 = prime_cos_sum(1e6, 1.0, &t).unwrap();
        assert!((s1 - 2.6472501938055144).abs() < 1e-11, "{s1}");
        let lx = 1e6f64.ln();
        let h2 = 2f64.ln() / (2.0 * lx);
        let s2 = prime_cos_sum(1e6, h2, &t).unwrap();
        assert!((s2 - 0.029078897653241013).abs() < 1e-12, "{s2}");
        assert_eq!(prime_cos_sum(1e6, 0.0, &t).unwrap(), 0.0);
    }

    #[test]
    fn cos_sum_band_verdicts() {
        let t = table_1e6();
        let b1 = cos_sum_band(1e6, 1.0, &t).unwrap();
        assert!(b1.holds);
        // true deviation is tiny here: log(log 1e6) = 2.6258 vs sum 2.6473
        assert!(b1.deviation < 0.1);
        let lx = 1e6f64.ln();
        let b2 = cos_sum_band(1e6, 2f64.ln() / (2.0 * lx), &t).unwrap();
        assert!(b2.holds && b2.deviation < 0.05);
    }

    #[test]
    fn cos_sum_band_grid_holds_through_1e6() {
        let t = table_1e6();
        for x_cap in [1e3f64, 1e4, 1e5, 1e6] {
            let knee = 2f64.ln() / x_cap.ln();
            for j in 0..20 {
                let h = knee + j as f64 / 20.0;
                if h > 1.0 {
                    break;
                }
                let b = cos_sum_band(x_cap, h, &t).unwrap();
                assert!(b.holds, "X={x_cap} h={h}: dev {} cap {}", b.deviation, b.cap);
            }
            // below-knee cells
            for h in [0.0, knee / 2.0, knee * 0.99] {
                assert!(cos_sum_band(x_cap, h, &t).unwrap().holds);
            }
        }
    }

    #[test]
    fn logp_sum_frozen_values_and_envelope() {
        let t = table_1e6();
        let s10 = weighted_logp_sum(10.0, &t).unwrap();
        assert!((s10 - 1.312652433140255).abs() < 1e-13, "{s10}");
        let s2 = weighted_logp_sum(2.0, &t).unwrap();
        assert!((s2 - 0.5 * 2f64.ln()).abs() < 1e-15);
        let s = weighted_logp_sum(1e6, &t).unwrap();
        assert!((s - 12.483585396239194).abs() < 1e-10, "{s}");
        assert!(s <= 1e6f64.ln());
    }

    #[test]
    fn summation_order_is_immaterial() {
        let t = table_1e6();
        let fwd: Kahan = t
            .primes()
            .iter()
            .map(|&p| (1.0 - (0.37 * (p as f64).ln()).cos()) / p as f64)
            .collect();
        let rev: Kahan = t
            .primes()
            .iter()
            .rev()
            .map(|&p| (1.0 - (0.37 * (p as f64).ln()).cos()) / p as f64)
            .collect();
        let rel = ((fwd.value() - rev.value()) / fwd.value()).abs();
        assert!(rel < 1e-11, "reversal moved the sum by {rel}");
    }

    #[test]
    fn r_xt_matches_naive_double_loop() {
        let t = PrimeTable::sieve(10_000).unwrap();
        let x = 10.0f64;
        let tt = 50.0;
        let sigma = 0.5 + 2.0 / x.ln();
        let got = r_xt(x, tt, sigma, &t).unwrap();
        // frozen 40-digit reference
        assert!((got.re - -0.419751466084405).abs() < 1e-10, "{}", got.re);
        assert!((got.im - 0.398409284810444).abs() < 1e-10, "{}", got.im);
        // independent naive loop over every integer in the support
        let mut nre = 0.0;
        let mut nim = 0.0;
        for n in 2..=1000u64 {
            let w = lambda_x(n, x, &t);
            if w == 0.0 {
                continue;
            }
            let nf = n as f64;
            let mag = w * nf.powf(-sigma);
            nre += mag * (tt * nf.ln()).cos();
            nim -= mag * (tt * nf.ln()).sin();
        }
        assert!((got.re - nre).abs() < 1e-10 && (got.im - nim).abs() < 1e-10);
        // triangle inequality cap
        let cap: f64 = (2..=1000u64)
            .map(|n| von_mangoldt(n, &t) / (n as f64).sqrt())
            .sum();
        assert!(got.norm() <= cap);
        // t = 0 collapses to a positive real sum
        let at0 = r_xt(x, 0.0, sigma, &t).unwrap();
        assert!(at0.re > 0.0 && at0.im.abs() < 1e-12);
    }

    #[test]
    fn cache_round_trip() {
        let t = PrimeTable::sieve(1000).unwrap();
        let mut buf = Vec::new();
        t.write_cache(&mut buf).unwrap();
        let back = PrimeTable::read_cache(&mut buf.as_slice()).unwrap();
        assert_eq!(back.limit(), 1000);
        assert_eq!(back.primes(), t.primes());
        // corrupted magic is rejected
        buf[0] ^= 0xff;
        assert!(PrimeTable::read_cache(&mut buf.as_slice()).is_err());
    }
}
