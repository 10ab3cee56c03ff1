//! Lists of isolated ordinates and the statistics taken over them: gap
//! distributions, window discrepancies, zero-free measure on [T, 2T],
//! gap-square sums against the counting-function cap, and the local
//! exponent window used by the prime-sum remainders.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::io;

use serde::Serialize;

use crate::constants::BaseConstants;
use crate::error::{ZerosError, ZetaError};
use crate::num::{Ctx, Kahan, LogReal, RigorousBound, Round};
use crate::zeta::{scan_ordinates, ZetaEngine, HARDY_T_MAX};

/// Ordinates of the zeros on the critical line inside [t_min, t_max],
/// each with the bisection radius that encloses it.
#[derive(Clone, Debug)]
pub struct ZeroList {
    pub t_min: f64,
    pub t_max: f64,
    /// (ordinate, enclosure radius), strictly ascending.
    pub ordinates: Vec<(f64, f64)>,
    /// True when the list length was checked against the counting function
    /// at both endpoints.
    pub count_certified: bool,
}

impl ZeroList {
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn gammas(&self) -> impl Iterator<Item = f64> + '_ {
        self.ordinates.iter().map(|&(g, _)| g)
    }

    /// Distance to the closest listed ordinate, None for an empty list.
    pub fn nearest_dist(&self, t: f64) -> Option<f64> {
        let k = self.ordinates.partition_point(|&(g, _)| g <= t);
        let mut best: Option<f64> = None;
        if k > 0 {
            best = Some(t - self.ordinates[k - 1].0);
        }
        if k < self.ordinates.len() {
            let d = self.ordinates[k].0 - t;
            if best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
        best
    }

    /// Number of ordinates in the half-open window (lo, hi].
    fn count_in(&self, lo: f64, hi: f64) -> usize {
        let a = self.ordinates.partition_point(|&(g, _)| g <= lo);
        let b = self.ordinates.partition_point(|&(g, _)| g <= hi);
        b - a
    }

    /// Writes `index,gamma,radius` rows; floats print with enough digits to
    /// round-trip exactly.
    pub fn write_csv<W: io::Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "index,gamma,radius")?;
        for (i, &(g, r)) in self.ordinates.iter().enumerate() {
            writeln!(w, "{},{},{}", i + 1, g, r)?;
        }
        Ok(())
    }

    /// Reads a table produced by write_csv. Imported lists are never
    /// count-certified; t_min/t_max shrink to the data.
    pub fn read_csv<R: io::BufRead>(r: R) -> Result<ZeroList, ZerosError> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| ZerosError::Csv("empty file".into()))?
            .map_err(|e| ZerosError::Csv(e.to_string()))?;
        if header.trim() != "index,gamma,radius" {
            return Err(ZerosError::Csv(format!("unexpected header {header:?}")));
        }
        let mut ordinates: Vec<(f64, f64)> = Vec::new();
        for (row, line) in lines.enumerate() {
            let line = line.map_err(|e| ZerosError::Csv(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.trim().split(',');
            let mut field = |name: &str| {
                it.next()
                    .ok_or_else(|| ZerosError::Csv(format!("row {}: missing {name}", row + 2)))
            };
            let idx: usize = field("index")?
                .parse()
                .map_err(|_| ZerosError::Csv(format!("row {}: bad index", row + 2)))?;
            let g: f64 = field("gamma")?
                .parse()
                .map_err(|_| ZerosError::Csv(format!("row {}: bad gamma", row + 2)))?;
            let rad: f64 = field("radius")?
                .parse()
                .map_err(|_| ZerosError::Csv(format!("row {}: bad radius", row + 2)))?;
            if idx != row + 1 {
                return Err(ZerosError::Csv(format!(
                    "row {}: index {idx} out of order",
                    row + 2
                )));
            }
            if !g.is_finite() || !(rad >= 0.0) || !rad.is_finite() {
                return Err(ZerosError::Csv(format!("row {}: non-finite entry", row + 2)));
            }
            if let Some(&(prev, _)) = ordinates.last() {
                if g <= prev {
                    return Err(ZerosError::Csv(format!(
                        "row {}: ordinates not ascending",
                        row + 2
                    )));
                }
            }
            ordinates.push((g, rad));
        }
        let (t_min, t_max) = match (ordinates.first(), ordinates.last()) {
            (Some(&(a, _)), Some(&(b, _))) => (a, b),
            _ => (0.0, 0.0),
        };
        Ok(ZeroList {
            t_min,
            t_max,
            ordinates,
            count_certified: false,
        })
    }
}

/// Locates every ordinate in [t_min, t_max] by an independent sign-change
/// scan, then checks the length against the counting function at both
/// endpoints. On a mismatch the scan reruns once at double density before
/// giving up.
pub fn isolate_zeros(
    engine: &mut ZetaEngine,
    t_min: f64,
    t_max: f64,
    radius: f64,
) -> Result<ZeroList, ZerosError> {
    if !(10.0..HARDY_T_MAX).contains(&t_min) || !(t_min < t_max) || t_max > HARDY_T_MAX {
        return Err(ZerosError::OutOfRange(format!(
            "[{t_min}, {t_max}] not inside [10, {HARDY_T_MAX:e}]"
        )));
    }
    let lo = engine.count_n(t_min)?;
    let hi = engine.count_n(t_max)?;
    let expected = hi.count - lo.count;
    let mut found = scan_ordinates(t_min, t_max, 1.0, radius)?;
    if found.len() as u64 != expected {
        found = scan_ordinates(t_min, t_max, 0.5, radius)?;
        if found.len() as u64 != expected {
            return Err(ZerosError::CountMismatch {
                a: t_min,
                b: t_max,
                expected,
                found: found.len() as u64,
            });
        }
    }
    Ok(ZeroList {
        t_min,
        t_max,
        ordinates: found.into_iter().map(|g| (g, radius)).collect(),
        count_certified: lo.certified && hi.certified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GapStats {
    /// Number of consecutive gaps, one less than the list length.
    pub count: usize,
    pub mean_gap: f64,
    pub max_gap: f64,
    /// Index into the list of the left endpoint of the widest gap.
    pub max_gap_index: usize,
    /// Mean of gap * log(gamma / 2 pi) / 2 pi over left endpoints.
    pub mean_normalized: f64,
    /// (alpha, fraction of gaps below 2 pi alpha / log t_max), in the
    /// caller's grid order.
    pub d_of_alpha: Vec<(f64, f64)>,
}

pub fn gap_statistics(zl: &ZeroList, alpha_grid: &[f64]) -> Result<GapStats, ZerosError> {
    let n = zl.ordinates.len();
    if n < 2 {
        return Err(ZerosError::TooFewZeros { need: 2, have: n });
    }
    let gaps: Vec<f64> = zl
        .ordinates
        .windows(2)
        .map(|w| w[1].0 - w[0].0)
        .collect();
    let mut sum = Kahan::new();
    let mut norm = Kahan::new();
    let mut max_gap = f64::NEG_INFINITY;
    let mut max_gap_index = 0;
    for (i, &g) in gaps.iter().enumerate() {
        sum.add(g);
        norm.add(g * (zl.ordinates[i].0 / (2.0 * PI)).ln() / (2.0 * PI));
        if g > max_gap {
            max_gap = g;
            max_gap_index = i;
        }
    }
    let m = gaps.len() as f64;
    let log_top = zl.t_max.ln();
    let d_of_alpha = alpha_grid
        .iter()
        .map(|&al| {
            let thr = 2.0 * PI * al / log_top;
            let c = gaps.iter().filter(|&&g| g <= thr).count();
            (al, c as f64 / m)
        })
        .collect();
    Ok(GapStats {
        count: gaps.len(),
        mean_gap: sum.value() / m,
        max_gap,
        max_gap_index,
        mean_normalized: norm.value() / m,
        d_of_alpha,
    })
}

/// Count of ordinates in (t, t + 2 pi lambda / log T] minus lambda. Refuses
/// windows that leave the tabulated range or whose edge sits within 1e-6 of
/// a listed ordinate.
pub fn discrepancy_delta(
    t: f64,
    lambda: f64,
    big_t: f64,
    zl: &ZeroList,
) -> Result<f64, ZerosError> {
    if !(lambda >= 0.0) || !(big_t > 1.0) || !big_t.is_finite() {
        return Err(ZerosError::OutOfRange(format!(
            "need lambda >= 0 and finite T > 1, got lambda = {lambda}, T = {big_t}"
        )));
    }
    let w = 2.0 * PI * lambda / big_t.ln();
    if t < zl.t_min || t + w > zl.t_max {
        return Err(ZerosError::OutOfRange(format!(
            "window ({t}, {}] outside tabulated [{}, {}]",
            t + w,
            zl.t_min,
            zl.t_max
        )));
    }
    for edge in [t, t + w] {
        if let Some(d) = zl.nearest_dist(edge) {
            if d < 1e-6 {
                return Err(ZerosError::Zeta(ZetaError::TooCloseToZero { t: edge, dist: d }));
            }
        }
    }
    Ok(zl.count_in(t, t + w) as f64 - lambda)
}

/// Lebesgue measure of the t in [T, 2T] with no ordinate in (t, t + w],
/// w = 2 pi lambda / log T, computed exactly as T minus the merged length
/// of the intervals [gamma - w, gamma).
pub fn zero_free_measure(big_t: f64, lambda: f64, zl: &ZeroList) -> Result<f64, ZerosError> {
    if !(lambda >= 0.0) || !(big_t > 1.0) || !big_t.is_finite() {
        return Err(ZerosError::OutOfRange(format!(
            "need lambda >= 0 and finite T > 1, got lambda = {lambda}, T = {big_t}"
        )));
    }
    let w = 2.0 * PI * lambda / big_t.ln();
    if zl.t_min > big_t || zl.t_max < 2.0 * big_t + w {
        return Err(ZerosError::OutOfRange(format!(
            "need tabulated cover of [{big_t}, {}], have [{}, {}]",
            2.0 * big_t + w,
            zl.t_min,
            zl.t_max
        )));
    }
    let mut bad = Kahan::new();
    let mut cur: Option<(f64, f64)> = None;
    for g in zl.gammas() {
        let a = (g - w).max(big_t);
        let b = g.min(2.0 * big_t);
        if a >= b {
            continue;
        }
        match cur {
            None => cur = Some((a, b)),
            Some((ca, cb)) => {
                if a <= cb {
                    cur = Some((ca, cb.max(b)));
                } else {
                    bad.add(cb - ca);
                    cur = Some((a, b));
                }
            }
        }
    }
    if let Some((ca, cb)) = cur {
        bad.add(cb - ca);
    }
    Ok(big_t - bad.value())
}

/// One gap-square sum next to its counting-function cap K N(T) / log^2 T.
#[derive(Clone, Debug)]
pub struct KorolevPart {
    pub sum: f64,
    /// Lower endpoint of the cap's enclosure; holds compares against it, so
    /// a true verdict is certain.
    pub bound: LogReal,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct KorolevReport {
    /// Sum over T/2 <= gamma_n <= T of (gamma_{n+1} - gamma_n)^2.
    pub sum: f64,
    pub bound: LogReal,
    pub holds: bool,
    /// Same comparison over [T, 2T], present when the list covers it.
    pub upper_window: Option<KorolevPart>,
}

fn window_gap_square_sum(zl: &ZeroList, lo: f64, hi: f64) -> Result<f64, ZerosError> {
    let os = &zl.ordinates;
    let a = os.partition_point(|&(g, _)| g < lo);
    let b = os.partition_point(|&(g, _)| g <= hi);
    if a == b {
        return Err(ZerosError::TooFewZeros { need: 1, have: 0 });
    }
    if b >= os.len() {
        return Err(ZerosError::OutOfRange(format!(
            "no ordinate beyond {hi} to close the last gap"
        )));
    }
    let mut s = Kahan::new();
    for n in a..b {
        let gap = os[n + 1].0 - os[n].0;
        s.add(gap * gap);
    }
    Ok(s.value())
}

fn counting_cap(ctx: &mut Ctx, engine: &mut ZetaEngine, t: f64) -> Result<RigorousBound, ZerosError> {
    let n = engine.count_n(t)?.count;
    let bc = BaseConstants::new(ctx);
    let nb = RigorousBound::from_u64(n, ctx);
    let lnt = RigorousBound::from_f64(t, ctx).ln(ctx);
    Ok(bc.big_k.mul(&nb, ctx).div(&lnt.powi(2, ctx), ctx))
}

fn certified_le(sum: f64, cap: &RigorousBound, ctx: &mut Ctx) -> bool {
    LogReal::from_f64(sum, ctx, Round::Up).cmp_real(&cap.lo) != Ordering::Greater
}

/// Sum of squared gaps with left endpoint in [T/2, T] against K N(T)/log^2 T.
/// The list must reach below T/2 and at least one ordinate past the window.
pub fn korolev_sum(
    ctx: &mut Ctx,
    engine: &mut ZetaEngine,
    big_t: f64,
    zl: &ZeroList,
) -> Result<KorolevReport, ZerosError> {
    if zl.t_min > big_t / 2.0 {
        return Err(ZerosError::OutOfRange(format!(
            "list starts at {} which is above T/2 = {}",
            zl.t_min,
            big_t / 2.0
        )));
    }
    let sum = window_gap_square_sum(zl, big_t / 2.0, big_t)?;
    let cap = counting_cap(ctx, engine, big_t)?;
    let holds = certified_le(sum, &cap, ctx);
    let upper_window = if zl.t_max >= 2.0 * big_t {
        match window_gap_square_sum(zl, big_t, 2.0 * big_t) {
            Ok(wsum) => {
                let wcap = counting_cap(ctx, engine, 2.0 * big_t)?;
                let wholds = certified_le(wsum, &wcap, ctx);
                Some(KorolevPart {
                    sum: wsum,
                    bound: wcap.lo,
                    holds: wholds,
                })
            }
            Err(_) => None,
        }
    } else {
        None
    };
    Ok(KorolevReport {
        sum,
        bound: cap.lo,
        holds,
        upper_window,
    })
}

/// Exponent window for prime sums of length x at height t: 1/2 plus twice
/// the largest distance-from-the-line over zeros within x^{3/2}/log x of t,
/// floored at the resolution 1/log x. On-line lists always give
/// 1/2 + 2/log x; the general form exists for synthetic off-line inputs.
pub fn sigma_xt(x: f64, t: f64, zl: &ZeroList) -> Result<f64, ZerosError> {
    if !(x >= 2.0) {
        return Err(ZerosError::OutOfRange(format!("need x >= 2, got {x}")));
    }
    let half = x.powf(1.5) / x.ln();
    if t - half < zl.t_min || t + half > zl.t_max {
        return Err(ZerosError::OutOfRange(format!(
            "window [{}, {}] outside tabulated [{}, {}]",
            t - half,
            t + half,
            zl.t_min,
            zl.t_max
        )));
    }
    let zs: Vec<(f64, f64)> = zl.gammas().map(|g| (g, 0.5)).collect();
    Ok(sigma_xt_general(x, t, &zs))
}

/// Same window over explicit (ordinate, real part) pairs, without coverage
/// checks.
pub fn sigma_xt_general(x: f64, t: f64, zeros: &[(f64, f64)]) -> f64 {
    let half = x.powf(1.5) / x.ln();
    let floor = 1.0 / x.ln();
    let mut m = floor;
    for &(g, beta) in zeros {
        if (g - t).abs() <= half {
            m = m.max((beta - 0.5).abs());
        }
    }
    0.5 + 2.0 * m
}
