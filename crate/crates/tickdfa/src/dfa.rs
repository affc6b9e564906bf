//! Detrended fluctuation analysis: profile construction, both-ends box
//! partitioning, polynomial detrending, the order-2 fluctuation function,
//! and Hurst-index fitting.
//!
//! For a series of `N` durations the profile is the running sum. A box size
//! `s` that divides `N` covers the profile with `N/s` disjoint boxes; any
//! other size uses `2 * floor(N/s)` boxes anchored at both ends so no part
//! of the series is ignored. Each box is detrended by a least-squares
//! polynomial (cubic by default) in the within-box index, and the
//! root-mean-square residual `f_k(s)` of every box is aggregated into the
//! fluctuation function. `F_2(s) ~ s^H` over a log-spaced grid of sizes in
//! `[s_min, N/4]` yields the Hurst index.
//!
//! Summation order is fixed (boxes left to right within each size, sizes in
//! grid order), so results are bit-identical for identical inputs no matter
//! how the per-size work is scheduled.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::fit::{fit_line, DetrendBasis};
use crate::ingest::DurationSeries;
use crate::Result;

/// Cumulative summation of a duration series; the object DFA detrends.
#[derive(Debug, Clone)]
pub struct Profile {
    values: Vec<f64>,
}

impl Profile {
    /// Profile of a positive duration series; strictly increasing.
    pub fn from_durations(series: &DurationSeries) -> Result<Profile> {
        if series.is_empty() {
            return Err(Error::EmptyInput("duration series"));
        }
        let mut values = Vec::with_capacity(series.len());
        let mut acc = 0.0;
        for e in series.entries() {
            acc += e.tau;
            values.push(acc);
        }
        Ok(Profile { values })
    }

    /// Profile of an arbitrary finite series (synthetic inputs may be
    /// signed; monotonicity then no longer holds).
    pub fn from_series(series: &[f64]) -> Result<Profile> {
        if series.is_empty() {
            return Err(Error::EmptyInput("series"));
        }
        if series.iter().any(|v| !v.is_finite()) {
            return Err(Error::config("series contains non-finite values"));
        }
        let mut values = Vec::with_capacity(series.len());
        let mut acc = 0.0;
        for &v in series {
            acc += v;
            values.push(acc);
        }
        Ok(Profile { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[cfg(test)]
    pub(crate) fn from_raw(values: Vec<f64>) -> Profile {
        Profile { values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Coverage {
    /// `s` divides `N`: `N/s` disjoint boxes.
    Exact,
    /// Otherwise `2 * floor(N/s)` boxes, half anchored at each end.
    BothEnds,
}

/// Disjoint-from-each-end covering of `0..n` by boxes of exactly `s`
/// indices.
#[derive(Debug, Clone)]
pub struct BoxPartition {
    pub s: usize,
    pub coverage: Coverage,
    boxes: Vec<Range<usize>>,
}

impl BoxPartition {
    pub fn boxes(&self) -> &[Range<usize>] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }
}

/// Partition `n` profile points into boxes of size `s`.
///
/// `s` must lie in `[s_min, n/4]`; four boxes is the minimum for a
/// meaningful fluctuation average.
pub fn partition(n: usize, s: usize, s_min: usize) -> Result<BoxPartition> {
    let max = n / 4;
    if s < s_min || s > max {
        return Err(Error::BoxSize { s, min: s_min, max });
    }
    let count = n / s;
    let mut boxes = Vec::with_capacity(if n % s == 0 { count } else { 2 * count });
    for k in 0..count {
        boxes.push(k * s..(k + 1) * s);
    }
    let coverage = if n % s == 0 {
        Coverage::Exact
    } else {
        let tail_start = n - count * s;
        for k in 0..count {
            boxes.push(tail_start + k * s..tail_start + (k + 1) * s);
        }
        Coverage::BothEnds
    };
    Ok(BoxPartition { s, coverage, boxes })
}

/// Log-spaced integer box sizes from `s_min` to `s_max` inclusive,
/// `per_decade` points per factor of ten, deduplicated after rounding.
pub fn log_grid(s_min: usize, s_max: usize, per_decade: usize) -> Result<Vec<usize>> {
    if s_min < 2 {
        return Err(Error::config("s_min must be at least 2"));
    }
    if s_max < s_min {
        return Err(Error::config(format!(
            "s_max {s_max} smaller than s_min {s_min}; series too short"
        )));
    }
    if per_decade == 0 {
        return Err(Error::config("grid density must be positive"));
    }
    let mut sizes = Vec::new();
    let step = 1.0 / per_decade as f64;
    for k in 0.. {
        let v = (s_min as f64 * 10f64.powf(k as f64 * step)).round() as usize;
        if v >= s_max {
            break;
        }
        if sizes.last() != Some(&v) {
            sizes.push(v);
        }
    }
    sizes.push(s_max);
    Ok(sizes)
}

/// Root-mean-square residual of one profile segment after removing its
/// least-squares polynomial trend of the given order in the within-box
/// index.
pub fn local_fluctuation(segment: &[f64], detrend_order: usize) -> Result<f64> {
    let basis = DetrendBasis::new(segment.len(), detrend_order)?;
    Ok((basis.residual_sumsq(segment) / segment.len() as f64).sqrt())
}

/// Fluctuation values `F[q][s]` over a box-size grid and a q grid, with the
/// number of boxes that entered each cell's mean.
#[derive(Debug, Clone)]
pub struct FluctuationCurve {
    q_values: Vec<f64>,
    sizes: Vec<usize>,
    /// Row-major `[q][s]`; `NaN` marks a cell with no usable boxes.
    values: Vec<f64>,
    valid_boxes: Vec<usize>,
}

/// One usable point of a fixed-q row in log-log coordinates.
#[derive(Debug, Clone, Copy)]
pub struct LogLogPoint {
    pub s: usize,
    pub ln_s: f64,
    pub ln_f: f64,
}

impl FluctuationCurve {
    pub fn from_parts(
        q_values: Vec<f64>,
        sizes: Vec<usize>,
        values: Vec<f64>,
        valid_boxes: Vec<usize>,
    ) -> Result<Self> {
        if values.len() != q_values.len() * sizes.len() || valid_boxes.len() != values.len() {
            return Err(Error::config("fluctuation matrix shape mismatch"));
        }
        if sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("box-size grid must be strictly increasing"));
        }
        if values.iter().any(|&v| v <= 0.0 && !v.is_nan()) {
            return Err(Error::config("fluctuation values must be positive"));
        }
        Ok(FluctuationCurve {
            q_values,
            sizes,
            values,
            valid_boxes,
        })
    }

    pub fn q_values(&self) -> &[f64] {
        &self.q_values
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn q_index(&self, q: f64) -> Option<usize> {
        self.q_values.iter().position(|&v| v == q)
    }

    /// Fluctuation value at `(q index, size index)`, `None` if the cell had
    /// no usable boxes.
    pub fn value(&self, qi: usize, si: usize) -> Option<f64> {
        let v = self.values[qi * self.sizes.len() + si];
        v.is_finite().then_some(v)
    }

    pub fn valid_boxes(&self, qi: usize, si: usize) -> usize {
        self.valid_boxes[qi * self.sizes.len() + si]
    }

    /// Usable `(ln s, ln F)` points of row `qi` with `s` in
    /// `[s_lo, s_hi]` (inclusive).
    pub fn loglog_points(&self, qi: usize, s_lo: usize, s_hi: usize) -> Vec<LogLogPoint> {
        self.sizes
            .iter()
            .enumerate()
            .filter(|(_, &s)| s >= s_lo && s <= s_hi)
            .filter_map(|(si, &s)| {
                self.value(qi, si).map(|f| LogLogPoint {
                    s,
                    ln_s: (s as f64).ln(),
                    ln_f: f.ln(),
                })
            })
            .collect()
    }
}

/// Boxes whose fluctuation falls below this floor are excluded from the
/// q <= 0 means, where they would otherwise dominate or diverge. Scaled to
/// the profile so the floor is unit-free.
fn zero_floor(profile_values: &[f64]) -> f64 {
    let ms = profile_values.iter().map(|&v| v * v).sum::<f64>() / profile_values.len() as f64;
    1.0e-12 * ms.sqrt()
}

pub(crate) fn aggregate_q(q: f64, ln_f: &[f64], ln_eps: f64) -> (f64, usize) {
    if q == 0.0 {
        let mut sum = 0.0;
        let mut used = 0usize;
        for &l in ln_f {
            if l > ln_eps {
                sum += l;
                used += 1;
            }
        }
        if used == 0 {
            return (f64::NAN, 0);
        }
        ((sum / used as f64).exp(), used)
    } else if q < 0.0 {
        let mut sum = 0.0;
        let mut used = 0usize;
        for &l in ln_f {
            if l > ln_eps {
                sum += (q * l).exp();
                used += 1;
            }
        }
        if used == 0 {
            return (f64::NAN, 0);
        }
        (((sum / used as f64).ln() / q).exp(), used)
    } else {
        // q > 0: boxes with f = 0 contribute 0 to the power mean
        let mut sum = 0.0;
        for &l in ln_f {
            sum += (q * l).exp();
        }
        let used = ln_f.len();
        if sum <= 0.0 {
            return (f64::NAN, 0);
        }
        (((sum / used as f64).ln() / q).exp(), used)
    }
}

/// Shared engine behind [`fluctuation_f2`] and the q-order generalization:
/// per box size the local fluctuations are computed once and every q-order
/// mean is aggregated from them.
pub(crate) fn fluctuation_engine(
    profile: &Profile,
    sizes: &[usize],
    q_values: &[f64],
    detrend_order: usize,
) -> Result<FluctuationCurve> {
    if sizes.is_empty() {
        return Err(Error::config("empty box-size grid"));
    }
    if q_values.is_empty() {
        return Err(Error::config("empty q grid"));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config("box-size grid must be strictly increasing"));
    }
    if sizes[0] < detrend_order + 2 {
        return Err(Error::config(format!(
            "minimum box size {} leaves no residual degrees of freedom for order-{} detrending",
            sizes[0], detrend_order
        )));
    }
    let n = profile.len();
    let y = profile.values();
    let ln_eps = zero_floor(y).ln();
    let s_min = sizes[0];

    let columns: Result<Vec<(Vec<f64>, Vec<usize>)>> = sizes
        .par_iter()
        .map(|&s| {
            let part = partition(n, s, s_min)?;
            let basis = DetrendBasis::new(s, detrend_order)?;
            let inv_s = 1.0 / s as f64;
            let mut ln_f = Vec::with_capacity(part.len());
            for b in part.boxes() {
                let sumsq = basis.residual_sumsq(&y[b.clone()]);
                ln_f.push((sumsq * inv_s).sqrt().ln());
            }
            let mut col_f = Vec::with_capacity(q_values.len());
            let mut col_n = Vec::with_capacity(q_values.len());
            for &q in q_values {
                let (f, used) = aggregate_q(q, &ln_f, ln_eps);
                col_f.push(f);
                col_n.push(used);
            }
            Ok((col_f, col_n))
        })
        .collect();
    let columns = columns?;

    let mut values = vec![f64::NAN; q_values.len() * sizes.len()];
    let mut valid = vec![0usize; q_values.len() * sizes.len()];
    for (si, (col_f, col_n)) in columns.into_iter().enumerate() {
        for qi in 0..q_values.len() {
            values[qi * sizes.len() + si] = col_f[qi];
            valid[qi * sizes.len() + si] = col_n[qi];
        }
    }
    Ok(FluctuationCurve {
        q_values: q_values.to_vec(),
        sizes: sizes.to_vec(),
        values,
        valid_boxes: valid,
    })
}

/// Order-2 detrended fluctuation function over the given box-size grid.
pub fn fluctuation_f2(
    profile: &Profile,
    sizes: &[usize],
    detrend_order: usize,
) -> Result<FluctuationCurve> {
    fluctuation_engine(profile, sizes, &[2.0], detrend_order)
}

/// Power-law fit `F_2(s) ~ s^H` with the exponents derived from `H`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScalingFit {
    /// Hurst index: the log-log slope.
    pub hurst: f64,
    /// Regression standard error of the slope.
    pub stderr: f64,
    /// Power-spectrum exponent, `2H - 1`.
    pub eta: f64,
    /// Autocorrelation exponent, `2 - 2H`.
    pub gamma: f64,
    pub r_squared: f64,
    pub intercept: f64,
    pub s_lo: usize,
    pub s_hi: usize,
    pub n_points: usize,
    #[serde(skip)]
    pub sse: f64,
}

impl ScalingFit {
    pub(crate) fn from_points(points: &[LogLogPoint], s_lo: usize, s_hi: usize) -> Result<Self> {
        if points.len() < 5 {
            return Err(Error::TooFewPoints {
                needed: 5,
                got: points.len(),
                context: "scaling fit",
            });
        }
        let xs: Vec<f64> = points.iter().map(|p| p.ln_s).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.ln_f).collect();
        let line = fit_line(&xs, &ys)?;
        Ok(ScalingFit {
            hurst: line.slope,
            stderr: line.slope_stderr,
            eta: 2.0 * line.slope - 1.0,
            gamma: 2.0 - 2.0 * line.slope,
            r_squared: line.r_squared,
            intercept: line.intercept,
            s_lo,
            s_hi,
            n_points: points.len(),
            sse: line.sse,
        })
    }
}

/// Ordinary least squares of `ln F_2` on `ln s` over grid points with
/// `s` in `[s_lo, s_hi]`.
pub fn fit_hurst(curve: &FluctuationCurve, range: (usize, usize)) -> Result<ScalingFit> {
    let (s_lo, s_hi) = range;
    if s_lo >= s_hi {
        return Err(Error::config(format!(
            "fit range [{s_lo}, {s_hi}] is empty"
        )));
    }
    let qi = curve
        .q_index(2.0)
        .ok_or_else(|| Error::config("curve has no q = 2 row"))?;
    let points = curve.loglog_points(qi, s_lo, s_hi);
    ScalingFit::from_points(&points, s_lo, s_hi)
}
