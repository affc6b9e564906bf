//! Intraday duration pattern estimation and seasonality adjustment.
//!
//! The trading day is the concatenation of 240 one-minute bins. For each
//! `(day, bin)` cell the mean duration is formed first; the per-bin pattern
//! value is then the mean of those cell means over the days where the bin
//! actually traded. Dividing by the day count regardless of empty cells
//! would bias illiquid bins downward, so the contributing-day count is used
//! as the divisor and reported next to the total day count.
//!
//! Bins that are empty on every day have no pattern value. Adjusting a
//! duration that lands in such a bin is a hard error rather than an
//! interpolation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::fit::{polyfit, PolyFit};
use crate::ingest::{DurationEntry, DurationSeries, DurationUnit, BINS_PER_DAY};
use crate::Result;

/// Per-cell duration statistics: `(day, bin) -> (count, mean)`.
#[derive(Debug, Clone)]
pub struct BinnedDurations {
    cells: BTreeMap<(u32, u16), BinCell>,
    day_count: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct BinCell {
    pub count: usize,
    pub mean: f64,
}

impl BinnedDurations {
    pub fn cell(&self, day: u32, bin: u16) -> Option<BinCell> {
        self.cells.get(&(day, bin)).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(u32, u16), &BinCell)> {
        self.cells.iter()
    }

    pub fn day_count(&self) -> usize {
        self.day_count
    }
}

/// Mean duration and count for every populated `(day, bin)` cell.
pub fn bin_mean_durations(series: &DurationSeries) -> Result<BinnedDurations> {
    if series.is_empty() {
        return Err(Error::EmptyInput("duration series"));
    }
    let mut sums: BTreeMap<(u32, u16), (usize, f64)> = BTreeMap::new();
    for e in series.entries() {
        let slot = sums.entry((e.day, e.bin)).or_insert((0, 0.0));
        slot.0 += 1;
        slot.1 += e.tau;
    }
    let mut days: Vec<u32> = sums.keys().map(|&(d, _)| d).collect();
    days.dedup();
    let day_count = days.len();
    let cells = sums
        .into_iter()
        .map(|((day, bin), (count, sum))| {
            (
                (day, bin),
                BinCell {
                    count,
                    mean: sum / count as f64,
                },
            )
        })
        .collect();
    Ok(BinnedDurations { cells, day_count })
}

/// The 240-bin intraday pattern: per-bin mean durations averaged over the
/// days where the bin traded.
#[derive(Debug, Clone, Serialize)]
pub struct IntradayPattern {
    /// `means[j]` is the pattern value of bin `j`, `None` where the bin is
    /// empty on every day.
    means: Vec<Option<f64>>,
    /// Days on which bin `j` had at least one duration.
    contributing_days: Vec<usize>,
    /// Total number of trading days in the input.
    pub day_count: usize,
}

impl IntradayPattern {
    /// Build directly from known per-bin values (all bins defined on
    /// `day_count` days). Used by synthetic generators and tests.
    pub fn from_means(means: &[f64], day_count: usize) -> Result<Self> {
        if means.len() != BINS_PER_DAY {
            return Err(Error::config(format!(
                "pattern needs {BINS_PER_DAY} bins, got {}",
                means.len()
            )));
        }
        if means.iter().any(|&m| !(m > 0.0) || !m.is_finite()) {
            return Err(Error::config("pattern means must be positive"));
        }
        Ok(IntradayPattern {
            means: means.iter().map(|&m| Some(m)).collect(),
            contributing_days: vec![day_count; BINS_PER_DAY],
            day_count,
        })
    }

    pub fn mean(&self, bin: u16) -> Option<f64> {
        self.means.get(bin as usize).copied().flatten()
    }

    pub fn means(&self) -> &[Option<f64>] {
        &self.means
    }

    pub fn contributing_days(&self) -> &[usize] {
        &self.contributing_days
    }

    pub fn defined_bins(&self) -> usize {
        self.means.iter().filter(|m| m.is_some()).count()
    }

    pub fn undefined_bins(&self) -> Vec<usize> {
        self.means
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_none())
            .map(|(j, _)| j)
            .collect()
    }
}

/// Average the per-day cell means into the 240-bin intraday pattern.
pub fn intraday_pattern(binned: &BinnedDurations) -> Result<IntradayPattern> {
    if binned.day_count() == 0 {
        return Err(Error::EmptyInput("binned durations"));
    }
    let mut sums = vec![0.0f64; BINS_PER_DAY];
    let mut counts = vec![0usize; BINS_PER_DAY];
    for (&(_, bin), cell) in binned.cells() {
        sums[bin as usize] += cell.mean;
        counts[bin as usize] += 1;
    }
    let means = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &c)| if c > 0 { Some(s / c as f64) } else { None })
        .collect();
    Ok(IntradayPattern {
        means,
        contributing_days: counts,
        day_count: binned.day_count(),
    })
}

/// Divide every duration by its bin's pattern mean, turning the series
/// dimensionless. Ordering and tags are preserved; the operation is exactly
/// inverted by multiplying back.
pub fn adjust(series: &DurationSeries, pattern: &IntradayPattern) -> Result<DurationSeries> {
    let entries: Vec<DurationEntry> = series
        .entries()
        .iter()
        .map(|e| {
            let mean = pattern.mean(e.bin).ok_or(Error::UndefinedBin {
                bin: e.bin as usize,
            })?;
            Ok(DurationEntry {
                tau: e.tau / mean,
                ..*e
            })
        })
        .collect::<Result<_>>()?;
    DurationSeries::new(
        series.symbol.clone(),
        DurationUnit::Dimensionless,
        entries,
    )
}

/// Polynomial summary of the intraday pattern, for plotting next to the
/// per-bin means. Never fed back into the adjustment.
#[derive(Debug, Clone, Serialize)]
pub struct PatternPolyFit {
    pub degree: usize,
    /// Ascending powers of the bin index; length is `degree + 1`.
    pub coefficients: Vec<f64>,
    pub residual_rms: f64,
    /// Bin-index domain the fit was made on.
    pub domain: (f64, f64),
}

impl PatternPolyFit {
    pub fn evaluate(&self, bin: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coefficients.iter().rev() {
            acc = acc * bin + c;
        }
        acc
    }
}

/// Least-squares polynomial over the defined bins of the pattern.
pub fn pattern_polyfit(pattern: &IntradayPattern, degree: usize) -> Result<PatternPolyFit> {
    if !(1..=10).contains(&degree) {
        return Err(Error::config(format!(
            "polynomial degree must be in 1..=10, got {degree}"
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (j, m) in pattern.means().iter().enumerate() {
        if let Some(v) = m {
            xs.push(j as f64);
            ys.push(*v);
        }
    }
    if xs.len() < degree + 1 {
        return Err(Error::TooFewPoints {
            needed: degree + 1,
            got: xs.len(),
            context: "pattern polynomial fit",
        });
    }
    let PolyFit {
        degree,
        coefficients,
        residual_rms,
    } = polyfit(&xs, &ys, degree)?;
    Ok(PatternPolyFit {
        degree,
        coefficients,
        residual_rms,
        domain: (0.0, (BINS_PER_DAY - 1) as f64),
    })
}
