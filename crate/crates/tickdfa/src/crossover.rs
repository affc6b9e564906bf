//! Crossover detection between two power-law scaling regimes.
//!
//! On a log-log fluctuation curve the breakpoint is found by exhaustive
//! two-segment least squares: every grid point that leaves at least five
//! points on each side is a candidate, both segments are fitted
//! independently (the breakpoint belongs to both, matching how fitted lines
//! meet at the kink), and the candidate with the smallest total SSE wins,
//! ties going to the smaller size. The split must then beat the single-line
//! fit in an F-test at the configured significance; otherwise the curve is
//! declared crossover-free and both regime exponents equal the single fit.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, FisherSnedecor};

use crate::dfa::{FluctuationCurve, LogLogPoint, ScalingFit};
use crate::error::Error;
use crate::mfdfa::{multifractal, MultifractalResult};
use crate::Result;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossoverConfig {
    /// F-test significance for accepting the two-segment model.
    pub significance: f64,
    /// Minimum grid points per segment.
    pub min_points: usize,
}

impl Default for CrossoverConfig {
    fn default() -> Self {
        CrossoverConfig {
            significance: 0.01,
            min_points: 5,
        }
    }
}

/// Two-regime fit of one fixed-q fluctuation curve.
#[derive(Debug, Clone, Serialize)]
pub struct CrossoverFit {
    /// Set when the two-segment model does not significantly beat one line;
    /// the regime fits then both equal `single`.
    pub no_crossover: bool,
    /// Box size at the breakpoint; `None` without a crossover.
    pub s_cross: Option<usize>,
    /// Small-size regime exponent (H1).
    pub h_small: ScalingFit,
    /// Large-size regime exponent (H2).
    pub h_large: ScalingFit,
    /// Single power-law fit over the whole range.
    pub single: ScalingFit,
    pub sse_small: f64,
    pub sse_large: f64,
    pub sse_single: f64,
    pub f_statistic: Option<f64>,
    pub p_value: Option<f64>,
}

impl CrossoverFit {
    pub fn h1(&self) -> f64 {
        self.h_small.hurst
    }

    pub fn h2(&self) -> f64 {
        self.h_large.hurst
    }
}

/// A single-line SSE this far below the scatter of the points counts as an
/// exact fit; the F statistic is meaningless there and no crossover exists.
fn exactness_floor(points: &[LogLogPoint]) -> f64 {
    let n = points.len() as f64;
    let mean = points.iter().map(|p| p.ln_f).sum::<f64>() / n;
    let sst: f64 = points.iter().map(|p| (p.ln_f - mean).powi(2)).sum();
    (1e-24 * n).max(1e-18 * sst)
}

/// Locate the scaling-regime crossover on the q-row of `curve`.
pub fn detect_crossover(
    curve: &FluctuationCurve,
    q: f64,
    config: &CrossoverConfig,
) -> Result<CrossoverFit> {
    if !(0.0..1.0).contains(&config.significance) {
        return Err(Error::config("significance must be in (0, 1)"));
    }
    if config.min_points < 3 {
        return Err(Error::config("min_points must be at least 3"));
    }
    let qi = curve
        .q_index(q)
        .ok_or_else(|| Error::config(format!("curve has no q = {q} row")))?;
    let s_lo = *curve.sizes().first().unwrap();
    let s_hi = *curve.sizes().last().unwrap();
    let points = curve.loglog_points(qi, s_lo, s_hi);
    let n = points.len();
    if n < 2 * config.min_points + 2 || n < 12 {
        return Err(Error::TooFewPoints {
            needed: (2 * config.min_points + 2).max(12),
            got: n,
            context: "crossover detection",
        });
    }

    let single = ScalingFit::from_points(&points, s_lo, s_hi)?;

    let mut best: Option<(usize, ScalingFit, ScalingFit)> = None;
    for b in (config.min_points - 1)..=(n - config.min_points) {
        let left = ScalingFit::from_points(&points[..=b], s_lo, points[b].s)?;
        let right = ScalingFit::from_points(&points[b..], points[b].s, s_hi)?;
        let total = left.sse + right.sse;
        let better = match &best {
            None => true,
            Some((_, l, r)) => total < l.sse + r.sse,
        };
        if better {
            best = Some((b, left, right));
        }
    }
    let (b, h_small, h_large) = best.expect("candidate set is non-empty");
    let sse_split = h_small.sse + h_large.sse;

    let floor = exactness_floor(&points);
    let (accept, f_statistic, p_value) = if single.sse <= floor {
        // the single line is already exact
        (false, None, None)
    } else if sse_split <= floor {
        // the split is exact while one line is not
        (true, None, Some(0.0))
    } else {
        let df2 = (n - 4) as f64;
        let f = ((single.sse - sse_split) / 2.0) / (sse_split / df2);
        if f <= 0.0 {
            (false, Some(f), Some(1.0))
        } else {
            let dist = FisherSnedecor::new(2.0, df2)
                .map_err(|e| Error::config(format!("F distribution: {e}")))?;
            let p = 1.0 - dist.cdf(f);
            (p < config.significance, Some(f), Some(p))
        }
    };

    if accept {
        Ok(CrossoverFit {
            no_crossover: false,
            s_cross: Some(points[b].s),
            sse_small: h_small.sse,
            sse_large: h_large.sse,
            h_small,
            h_large,
            sse_single: single.sse,
            single,
            f_statistic,
            p_value,
        })
    } else {
        Ok(CrossoverFit {
            no_crossover: true,
            s_cross: None,
            h_small: single,
            h_large: single,
            sse_small: single.sse,
            sse_large: single.sse,
            sse_single: single.sse,
            single,
            f_statistic,
            p_value,
        })
    }
}

/// Complete multifractal results for the two scaling regimes split at
/// `s_cross` (the breakpoint belongs to both ranges).
#[derive(Debug, Clone, Serialize)]
pub struct RegimeSpectra {
    pub small: MultifractalResult,
    pub large: MultifractalResult,
}

pub fn regime_mfdfa(curve: &FluctuationCurve, s_cross: usize) -> Result<RegimeSpectra> {
    let s_lo = *curve.sizes().first().unwrap();
    let s_hi = *curve.sizes().last().unwrap();
    if s_cross <= s_lo || s_cross >= s_hi {
        return Err(Error::config(format!(
            "crossover {s_cross} not inside the grid range [{s_lo}, {s_hi}]"
        )));
    }
    Ok(RegimeSpectra {
        small: multifractal(curve, (s_lo, s_cross))?,
        large: multifractal(curve, (s_cross, s_hi))?,
    })
}
