//! Seed-deterministic synthetic series with analytically known scaling
//! properties, used to validate the analysis pipeline.
//!
//! - [`gen_fgn`]: exact stationary fractional Gaussian noise by circulant
//!   embedding of the fGn autocovariance (Davies-Harte). Monofractal ground
//!   truth with `h(q) = H` for all q.
//! - [`gen_binomial_cascade`]: multiplicative binomial measure with
//!   closed-form mass exponents and spectrum width (see
//!   [`BinomialCascadeOracle`]). Multifractal ground truth.
//! - [`gen_piecewise_curve`]: a two-regime log-log fluctuation curve with a
//!   continuous break, optionally under multiplicative log-normal noise.
//! - [`gen_iid_exp`] and [`gen_synthetic_ticks`]: memoryless durations and
//!   full tick calendars with a prescribed intraday pattern.
//!
//! Every generator is a pure function of its parameters and seed.

use chrono::{Datelike, Duration as ChronoDuration, NaiveDate, Weekday};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp, StandardNormal};
use rustfft::{num_complex::Complex, FftPlanner};
use serde::Serialize;

use crate::dfa::FluctuationCurve;
use crate::error::Error;
use crate::ingest::{Session, Tick, TickSeries, BINS_PER_DAY, SESSION_LEN_CS};
use crate::Result;

/// Parameters of one synthetic series.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum GeneratorSpec {
    Fgn {
        hurst: f64,
        n: usize,
        seed: u64,
    },
    BinomialCascade {
        p: f64,
        levels: u32,
        seed: u64,
    },
    PiecewiseCurve {
        h1: f64,
        h2: f64,
        s_cross: usize,
        noise_sigma: f64,
        seed: u64,
    },
    IidExp {
        rate: f64,
        n: usize,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GeneratorSpec::Fgn { hurst, n, .. } => {
                check_fgn_params(hurst, n)?;
            }
            GeneratorSpec::BinomialCascade { p, levels, .. } => {
                check_cascade_params(p, levels)?;
            }
            GeneratorSpec::PiecewiseCurve { h1, h2, .. } => {
                check_exponent(h1)?;
                check_exponent(h2)?;
            }
            GeneratorSpec::IidExp { rate, n, .. } => {
                if !(rate > 0.0) || !rate.is_finite() {
                    return Err(Error::config("exponential rate must be positive"));
                }
                if n == 0 {
                    return Err(Error::config("series length must be positive"));
                }
            }
        }
        Ok(())
    }
}

fn check_fgn_params(hurst: f64, n: usize) -> Result<()> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(Error::config(format!(
            "Hurst exponent must lie in (0, 1), got {hurst}"
        )));
    }
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::config(format!(
            "fGn length must be a power of two >= 2, got {n}"
        )));
    }
    Ok(())
}

fn check_cascade_params(p: f64, levels: u32) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::config(format!(
            "cascade fraction must lie in (0, 1), got {p}"
        )));
    }
    if !(1..=26).contains(&levels) {
        return Err(Error::config(format!(
            "cascade levels must lie in 1..=26, got {levels}"
        )));
    }
    Ok(())
}

fn check_exponent(h: f64) -> Result<()> {
    if !(h > 0.0 && h < 1.5) {
        return Err(Error::config(format!(
            "scaling exponent must lie in (0, 1.5), got {h}"
        )));
    }
    Ok(())
}

/// fGn autocovariance at lag `k` for unit variance.
fn fgn_autocovariance(hurst: f64, k: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let kf = k as f64;
    let e = 2.0 * hurst;
    0.5 * ((kf + 1.0).powf(e) - 2.0 * kf.powf(e) + (kf - 1.0).powf(e))
}

/// Exact stationary fractional Gaussian noise of unit variance by circulant
/// embedding. `n` must be a power of two; the output is fully determined by
/// `(hurst, n, seed)`.
pub fn gen_fgn(hurst: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    check_fgn_params(hurst, n)?;
    let m = 2 * n;

    // circulant first row: rho(0..=n), then mirrored rho(n-1..=1)
    let mut buf: Vec<Complex<f64>> = Vec::with_capacity(m);
    for j in 0..=n {
        buf.push(Complex::new(fgn_autocovariance(hurst, j), 0.0));
    }
    for j in (1..n).rev() {
        buf.push(Complex::new(fgn_autocovariance(hurst, j), 0.0));
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    fft.process(&mut buf);

    // the fGn embedding is nonnegative definite; tiny negative eigenvalues
    // can only be rounding
    let max_eig = buf.iter().map(|z| z.re).fold(f64::MIN, f64::max);
    let mut eigenvalues = Vec::with_capacity(m);
    for z in &buf {
        assert!(
            z.re > -1e-8 * max_eig.max(1.0),
            "circulant embedding produced eigenvalue {}",
            z.re
        );
        eigenvalues.push(z.re.max(0.0));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mf = m as f64;
    let mut spectrum: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); m];
    let g0: f64 = rng.sample(StandardNormal);
    spectrum[0] = Complex::new((eigenvalues[0] / mf).sqrt() * g0, 0.0);
    let gn: f64 = rng.sample(StandardNormal);
    spectrum[n] = Complex::new((eigenvalues[n] / mf).sqrt() * gn, 0.0);
    for j in 1..n {
        let gr: f64 = rng.sample(StandardNormal);
        let gi: f64 = rng.sample(StandardNormal);
        let w = (eigenvalues[j] / (2.0 * mf)).sqrt();
        spectrum[j] = Complex::new(w * gr, w * gi);
        spectrum[m - j] = spectrum[j].conj();
    }
    fft.process(&mut spectrum);
    Ok(spectrum[..n].iter().map(|z| z.re).collect())
}

/// Positive duration-like variant: `exp(sigma * x)` of an fGn sample.
///
/// The exponential preserves the long-memory exponent only approximately
/// (correlations of the transformed series shrink by roughly `sigma^2`), so
/// treat recovered exponents as near, not equal to, `hurst`.
pub fn gen_fgn_exp(hurst: f64, n: usize, seed: u64, sigma: f64) -> Result<Vec<f64>> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::config("sigma must be positive"));
    }
    let noise = gen_fgn(hurst, n, seed)?;
    Ok(noise.iter().map(|&x| (sigma * x).exp()).collect())
}

/// Closed-form scaling laws of the binomial measure with fraction `p`, in
/// the MFDFA convention (`tau(0) = -1`, `tau(1) = 0`).
#[derive(Debug, Clone, Copy)]
pub struct BinomialCascadeOracle {
    pub p: f64,
}

impl BinomialCascadeOracle {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::config("cascade fraction must lie in (0, 1)"));
        }
        Ok(BinomialCascadeOracle { p })
    }

    /// `tau(q) = -log2(p^q + (1-p)^q)`.
    pub fn tau(&self, q: f64) -> f64 {
        -(self.p.powf(q) + (1.0 - self.p).powf(q)).log2()
    }

    /// `h(q) = (1 + tau(q)) / q`, continuous at `q = 0` with the limit
    /// `-log2(p (1-p)) / 2`.
    pub fn h(&self, q: f64) -> f64 {
        if q.abs() < 1e-9 {
            -(self.p * (1.0 - self.p)).log2() / 2.0
        } else {
            (1.0 + self.tau(q)) / q
        }
    }

    /// Smallest singularity strength, `-log2(max(p, 1-p))`.
    pub fn alpha_min(&self) -> f64 {
        -self.p.max(1.0 - self.p).log2()
    }

    /// Largest singularity strength, `-log2(min(p, 1-p))`.
    pub fn alpha_max(&self) -> f64 {
        -self.p.min(1.0 - self.p).log2()
    }

    /// Spectrum width `log2(max(p, 1-p) / min(p, 1-p))`.
    pub fn delta_alpha(&self) -> f64 {
        self.alpha_max() - self.alpha_min()
    }
}

/// Deterministic multiplicative binomial measure: unit mass split into
/// fractions `p` and `1 - p` at every node (left/right assignment drawn per
/// node from the seed), iterated `levels` times. The `2^levels` cell masses
/// are rescaled to unit mean, so they sum to `2^levels`.
pub fn gen_binomial_cascade(p: f64, levels: u32, seed: u64) -> Result<Vec<f64>> {
    check_cascade_params(p, levels)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut masses = vec![1.0f64];
    for _ in 0..levels {
        let mut next = Vec::with_capacity(masses.len() * 2);
        for &mass in &masses {
            let (left, right) = if rng.random_bool(0.5) {
                (p, 1.0 - p)
            } else {
                (1.0 - p, p)
            };
            next.push(mass * left);
            next.push(mass * right);
        }
        masses = next;
    }
    let scale = (1u64 << levels) as f64;
    for v in &mut masses {
        *v *= scale;
    }
    Ok(masses)
}

/// Synthetic q = 2 fluctuation curve: `F(s) = s^h1` up to the break,
/// continued continuously as `c * s^h2` beyond, with multiplicative
/// log-normal noise `exp(sigma * z)` per grid point.
///
/// The break is snapped to the nearest grid size so the kink sits exactly
/// on a grid point (both branches agree there). Box counts are reported as
/// zero to mark the curve as synthetic.
pub fn gen_piecewise_curve(
    h1: f64,
    h2: f64,
    s_cross: usize,
    sizes: &[usize],
    noise_sigma: f64,
    seed: u64,
) -> Result<FluctuationCurve> {
    check_exponent(h1)?;
    check_exponent(h2)?;
    if sizes.len() < 2 {
        return Err(Error::config("grid needs at least two sizes"));
    }
    let (&lo, &hi) = (sizes.first().unwrap(), sizes.last().unwrap());
    if s_cross < lo || s_cross > hi {
        return Err(Error::config(format!(
            "s_cross {s_cross} outside grid range [{lo}, {hi}]"
        )));
    }
    if noise_sigma < 0.0 || !noise_sigma.is_finite() {
        return Err(Error::config("noise sigma must be nonnegative"));
    }
    let s_cross = *sizes
        .iter()
        .min_by_key(|&&s| s.abs_diff(s_cross))
        .unwrap();
    let continuation = (s_cross as f64).powf(h1 - h2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = sizes
        .iter()
        .map(|&s| {
            let base = if s <= s_cross {
                (s as f64).powf(h1)
            } else {
                continuation * (s as f64).powf(h2)
            };
            if noise_sigma > 0.0 {
                let z: f64 = rng.sample(StandardNormal);
                base * (noise_sigma * z).exp()
            } else {
                base
            }
        })
        .collect();
    FluctuationCurve::from_parts(
        vec![2.0],
        sizes.to_vec(),
        values,
        vec![0; sizes.len()],
    )
}

/// Memoryless positive durations with the given arrival rate (mean
/// duration `1 / rate`).
pub fn gen_iid_exp(rate: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::config("exponential rate must be positive"));
    }
    if n == 0 {
        return Err(Error::config("series length must be positive"));
    }
    let dist = Exp::new(rate).map_err(|e| Error::config(format!("exponential rate: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| rng.sample(dist)).collect())
}

/// Inverse-U target pattern: short durations near the open and close, a
/// `base + amplitude` peak at midday, and the sharply shorter first minute
/// of the afternoon session.
pub fn inverse_u_pattern(base: f64, amplitude: f64) -> Vec<f64> {
    let mut means: Vec<f64> = (0..BINS_PER_DAY)
        .map(|j| {
            let x = j as f64 / (BINS_PER_DAY - 1) as f64;
            base + amplitude * 4.0 * x * (1.0 - x)
        })
        .collect();
    means[120] *= 0.5;
    means
}

/// Simulate `days` trading days of ticks whose interarrival times are
/// exponential with the per-bin target means, mapped onto the session
/// clocks at 0.01 s resolution. Draws use the bin of the running clock;
/// increments that round to zero produce simultaneous trades, which the
/// ingest collapse removes.
pub fn gen_synthetic_ticks(
    target_means: &[f64],
    days: u32,
    seed: u64,
    symbol: &str,
) -> Result<TickSeries> {
    if target_means.len() != BINS_PER_DAY {
        return Err(Error::config(format!(
            "target pattern needs {BINS_PER_DAY} bins, got {}",
            target_means.len()
        )));
    }
    if days == 0 {
        return Err(Error::config("need at least one trading day"));
    }
    let dists: Vec<Exp<f64>> = target_means
        .iter()
        .map(|&mean| {
            if !(mean > 0.0) || !mean.is_finite() {
                return Err(Error::config("target pattern means must be positive"));
            }
            Exp::new(1.0 / mean).map_err(|e| Error::config(format!("bin mean: {e}")))
        })
        .collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ticks = Vec::new();
    let mut dates = Vec::with_capacity(days as usize);
    let mut date = NaiveDate::from_ymd_opt(2003, 1, 2).expect("valid calendar origin");
    for day in 0..days {
        while matches!(date.weekday(), Weekday::Sat | Weekday::Sun) {
            date += ChronoDuration::days(1);
        }
        dates.push(date.format("%Y-%m-%d").to_string());
        for session in [Session::Morning, Session::Afternoon] {
            let bin_base = session.bin_base() as usize;
            let mut t_cs: u64 = 0;
            loop {
                let minute = ((t_cs / 6_000) as usize).min(119);
                let draw: f64 = rng.sample(dists[bin_base + minute]);
                t_cs += (draw * 100.0).round() as u64;
                if t_cs > SESSION_LEN_CS as u64 {
                    break;
                }
                ticks.push(Tick {
                    day,
                    session,
                    time_cs: t_cs as u32,
                });
            }
        }
        date += ChronoDuration::days(1);
    }
    Ok(TickSeries::new(symbol, dates, ticks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_autocorrelation(series: &[f64], lag: usize) -> f64 {
        let n = series.len();
        let mean = series.iter().sum::<f64>() / n as f64;
        let var = series.iter().map(|&x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        let cov = (0..n - lag)
            .map(|i| (series[i] - mean) * (series[i + lag] - mean))
            .sum::<f64>()
            / (n - lag) as f64;
        cov / var
    }

    #[test]
    fn fgn_is_seed_deterministic() {
        let a = gen_fgn(0.7, 1 << 10, 99).unwrap();
        let b = gen_fgn(0.7, 1 << 10, 99).unwrap();
        assert_eq!(a, b, "same seed must reproduce bit-identical output");
        let c = gen_fgn(0.7, 1 << 10, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn fgn_validates_parameters() {
        assert!(gen_fgn(0.0, 1024, 1).is_err());
        assert!(gen_fgn(1.0, 1024, 1).is_err());
        assert!(gen_fgn(0.5, 1000, 1).is_err(), "length must be a power of two");
    }

    #[test]
    fn fgn_half_is_white() {
        let n = 1 << 15;
        let x = gen_fgn(0.5, n, 7).unwrap();
        let rho1 = sample_autocorrelation(&x, 1);
        let bound = 3.0 / (n as f64).sqrt();
        assert!(rho1.abs() < bound, "rho(1) = {rho1}, bound {bound}");
    }

    #[test]
    fn fgn_lag_one_matches_the_closed_form() {
        let n = 1 << 16;
        let x = gen_fgn(0.7, n, 21).unwrap();
        let rho1 = sample_autocorrelation(&x, 1);
        let expected = 2f64.powf(2.0 * 0.7 - 1.0) - 1.0;
        assert!(
            (rho1 - expected).abs() < 0.02,
            "rho(1) = {rho1}, closed form {expected}"
        );
    }

    #[test]
    fn fgn_covariance_matches_theory_for_all_regimes() {
        // raw-moment estimator (the true mean is zero) averaged over seeds;
        // mean-subtracted estimates would carry an O(N^{2H-2}) bias at
        // large H
        let n = 1 << 14;
        let seeds: Vec<u64> = (0..10).collect();
        for &h in &[0.3, 0.5, 0.7, 0.9] {
            let mut per_seed: Vec<Vec<f64>> = Vec::new();
            let mut vars = Vec::new();
            for &seed in &seeds {
                let x = gen_fgn(h, n, seed).unwrap();
                let var = x.iter().map(|v| v * v).sum::<f64>() / n as f64;
                vars.push(var);
                let rho: Vec<f64> = (1..=8)
                    .map(|k| {
                        let cov = (0..n - k).map(|i| x[i] * x[i + k]).sum::<f64>()
                            / (n - k) as f64;
                        cov / var
                    })
                    .collect();
                per_seed.push(rho);
            }
            for k in 1..=8usize {
                let vals: Vec<f64> = per_seed.iter().map(|r| r[k - 1]).collect();
                let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
                    / (vals.len() - 1) as f64)
                    .sqrt();
                let se = (sd / (vals.len() as f64).sqrt()).max(0.002);
                let want = fgn_autocovariance(h, k);
                assert!(
                    (mean - want).abs() < 4.0 * se,
                    "H = {h}, lag {k}: mean {mean} vs theory {want} (se {se})"
                );
            }
            let var_mean = vars.iter().sum::<f64>() / vars.len() as f64;
            assert!((var_mean - 1.0).abs() < 0.05, "H = {h}: variance {var_mean}");
        }
    }

    #[test]
    fn fgn_exp_variant_is_positive() {
        let x = gen_fgn_exp(0.7, 1 << 12, 3, 0.5).unwrap();
        assert!(x.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn cascade_masses_conserve_total_mass() {
        let levels = 12u32;
        let masses = gen_binomial_cascade(0.3, levels, 11).unwrap();
        assert_eq!(masses.len(), 1 << levels);
        let total: f64 = masses.iter().sum();
        let expected = (1u64 << levels) as f64;
        assert!(
            ((total - expected) / expected).abs() < 1e-12,
            "total {total}"
        );
        assert!(masses.iter().all(|&m| m > 0.0));
    }

    #[test]
    fn balanced_cascade_is_uniform() {
        let masses = gen_binomial_cascade(0.5, 10, 4).unwrap();
        assert!(masses.iter().all(|&m| (m - 1.0).abs() < 1e-12));
    }

    #[test]
    fn cascade_is_seed_deterministic() {
        let a = gen_binomial_cascade(0.3, 10, 8).unwrap();
        let b = gen_binomial_cascade(0.3, 10, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oracle_tau_matches_direct_partition_sums() {
        // enumerate Z_n(q) = sum over cells of mass^q at depth 12 via the
        // binomial expansion and compare with the closed form
        let p: f64 = 0.3;
        let oracle = BinomialCascadeOracle::new(p).unwrap();
        let n = 12usize;
        for &q in &[-3.0, -1.0, 0.5, 1.0, 2.0, 4.0] {
            let mut z = 0.0f64;
            let mut binom = 1.0f64;
            for k in 0..=n {
                z += binom * p.powf(q * k as f64) * (1.0 - p).powf(q * (n - k) as f64);
                binom = binom * (n - k) as f64 / (k + 1) as f64;
            }
            let tau_direct = -z.log2() / n as f64;
            assert!(
                (tau_direct - oracle.tau(q)).abs() < 1e-10,
                "q = {q}: direct {tau_direct} vs closed form {}",
                oracle.tau(q)
            );
        }
    }

    #[test]
    fn oracle_fixed_points_and_frozen_values() {
        let oracle = BinomialCascadeOracle::new(0.3).unwrap();
        assert!((oracle.tau(0.0) + 1.0).abs() < 1e-12, "tau(0) = -1");
        assert!(oracle.tau(1.0).abs() < 1e-12, "tau(1) = 0");
        // -log2(0.09 + 0.49) = -log2(0.58)
        assert!((oracle.tau(2.0) - 0.785_875_194_647_152_7).abs() < 1e-12);
        // log2(7/3)
        assert!((oracle.delta_alpha() - 1.222_392_421_336_448).abs() < 1e-12);
    }

    #[test]
    fn oracle_tau_is_concave_and_h_continuous_at_zero() {
        let oracle = BinomialCascadeOracle::new(0.3).unwrap();
        let qs: Vec<f64> = (-20..=30).map(|k| k as f64 * 0.2).collect();
        for w in qs.windows(3) {
            let second = oracle.tau(w[2]) - 2.0 * oracle.tau(w[1]) + oracle.tau(w[0]);
            assert!(second <= 1e-12, "tau must be concave, got {second}");
        }
        let limit = oracle.h(0.0);
        assert!((oracle.h(1e-7) - limit).abs() < 1e-5);
        assert!((oracle.h(-1e-7) - limit).abs() < 1e-5);
    }

    #[test]
    fn piecewise_curve_is_continuous_at_the_break() {
        let sizes = crate::dfa::log_grid(20, 4096, 30).unwrap();
        let s_cross = 300usize;
        let curve = gen_piecewise_curve(0.65, 0.97, s_cross, &sizes, 0.0, 1).unwrap();
        // construction constraint: both branch formulas agree at the break
        let left = (s_cross as f64).powf(0.65);
        let right = (s_cross as f64).powf(0.65 - 0.97) * (s_cross as f64).powf(0.97);
        assert!((left / right - 1.0).abs() < 1e-12);
        assert!(curve.value(0, 0).unwrap() > 0.0);
    }

    #[test]
    fn degenerate_break_is_a_single_power_law() {
        let sizes = crate::dfa::log_grid(20, 4096, 20).unwrap();
        let curve = gen_piecewise_curve(0.8, 0.8, 100, &sizes, 0.0, 1).unwrap();
        for (si, &s) in sizes.iter().enumerate() {
            let expected = (s as f64).powf(0.8);
            let got = curve.value(0, si).unwrap();
            assert!(((got - expected) / expected).abs() < 1e-12);
        }
    }

    #[test]
    fn iid_exp_has_the_requested_mean() {
        let x = gen_iid_exp(0.2, 1 << 14, 9).unwrap();
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        assert!((mean - 5.0).abs() < 0.2, "mean {mean}");
        assert!(x.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn synthetic_ticks_honor_session_windows() {
        let ticks = gen_synthetic_ticks(&inverse_u_pattern(5.0, 10.0), 3, 17, "syn").unwrap();
        assert_eq!(ticks.day_count(), 3);
        for t in ticks.ticks() {
            assert!(t.time_cs <= SESSION_LEN_CS);
        }
        // both sessions trade on every day
        for day in 0..3u32 {
            for session in [Session::Morning, Session::Afternoon] {
                assert!(
                    ticks
                        .ticks()
                        .iter()
                        .any(|t| t.day == day && t.session == session),
                    "day {day} missing {session:?}"
                );
            }
        }
    }

    #[test]
    fn synthetic_ticks_skip_weekends() {
        let ticks = gen_synthetic_ticks(&vec![60.0; BINS_PER_DAY], 7, 3, "syn").unwrap();
        // 2003-01-02 is a Thursday; seven trading days span a weekend
        assert_eq!(ticks.dates().len(), 7);
        assert!(!ticks.dates().contains(&"2003-01-04".to_string()));
        assert!(!ticks.dates().contains(&"2003-01-05".to_string()));
        assert!(ticks.dates().contains(&"2003-01-06".to_string()));
    }

    #[test]
    fn generator_spec_validation_covers_all_kinds() {
        assert!(GeneratorSpec::Fgn {
            hurst: 0.7,
            n: 1024,
            seed: 1
        }
        .validate()
        .is_ok());
        assert!(GeneratorSpec::Fgn {
            hurst: 1.2,
            n: 1024,
            seed: 1
        }
        .validate()
        .is_err());
        assert!(GeneratorSpec::BinomialCascade {
            p: 0.3,
            levels: 16,
            seed: 1
        }
        .validate()
        .is_ok());
        assert!(GeneratorSpec::BinomialCascade {
            p: 1.3,
            levels: 16,
            seed: 1
        }
        .validate()
        .is_err());
        assert!(GeneratorSpec::IidExp {
            rate: 0.0,
            n: 10,
            seed: 1
        }
        .validate()
        .is_err());
    }
}
