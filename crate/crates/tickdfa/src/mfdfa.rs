//! Multifractal detrended fluctuation analysis.
//!
//! The order-2 fluctuation generalizes to the q-th power mean of the local
//! box fluctuations, `F_q(s) = (mean_k f_k^q)^(1/q)`, with the geometric
//! mean `F_0(s) = exp(mean_k ln f_k)` at `q = 0`. Power-law growth
//! `F_q(s) ~ s^h(q)` defines the generalized Hurst exponents; the mass
//! exponents follow as `tau(q) = q h(q) - 1` (support dimension 1), and the
//! singularity spectrum is the Legendre transform `alpha = dtau/dq`,
//! `f(alpha) = q alpha - tau(q)`, evaluated by finite differences on the q
//! grid. The spectrum width `delta_alpha = alpha_max - alpha_min` measures
//! multifractality strength.

use serde::Serialize;

use crate::dfa::{fluctuation_engine, FluctuationCurve, Profile, ScalingFit};
use crate::error::Error;
use crate::Result;

/// Fractal dimension of the geometric support of the series (a line).
pub const SUPPORT_DIMENSION: f64 = 1.0;

const Q_SNAP: f64 = 1e-9;

/// Strictly increasing moment orders containing 0 and 2 exactly.
#[derive(Debug, Clone, Serialize)]
pub struct QGrid {
    values: Vec<f64>,
}

impl QGrid {
    /// Uniform grid from `min` to `max` with the given step. Values within
    /// 1e-9 of an integer snap onto it, so 0 and 2 are exact grid members.
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !min.is_finite() || !max.is_finite() || max <= min {
            return Err(Error::config("q grid needs min < max and step > 0"));
        }
        let count = ((max - min) / step).round() as usize;
        let mut values = Vec::with_capacity(count + 1);
        for k in 0..=count {
            let mut q = min + k as f64 * step;
            if q > max + Q_SNAP {
                break;
            }
            let nearest = q.round();
            if (q - nearest).abs() < Q_SNAP {
                q = nearest;
            }
            values.push(q);
        }
        Self::from_values(values)
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("q grid must be strictly increasing"));
        }
        if !values.contains(&0.0) || !values.contains(&2.0) {
            return Err(Error::config("q grid must contain 0 and 2"));
        }
        Ok(QGrid { values })
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
}

impl Default for QGrid {
    /// The standard analysis grid: -4 to 6 in steps of 0.25.
    fn default() -> Self {
        QGrid::new(-4.0, 6.0, 0.25).expect("default q grid is valid")
    }
}

/// q-order fluctuation functions over the box-size grid.
///
/// The q = 2 column is definitionally identical to [`crate::fluctuation_f2`]
/// (both run through the same engine). Boxes with fluctuations below the
/// zero floor are excluded from the q <= 0 means; the per-cell box counts
/// record how many entered each mean.
pub fn fluctuation_q(
    profile: &Profile,
    sizes: &[usize],
    q_grid: &QGrid,
    detrend_order: usize,
) -> Result<FluctuationCurve> {
    fluctuation_engine(profile, sizes, q_grid.values(), detrend_order)
}

/// Per-q scaling exponents `h(q)` with regression standard errors.
#[derive(Debug, Clone, Serialize)]
pub struct GeneralizedHurst {
    /// Retained q values (those with enough usable grid points).
    pub q: Vec<f64>,
    pub h: Vec<f64>,
    pub stderr: Vec<f64>,
    /// q values dropped for lack of usable points in the fit range.
    pub omitted_q: Vec<f64>,
    pub s_lo: usize,
    pub s_hi: usize,
}

impl GeneralizedHurst {
    pub fn h_at(&self, q: f64) -> Option<f64> {
        self.q.iter().position(|&v| v == q).map(|i| self.h[i])
    }
}

/// Per-q OLS slope of `ln F_q` on `ln s` over the fit range. q values with
/// fewer than five usable points are omitted (recorded in `omitted_q`).
pub fn generalized_hurst(
    curve: &FluctuationCurve,
    range: (usize, usize),
) -> Result<GeneralizedHurst> {
    let (s_lo, s_hi) = range;
    if s_lo >= s_hi {
        return Err(Error::config(format!(
            "fit range [{s_lo}, {s_hi}] is empty"
        )));
    }
    let mut q = Vec::new();
    let mut h = Vec::new();
    let mut stderr = Vec::new();
    let mut omitted = Vec::new();
    for (qi, &qv) in curve.q_values().iter().enumerate() {
        let points = curve.loglog_points(qi, s_lo, s_hi);
        match ScalingFit::from_points(&points, s_lo, s_hi) {
            Ok(fit) => {
                q.push(qv);
                h.push(fit.hurst);
                stderr.push(fit.stderr);
            }
            Err(Error::TooFewPoints { .. }) => omitted.push(qv),
            Err(e) => return Err(e),
        }
    }
    if q.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: q.len(),
            context: "generalized Hurst fit (too many q omitted)",
        });
    }
    Ok(GeneralizedHurst {
        q,
        h,
        stderr,
        omitted_q: omitted,
        s_lo,
        s_hi,
    })
}

/// Mass exponents `tau(q) = q h(q) - D_f` with `D_f = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct MassExponents {
    pub q: Vec<f64>,
    pub tau: Vec<f64>,
    /// Propagated from the h(q) regression errors: `|q| * stderr(h)`.
    pub tau_stderr: Vec<f64>,
    pub support_dimension: f64,
}

pub fn mass_exponents(hurst: &GeneralizedHurst) -> MassExponents {
    let tau = hurst
        .q
        .iter()
        .zip(&hurst.h)
        .map(|(&q, &h)| q * h - SUPPORT_DIMENSION)
        .collect();
    let tau_stderr = hurst
        .q
        .iter()
        .zip(&hurst.stderr)
        .map(|(&q, &se)| q.abs() * se)
        .collect();
    MassExponents {
        q: hurst.q.clone(),
        tau,
        tau_stderr,
        support_dimension: SUPPORT_DIMENSION,
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumPoint {
    pub q: f64,
    /// Local singularity strength, `dtau/dq`.
    pub alpha: f64,
    /// Spectrum value, `q alpha - tau(q)`.
    pub f_alpha: f64,
    pub alpha_stderr: f64,
}

/// Legendre transform of the mass exponents.
#[derive(Debug, Clone, Serialize)]
pub struct SingularitySpectrum {
    pub points: Vec<SpectrumPoint>,
    /// Spectrum width `alpha_max - alpha_min`.
    pub delta_alpha: f64,
    /// Error on the width, propagated from the endpoint alpha errors under
    /// an independence assumption.
    pub delta_alpha_stderr: f64,
    /// Set when the estimated `alpha(q)` is not non-increasing, i.e. the
    /// estimated `tau(q)` is not concave. The spectrum is still emitted.
    pub non_concave: bool,
}

/// Singularity spectrum via central finite differences of `tau(q)` on the
/// grid (one-sided at the endpoints).
pub fn legendre_spectrum(mass: &MassExponents) -> Result<SingularitySpectrum> {
    let n = mass.q.len();
    if n < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: n,
            context: "Legendre transform",
        });
    }
    let q = &mass.q;
    let tau = &mass.tau;
    let se = &mass.tau_stderr;
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi) = if i == 0 {
            (0, 1)
        } else if i == n - 1 {
            (n - 2, n - 1)
        } else {
            (i - 1, i + 1)
        };
        let dq = q[hi] - q[lo];
        let alpha = (tau[hi] - tau[lo]) / dq;
        let alpha_stderr = (se[hi] * se[hi] + se[lo] * se[lo]).sqrt() / dq;
        let f_alpha = q[i] * alpha - tau[i];
        points.push(SpectrumPoint {
            q: q[i],
            alpha,
            f_alpha,
            alpha_stderr,
        });
    }
    let (mut i_min, mut i_max) = (0usize, 0usize);
    for (i, p) in points.iter().enumerate() {
        if p.alpha < points[i_min].alpha {
            i_min = i;
        }
        if p.alpha > points[i_max].alpha {
            i_max = i;
        }
    }
    let delta_alpha = points[i_max].alpha - points[i_min].alpha;
    let delta_alpha_stderr = (points[i_max].alpha_stderr.powi(2)
        + points[i_min].alpha_stderr.powi(2))
    .sqrt();
    let non_concave = points
        .windows(2)
        .any(|w| w[1].alpha > w[0].alpha + 1e-12);
    Ok(SingularitySpectrum {
        points,
        delta_alpha,
        delta_alpha_stderr,
        non_concave,
    })
}

/// Full multifractal result for one fit range.
#[derive(Debug, Clone, Serialize)]
pub struct MultifractalResult {
    pub hurst: GeneralizedHurst,
    pub tau: MassExponents,
    pub spectrum: SingularitySpectrum,
}

/// Fit `h(q)`, form `tau(q)`, and transform to the singularity spectrum in
/// one step.
pub fn multifractal(curve: &FluctuationCurve, range: (usize, usize)) -> Result<MultifractalResult> {
    let hurst = generalized_hurst(curve, range)?;
    let tau = mass_exponents(&hurst);
    let spectrum = legendre_spectrum(&tau)?;
    Ok(MultifractalResult {
        hurst,
        tau,
        spectrum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::{fluctuation_f2, log_grid};
    use crate::ingest::{DurationSeries, DurationUnit};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_profile(seed: u64, n: usize) -> Profile {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let taus: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 + 0.25).collect();
        Profile::from_durations(
            &DurationSeries::from_values("x", &taus, DurationUnit::Seconds).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn default_q_grid_matches_the_standard_choice() {
        let grid = QGrid::default();
        assert_eq!(grid.len(), 41);
        assert_eq!(grid.values()[0], -4.0);
        assert_eq!(*grid.values().last().unwrap(), 6.0);
        assert!(grid.values().contains(&0.0));
        assert!(grid.values().contains(&2.0));
    }

    #[test]
    fn q_grid_requires_zero_and_two() {
        assert!(QGrid::new(0.5, 6.0, 0.25).is_err());
        assert!(QGrid::from_values(vec![-1.0, 0.0, 1.0]).is_err());
        assert!(QGrid::from_values(vec![-1.0, 0.0, 2.0]).is_ok());
    }

    #[test]
    fn q2_column_is_identical_to_f2() {
        let profile = random_profile(3, 4096);
        let sizes = log_grid(20, 1024, 20).unwrap();
        let grid = QGrid::default();
        let full = fluctuation_q(&profile, &sizes, &grid, 3).unwrap();
        let f2 = fluctuation_f2(&profile, &sizes, 3).unwrap();
        let qi = full.q_index(2.0).unwrap();
        for si in 0..sizes.len() {
            assert_eq!(
                full.value(qi, si).unwrap(),
                f2.value(0, si).unwrap(),
                "bitwise identity at s = {}",
                sizes[si]
            );
        }
    }

    #[test]
    fn constant_boxes_give_the_same_value_for_every_q() {
        // engineered so every box fluctuation is identical (periodic profile)
        let s = 32usize;
        let template: Vec<f64> = (0..s).map(|i| ((i * 29) % 13) as f64 + 1.0).collect();
        let mut y = Vec::new();
        for _ in 0..64 {
            y.extend_from_slice(&template);
        }
        let profile = Profile::from_raw(y);
        let grid = QGrid::from_values(vec![-2.0, -1.0, 0.0, 1.0, 2.0, 4.0]).unwrap();
        let curve = fluctuation_q(&profile, &[s], &grid, 3).unwrap();
        let reference = curve.value(0, 0).unwrap();
        for qi in 0..grid.len() {
            let v = curve.value(qi, 0).unwrap();
            assert!(
                ((v - reference) / reference).abs() < 1e-10,
                "q = {}: {v} vs {reference}",
                grid.values()[qi]
            );
        }
    }

    #[test]
    fn closed_form_power_means_for_two_level_boxes() {
        // f_k in {1, 4} with equal counts: F_1 = 2.5, F_-1 = 1.6, F_0 = 2
        let lnf: Vec<f64> = vec![1.0f64.ln(), 4.0f64.ln(), 1.0f64.ln(), 4.0f64.ln()];
        let ln_eps = f64::NEG_INFINITY;
        let (f1, _) = crate::dfa::aggregate_q(1.0, &lnf, ln_eps);
        let (fm1, _) = crate::dfa::aggregate_q(-1.0, &lnf, ln_eps);
        let (f0, _) = crate::dfa::aggregate_q(0.0, &lnf, ln_eps);
        assert!((f1 - 2.5).abs() < 1e-12, "F_1 = {f1}");
        assert!((fm1 - 1.6).abs() < 1e-12, "F_-1 = {fm1}");
        assert!((f0 - 2.0).abs() < 1e-12, "F_0 = {f0}");
    }

    #[test]
    fn power_mean_is_nondecreasing_in_q() {
        let profile = random_profile(17, 8192);
        let sizes = log_grid(20, 2048, 20).unwrap();
        let grid = QGrid::default();
        let curve = fluctuation_q(&profile, &sizes, &grid, 3).unwrap();
        for si in 0..sizes.len() {
            let mut prev = f64::NEG_INFINITY;
            for qi in 0..grid.len() {
                let v = curve.value(qi, si).unwrap();
                assert!(
                    v >= prev * (1.0 - 1e-12),
                    "monotonicity violated at s={} q={}: {v} < {prev}",
                    sizes[si],
                    grid.values()[qi]
                );
                prev = v;
            }
        }
    }

    #[test]
    fn fq_is_continuous_at_q_zero() {
        let profile = random_profile(23, 8192);
        let sizes = vec![64, 96, 128];
        let grid = QGrid::from_values(vec![-0.01, 0.0, 0.01, 2.0]).unwrap();
        let curve = fluctuation_q(&profile, &sizes, &grid, 3).unwrap();
        for si in 0..sizes.len() {
            let f0 = curve.value(1, si).unwrap();
            for qi in [0usize, 2] {
                let f = curve.value(qi, si).unwrap();
                assert!(
                    (f / f0 - 1.0).abs() < 1e-3,
                    "s = {}: F_{} = {f} vs F_0 = {f0}",
                    sizes[si],
                    grid.values()[qi]
                );
            }
        }
    }

    #[test]
    fn exact_synthetic_scaling_recovers_h_of_q() {
        // F_q(s) = s^(0.9 - 0.02 q), exactly log-linear per q
        let sizes = log_grid(20, 4096, 20).unwrap();
        let grid = QGrid::default();
        let mut values = Vec::new();
        for &q in grid.values() {
            let h = 0.9 - 0.02 * q;
            for &s in &sizes {
                values.push((s as f64).powf(h));
            }
        }
        let valid = vec![8usize; values.len()];
        let curve =
            FluctuationCurve::from_parts(grid.values().to_vec(), sizes, values, valid).unwrap();
        let gh = generalized_hurst(&curve, (20, 4096)).unwrap();
        for (&q, &h) in gh.q.iter().zip(&gh.h) {
            let expected = 0.9 - 0.02 * q;
            assert!(
                (h - expected).abs() < 1e-10,
                "q = {q}: h = {h}, expected {expected}"
            );
        }
    }

    #[test]
    fn h2_matches_the_scaling_fit_exactly() {
        let profile = random_profile(5, 8192);
        let sizes = log_grid(20, 2048, 20).unwrap();
        let grid = QGrid::default();
        let curve = fluctuation_q(&profile, &sizes, &grid, 3).unwrap();
        let gh = generalized_hurst(&curve, (20, 2048)).unwrap();
        let fit = crate::dfa::fit_hurst(&curve, (20, 2048)).unwrap();
        let h2 = gh.h_at(2.0).unwrap();
        assert!(
            (h2 - fit.hurst).abs() < 1e-10,
            "h(2) = {h2} vs H = {}",
            fit.hurst
        );
    }

    #[test]
    fn monofractal_mass_exponents_are_linear() {
        let gh = GeneralizedHurst {
            q: vec![-2.0, 0.0, 2.0, 4.0],
            h: vec![0.7; 4],
            stderr: vec![0.01; 4],
            omitted_q: vec![],
            s_lo: 20,
            s_hi: 1000,
        };
        let mass = mass_exponents(&gh);
        for (&q, &tau) in mass.q.iter().zip(&mass.tau) {
            assert!((tau - (0.7 * q - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn tau_at_zero_is_exactly_minus_one() {
        let gh = GeneralizedHurst {
            q: vec![-1.0, 0.0, 1.0, 2.0],
            h: vec![1.3, 1.1, 0.9, 0.97],
            stderr: vec![0.02; 4],
            omitted_q: vec![],
            s_lo: 20,
            s_hi: 300,
        };
        let mass = mass_exponents(&gh);
        assert_eq!(mass.tau[1], -1.0, "tau(0) must be exact");
    }

    #[test]
    fn table_style_tau_at_two() {
        let gh = GeneralizedHurst {
            q: vec![0.0, 1.0, 2.0],
            h: vec![1.0, 0.98, 0.97],
            stderr: vec![0.0; 3],
            omitted_q: vec![],
            s_lo: 300,
            s_hi: 10_000,
        };
        let mass = mass_exponents(&gh);
        assert!((mass.tau[2] - 0.94).abs() < 1e-12);
    }

    #[test]
    fn linear_tau_collapses_the_spectrum_to_a_point() {
        let q: Vec<f64> = (-8..=12).map(|k| k as f64 * 0.5).collect();
        let tau: Vec<f64> = q.iter().map(|&qv| 0.7 * qv - 1.0).collect();
        let mass = MassExponents {
            q: q.clone(),
            tau,
            tau_stderr: vec![0.0; q.len()],
            support_dimension: 1.0,
        };
        let spec = legendre_spectrum(&mass).unwrap();
        for p in &spec.points {
            assert!((p.alpha - 0.7).abs() < 1e-9, "alpha = {}", p.alpha);
            assert!((p.f_alpha - 1.0).abs() < 1e-9, "f = {}", p.f_alpha);
        }
        assert!(spec.delta_alpha < 1e-9);
        assert!(!spec.non_concave);
    }

    #[test]
    fn spectrum_apex_sits_at_the_support_dimension() {
        // any tau with tau(0) = -1: f at the q = 0 grid point is exactly 1
        let q: Vec<f64> = vec![-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0];
        let tau: Vec<f64> = q.iter().map(|&qv| 0.8 * qv - 0.05 * qv * qv - 1.0).collect();
        let mass = MassExponents {
            q: q.clone(),
            tau,
            tau_stderr: vec![0.0; q.len()],
            support_dimension: 1.0,
        };
        let spec = legendre_spectrum(&mass).unwrap();
        let apex = spec.points.iter().find(|p| p.q == 0.0).unwrap();
        assert_eq!(apex.f_alpha, 1.0, "f(alpha(0)) must be exactly 1");
    }

    #[test]
    fn legendre_duality_holds_on_a_concave_tau() {
        // analytic binomial-measure tau, strictly concave
        let p = 0.3f64;
        let tau_fn = |q: f64| -(p.powf(q) + (1.0 - p).powf(q)).log2();
        let q: Vec<f64> = (-16..=24).map(|k| k as f64 * 0.25).collect();
        let tau: Vec<f64> = q.iter().map(|&qv| tau_fn(qv)).collect();
        let mass = MassExponents {
            q: q.clone(),
            tau: tau.clone(),
            tau_stderr: vec![0.0; q.len()],
            support_dimension: 1.0,
        };
        let spec = legendre_spectrum(&mass).unwrap();
        assert!(!spec.non_concave);
        // for concave tau, q alpha - tau(q) is convex in q and its
        // extremum over the grid reproduces the generating q
        for (i, point) in spec.points.iter().enumerate() {
            if i == 0 || i == q.len() - 1 {
                continue;
            }
            let best = (0..q.len())
                .min_by(|&a, &b| {
                    let fa = q[a] * point.alpha - tau[a];
                    let fb = q[b] * point.alpha - tau[b];
                    fa.partial_cmp(&fb).unwrap()
                })
                .unwrap();
            assert!(
                best.abs_diff(i) <= 1,
                "duality: alpha from q = {} extremized at q = {}",
                q[i],
                q[best]
            );
        }
    }

    #[test]
    fn non_concave_tau_is_flagged_but_emitted() {
        let q = vec![-1.0, 0.0, 1.0, 2.0, 3.0];
        // wiggle makes alpha increase between two adjacent intervals
        let tau = vec![-1.0, -0.9, 0.0, 0.1, 1.0];
        let mass = MassExponents {
            q,
            tau,
            tau_stderr: vec![0.0; 5],
            support_dimension: 1.0,
        };
        let spec = legendre_spectrum(&mass).unwrap();
        assert!(spec.non_concave);
        assert!(spec.delta_alpha >= 0.0);
    }
}
