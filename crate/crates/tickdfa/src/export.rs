//! CSV writers for the plottable analysis outputs.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a file
//! written twice from the same data is byte-identical. Cells with no usable
//! boxes are written as `nan`.

use std::fmt::Write as _;

use crate::dfa::FluctuationCurve;
use crate::intraday::{IntradayPattern, PatternPolyFit};
use crate::mfdfa::{GeneralizedHurst, MassExponents, SingularitySpectrum};

/// `q,s,F,valid_boxes` rows ordered by q, then by size.
pub fn write_curve_csv(curve: &FluctuationCurve) -> String {
    let mut out = String::from("q,s,F,valid_boxes\n");
    for (qi, &q) in curve.q_values().iter().enumerate() {
        for (si, &s) in curve.sizes().iter().enumerate() {
            let f = curve.value(qi, si);
            let _ = writeln!(
                out,
                "{q},{s},{},{}",
                f.map_or_else(|| "nan".to_string(), |v| v.to_string()),
                curve.valid_boxes(qi, si)
            );
        }
    }
    out
}

/// `bin,mean_tau,contributing_days` for all 240 bins; undefined bins carry
/// `nan` and zero days.
pub fn write_pattern_csv(pattern: &IntradayPattern) -> String {
    let mut out = String::from("bin,mean_tau,contributing_days\n");
    for (j, (mean, days)) in pattern
        .means()
        .iter()
        .zip(pattern.contributing_days())
        .enumerate()
    {
        let _ = writeln!(
            out,
            "{j},{},{days}",
            mean.map_or_else(|| "nan".to_string(), |v| v.to_string())
        );
    }
    out
}

/// `bin,mean_tau,polyfit_value` over the defined bins.
pub fn write_pattern_fit_csv(pattern: &IntradayPattern, fit: &PatternPolyFit) -> String {
    let mut out = String::from("bin,mean_tau,polyfit_value\n");
    for (j, mean) in pattern.means().iter().enumerate() {
        if let Some(v) = mean {
            let _ = writeln!(out, "{j},{v},{}", fit.evaluate(j as f64));
        }
    }
    out
}

/// `q,h,h_stderr` for the retained q values.
pub fn write_hq_csv(hurst: &GeneralizedHurst) -> String {
    let mut out = String::from("q,h,h_stderr\n");
    for ((q, h), se) in hurst.q.iter().zip(&hurst.h).zip(&hurst.stderr) {
        let _ = writeln!(out, "{q},{h},{se}");
    }
    out
}

/// `q,tau` for the retained q values.
pub fn write_tau_csv(mass: &MassExponents) -> String {
    let mut out = String::from("q,tau\n");
    for (q, tau) in mass.q.iter().zip(&mass.tau) {
        let _ = writeln!(out, "{q},{tau}");
    }
    out
}

/// `q,alpha,f_alpha` spectrum points.
pub fn write_spectrum_csv(spectrum: &SingularitySpectrum) -> String {
    let mut out = String::from("q,alpha,f_alpha\n");
    for p in &spectrum.points {
        let _ = writeln!(out, "{},{},{}", p.q, p.alpha, p.f_alpha);
    }
    out
}
