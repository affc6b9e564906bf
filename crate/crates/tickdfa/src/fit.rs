//! Least-squares primitives shared by the detrending, pattern-fitting, and
//! log-log regression code paths.
//!
//! Polynomial fits never touch raw-power normal equations: the abscissa is
//! centered and scaled to `[-1, 1]` and the monomials are orthonormalized by
//! modified Gram-Schmidt (two passes), which keeps fits well-conditioned for
//! segments thousands of points long.

use serde::Serialize;

use crate::error::Error;
use crate::Result;

/// Ordinary least-squares line fit `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope estimate.
    pub slope_stderr: f64,
    pub r_squared: f64,
    /// Residual sum of squares.
    pub sse: f64,
    pub n: usize,
}

impl LineFit {
    pub fn evaluate(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

pub fn fit_line(x: &[f64], y: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() {
        return Err(Error::config("x and y lengths differ"));
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: n,
            context: "line fit",
        });
    }
    let nf = n as f64;
    let x_mean = x.iter().sum::<f64>() / nf;
    let y_mean = y.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - x_mean;
        sxx += dx * dx;
        sxy += dx * (yi - y_mean);
    }
    if sxx <= 0.0 || !sxx.is_finite() {
        return Err(Error::SingularFit);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let mut sse = 0.0;
    let mut sst = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let r = yi - (slope * xi + intercept);
        sse += r * r;
        let d = yi - y_mean;
        sst += d * d;
    }
    let r_squared = if sst > 0.0 { 1.0 - sse / sst } else { 1.0 };
    let slope_stderr = if n > 2 {
        (sse / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(LineFit {
        slope,
        intercept,
        slope_stderr,
        r_squared,
        sse,
        n,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Orthonormal polynomial basis over the centered/scaled index of a
/// fixed-length segment.
///
/// Built once per box size and reused for every box of that size, so
/// detrending one box costs `order + 1` dot products plus one residual pass.
#[derive(Debug, Clone)]
pub struct DetrendBasis {
    len: usize,
    order: usize,
    columns: Vec<Vec<f64>>,
}

impl DetrendBasis {
    pub fn new(len: usize, order: usize) -> Result<Self> {
        // order + 2 leaves at least one residual degree of freedom
        if len < order + 2 {
            return Err(Error::TooFewPoints {
                needed: order + 2,
                got: len,
                context: "detrending segment",
            });
        }
        let t: Vec<f64> = (0..len)
            .map(|i| 2.0 * i as f64 / (len as f64 - 1.0) - 1.0)
            .collect();
        let mut columns: Vec<Vec<f64>> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut v: Vec<f64> = t.iter().map(|&ti| ti.powi(k as i32)).collect();
            for _ in 0..2 {
                for c in &columns {
                    let d = dot(c, &v);
                    for (vi, ci) in v.iter_mut().zip(c) {
                        *vi -= d * ci;
                    }
                }
            }
            let norm = dot(&v, &v).sqrt();
            if norm <= 0.0 || !norm.is_finite() {
                return Err(Error::SingularFit);
            }
            for vi in &mut v {
                *vi /= norm;
            }
            columns.push(v);
        }
        Ok(Self {
            len,
            order,
            columns,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Sum of squared residuals of `segment` after removing its least-squares
    /// polynomial trend of order `self.order()`.
    pub fn residual_sumsq(&self, segment: &[f64]) -> f64 {
        assert_eq!(segment.len(), self.len, "segment length must match basis");
        let coeffs: Vec<f64> = self.columns.iter().map(|c| dot(c, segment)).collect();
        let mut acc = 0.0;
        for (i, &yi) in segment.iter().enumerate() {
            let mut r = yi;
            for (c, col) in coeffs.iter().zip(&self.columns) {
                r -= c * col[i];
            }
            acc += r * r;
        }
        acc
    }
}

/// Least-squares polynomial fit with coefficients reported in the raw
/// abscissa (ascending powers).
#[derive(Debug, Clone, Serialize)]
pub struct PolyFit {
    pub degree: usize,
    /// `coefficients[k]` multiplies `x^k`; length is `degree + 1`.
    pub coefficients: Vec<f64>,
    pub residual_rms: f64,
}

impl PolyFit {
    pub fn evaluate(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coefficients.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Fit a polynomial of the given degree to `(x, y)` pairs.
///
/// Internally the fit runs on the scaled variable `u = (x - c) / h` with an
/// orthonormalized basis; the returned coefficients are converted back to
/// raw powers of `x`.
pub fn polyfit(x: &[f64], y: &[f64], degree: usize) -> Result<PolyFit> {
    if x.len() != y.len() {
        return Err(Error::config("x and y lengths differ"));
    }
    let n = x.len();
    if n < degree + 1 {
        return Err(Error::TooFewPoints {
            needed: degree + 1,
            got: n,
            context: "polynomial fit",
        });
    }
    let (lo, hi) = x
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if degree >= 1 && hi <= lo {
        return Err(Error::SingularFit);
    }
    let center = 0.5 * (lo + hi);
    let half = if hi > lo { 0.5 * (hi - lo) } else { 1.0 };
    let u: Vec<f64> = x.iter().map(|&xi| (xi - center) / half).collect();

    // Orthonormalize monomials of u while tracking their expansion in
    // powers of u, so the fitted combination can be read back off.
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(degree + 1);
    let mut expansions: Vec<Vec<f64>> = Vec::with_capacity(degree + 1);
    for k in 0..=degree {
        let mut v: Vec<f64> = u.iter().map(|&ui| ui.powi(k as i32)).collect();
        let mut e = vec![0.0; degree + 1];
        e[k] = 1.0;
        for _ in 0..2 {
            for (c, ce) in columns.iter().zip(&expansions) {
                let d = dot(c, &v);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= d * ci;
                }
                for (ei, cei) in e.iter_mut().zip(ce) {
                    *ei -= d * cei;
                }
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::SingularFit);
        }
        for vi in &mut v {
            *vi /= norm;
        }
        for ei in &mut e {
            *ei /= norm;
        }
        columns.push(v);
        expansions.push(e);
    }

    let mut coeff_u = vec![0.0; degree + 1];
    let mut fitted = vec![0.0; n];
    for (c, ce) in columns.iter().zip(&expansions) {
        let d = dot(c, y);
        for (fi, ci) in fitted.iter_mut().zip(c) {
            *fi += d * ci;
        }
        for (ui, cei) in coeff_u.iter_mut().zip(ce) {
            *ui += d * cei;
        }
    }
    let mut ss = 0.0;
    for (&yi, &fi) in y.iter().zip(&fitted) {
        let r = yi - fi;
        ss += r * r;
    }
    let residual_rms = (ss / n as f64).sqrt();

    // Convert p(u) with u = (x - center) / half into powers of x by Horner
    // composition: r(x) <- r(x) * (x - center) / half + a_k.
    let mut raw = vec![0.0; degree + 1];
    for &a in coeff_u.iter().rev() {
        let mut next = vec![0.0; degree + 1];
        for (p, &r) in raw.iter().enumerate() {
            if r == 0.0 {
                continue;
            }
            next[p] -= r * center / half;
            if p + 1 <= degree {
                next[p + 1] += r / half;
            }
        }
        next[0] += a;
        raw = next;
    }

    Ok(PolyFit {
        degree,
        coefficients: raw,
        residual_rms,
    })
}
