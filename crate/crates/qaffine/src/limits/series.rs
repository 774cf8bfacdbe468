//! Difference-quotient series: Richardson extrapolation, log-log order fits
//! and the pass rule shared by every limit check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{real, Real};
use crate::report::LimitReport;
use crate::superlinalg::Mat;

/// Pass rule for one limit check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Acceptance {
    /// Bound on the distance of the extrapolated value to the target.
    pub max_extrapolated: f64,
    /// Admissible band for the fitted order.
    pub order_band: (f64, f64),
    /// Distances at or below this are treated as exact.
    pub exact_floor: f64,
}

impl Acceptance {
    /// First-order difference quotients at working precision `R`; rounding in
    /// the numerator is amplified by `1/h_min`.
    pub fn quotient<R: Real>(h_min: f64) -> Self {
        let eps = R::epsilon().to_f64();
        Self { max_extrapolated: 1e-6, order_band: (0.7, 1.3), exact_floor: (eps * 1e4 / h_min).max(1e-200) }
    }

    /// Direct distances between a family and its limit (no division).
    pub fn direct<R: Real>() -> Self {
        let eps = R::epsilon().to_f64();
        Self { max_extrapolated: 1e-6, order_band: (0.7, 1.3), exact_floor: (eps * 1e4).max(1e-200) }
    }

    pub fn with_order_band(mut self, lo: f64, hi: f64) -> Self {
        self.order_band = (lo, hi);
        self
    }

    pub fn with_max_extrapolated(mut self, x: f64) -> Self {
        self.max_extrapolated = x;
        self
    }
}

/// Quotient matrices along a step sequence and their extrapolation.
#[derive(Clone, Debug)]
pub struct QuotientSeries<R: Real> {
    pub h_values: Vec<f64>,
    pub quotients: Vec<Mat<R>>,
    pub extrapolated: Mat<R>,
    pub rate: Option<f64>,
}

/// First-order Richardson step from `(h1, a1)` and `(h2, a2)`:
/// `(h1·a2 − h2·a1)/(h1 − h2)`, which is `2a(h/2) − a(h)` for `h2 = h1/2`.
pub fn richardson<R: Real>(h1: f64, a1: &Mat<R>, h2: f64, a2: &Mat<R>) -> Mat<R> {
    let w = 1.0 / (h1 - h2);
    &a2.scale(real(h1 * w)) - &a1.scale(real(h2 * w))
}

/// Least-squares slope of `ln d` against `ln h`. `None` if fewer than two
/// positive distances remain.
pub fn fit_order(h: &[f64], d: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = h.iter().zip(d).filter(|(_, &y)| y > 0.0).map(|(&x, &y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Checks that a step sequence is strictly decreasing and positive.
pub fn validate_steps(h: &[f64]) -> Result<()> {
    if h.len() < 2 {
        return Err(Error::Precondition("a limit check needs at least two steps".into()));
    }
    if h.iter().any(|&x| !(x > 0.0 && x.is_finite())) || h.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Precondition("steps must be positive and strictly decreasing".into()));
    }
    Ok(())
}

/// Builds the report for a family `values[i]` at `h[i]` approaching `target`.
pub fn limit_report<R: Real>(
    check_id: impl Into<String>,
    h: &[f64],
    values: Vec<Mat<R>>,
    target: &Mat<R>,
    acc: Acceptance,
) -> Result<(LimitReport, QuotientSeries<R>)> {
    validate_steps(h)?;
    if values.len() != h.len() {
        return Err(Error::Shape { op: "limit_report", detail: format!("{} values for {} steps", values.len(), h.len()) });
    }
    let distances: Vec<f64> = values.iter().map(|m| m.max_abs_diff(target)).collect();
    let n = h.len();
    let extrapolated = richardson(h[n - 2], &values[n - 2], h[n - 1], &values[n - 1]);
    let extrapolated_distance = extrapolated.max_abs_diff(target);
    let exact = distances.iter().all(|&d| d <= acc.exact_floor);
    let rate = if exact { None } else { fit_order(h, &distances) };
    let rate_ok = match rate {
        None => exact,
        Some(p) => p >= acc.order_band.0 && p <= acc.order_band.1,
    };
    let pass = rate_ok && extrapolated_distance <= acc.max_extrapolated && distances.iter().all(|d| d.is_finite());
    let report = LimitReport {
        check_id: check_id.into(),
        h_values: h.to_vec(),
        distances,
        fitted_rate: rate,
        extrapolated_distance,
        pass,
    };
    Ok((report, QuotientSeries { h_values: h.to_vec(), quotients: values, extrapolated, rate }))
}
