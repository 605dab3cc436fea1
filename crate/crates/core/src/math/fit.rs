//! Least-squares power-law fits `|y| ≈ C·T^p` with an optional logarithmic
//! factor `|ln(T/T0)|`.

use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};

/// Outcome of [`fit_scaling`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub log_factor: bool,
    /// `C` in `|y| = C·T^p` or `|y| = C·T^p·|ln(T/T0)|`.
    pub prefactor: f64,
    /// Root-mean-square residual of `ln|y|`.
    pub rms_residual: f64,
    /// Reference scale `T0` of the logarithm (1 when unused).
    pub log_reference: f64,
    /// Standard error of the exponent.
    pub exponent_std_error: f64,
}

/// Residuals with rms difference below this fraction count as a tie.
const TIE_FRACTION: f64 = 0.05;

struct Line {
    slope: f64,
    intercept: f64,
    rms: f64,
    slope_se: f64,
}

fn least_squares(x: &[f64], y: &[f64]) -> Line {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let ss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - slope * a - intercept).powi(2))
        .sum();
    let slope_se = if sxx > 0.0 && n > 2.0 {
        (ss / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Line {
        slope,
        intercept,
        rms: (ss / n).sqrt(),
        slope_se,
    }
}

fn validate(points: &[(f64, f64)]) -> Result<()> {
    if points.len() < 5 {
        return Err(CasimirError::DegenerateData(format!(
            "need at least 5 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(t, y)| !(t > 0.0) || !t.is_finite() || !y.is_finite()) {
        return Err(CasimirError::DegenerateData("T must be positive and finite".into()));
    }
    let positive = points[0].1 > 0.0;
    if points.iter().any(|&(_, y)| y == 0.0 || (y > 0.0) != positive) {
        return Err(CasimirError::DegenerateData("y changes sign or vanishes".into()));
    }
    Ok(())
}

/// Fit of `ln|y| − ln|ln(T/T0)|` against `ln T` for a fixed `T0`.
fn log_model(lt: &[f64], ly: &[f64], ln_t0: f64) -> Line {
    let adjusted: Vec<f64> = lt
        .iter()
        .zip(ly)
        .map(|(t, y)| y - (t - ln_t0).abs().ln())
        .collect();
    least_squares(lt, &adjusted)
}

/// Golden-section minimum of the log-model rms over `ln T0 ∈ [lo, hi]`.
fn best_reference(lt: &[f64], ly: &[f64], lo: f64, hi: f64) -> (f64, Line) {
    // coarse scan first, the rms is not guaranteed unimodal
    let n = 64;
    let mut best = (lo, f64::INFINITY);
    for i in 0..=n {
        let c = lo + (hi - lo) * i as f64 / n as f64;
        let r = log_model(lt, ly, c).rms;
        if r < best.1 {
            best = (c, r);
        }
    }
    let step = (hi - lo) / n as f64;
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if log_model(lt, ly, c).rms < log_model(lt, ly, d).rms {
            b = d;
        } else {
            a = c;
        }
    }
    let c = 0.5 * (a + b);
    (c, log_model(lt, ly, c))
}

/// Fits `ln|y| = p·ln T + c` and, if `try_log`, also
/// `ln|y| = p·ln T + ln|ln(T/T0)| + c` with the reference `T0` chosen
/// outside the sampled range by a one-dimensional search. The log model
/// wins only if its rms residual is at least 5% lower.
pub fn fit_scaling(points: &[(f64, f64)], try_log: bool) -> Result<ScalingFit> {
    validate(points)?;
    let lt: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.abs().ln()).collect();
    let plain = least_squares(&lt, &ly);
    let plain_fit = ScalingFit {
        exponent: plain.slope,
        log_factor: false,
        prefactor: plain.intercept.exp(),
        rms_residual: plain.rms,
        log_reference: 1.0,
        exponent_std_error: plain.slope_se,
    };
    if !try_log {
        return Ok(plain_fit);
    }
    let (tmin, tmax) = lt
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let span = (tmax - tmin).max(1e-3);
    let margin = 1e-3 * span;
    let above = best_reference(&lt, &ly, tmax + margin, tmax + 40.0 * span.max(1.0));
    let below = best_reference(&lt, &ly, tmin - 40.0 * span.max(1.0), tmin - margin);
    let (ln_t0, line) = if above.1.rms <= below.1.rms { above } else { below };
    let prefer_log = plain.rms > 1e-12 && line.rms < (1.0 - TIE_FRACTION) * plain.rms;
    if !prefer_log {
        return Ok(plain_fit);
    }
    Ok(ScalingFit {
        exponent: line.slope,
        log_factor: true,
        prefactor: line.intercept.exp(),
        rms_residual: line.rms,
        log_reference: ln_t0.exp(),
        exponent_std_error: line.slope_se,
    })
}
