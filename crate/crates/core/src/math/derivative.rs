//! Central differences with Richardson extrapolation.

use crate::error::{CasimirError, Result};

/// Number of step sizes in the Richardson ladder.
const DEPTH: usize = 3;
/// Step shrink factor between ladder rows.
const SHRINK: f64 = 2.0;

/// Derivative estimate and its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error_estimate: f64,
}

/// Initial step `max(x/20, floor)` used for temperature derivatives.
pub fn default_step(x: f64, floor: f64) -> f64 {
    (x / 20.0).max(floor)
}

/// Estimates `dF/dx` at `x` from central differences at `h0, h0/2, h0/4`
/// combined in a Richardson table.
///
/// The error estimate is the difference between the two highest orders plus
/// a rounding term `ε·max|F|/h`.
///
/// # Example
///
/// ```
/// use casimir_core::math::derivative_wrt_parameter;
/// let (d, err) = derivative_wrt_parameter(|t: f64| t * t, 3.0, 0.1).unwrap();
/// assert!((d - 6.0).abs() <= err.max(1e-12));
/// ```
pub fn derivative_wrt_parameter<F>(f: F, x: f64, h0: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let d = richardson(|t| Ok(f(t)), x, h0)?;
    Ok((d.value, d.error_estimate))
}

/// Richardson ladder for a fallible function. Requires `x − 2h0 > 0`, so
/// that the function is never evaluated at or below zero (temperatures).
pub fn richardson<F>(f: F, x: f64, h0: f64) -> Result<Derivative>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(h0 > 0.0) || !h0.is_finite() {
        return Err(CasimirError::domain("initial step must be positive"));
    }
    if x - 2.0 * h0 <= 0.0 {
        return Err(CasimirError::domain(format!(
            "x − 2h0 must be positive (x={x}, h0={h0})"
        )));
    }
    let resolution = f64::EPSILON * x.abs().max(1.0) * 16.0;
    if h0 / SHRINK.powi(DEPTH as i32 - 1) < resolution {
        return Err(CasimirError::StepUnderflow {
            step: h0,
            floor: resolution,
        });
    }

    let mut table = [[0.0f64; DEPTH]; DEPTH];
    let mut fmax = 0.0f64;
    let mut h = h0;
    for i in 0..DEPTH {
        // round the step so that x ± h are exactly representable
        let hp = (x + h) - x;
        let fp = f(x + hp)?;
        let fm = f(x - hp)?;
        if !fp.is_finite() || !fm.is_finite() {
            return Err(CasimirError::domain("non-finite function value in derivative"));
        }
        fmax = fmax.max(fp.abs()).max(fm.abs());
        table[i][0] = (fp - fm) / (2.0 * hp);
        let mut factor = 1.0;
        for j in 1..=i {
            factor *= SHRINK * SHRINK;
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
        }
        h /= SHRINK;
    }
    let last = DEPTH - 1;
    let value = table[last][last];
    let truncation = (value - table[last - 1][last - 1]).abs();
    let rounding = f64::EPSILON * fmax / (h * SHRINK);
    Ok(Derivative {
        value,
        error_estimate: truncation + rounding,
    })
}

/// Repeats the Richardson ladder with halving initial steps until the error
/// estimate is below `rel_tol·|value|` (or `abs_tol`). Fails with
/// `StepUnderflow` once the step drops below `floor`.
pub fn richardson_to_tolerance<F>(
    f: F,
    x: f64,
    h0: f64,
    floor: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Derivative>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut h = h0;
    let mut best: Option<Derivative> = None;
    while h >= floor {
        let d = richardson(&f, x, h)?;
        if d.error_estimate <= abs_tol.max(rel_tol * d.value.abs()) {
            return Ok(d);
        }
        match best {
            Some(b) if b.error_estimate <= d.error_estimate => {
                // shrinking no longer helps: noise dominates
                return Err(CasimirError::StepUnderflow { step: h, floor });
            }
            _ => best = Some(d),
        }
        h /= SHRINK;
    }
    Err(CasimirError::StepUnderflow { step: h, floor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn quadratic() {
        let (d, err) = derivative_wrt_parameter(|t| t * t, 3.0, 0.15).unwrap();
        assert!((d - 6.0).abs() < 1e-12);
        assert!(err < 1e-10);
    }

    #[test]
    fn exponential() {
        let (d, err) = derivative_wrt_parameter(f64::exp, 1.0, 0.05).unwrap();
        assert!((d - E).abs() < 1e-9);
        assert!((d - E).abs() <= err);
    }

    #[test]
    fn cube_log() {
        let f = |t: f64| t.powi(3) * t.ln();
        let x: f64 = 0.1;
        let exact = 3.0 * x * x * x.ln() + x * x;
        let (d, err) = derivative_wrt_parameter(f, x, default_step(x, 1e-9)).unwrap();
        assert!((exact + 0.059_078).abs() < 1e-6);
        assert!((d - exact).abs() < 1e-8);
        assert!((d - exact).abs() <= err);
    }

    #[test]
    fn step_too_large_is_domain_error() {
        assert!(matches!(
            derivative_wrt_parameter(|t| t, 1.0, 0.6),
            Err(CasimirError::Domain(_))
        ));
    }

    #[test]
    fn underflow() {
        let e = derivative_wrt_parameter(|t| t, 1.0, 1e-17).unwrap_err();
        assert!(matches!(e, CasimirError::StepUnderflow { .. }));
        let noisy = |t: f64| Ok(t + if (t * 1e9) as i64 % 2 == 0 { 1e-9 } else { 0.0 });
        let e = richardson_to_tolerance(noisy, 1.0, 0.1, 1e-6, 1e-14, 0.0).unwrap_err();
        assert!(matches!(e, CasimirError::StepUnderflow { .. }));
    }
}
