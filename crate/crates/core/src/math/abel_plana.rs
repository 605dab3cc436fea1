//! Sum-minus-integral differences `Σ′F(l) − ∫₀^∞F(t)dt` via the
//! Abel–Plana formula.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{integrate_semi_infinite_with, QuadOptions};
use super::special::BERNOULLI_EVEN;
use crate::error::{CasimirError, Result};

/// `1/(e^w − 1)` without overflow for large `|Re w|`.
fn bose(w: Complex64) -> Complex64 {
    if w.re > 0.0 {
        let e = (-w).exp();
        e / (1.0 - e)
    } else {
        let e = w.exp();
        if (e - 1.0).norm() < 1e-3 {
            // expm1 for small arguments
            let em1 = w * (1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0 + w * w * w * w / 120.0);
            1.0 / em1
        } else {
            1.0 / (e - 1.0)
        }
    }
}

/// Returns `Σ′_{l≥0}F(l) − ∫₀^∞F(t)dt` for `F` analytic in the right
/// half-plane and decaying along the real axis.
///
/// The contour `i∫₀^∞[F(it) − F(−it)]/(e^{2πt} − 1)dt` is rotated onto the
/// rays `arg z = ±π/4`; the small arc at the origin contributes
/// `F(0)/4`. Poles sitting on the imaginary axis are thereby kept off the
/// integration path.
pub fn abel_plana_difference<F>(f: F, rel_tol: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    abel_plana_on_ray(f, PI / 4.0, rel_tol)
}

/// Abel–Plana difference with the contour placed on the rays `arg z = ±θ`,
/// `0 < θ ≤ π/2`. For `θ = π/2` this is the textbook imaginary-axis form.
pub fn abel_plana_on_ray<F>(f: F, theta: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(theta > 0.0 && theta <= PI / 2.0) {
        return Err(CasimirError::domain("ray angle must lie in (0, π/2]"));
    }
    let f0 = f(Complex64::new(0.0, 0.0));
    let far = f(Complex64::new(1e3, 0.0));
    if !f0.is_finite() || !far.is_finite() {
        return Err(CasimirError::domain("F is not finite on the real axis"));
    }
    if far.norm() > 1e-3 * f0.norm().max(f64::MIN_POSITIVE) {
        return Err(CasimirError::domain(
            "F does not decay along the real axis; Σ′F − ∫F is not defined",
        ));
    }
    let up = Complex64::from_polar(1.0, theta);
    let down = up.conj();
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let bad = std::cell::Cell::new(false);
    let integrand = |t: f64| {
        if t == 0.0 {
            return 0.0;
        }
        let z1 = up * t;
        let z2 = down * t;
        let v = up * f(z1) * bose(-two_pi_i * z1) + down * f(z2) * bose(two_pi_i * z2);
        if !v.is_finite() {
            bad.set(true);
            return 0.0;
        }
        v.re
    };
    let decay = 1.0 / (2.0 * PI * theta.sin());
    let opts = QuadOptions::relative(rel_tol).with_abs_tol(rel_tol * 1e-3 * f0.norm());
    let r = integrate_semi_infinite_with(integrand, decay, opts)?;
    if bad.get() {
        return Err(CasimirError::domain("F returned non-finite values on the contour"));
    }
    Ok(r.value + (0.5 - theta / PI) * f0.re)
}

/// `Σ′F(l) − ∫₀^∞F(t)dt` of `e^{−ct}`, in closed form.
pub fn exponential_difference(c: f64) -> f64 {
    if c < 0.5 {
        // Σ B_{2n} c^{2n−1}/(2n)!
        let mut power = c;
        let mut factorial = 2.0;
        let mut sum = 0.0;
        for (i, b) in BERNOULLI_EVEN.iter().enumerate() {
            sum += b * power / factorial;
            let n = 2.0 * (i + 1) as f64;
            factorial *= (n + 1.0) * (n + 2.0);
            power *= c * c;
        }
        sum
    } else {
        0.5 + 1.0 / c.exp_m1() - 1.0 / c
    }
}

/// Abel–Plana difference for `F` real on the real axis (`F(z̄) = conj F(z)`),
/// evaluated on the ray `arg z = π/4` only.
///
/// `F(0)·e^{−cz}` is subtracted before integrating and its difference added
/// back in closed form, so the contour integrand is `O(z)` at the origin.
/// `f` may fail; the first error is returned. `abs_tol` is an absolute floor
/// for the contour integral.
pub fn abel_plana_real_symmetric<F>(f: F, c: f64, rel_tol: f64, abs_tol: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let f0 = f(Complex64::new(0.0, 0.0))?.re;
    if !f0.is_finite() {
        return Err(CasimirError::domain("F(0) is not finite"));
    }
    if !(c > 0.0) {
        return Err(CasimirError::domain("subtraction rate must be positive"));
    }
    let contour = abel_plana_contour(|z| Ok(f(z)? - f0 * (-c * z).exp()), rel_tol, abs_tol)?;
    Ok(contour + f0 * exponential_difference(c))
}

/// Contour part of the Abel–Plana difference on the ray `arg z = π/4` for a
/// function `G` that is real on the real axis and vanishes at the origin:
/// returns `Σ′G(l) − ∫₀^∞G(t)dt`. Callers subtract a function with a known
/// difference from their `F` inside their own integrals, which keeps the
/// cancellation out of the contour.
pub fn abel_plana_contour<G>(g: G, rel_tol: f64, abs_tol: f64) -> Result<f64>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let theta = PI / 4.0;
    let up = Complex64::from_polar(1.0, theta);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let failure: std::cell::RefCell<Option<CasimirError>> = std::cell::RefCell::new(None);
    let integrand = |t: f64| {
        if t == 0.0 || failure.borrow().is_some() {
            return 0.0;
        }
        let z = up * t;
        match g(z) {
            Ok(v) if v.is_finite() => 2.0 * (up * v * bose(-two_pi_i * z)).re,
            Ok(_) => {
                *failure.borrow_mut() = Some(CasimirError::domain(
                    "F returned non-finite values on the contour",
                ));
                0.0
            }
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let decay = 1.0 / (2.0 * PI * theta.sin());
    let opts = QuadOptions::relative(rel_tol).with_abs_tol(abs_tol);
    let r = integrate_semi_infinite_with(integrand, decay, opts);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    // G vanishes at the origin, so there is no arc term
    Ok(r?.value)
}

/// `Σ′_{l≥0}e^{−c²l²} − ∫₀^∞e^{−c²t²}dt`, through the Poisson-summed theta
/// series for `c ≤ π`.
pub fn gaussian_difference(c: f64) -> f64 {
    if c <= PI {
        let mut sum = 0.0;
        for n in 1..20 {
            let term = (-(PI * n as f64 / c).powi(2)).exp();
            sum += term;
            if term < 1e-18 * sum.max(1e-300) {
                break;
            }
        }
        PI.sqrt() / c * sum
    } else {
        let mut sum = 0.5;
        for l in 1..20 {
            let term = (-(c * l as f64).powi(2)).exp();
            sum += term;
            if term < 1e-18 {
                break;
            }
        }
        sum - PI.sqrt() / (2.0 * c)
    }
}

/// Abel–Plana difference when the caller supplies `Im F(it + 0)` on the
/// positive imaginary axis (with `F` real on the real axis, so that
/// `F(−it) = conj F(it)`): returns `−2∫₀^∞ Im F(it)/(e^{2πt} − 1) dt`.
///
/// `abs_tol` is an absolute floor used when the result itself is tiny.
pub fn abel_plana_from_axis<G>(im_on_axis: G, rel_tol: f64, abs_tol: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let failure: std::cell::RefCell<Option<CasimirError>> = std::cell::RefCell::new(None);
    let integrand = |t: f64| {
        if t == 0.0 || failure.borrow().is_some() {
            return 0.0;
        }
        match im_on_axis(t) {
            Ok(v) if v.is_finite() => {
                let w = 2.0 * PI * t;
                let weight = if w > 700.0 { 0.0 } else { 1.0 / w.exp_m1() };
                -2.0 * v * weight
            }
            Ok(_) => {
                *failure.borrow_mut() =
                    Some(CasimirError::domain("non-finite value on the imaginary axis"));
                0.0
            }
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let opts = QuadOptions::relative(rel_tol).with_abs_tol(abs_tol);
    let r = integrate_semi_infinite_with(integrand, 1.0 / (2.0 * PI), opts);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn exponential() {
        let v = abel_plana_difference(|z| (-z).exp(), 1e-12).unwrap();
        let exact = 0.5 + 1.0 / (E - 1.0) - 1.0;
        assert!((v - exact).abs() < 1e-11, "{v}");
    }

    #[test]
    fn lorentzian_with_poles_on_the_axis() {
        let v = abel_plana_difference(|z| 1.0 / (1.0 + z * z), 1e-12).unwrap();
        let exact = PI * (1.0 / PI.tanh() - 1.0) / 2.0;
        assert!((v - exact).abs() < 1e-11, "{v} vs {exact}");
        assert!((v - 0.005_877_9).abs() < 1e-6);
    }

    #[test]
    fn imaginary_axis_form_matches_rotated() {
        let f = |z: Complex64| (-z * 0.7).exp() / (z + 2.0);
        let a = abel_plana_on_ray(f, PI / 2.0, 1e-12).unwrap();
        let b = abel_plana_on_ray(f, PI / 3.0, 1e-12).unwrap();
        assert!((a - b).abs() < 1e-11);
        let c = abel_plana_from_axis(|t| Ok(f(Complex64::new(0.0, t)).im), 1e-12, 0.0).unwrap();
        assert!((a - c).abs() < 1e-11);
    }

    #[test]
    fn symmetric_form_matches() {
        let f = |z: Complex64| (-z * 0.7).exp() / (z + 2.0);
        let a = abel_plana_difference(f, 1e-12).unwrap();
        for &c in &[0.01, 0.7, 3.0] {
            let b = abel_plana_real_symmetric(|z| Ok(f(z)), c, 1e-12, 0.0).unwrap();
            assert!((a - b).abs() < 1e-12, "{c}: {a} {b}");
        }
        for &c in &[0.1, 0.3, 0.49, 0.51, 2.0] {
            let oracle = 0.5 + 1.0 / (f64::exp(c) - 1.0) - 1.0 / c;
            assert!((exponential_difference(c) - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_difference_both_branches() {
        for &c in &[0.3, 1.0, 2.5, 3.2, 6.0] {
            let direct: f64 = 0.5 + (1..200).map(|l| (-(c * l as f64).powi(2)).exp()).sum::<f64>()
                - PI.sqrt() / (2.0 * c);
            assert!((gaussian_difference(c) - direct).abs() < 1e-14, "{c}");
        }
        assert_eq!(gaussian_difference(1e-3), 0.0);
    }

    #[test]
    fn contour_with_gaussian_subtraction() {
        let f = |z: Complex64| (-z * 0.7).exp() / (z + 2.0);
        let exact = abel_plana_difference(f, 1e-12).unwrap();
        let f0 = 0.5;
        for &c in &[0.05, 0.7] {
            let contour =
                abel_plana_contour(|z| Ok(f(z) - f0 * (-(z * c) * (z * c)).exp()), 1e-12, 0.0).unwrap();
            let v = contour + f0 * gaussian_difference(c);
            assert!((v - exact).abs() < 1e-12, "{c}: {v} {exact}");
        }
    }

    #[test]
    fn slowly_varying_function_small_difference() {
        // F(t) = e^{−τt}: the difference is τ/12 + O(τ³), far below F(0)
        let tau = 1e-3;
        let v = abel_plana_real_symmetric(|z| Ok((-tau * z).exp() / (1.0 + 0.5 * tau * z)), 0.5, 1e-10, 0.0)
            .unwrap();
        let oracle: f64 = {
            let mut s = 0.5;
            let mut l = 1.0;
            loop {
                let term = (-tau * l).exp() / (1.0 + 0.5 * tau * l);
                s += term;
                if term < 1e-18 {
                    break;
                }
                l += 1.0;
            }
            // ∫₀^∞ e^{−τt}/(1+τt/2) dt = (2/τ)·e²·E₁(2)
            let e1_2 = 0.048_900_510_708_061_12;
            s - 2.0 / tau * (2.0f64).exp() * e1_2
        };
        assert!((v - oracle).abs() < 1e-9, "{v} vs {oracle}");
    }

    #[test]
    fn constant_is_out_of_domain() {
        let err = abel_plana_difference(|_| Complex64::new(1.0, 0.0), 1e-8).unwrap_err();
        assert!(matches!(err, CasimirError::Domain(_)));
    }

    #[test]
    fn non_finite_on_contour_is_domain_error() {
        let err = abel_plana_from_axis(|_| Ok(f64::NAN), 1e-8, 0.0).unwrap_err();
        assert!(matches!(err, CasimirError::Domain(_)));
    }
}
