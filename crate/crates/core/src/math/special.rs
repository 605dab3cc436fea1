//! Riemann zeta values and the trilogarithm.

use num_complex::Complex64;

use crate::constants::ZETA3;
use crate::error::{CasimirError, Result};

const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// Bernoulli numbers B_2, B_4, …, B_20.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Direct series Σ z^k/k³, used for |z| ≤ 1/2.
fn li3_series(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = z;
    let mut k = 1.0f64;
    loop {
        let term = power / (k * k * k);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) || k > 200.0 {
            break;
        }
        power *= z;
        k += 1.0;
    }
    sum
}

/// Expansion in w = ln z around z = 1, valid for 1/2 < z ≤ 1.
fn li3_near_one(z: f64) -> f64 {
    let w = z.ln();
    if w == 0.0 {
        return ZETA3;
    }
    let mut sum = ZETA3 + ZETA2 * w + (1.5 - (-w).ln()) * w * w / 2.0;
    // k = 3: ζ(0) = −1/2
    sum += -0.5 * w.powi(3) / 6.0;
    // k = 2m + 2: ζ(1 − 2m) = −B_{2m}/(2m)
    let mut factorial = 6.0;
    let mut power = w.powi(3);
    for k in 4..=22usize {
        factorial *= k as f64;
        power *= w;
        if k % 2 == 1 {
            continue;
        }
        let m = (k - 2) / 2;
        let zeta = -BERNOULLI_EVEN[m - 1] / (2 * m) as f64;
        sum += zeta * power / factorial;
    }
    sum
}

/// Trilogarithm Li₃(z) for real z ∈ [−1, 1].
pub fn polylog3(z: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&z) {
        return Err(CasimirError::domain(format!("Li3 requires |z| <= 1, got {z}")));
    }
    Ok(if z < 0.0 {
        // Li₃(−x) = Li₃(x²)/4 − Li₃(x)
        let x = -z;
        li3_pos(x * x) / 4.0 - li3_pos(x)
    } else {
        li3_pos(z)
    })
}

fn li3_pos(z: f64) -> f64 {
    if z <= 0.5 {
        li3_series(z)
    } else {
        li3_near_one(z)
    }
}

/// Principal square root computed without the polar form, so that both
/// parts keep full relative precision next to the branch cut.
pub fn csqrt(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if x == 0.0 && y == 0.0 {
        return Complex64::new(0.0, y);
    }
    let t = ((x.abs() + x.hypot(y)) / 2.0).sqrt();
    if x >= 0.0 {
        Complex64::new(t, y / (2.0 * t))
    } else {
        Complex64::new(y.abs() / (2.0 * t), t.copysign(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csqrt_accuracy() {
        // Re√(−1 + iδ) = δ/2 to leading order
        let r = csqrt(Complex64::new(-1.0, 1e-12));
        assert!((r.re - 0.5e-12).abs() < 1e-27);
        assert_eq!(r.im, 1.0);
        let r = csqrt(Complex64::new(-4.0, -0.0));
        assert_eq!(r, Complex64::new(0.0, -2.0));
        for &(x, y) in &[(3.0, 4.0), (-3.0, 4.0), (-3.0, -4.0), (0.0, 2.0)] {
            let z = Complex64::new(x, y);
            let r = csqrt(z);
            assert!((r * r - z).norm() < 1e-15);
            assert!(r.re >= 0.0);
        }
    }

    fn brute(z: f64, n: usize) -> f64 {
        (1..=n).rev().map(|k| z.powi(k as i32) / (k as f64).powi(3)).sum()
    }

    #[test]
    fn endpoints() {
        assert_eq!(polylog3(0.0).unwrap(), 0.0);
        assert!((polylog3(1.0).unwrap() - ZETA3).abs() < 1e-15);
        assert!((polylog3(-1.0).unwrap() + 0.75 * ZETA3).abs() < 1e-14);
    }

    #[test]
    fn matches_direct_series() {
        for &z in &[1.0 / 9.0, 1.0 / 81.0, 0.3, 0.5, 0.51, 0.7, 0.9, -0.4, -0.8] {
            let v = polylog3(z).unwrap();
            let oracle = brute(z, 2000);
            assert!((v - oracle).abs() < 1e-13, "z={z}: {v} vs {oracle}");
        }
        assert!((polylog3(1.0 / 9.0).unwrap() - 0.112_707_65).abs() < 1e-8);
    }

    #[test]
    fn known_value_at_half() {
        // Li₃(1/2) = 7ζ(3)/8 − π² ln2/12 + ln³2/6
        let l2 = std::f64::consts::LN_2;
        let exact = 7.0 * ZETA3 / 8.0 - std::f64::consts::PI.powi(2) * l2 / 12.0 + l2.powi(3) / 6.0;
        assert!((polylog3(0.5).unwrap() - exact).abs() < 1e-15);
        assert!((li3_near_one(0.5) - exact).abs() < 1e-14);
    }

    #[test]
    fn rejects_outside_unit_interval() {
        assert!(polylog3(1.5).is_err());
    }
}
