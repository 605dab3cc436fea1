//! Primed Matsubara sums `½·t(0) + Σ_{l≥1} t(l)`.

use rayon::prelude::*;

use crate::error::{CasimirError, Result};

/// Outcome of a primed sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub value: f64,
    /// Estimate of the truncated tail (already included in `value`).
    pub tail_estimate: f64,
    /// Number of terms evaluated (`l = 0..terms`).
    pub terms: u64,
}

/// Tail estimate `Σ_{k>l} t(k)` from the last three terms `t(l−2), t(l−1), t(l)`.
///
/// Terms decaying like `e^{−2aq_l}` are asymptotically geometric; the ratio
/// test is used then. When the successive ratios drift towards one the
/// decay is algebraic, and a power law `C·k^{−p}` is summed with the
/// Euler–Maclaurin correction instead. Returns `None` while the terms are not
/// yet monotonically decaying.
fn tail_estimate(l: u64, t2: f64, t1: f64, t0: f64) -> Option<f64> {
    if t0 == 0.0 && t1 == 0.0 {
        return Some(0.0);
    }
    if t1 == 0.0 || t2 == 0.0 {
        return None;
    }
    let r1 = t0 / t1;
    let r2 = t1 / t2;
    if !(0.0..1.0).contains(&r1) || !(0.0..1.0).contains(&r2) {
        return None;
    }
    // take the slower of the two ratios to stay on the safe side
    let r = r1.max(r2);
    let geometric = t0 * r / (1.0 - r);
    if l < 3 {
        return Some(geometric);
    }
    let lf = l as f64;
    let p1 = -r1.ln() / (lf / (lf - 1.0)).ln();
    let p2 = -r2.ln() / ((lf - 1.0) / (lf - 2.0)).ln();
    let geometric_spread = (r1 - r2).abs() / (1.0 - r);
    let power_spread = (p1 - p2).abs() / p1;
    if power_spread < geometric_spread && p1 > 1.0 {
        let p = p1;
        Some(t0 * (lf / (p - 1.0) - 0.5 + p / (12.0 * lf)))
    } else {
        Some(geometric)
    }
}

struct Accumulator {
    partial: f64,
    compensation: f64,
    history: [f64; 3],
    seen: u64,
}

impl Accumulator {
    fn new() -> Self {
        Self {
            partial: 0.0,
            compensation: 0.0,
            history: [0.0; 3],
            seen: 0,
        }
    }

    /// Kahan-compensated add; returns the tail estimate once available.
    fn push(&mut self, l: u64, term: f64) -> Option<f64> {
        let weighted = if l == 0 { 0.5 * term } else { term };
        let y = weighted - self.compensation;
        let t = self.partial + y;
        self.compensation = (t - self.partial) - y;
        self.partial = t;
        self.history = [self.history[1], self.history[2], term];
        self.seen += 1;
        if self.seen >= 4 {
            tail_estimate(l, self.history[0], self.history[1], self.history[2])
        } else {
            None
        }
    }
}

fn check_args(rel_tol: f64) -> Result<()> {
    if !(rel_tol > 0.0) {
        return Err(CasimirError::domain("rel_tol must be positive"));
    }
    Ok(())
}

/// Sums `½·term(0) + Σ_{l≥1} term(l)`, stopping once the tail
/// estimate drops below `rel_tol·|partial sum|` (or `abs_tol`).
pub fn matsubara_sum<F>(term: F, rel_tol: f64, l_max: u64) -> Result<f64>
where
    F: Fn(u64) -> f64,
{
    matsubara_sum_with(|l| Ok(term(l)), rel_tol, 0.0, l_max).map(|r| r.value)
}

/// Fallible, sequential primed sum with an absolute floor on the tail.
pub fn matsubara_sum_with<F>(term: F, rel_tol: f64, abs_tol: f64, l_max: u64) -> Result<SumResult>
where
    F: Fn(u64) -> Result<f64>,
{
    check_args(rel_tol)?;
    let mut acc = Accumulator::new();
    let mut last_tail = f64::INFINITY;
    for l in 0..=l_max {
        let t = term(l)?;
        if !t.is_finite() {
            return Err(CasimirError::domain(format!("non-finite Matsubara term at l={l}")));
        }
        if let Some(tail) = acc.push(l, t) {
            last_tail = tail;
            if tail.abs() <= abs_tol.max(rel_tol * acc.partial.abs()) {
                return Ok(SumResult {
                    value: acc.partial + tail,
                    tail_estimate: tail,
                    terms: l + 1,
                });
            }
        }
    }
    Err(CasimirError::NonConvergence {
        estimate: acc.partial,
        error: last_tail.abs(),
        context: format!("Matsubara sum not converged at l_max={l_max}"),
    })
}

/// Parallel variant: terms are evaluated in chunks with rayon, but the
/// accumulation and stopping test run in index order, so the result is
/// identical to [`matsubara_sum_with`] for any thread count.
pub fn matsubara_sum_parallel<F>(
    term: F,
    rel_tol: f64,
    abs_tol: f64,
    l_max: u64,
    chunk: u64,
) -> Result<SumResult>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    check_args(rel_tol)?;
    let chunk = chunk.max(1);
    let mut acc = Accumulator::new();
    let mut last_tail = f64::INFINITY;
    let mut start = 0u64;
    while start <= l_max {
        let end = (start + chunk).min(l_max + 1);
        let values: Vec<Result<f64>> = (start..end).into_par_iter().map(&term).collect();
        for (offset, v) in values.into_iter().enumerate() {
            let l = start + offset as u64;
            let t = v?;
            if !t.is_finite() {
                return Err(CasimirError::domain(format!("non-finite Matsubara term at l={l}")));
            }
            if let Some(tail) = acc.push(l, t) {
                last_tail = tail;
                if tail.abs() <= abs_tol.max(rel_tol * acc.partial.abs()) {
                    return Ok(SumResult {
                        value: acc.partial + tail,
                        tail_estimate: tail,
                        terms: l + 1,
                    });
                }
            }
        }
        start = end;
    }
    Err(CasimirError::NonConvergence {
        estimate: acc.partial,
        error: last_tail.abs(),
        context: format!("Matsubara sum not converged at l_max={l_max}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    #[test]
    fn geometric_series() {
        let v = matsubara_sum(|l| (-(l as f64)).exp(), 1e-12, 1000).unwrap();
        let exact = 0.5 + 1.0 / (E - 1.0);
        assert!((v - exact).abs() < 1e-12);
        assert!((v - 1.081_977).abs() < 1e-6);
    }

    #[test]
    fn prime_halves_zeroth_term() {
        let v = matsubara_sum(|l| if l == 0 { 1.0 } else { 0.0 }, 1e-10, 100).unwrap();
        assert_eq!(v, 0.5);
    }

    #[test]
    fn lorentzian_sum() {
        // Σ′ 1/(1+l²) = π·coth(π)/2
        let exact = PI / PI.tanh() / 2.0;
        let v = matsubara_sum(|l| 1.0 / (1.0 + (l * l) as f64), 1e-6, 10_000_000).unwrap();
        assert!((v - exact).abs() < 1e-8, "{v} vs {exact}");
        assert!((v - 1.576_674).abs() < 1e-6);
    }

    #[test]
    fn reports_nonconvergence() {
        let err = matsubara_sum(|l| 1.0 / (1.0 + l as f64), 1e-10, 50).unwrap_err();
        assert!(matches!(err, CasimirError::NonConvergence { .. }));
    }

    #[test]
    fn parallel_matches_sequential_bitwise() {
        let term = |l: u64| Ok(1.0 / (1.0 + (l as f64).powi(3)) + (-(l as f64) * 0.1).exp());
        let seq = matsubara_sum_with(term, 1e-10, 0.0, 1_000_000).unwrap();
        for chunk in [1, 7, 64] {
            let par = matsubara_sum_parallel(term, 1e-10, 0.0, 1_000_000, chunk).unwrap();
            assert_eq!(seq.value.to_bits(), par.value.to_bits());
            assert_eq!(seq.terms, par.terms);
        }
    }
}
