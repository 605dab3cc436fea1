//! Adaptive Gauss–Kronrod quadrature.
//!
//! The workhorse is a globally adaptive G10/K21 scheme: the interval with
//! the largest error estimate is bisected until the summed estimate drops
//! below `max(abs_tol, rel_tol·|I|)`. Semi-infinite ranges are mapped onto
//! `[0, 1)` through `x = s·t/(1 − t)` where `s` is the decay scale.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{CasimirError, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_067_170_460,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Outcome of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Tolerances and limits for adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadOptions {
    pub fn relative(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol: 0.0,
            max_subdivisions: 4000,
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    res_abs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();
    let fc = f(center);
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let x = half * XGK[jtw];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_g += WG[j] * (f1 + f2);
        res_k += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let x = half * XGK[jtwm1];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_k += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let err = (res_k - res_g) * half;
    let res_abs = res_abs * abs_half;
    let res_asc = res_asc * abs_half;
    Segment {
        a,
        b,
        value,
        error: rescale_error(err, res_abs, res_asc),
        res_abs,
    }
}

/// Integrates `f` over `[a, b]` with the interior `breakpoints` used as
/// initial subdivision points (they need not be sorted; points outside
/// `(a, b)` are ignored).
pub fn integrate_with_breakpoints<F>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    opts: QuadOptions,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(CasimirError::domain("integration limits must be finite"));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut pts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|p| p.is_finite() && *p > lo && *p < hi)
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut edges = Vec::with_capacity(pts.len() + 2);
    edges.push(lo);
    edges.extend(pts);
    edges.push(hi);

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in edges.windows(2) {
        let seg = kronrod21(&f, w[0], w[1]);
        evaluations += 21;
        total += seg.value;
        total_err += seg.error;
        heap.push(seg);
    }

    // the rescaled per-segment errors never drop below 50ε·|f|·h, so a
    // request below that floor is treated as met once the floor is reached
    let converged = |total: f64, err: f64, res_abs: f64| {
        err <= opts
            .abs_tol
            .max(opts.rel_tol * total.abs())
            .max(100.0 * f64::EPSILON * res_abs)
    };
    let mut res_abs_total: f64 = heap.iter().map(|s: &Segment| s.res_abs).sum();

    let mut subdivisions = heap.len();
    while !converged(total, total_err, res_abs_total) {
        if subdivisions >= opts.max_subdivisions {
            return finish(total, total_err, evaluations, sign, false);
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval collapsed to machine resolution
            heap.push(worst);
            return finish(total, total_err, evaluations, sign, false);
        }
        let left = kronrod21(&f, worst.a, mid);
        let right = kronrod21(&f, mid, worst.b);
        evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        res_abs_total += left.res_abs + right.res_abs - worst.res_abs;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            // resum to limit drift in the running totals
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.error).sum();
        }
    }
    total = heap.iter().map(|s| s.value).sum();
    total_err = heap.iter().map(|s| s.error).sum();
    finish(total, total_err, evaluations, sign, true)
}

fn finish(
    total: f64,
    err: f64,
    evaluations: usize,
    sign: f64,
    converged: bool,
) -> Result<QuadratureResult> {
    if !total.is_finite() {
        return Err(CasimirError::domain("integrand produced non-finite values"));
    }
    if converged {
        Ok(QuadratureResult {
            value: sign * total,
            abs_error_estimate: err,
            evaluations,
        })
    } else {
        Err(CasimirError::NonConvergence {
            estimate: sign * total,
            error: err,
            context: String::from("subdivision limit reached"),
        })
    }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_with_breakpoints(f, a, b, &[], opts)
}

/// Integrates an exponentially decaying `f` over `[0, ∞)`.
///
/// `decay_scale` sets the mapping `x = s·t/(1 − t)`; the result is
/// insensitive to it within a factor of a few.
pub fn integrate_semi_infinite<F>(f: F, decay_scale: f64, rel_tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_with(f, decay_scale, QuadOptions::relative(rel_tol))
}

/// Same as [`integrate_semi_infinite`] with full control over tolerances.
pub fn integrate_semi_infinite_with<F>(
    f: F,
    decay_scale: f64,
    opts: QuadOptions,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(decay_scale > 0.0 && decay_scale.is_finite()) {
        return Err(CasimirError::domain("decay scale must be positive"));
    }
    if !(opts.rel_tol > 0.0 || opts.abs_tol > 0.0) {
        return Err(CasimirError::domain("tolerance must be positive"));
    }
    let mapped = |t: f64| {
        let one_minus = 1.0 - t;
        let x = decay_scale * t / one_minus;
        let jac = decay_scale / (one_minus * one_minus);
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v * jac
        }
    };
    integrate(mapped, 0.0, 1.0, opts)
}

/// Runs a quadrature on a fallible integrand: the first error returned by
/// `f` aborts the integration and is propagated.
pub fn with_fallible<F, Q>(f: F, quad: Q) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
    Q: FnOnce(&dyn Fn(f64) -> f64) -> Result<QuadratureResult>,
{
    let failure: std::cell::RefCell<Option<CasimirError>> = std::cell::RefCell::new(None);
    let wrapped = |x: f64| {
        if failure.borrow().is_some() {
            return 0.0;
        }
        match f(x) {
            Ok(v) => v,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let r = quad(&wrapped);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    r
}
