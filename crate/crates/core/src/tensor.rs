//! Polarization tensor of graphene at imaginary Matsubara frequencies.
//!
//! Values are returned as `Π₀₀/ħ` in µm⁻¹ and `Π/ħ` in µm⁻³, so that the
//! reflection coefficients read `r_TM = qΠ₀₀/(qΠ₀₀ + 2k²)` and
//! `r_TE = −Π/(Π + 2k²q)` with `q, k` in µm⁻¹.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{matsubara_energy, thermal_energy, ALPHA_FS, FERMI_VELOCITY_RATIO, HBAR_C};
use crate::error::{CasimirError, Result};
use crate::math::quadrature::{integrate_with_breakpoints, QuadOptions};
use crate::math::special::csqrt;

/// Default relative tolerance of the u-integrals.
pub const DEFAULT_TENSOR_TOL: f64 = 1e-10;

/// Below this `ξ/p` the brackets are evaluated in the static form.
const STATIC_THRESHOLD: f64 = 1e-10;

/// Fermi suppression `e^{−40}` at which the u-integral is truncated.
const FERMI_CUTOFF: f64 = 40.0;

/// Graphene sheet parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrapheneParams {
    /// Energy gap Δ in eV.
    pub gap: f64,
    /// Chemical potential μ in eV.
    pub mu: f64,
    /// Fermi velocity in units of c.
    #[serde(default = "default_vf")]
    pub vf_ratio: f64,
    /// Fine-structure constant.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
}

fn default_vf() -> f64 {
    FERMI_VELOCITY_RATIO
}

fn default_alpha() -> f64 {
    ALPHA_FS
}

impl GrapheneParams {
    pub fn new(gap: f64, mu: f64) -> Result<Self> {
        let p = Self {
            gap,
            mu,
            vf_ratio: FERMI_VELOCITY_RATIO,
            alpha: ALPHA_FS,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn pristine() -> Self {
        Self {
            gap: 0.0,
            mu: 0.0,
            vf_ratio: FERMI_VELOCITY_RATIO,
            alpha: ALPHA_FS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gap >= 0.0 && self.gap.is_finite()) {
            return Err(CasimirError::InvalidParameter("gap must be >= 0".into()));
        }
        if !(self.mu >= 0.0 && self.mu.is_finite()) {
            return Err(CasimirError::InvalidParameter("chemical potential must be >= 0".into()));
        }
        if !(self.vf_ratio > 0.0 && self.vf_ratio < 1.0) {
            return Err(CasimirError::InvalidParameter("vf_ratio must lie in (0, 1)".into()));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(CasimirError::InvalidParameter("alpha must be positive".into()));
        }
        Ok(())
    }

    /// Whether the zero-temperature tensor needs the doped branch (Δ < 2μ).
    pub fn is_doped_branch(&self) -> bool {
        self.gap < 2.0 * self.mu
    }

    /// `Q₀ = 8αμ/(ħc ṽ²)`, the k⊥ → 0 limit of `Π₀₀/ħ` at ξ = 0, T = 0 for Δ < 2μ.
    pub fn q0(&self) -> f64 {
        8.0 * self.alpha * self.mu / (HBAR_C * self.vf_ratio * self.vf_ratio)
    }
}

/// `(Π₀₀/ħ, Π/ħ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TensorPair {
    pub pi00: f64,
    pub pi: f64,
}

impl std::ops::Add for TensorPair {
    type Output = TensorPair;
    fn add(self, o: TensorPair) -> TensorPair {
        TensorPair {
            pi00: self.pi00 + o.pi00,
            pi: self.pi + o.pi,
        }
    }
}

impl std::ops::Sub for TensorPair {
    type Output = TensorPair;
    fn sub(self, o: TensorPair) -> TensorPair {
        TensorPair {
            pi00: self.pi00 - o.pi00,
            pi: self.pi - o.pi,
        }
    }
}

/// `Ψ(x) = 2[x + (1 − x²)·arctan(1/x)]`.
pub fn psi(x: f64) -> f64 {
    if x == 0.0 {
        return PI;
    }
    if x < 4.0 {
        return 2.0 * (x + (1.0 - x * x) * (1.0 / x).atan());
    }
    // Ψ = 2 Σ (−1)^n (4n + 4)/((2n + 1)(2n + 3)) x^{−(2n+1)}
    let inv2 = 1.0 / (x * x);
    let mut power = 1.0 / x;
    let mut sum = 0.0;
    for n in 0..40 {
        let nf = n as f64;
        let term = (4.0 * nf + 4.0) / ((2.0 * nf + 1.0) * (2.0 * nf + 3.0)) * power;
        sum += if n % 2 == 0 { term } else { -term };
        if term < 1e-18 * sum.abs() {
            break;
        }
        power *= inv2;
    }
    2.0 * sum
}

/// Kinematics of one `(ξ, k⊥)` node.
#[derive(Debug, Clone, Copy)]
struct Node {
    kappa: f64,
    k: f64,
    /// `p/c = (ṽ²k² + κ²)^{1/2}` in µm⁻¹.
    p: f64,
    d: f64,
    s_xi: f64,
    s_k: f64,
}

impl Node {
    fn new(params: &GrapheneParams, xi: f64, k: f64) -> Result<Self> {
        if !(xi >= 0.0 && k >= 0.0) || !xi.is_finite() || !k.is_finite() {
            return Err(CasimirError::domain("ξ and k⊥ must be finite and non-negative"));
        }
        let kappa = xi / HBAR_C;
        let vk = params.vf_ratio * k;
        let p = vk.hypot(kappa);
        if p == 0.0 {
            return Err(CasimirError::domain("polarization tensor is undefined at ξ = k⊥ = 0"));
        }
        Ok(Self {
            kappa,
            k,
            p,
            d: params.gap / (HBAR_C * p),
            s_xi: kappa / p,
            s_k: vk / p,
        })
    }
}

/// Zero-temperature tensor of undoped graphene with gap Δ (μ is ignored).
pub fn tensor_zero_t_undoped(params: &GrapheneParams, xi: f64, k: f64) -> Result<TensorPair> {
    let n = Node::new(params, xi, k)?;
    Ok(undoped(params, &n))
}

fn undoped(params: &GrapheneParams, n: &Node) -> TensorPair {
    let common = params.alpha * n.k * n.k * psi(n.d);
    TensorPair {
        pi00: common / n.p,
        pi: common * n.p,
    }
}

/// Zero-temperature tensor for Δ < 2μ.
///
/// The O(y²) parts of `Im(y√(1+y²))` are combined with the constant terms
/// analytically, which removes the cancellation against `Q₀` at small k⊥.
pub fn tensor_zero_t_doped(params: &GrapheneParams, xi: f64, k: f64) -> Result<TensorPair> {
    if !params.is_doped_branch() {
        return Err(CasimirError::Case(format!(
            "doped zero-temperature branch needs Δ < 2μ (Δ={}, μ={})",
            params.gap, params.mu
        )));
    }
    let n = Node::new(params, xi, k)?;
    if k == 0.0 {
        // Π₀₀ ∝ k⊥² and Π ∝ k⊥² as k⊥ → 0 at ξ > 0
        return Ok(TensorPair::default());
    }
    Ok(doped(params, &n))
}

fn doped(params: &GrapheneParams, n: &Node) -> TensorPair {
    let alpha = params.alpha;
    let v = params.vf_ratio;
    let m = 1.0 + n.d * n.d;
    let denom = HBAR_C * v * n.k * m.sqrt();
    let y = Complex64::new(HBAR_C * n.kappa / denom, 2.0 * params.mu / denom);
    let i = Complex64::i();
    // √(1+y²) on the branch continuous from Re y > 0
    let w = csqrt(1.0 + i * y) * csqrt(1.0 - i * y);
    let j = (y / (y + w)).im;
    let l = 2.0 * (y + w).ln().im - PI;
    let q0 = params.q0();
    let vk2 = (v * n.k).powi(2);
    let k2 = n.k * n.k;
    TensorPair {
        pi00: q0 * vk2 / (n.p * (n.p + n.kappa)) - alpha * k2 / n.p * (2.0 * m * j + (2.0 - m) * l),
        pi: q0 * n.kappa * vk2 / (n.p + n.kappa) + alpha * n.p * k2 * (2.0 * m * j - (2.0 - m) * l),
    }
}

/// `1/(e^x + 1)` without overflow.
#[inline]
fn fermi(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (x.exp() + 1.0)
    }
}

/// The two brackets of the thermal integrals at `u`, for `Π₀₀` and `Π`
/// (the latter with the `ξ²/p²` factor moved inside, which keeps it regular
/// at ξ = 0). `s_re = 1 − u² + s_k²D²` is passed in so that callers near
/// its root can supply it without cancellation.
#[inline]
fn brackets(n: &Node, u: f64, s_re: f64) -> (f64, f64) {
    let c = (n.s_k * n.d).powi(2);
    let sx2 = n.s_xi * n.s_xi;
    if n.s_xi < STATIC_THRESHOLD {
        // the square root is real below u* and imaginary above it; for
        // s_ξ below the threshold the O(s_ξ) difference is negligible
        if s_re > 0.0 {
            let root = s_re.sqrt();
            return (1.0 - (s_re - c) / root, (1.0 - s_re) / root);
        }
        return (1.0, 0.0);
    }
    // With A = 1 + i s_ξ u, S − A² = c − s_k²u² exactly, so √S − A is
    // formed without cancellation; both brackets vanish like s_k² as k⊥ → 0.
    let s = Complex64::new(s_re, 2.0 * n.s_xi * u);
    let a = Complex64::new(1.0, n.s_xi * u);
    let root = csqrt(s);
    let inv = root.inv();
    let excess = (c - n.s_k * n.s_k * u * u) / (root + a);
    let b00 = -excess.re + c * inv.re;
    let one_minus_root = Complex64::new(0.0, -n.s_xi * u) - excess;
    let bpi = (1.0 - sx2) * (one_minus_root * inv).re - excess.re;
    (b00, bpi)
}

#[inline]
fn s_real(n: &Node, u: f64) -> f64 {
    1.0 - u * u + (n.s_k * n.d).powi(2)
}

/// Occupation weight in the thermal integrals.
#[derive(Clone, Copy)]
enum Occupation {
    /// `f₊ + f₋`, the full Fermi factor pair.
    Full,
    /// `f₊ + f₋ − θ(u_F − u)`: the shift relative to the T = 0 Fermi sea.
    ShiftFromZero { u_f: f64 },
}

struct Thermal {
    b: f64,
    m: f64,
}

impl Thermal {
    fn weight(&self, u: f64, occ: Occupation) -> f64 {
        let x = self.b * u;
        match occ {
            Occupation::Full => fermi(x + self.m) + fermi(x - self.m),
            Occupation::ShiftFromZero { u_f } => {
                if u < u_f {
                    fermi(x + self.m) - fermi(self.m - x)
                } else {
                    fermi(x + self.m) + fermi(x - self.m)
                }
            }
        }
    }
}

/// Integrates `weight·bracket` for both components over `[D, u_max]`.
fn thermal_integrals(
    n: &Node,
    th: &Thermal,
    occ: Occupation,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    let u_f = th.m / th.b;
    let lower = n.d;
    let upper = lower.max(u_f) + FERMI_CUTOFF / th.b;
    let inv_b = 1.0 / th.b;
    let mut pts = vec![lower + inv_b, lower + 5.0 * inv_b];
    if u_f > lower {
        pts.extend([u_f, u_f - 2.0 * inv_b, u_f + 2.0 * inv_b, u_f - 10.0 * inv_b, u_f + 10.0 * inv_b]);
    }
    let u_star = (1.0 + (n.s_k * n.d).powi(2)).sqrt();
    // u* − D without cancellation, since s_k² + s_ξ² = 1
    let star_gap = (1.0 - (n.s_xi * n.d).powi(2)) / (u_star + lower);
    let has_star = star_gap > 0.0 && u_star < upper;
    let opts = QuadOptions::relative(rel_tol).with_max_subdivisions(20_000);

    let integrate_component = |component: usize| -> Result<f64> {
        let pick = |b: (f64, f64)| if component == 0 { b.0 } else { b.1 };
        if has_star {
            // (near-)inverse-square-root singularity at u*: u = u* ∓ w² on
            // either side, with 1 − u² + s_k²D² = ±w²(2u* ∓ w²) exactly
            let below_pts: Vec<f64> = pts
                .iter()
                .filter(|&&p| p < u_star)
                .map(|&p| (u_star - p).sqrt())
                .collect();
            let left = integrate_with_breakpoints(
                |w: f64| {
                    let w2 = w * w;
                    let u = u_star - w2;
                    2.0 * w * th.weight(u, occ) * pick(brackets(n, u, w2 * (2.0 * u_star - w2)))
                },
                0.0,
                star_gap.sqrt(),
                &below_pts,
                opts,
            )?;
            let above_pts: Vec<f64> = pts
                .iter()
                .filter(|&&p| p > u_star)
                .map(|&p| (p - u_star).sqrt())
                .collect();
            let right = integrate_with_breakpoints(
                |w: f64| {
                    let w2 = w * w;
                    let u = u_star + w2;
                    2.0 * w * th.weight(u, occ) * pick(brackets(n, u, -w2 * (2.0 * u_star + w2)))
                },
                0.0,
                (upper - u_star).sqrt(),
                &above_pts,
                opts,
            )?;
            Ok(left.value + right.value)
        } else {
            let eval = |u: f64| th.weight(u, occ) * pick(brackets(n, u, s_real(n, u)));
            Ok(integrate_with_breakpoints(eval, lower, upper, &pts, opts)?.value)
        }
    };
    Ok((integrate_component(0)?, integrate_component(1)?))
}

fn thermal_setup(params: &GrapheneParams, n: &Node, t: f64) -> Result<Thermal> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(CasimirError::domain("temperature must be positive"));
    }
    let kt = thermal_energy(t);
    Ok(Thermal {
        b: HBAR_C * n.p / (2.0 * kt),
        // the integrand depends on μ only through the symmetric pair f(x ± m)
        m: params.mu.abs() / kt,
    })
}

fn scale_thermal(params: &GrapheneParams, n: &Node, (i00, ipi): (f64, f64)) -> TensorPair {
    let pref = 4.0 * params.alpha * n.p / (params.vf_ratio * params.vf_ratio);
    TensorPair {
        pi00: pref * i00,
        pi: -pref * n.p * n.p * ipi,
    }
}

/// Thermal and doping part `Π^{(1)}` at temperature `t` (K).
pub fn tensor_thermal_part(
    params: &GrapheneParams,
    xi: f64,
    k: f64,
    t: f64,
    rel_tol: f64,
) -> Result<TensorPair> {
    let n = Node::new(params, xi, k)?;
    let th = thermal_setup(params, &n, t)?;
    let ints = thermal_integrals(&n, &th, Occupation::Full, rel_tol)?;
    Ok(scale_thermal(params, &n, ints))
}

/// Temperature shift `Π(T) − Π(0)` computed without subtracting the two.
pub fn tensor_thermal_shift(
    params: &GrapheneParams,
    xi: f64,
    k: f64,
    t: f64,
    rel_tol: f64,
) -> Result<TensorPair> {
    let n = Node::new(params, xi, k)?;
    let th = thermal_setup(params, &n, t)?;
    let occ = if params.is_doped_branch() {
        Occupation::ShiftFromZero {
            u_f: 2.0 * params.mu / (HBAR_C * n.p),
        }
    } else {
        Occupation::Full
    };
    let ints = thermal_integrals(&n, &th, occ, rel_tol)?;
    Ok(scale_thermal(params, &n, ints))
}

/// Tensor at zero temperature: the doped branch for Δ < 2μ, otherwise the
/// undoped one (Δ = 2μ is taken as the limit from the Δ > 2μ side).
pub fn tensor_zero_t(params: &GrapheneParams, xi: f64, k: f64) -> Result<TensorPair> {
    if params.is_doped_branch() {
        tensor_zero_t_doped(params, xi, k)
    } else {
        tensor_zero_t_undoped(params, xi, k)
    }
}

/// Full tensor at imaginary frequency `ξ` (eV), wave number `k` (µm⁻¹) and
/// temperature `t` (K); `t = 0` selects the zero-temperature branches.
pub fn tensor_at(params: &GrapheneParams, xi: f64, k: f64, t: f64, rel_tol: f64) -> Result<TensorPair> {
    if t == 0.0 {
        return tensor_zero_t(params, xi, k);
    }
    let n = Node::new(params, xi, k)?;
    let th = thermal_setup(params, &n, t)?;
    let ints = thermal_integrals(&n, &th, Occupation::Full, rel_tol)?;
    Ok(undoped(params, &n) + scale_thermal(params, &n, ints))
}

/// Tensor at the Matsubara frequency `ξ_l` of temperature `t`.
pub fn tensor_components(params: &GrapheneParams, l: u64, k: f64, t: f64) -> Result<TensorPair> {
    if !(t >= 0.0) {
        return Err(CasimirError::domain("temperature must be non-negative"));
    }
    if t == 0.0 && l > 0 {
        return Err(CasimirError::domain("Matsubara index needs T > 0"));
    }
    tensor_at(params, matsubara_energy(l, t), k, t, DEFAULT_TENSOR_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::K_B;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn fermi_pair_even_in_mu() {
        for &(b, m) in &[(0.3, 2.0), (5.0, 0.7), (40.0, 12.5)] {
            let pos = Thermal { b, m };
            let neg = Thermal { b, m: -m };
            for i in 0..200 {
                let u = 1.0 + 0.05 * i as f64;
                assert_eq!(pos.weight(u, Occupation::Full), neg.weight(u, Occupation::Full));
            }
        }
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(0.0), PI);
        assert!((psi(1.0) - 2.0).abs() < 1e-15);
        assert!((psi(10.0) - 0.265_606_8).abs() < 1e-7);
        for &x in &[3.9f64, 4.0, 4.1, 7.0] {
            let direct = 2.0 * (x + (1.0 - x * x) * (1.0 / x).atan());
            assert!(rel(psi(x), direct) < 1e-12, "{x}");
        }
        assert!(psi(1e6) > 0.0 && (psi(1e6) * 1e6 * 3.0 / 8.0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn undoped_pristine_static() {
        let p = GrapheneParams::pristine();
        let k = 3.0;
        let t = tensor_zero_t_undoped(&p, 0.0, k).unwrap();
        assert!(rel(t.pi00, PI * ALPHA_FS * k / FERMI_VELOCITY_RATIO) < 1e-14);
        let xi = 0.05;
        let t = tensor_zero_t_undoped(&p, xi, k).unwrap();
        let pt = (FERMI_VELOCITY_RATIO * k).hypot(xi / HBAR_C);
        assert!(rel(t.pi00, PI * ALPHA_FS * k * k / pt) < 1e-14);
        assert!(tensor_zero_t_undoped(&p, 0.0, 0.0).is_err());
    }

    #[test]
    fn large_gap_suppresses() {
        let p = GrapheneParams::new(1e4, 0.0).unwrap();
        let t = tensor_zero_t_undoped(&p, 0.1, 1.0).unwrap();
        let p0 = GrapheneParams::new(0.0, 0.0).unwrap();
        let t0 = tensor_zero_t_undoped(&p0, 0.1, 1.0).unwrap();
        assert!(t.pi00 < 1e-4 * t0.pi00 && t.pi < 1e-4 * t0.pi);
    }

    #[test]
    fn doped_static_small_k_limit() {
        let p = GrapheneParams::new(0.0, 0.1).unwrap();
        let t = tensor_zero_t_doped(&p, 0.0, 1e-4).unwrap();
        assert!(rel(t.pi00, p.q0()) < 1e-10);
        assert!(t.pi.abs() < 1e-12 * p.q0());
        assert!(matches!(
            tensor_zero_t_doped(&GrapheneParams::new(0.2, 0.1).unwrap(), 0.1, 1.0),
            Err(CasimirError::Case(_))
        ));
    }

    #[test]
    fn doped_zero_t_equals_fermi_sea_integral() {
        // Π(0) − Π⁰ = prefactor·∫_D^{u_F} bracket du, evaluated independently
        let p = GrapheneParams::new(0.05, 0.1).unwrap();
        for &(xi, k) in &[(0.01, 5.0), (0.001, 50.0), (0.2, 1.0), (0.0, 20.0), (0.02, 300.0)] {
            let n = Node::new(&p, xi, k).unwrap();
            let u_f = 2.0 * p.mu / (HBAR_C * n.p);
            let oracle_b00 = if xi > 0.0 {
                simpson(|u| brackets(&n, u, s_real(&n, u)).0, n.d, u_f, 200_000)
            } else {
                // integrable singularity at u*: substitute u = u* ∓ w²
                let us = (1.0 + n.d * n.d).sqrt();
                let f = |w: f64, sign: f64| {
                    let w2 = w * w;
                    2.0 * w * brackets(&n, us - sign * w2, sign * w2 * (2.0 * us - sign * w2)).0
                };
                simpson(|w| f(w, 1.0), 1e-12, (us - n.d).sqrt(), 20_000)
                    + simpson(|w| f(w, -1.0), 1e-12, (u_f - us).sqrt(), 20_000)
            };
            let exact = tensor_zero_t_doped(&p, xi, k).unwrap() - undoped(&p, &n);
            let pref = 4.0 * p.alpha * n.p / (p.vf_ratio * p.vf_ratio);
            if xi > 0.0 {
                let oracle_bpi = simpson(|u| brackets(&n, u, s_real(&n, u)).1, n.d, u_f, 200_000);
                assert!(rel(exact.pi, -pref * n.p * n.p * oracle_bpi) < 1e-6, "{xi} {k}");
            }
            assert!(rel(exact.pi00, pref * oracle_b00) < 1e-6, "{xi} {k}: {} vs {}", exact.pi00, pref * oracle_b00);
        }
    }

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn thermal_static_pristine_small_k() {
        let p = GrapheneParams::pristine();
        let t = 300.0;
        let th = tensor_thermal_part(&p, 0.0, 1e-6, t, 1e-10).unwrap();
        let expected =
            16.0 * std::f64::consts::LN_2 * ALPHA_FS * K_B * t / (HBAR_C * FERMI_VELOCITY_RATIO.powi(2));
        assert!(rel(th.pi00, expected) < 1e-4, "{} vs {}", th.pi00, expected);
    }

    #[test]
    fn thermal_vanishes_for_cold_undoped() {
        let p = GrapheneParams::new(0.1, 0.0).unwrap();
        let th = tensor_thermal_part(&p, 0.01, 2.0, 1.0, 1e-10).unwrap();
        assert!(th.pi00.abs() < 1e-100 && th.pi.abs() < 1e-100);
    }

    #[test]
    fn static_limit_is_continuous() {
        let p = GrapheneParams::new(0.1, 0.03).unwrap();
        let (k, t) = (3.0, 100.0);
        let at0 = tensor_thermal_part(&p, 0.0, k, t, 1e-10).unwrap();
        let mut last = f64::INFINITY;
        for &xi in &[1e-7, 1e-9, 1e-11, 1e-13] {
            let near = tensor_thermal_part(&p, xi, k, t, 1e-10).unwrap();
            let d = rel(near.pi, at0.pi).max(rel(near.pi00, at0.pi00));
            assert!(d <= last);
            last = d;
        }
        assert!(last < 1e-6, "{last}");
    }

    #[test]
    fn shift_matches_difference() {
        let p = GrapheneParams::new(0.0, 0.1).unwrap();
        let (xi, k, t) = (0.02, 10.0, 200.0);
        let shift = tensor_thermal_shift(&p, xi, k, t, 1e-11).unwrap();
        let diff = tensor_at(&p, xi, k, t, 1e-11).unwrap() - tensor_zero_t(&p, xi, k).unwrap();
        assert!((shift.pi00 - diff.pi00).abs() < 1e-7 * tensor_zero_t(&p, xi, k).unwrap().pi00);
        assert!((shift.pi - diff.pi).abs() < 1e-7 * tensor_zero_t(&p, xi, k).unwrap().pi.abs());
    }
}
