//! Reflection coefficients on the imaginary frequency axis.
//!
//! Arguments: `xi` is `ħξ` in eV, `k` is k⊥ in µm⁻¹, `t` is T in K.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::HBAR_C;
use crate::error::{CasimirError, Result};
use crate::math::special::csqrt;
use crate::response::{
    permittivity_with_damping, DielectricModel, HydrodynamicSheet, Permittivity,
};
use crate::tensor::{
    tensor_at, tensor_thermal_shift, tensor_zero_t, GrapheneParams, TensorPair,
    DEFAULT_TENSOR_TOL,
};

/// `(r_TM, r_TE)` at one node.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ReflectionPair {
    pub r_tm: f64,
    pub r_te: f64,
}

impl ReflectionPair {
    pub fn new(r_tm: f64, r_te: f64) -> Self {
        Self { r_tm, r_te }
    }
}

/// Material families that can reflect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "material", rename_all = "snake_case")]
pub enum ReflectionProvider {
    IdealMetal,
    Fresnel(DielectricModel),
    Hydrodynamic(HydrodynamicSheet),
    GraphenePt(GrapheneParams),
    GrapheneCorrelation(GrapheneParams),
    GrapheneConductivity(GrapheneParams),
}

fn q_of(xi: f64, k: f64) -> f64 {
    k.hypot(xi / HBAR_C)
}

fn check_node(xi: f64, k: f64) -> Result<()> {
    if !(xi >= 0.0 && k >= 0.0) || !xi.is_finite() || !k.is_finite() {
        return Err(CasimirError::domain("ξ and k⊥ must be finite and non-negative"));
    }
    if xi == 0.0 && k == 0.0 {
        return Err(CasimirError::domain("reflection coefficients are undefined at ξ = k⊥ = 0"));
    }
    Ok(())
}

/// Fresnel coefficients of a half-space with Drude damping `gamma`.
fn fresnel_with_damping(model: &DielectricModel, xi: f64, k: f64, gamma: f64) -> Result<ReflectionPair> {
    check_node(xi, k)?;
    let mu = model.permeability.value();
    if let Permittivity::IdealMetal = model.permittivity {
        return Ok(ReflectionPair::new(1.0, -1.0));
    }
    if xi == 0.0 {
        return Ok(match model.permittivity {
            Permittivity::IdealMetal => unreachable!(),
            Permittivity::Plasma { omega_p } => {
                let kp = omega_p / HBAR_C;
                let kl = (k * k + mu * kp * kp).sqrt();
                ReflectionPair::new(1.0, (mu * k - kl) / (mu * k + kl))
            }
            Permittivity::Drude { .. } if gamma > 0.0 => {
                ReflectionPair::new(1.0, (mu - 1.0) / (mu + 1.0))
            }
            Permittivity::Drude { omega_p, .. } => {
                // no damping left: the plasma limit
                let kp = omega_p / HBAR_C;
                let kl = (k * k + mu * kp * kp).sqrt();
                ReflectionPair::new(1.0, (mu * k - kl) / (mu * k + kl))
            }
            Permittivity::ConstantEpsWithDc { dc, .. } if dc > 0.0 => {
                ReflectionPair::new(1.0, (mu - 1.0) / (mu + 1.0))
            }
            Permittivity::ConstantEps { eps0 } | Permittivity::ConstantEpsWithDc { eps0, .. } => {
                ReflectionPair::new((eps0 - 1.0) / (eps0 + 1.0), (mu - 1.0) / (mu + 1.0))
            }
        });
    }
    let eps = permittivity_with_damping(model, xi, gamma)?;
    let kappa = xi / HBAR_C;
    let q = q_of(xi, k);
    // k_l − q without cancellation when εμ ≈ 1
    let dk = (eps * mu - 1.0) * kappa * kappa;
    let kl = (q * q + dk).sqrt();
    let diff = dk / (kl + q);
    let r_tm = ((eps - 1.0) * q - diff) / (eps * q + kl);
    let r_te = ((mu - 1.0) * q - diff) / (mu * q + kl);
    Ok(ReflectionPair::new(r_tm, r_te))
}

/// Fresnel coefficients of a dielectric half-space at the model's
/// reference damping; ξ = 0 uses the analytic zero-frequency limits.
pub fn fresnel(model: &DielectricModel, xi: f64, k: f64) -> Result<ReflectionPair> {
    let gamma = match model.permittivity {
        Permittivity::Drude { gamma, .. } => gamma,
        _ => 0.0,
    };
    fresnel_with_damping(model, xi, k, gamma)
}

/// Two-dimensional free-electron gas (hydrodynamic) sheet.
pub fn hydrodynamic(sheet: &HydrodynamicSheet, xi: f64, k: f64) -> Result<ReflectionPair> {
    check_node(xi, k)?;
    let kk = sheet.k();
    let q = q_of(xi, k);
    let kappa = xi / HBAR_C;
    Ok(ReflectionPair::new(q * kk / (q * kk + kappa * kappa), -kk / (kk + q)))
}

fn from_tensor(tp: TensorPair, q: f64, k: f64) -> ReflectionPair {
    let k2 = k * k;
    ReflectionPair::new(
        q * tp.pi00 / (q * tp.pi00 + 2.0 * k2),
        -tp.pi / (tp.pi + 2.0 * k2 * q),
    )
}

/// Graphene coefficients from the polarization tensor.
pub fn graphene_pt(params: &GrapheneParams, xi: f64, k: f64, t: f64) -> Result<ReflectionPair> {
    check_node(xi, k)?;
    let tp = tensor_at(params, xi, k, t, DEFAULT_TENSOR_TOL)?;
    Ok(from_tensor(tp, q_of(xi, k), k))
}

/// `e² = αħc` in eV·µm.
fn e_squared(params: &GrapheneParams) -> f64 {
    params.alpha * HBAR_C
}

/// Density-density correlation functions `(χ∥, χ⊥)` in eV⁻¹µm⁻².
/// `χ⊥` needs ξ > 0.
pub fn correlation_functions(params: &GrapheneParams, xi: f64, tp: TensorPair) -> (f64, Option<f64>) {
    let e2 = e_squared(params);
    let chi_par = -tp.pi00 / (4.0 * PI * e2);
    let chi_perp = if xi > 0.0 {
        Some(-HBAR_C * HBAR_C * tp.pi / (4.0 * PI * e2 * xi * xi))
    } else {
        None
    };
    (chi_par, chi_perp)
}

/// Graphene coefficients through the correlation functions. The TE channel
/// is undefined at ξ = 0.
pub fn graphene_correlation(params: &GrapheneParams, xi: f64, k: f64, t: f64) -> Result<ReflectionPair> {
    check_node(xi, k)?;
    let tp = tensor_at(params, xi, k, t, DEFAULT_TENSOR_TOL)?;
    let (chi_par, chi_perp) = correlation_functions(params, xi, tp);
    let chi_perp = chi_perp.ok_or_else(|| {
        CasimirError::domain("the TE correlation form is undefined at ξ = 0")
    })?;
    Ok(reflection_from_correlation(params, xi, k, chi_par, chi_perp))
}

/// Coefficients from given correlation functions.
pub fn reflection_from_correlation(
    params: &GrapheneParams,
    xi: f64,
    k: f64,
    chi_par: f64,
    chi_perp: f64,
) -> ReflectionPair {
    let e2 = e_squared(params);
    let q = q_of(xi, k);
    let k2 = k * k;
    let a = 2.0 * PI * e2 * q * chi_par;
    let b = 2.0 * PI * e2 * xi * xi * chi_perp;
    ReflectionPair::new(a / (a - k2), -b / (b - HBAR_C * HBAR_C * k2 * q))
}

/// Graphene coefficients through the in-plane and out-of-plane
/// conductivities (in units of c). Undefined at ξ = 0.
pub fn graphene_conductivity(params: &GrapheneParams, xi: f64, k: f64, t: f64) -> Result<ReflectionPair> {
    check_node(xi, k)?;
    if xi == 0.0 {
        return Err(CasimirError::domain("the conductivity form is undefined at ξ = 0"));
    }
    if k == 0.0 {
        return Err(CasimirError::domain("the conductivity form needs k⊥ > 0"));
    }
    let tp = tensor_at(params, xi, k, t, DEFAULT_TENSOR_TOL)?;
    let (chi_par, chi_perp) = correlation_functions(params, xi, tp);
    let chi_perp = chi_perp.expect("ξ > 0");
    let e2 = e_squared(params);
    let k2 = k * k;
    let sigma_par = -e2 * xi * chi_par / (HBAR_C * k2);
    let sigma_perp = -e2 * xi * chi_perp / (HBAR_C * k2);
    let q = q_of(xi, k);
    let kappa = xi / HBAR_C;
    let a = 2.0 * PI * q * sigma_par;
    let b = 2.0 * PI * kappa * sigma_perp;
    Ok(ReflectionPair::new(a / (a + kappa), -b / (b + q)))
}

/// Ψ for complex argument, continued from the positive real axis.
fn psi_complex(x: Complex64) -> Complex64 {
    if x.norm() == 0.0 {
        return Complex64::new(PI, 0.0);
    }
    if x.norm() < 4.0 {
        return 2.0 * (x + (1.0 - x * x) * x.inv().atan());
    }
    let inv2 = (x * x).inv();
    let mut power = x.inv();
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..40 {
        let nf = n as f64;
        let term = (4.0 * nf + 4.0) / ((2.0 * nf + 1.0) * (2.0 * nf + 3.0)) * power;
        sum += if n % 2 == 0 { term } else { -term };
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
        power *= inv2;
    }
    2.0 * sum
}

impl ReflectionProvider {
    pub fn validate(&self) -> Result<()> {
        match self {
            ReflectionProvider::IdealMetal => Ok(()),
            ReflectionProvider::Fresnel(m) => m.validate(),
            ReflectionProvider::Hydrodynamic(h) => HydrodynamicSheet::new(h.k_per_m).map(|_| ()),
            ReflectionProvider::GraphenePt(p)
            | ReflectionProvider::GrapheneCorrelation(p)
            | ReflectionProvider::GrapheneConductivity(p) => p.validate(),
        }
    }

    fn graphene(&self) -> Option<&GrapheneParams> {
        match self {
            ReflectionProvider::GraphenePt(p)
            | ReflectionProvider::GrapheneCorrelation(p)
            | ReflectionProvider::GrapheneConductivity(p) => Some(p),
            _ => None,
        }
    }

    /// Whether the coefficients depend on temperature at fixed `(ξ, k⊥)`.
    pub fn is_temperature_dependent(&self) -> bool {
        match self {
            ReflectionProvider::Fresnel(m) => m.is_temperature_dependent(),
            ReflectionProvider::IdealMetal | ReflectionProvider::Hydrodynamic(_) => false,
            _ => true,
        }
    }

    /// Coefficients at temperature `t`.
    pub fn pair(&self, xi: f64, k: f64, t: f64) -> Result<ReflectionPair> {
        match self {
            ReflectionProvider::IdealMetal => {
                check_node(xi, k)?;
                Ok(ReflectionPair::new(1.0, -1.0))
            }
            ReflectionProvider::Fresnel(m) => fresnel_with_damping(m, xi, k, m.damping_at(t)),
            ReflectionProvider::Hydrodynamic(h) => hydrodynamic(h, xi, k),
            ReflectionProvider::GraphenePt(p) => graphene_pt(p, xi, k, t),
            // ξ = 0 (and k⊥ = 0 for conductivities) fall back to the tensor form
            ReflectionProvider::GrapheneCorrelation(p) => {
                if xi == 0.0 {
                    graphene_pt(p, xi, k, t)
                } else {
                    graphene_correlation(p, xi, k, t)
                }
            }
            ReflectionProvider::GrapheneConductivity(p) => {
                if xi == 0.0 || k == 0.0 {
                    graphene_pt(p, xi, k, t)
                } else {
                    graphene_conductivity(p, xi, k, t)
                }
            }
        }
    }

    /// Zero-temperature coefficients `r⁰`.
    pub fn pair_zero_t(&self, xi: f64, k: f64) -> Result<ReflectionPair> {
        match self {
            ReflectionProvider::Fresnel(m) => fresnel_with_damping(m, xi, k, m.damping_at(0.0)),
            _ => {
                if let Some(p) = self.graphene() {
                    check_node(xi, k)?;
                    let tp = tensor_zero_t(p, xi, k)?;
                    Ok(from_tensor(tp, q_of(xi, k), k))
                } else {
                    self.pair(xi, k, 0.0)
                }
            }
        }
    }

    /// `(r⁰, r(T) − r⁰)`, with the difference formed without cancellation
    /// for graphene.
    pub fn thermal_shift(&self, xi: f64, k: f64, t: f64, rel_tol: f64) -> Result<(ReflectionPair, ReflectionPair)> {
        let r0 = self.pair_zero_t(xi, k)?;
        if !self.is_temperature_dependent() {
            return Ok((r0, ReflectionPair::default()));
        }
        if let Some(p) = self.graphene() {
            let q = q_of(xi, k);
            let k2 = k * k;
            let p0 = tensor_zero_t(p, xi, k)?;
            let dp = tensor_thermal_shift(p, xi, k, t, rel_tol)?;
            let pt = p0 + dp;
            let tm0 = q * p0.pi00 + 2.0 * k2;
            let tm1 = q * pt.pi00 + 2.0 * k2;
            let te0 = p0.pi + 2.0 * k2 * q;
            let te1 = pt.pi + 2.0 * k2 * q;
            let d = ReflectionPair::new(
                2.0 * k2 * q * dp.pi00 / (tm0 * tm1),
                -2.0 * k2 * q * dp.pi / (te0 * te1),
            );
            return Ok((r0, d));
        }
        let rt = self.pair(xi, k, t)?;
        Ok((r0, ReflectionPair::new(rt.r_tm - r0.r_tm, rt.r_te - r0.r_te)))
    }

    /// A companion whose zero-temperature coefficients continue analytically
    /// into the right half of the complex frequency plane. Equal to `self`
    /// when `r⁰` is already analytic.
    pub fn analytic_reference(&self) -> ReflectionProvider {
        match *self {
            ReflectionProvider::Fresnel(m) => {
                let permittivity = match m.permittivity {
                    Permittivity::Drude { omega_p, .. } => Permittivity::Plasma { omega_p },
                    Permittivity::ConstantEpsWithDc { eps0, .. } => Permittivity::ConstantEps { eps0 },
                    other => other,
                };
                ReflectionProvider::Fresnel(DielectricModel {
                    permittivity,
                    permeability: m.permeability,
                })
            }
            ReflectionProvider::GraphenePt(p)
            | ReflectionProvider::GrapheneCorrelation(p)
            | ReflectionProvider::GrapheneConductivity(p) => {
                if p.is_doped_branch() {
                    ReflectionProvider::GraphenePt(GrapheneParams { mu: 0.0, ..p })
                } else {
                    ReflectionProvider::GraphenePt(p)
                }
            }
            other => other,
        }
    }

    /// Whether `r⁰` itself is analytic (so that it is its own reference).
    pub fn zero_t_is_analytic(&self) -> bool {
        match self {
            ReflectionProvider::Fresnel(m) => match m.permittivity {
                Permittivity::Drude { .. } => m.damping_at(0.0) == 0.0,
                Permittivity::ConstantEpsWithDc { dc, .. } => dc == 0.0,
                _ => true,
            },
            _ => match self.graphene() {
                Some(p) => !p.is_doped_branch(),
                None => true,
            },
        }
    }

    /// Zero-temperature coefficients at complex `ħξ` (eV), for the analytic
    /// reference only. Returns `UnsupportedProvider` otherwise.
    pub fn pair_complex(&self, xi: Complex64, k: f64) -> Result<(Complex64, Complex64)> {
        let kappa = xi / HBAR_C;
        let q = csqrt(k * k + kappa * kappa);
        match *self {
            ReflectionProvider::IdealMetal => Ok((Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0))),
            ReflectionProvider::Fresnel(m) => {
                let mu = m.permeability.value();
                let eps_kappa2 = match m.permittivity {
                    Permittivity::IdealMetal => {
                        return Ok((Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)))
                    }
                    Permittivity::Plasma { omega_p } => kappa * kappa + (omega_p / HBAR_C).powi(2),
                    Permittivity::ConstantEps { eps0 } => eps0 * kappa * kappa,
                    Permittivity::Drude { omega_p, .. } if m.damping_at(0.0) == 0.0 => {
                        kappa * kappa + (omega_p / HBAR_C).powi(2)
                    }
                    Permittivity::ConstantEpsWithDc { eps0, dc } if dc == 0.0 => eps0 * kappa * kappa,
                    _ => {
                        return Err(CasimirError::UnsupportedProvider(
                            "zero-temperature coefficients are not analytic at ξ = 0".into(),
                        ))
                    }
                };
                let kl = csqrt(k * k + mu * eps_kappa2);
                // ε q = (εκ²)·q/κ² is singular at κ = 0; use ε directly instead
                let eps = if kappa.norm() > 0.0 {
                    eps_kappa2 / (kappa * kappa)
                } else {
                    return Err(CasimirError::domain("complex evaluation at ξ = 0"));
                };
                Ok(((eps * q - kl) / (eps * q + kl), (mu * q - kl) / (mu * q + kl)))
            }
            ReflectionProvider::Hydrodynamic(h) => {
                let kk = h.k();
                Ok((q * kk / (q * kk + kappa * kappa), -kk / (kk + q)))
            }
            ReflectionProvider::GraphenePt(p)
            | ReflectionProvider::GrapheneCorrelation(p)
            | ReflectionProvider::GrapheneConductivity(p) => {
                if p.is_doped_branch() {
                    return Err(CasimirError::UnsupportedProvider(
                        "the doped zero-temperature tensor has no closed analytic continuation".into(),
                    ));
                }
                let pt = csqrt((p.vf_ratio * k).powi(2) + kappa * kappa);
                let psi_v = if p.gap == 0.0 {
                    Complex64::new(PI, 0.0)
                } else {
                    psi_complex(p.gap / (HBAR_C * pt))
                };
                let k2 = k * k;
                let pi00 = p.alpha * k2 * psi_v / pt;
                let pi = p.alpha * k2 * pt * psi_v;
                Ok((q * pi00 / (q * pi00 + 2.0 * k2), -pi / (pi + 2.0 * k2 * q)))
            }
        }
    }
}

/// Graphene parameters of a graphene provider.
pub fn graphene_params(provider: &ReflectionProvider) -> Option<GrapheneParams> {
    provider.graphene().copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ALPHA_FS, FERMI_VELOCITY_RATIO};
    use crate::tensor::tensor_zero_t_undoped;

    #[test]
    fn vacuum_and_ideal() {
        let vac = DielectricModel::constant(1.0).unwrap();
        let r = fresnel(&vac, 0.3, 2.0).unwrap();
        assert_eq!((r.r_tm, r.r_te), (0.0, 0.0));
        let r = fresnel(&DielectricModel::ideal_metal(), 0.3, 2.0).unwrap();
        assert_eq!((r.r_tm, r.r_te), (1.0, -1.0));
        let big = DielectricModel::constant(1e12).unwrap();
        let r = fresnel(&big, 0.3, 2.0).unwrap();
        assert!((r.r_tm - 1.0).abs() < 1e-5 && (r.r_te + 1.0).abs() < 1e-5);
    }

    #[test]
    fn zero_frequency_limits() {
        let k = 1.5;
        let drude = DielectricModel::drude(9.0, 0.03).unwrap();
        let r = fresnel(&drude, 0.0, k).unwrap();
        assert_eq!((r.r_tm, r.r_te), (1.0, 0.0));
        let small = fresnel(&drude, 1e-9, k).unwrap();
        assert!(small.r_te.abs() < 1e-3);
        let plasma = DielectricModel::plasma(9.0).unwrap();
        let r = fresnel(&plasma, 0.0, k).unwrap();
        let kp = 9.0 / HBAR_C;
        let expected = (k - (k * k + kp * kp).sqrt()) / (k + (k * k + kp * kp).sqrt());
        assert!((r.r_te - expected).abs() < 1e-15 && r.r_te < 0.0);
        let near = fresnel(&plasma, 1e-9, k).unwrap();
        assert!((near.r_te - expected).abs() < 1e-9);
        let eps = DielectricModel::constant(2.0).unwrap();
        let r = fresnel(&eps, 0.0, k).unwrap();
        assert!((r.r_tm - 1.0 / 3.0).abs() < 1e-15);
        let dc = DielectricModel::constant_with_dc(2.0, 1e-6).unwrap();
        let r = fresnel(&dc, 0.0, k).unwrap();
        assert_eq!((r.r_tm, r.r_te), (1.0, 0.0));
    }

    #[test]
    fn hydrodynamic_examples() {
        let h = HydrodynamicSheet::default();
        let r = hydrodynamic(&h, 0.0, 0.3).unwrap();
        assert_eq!(r.r_tm, 1.0);
        assert!((r.r_te + h.k() / (h.k() + 0.3)).abs() < 1e-15);
        let r = hydrodynamic(&h, 0.0, h.k()).unwrap();
        assert!((r.r_te + 0.5).abs() < 1e-15);
    }

    #[test]
    fn pristine_static_coefficients() {
        let p = GrapheneParams::pristine();
        for &k in &[0.1, 1.0, 30.0] {
            let r = graphene_pt(&p, 0.0, k, 0.0).unwrap();
            let v = FERMI_VELOCITY_RATIO;
            let tm = ALPHA_FS * PI / (ALPHA_FS * PI + 2.0 * v);
            let te = -ALPHA_FS * PI * v / (ALPHA_FS * PI * v + 2.0);
            assert!((r.r_tm - tm).abs() < 1e-14);
            assert!((r.r_te - te).abs() < 1e-16);
        }
        assert!((graphene_pt(&p, 0.0, 1.0, 0.0).unwrap().r_tm - 0.7747).abs() < 1e-4);
    }

    #[test]
    fn doped_static_te_vanishes() {
        let p = GrapheneParams::new(0.0, 0.1).unwrap();
        let r = graphene_pt(&p, 0.0, 0.5, 0.0).unwrap();
        assert!(r.r_te.abs() < 1e-14);
    }

    #[test]
    fn correlation_and_conductivity_match_tensor() {
        let p = GrapheneParams::new(0.1, 0.08).unwrap();
        for &(xi, k, t) in &[(0.02, 1.0, 300.0), (0.5, 20.0, 10.0), (0.001, 0.01, 0.0)] {
            let a = graphene_pt(&p, xi, k, t).unwrap();
            let b = graphene_correlation(&p, xi, k, t).unwrap();
            let c = graphene_conductivity(&p, xi, k, t).unwrap();
            assert!((a.r_tm - b.r_tm).abs() < 1e-12 && (a.r_te - b.r_te).abs() < 1e-12);
            assert!((a.r_tm - c.r_tm).abs() < 1e-12 && (a.r_te - c.r_te).abs() < 1e-12);
        }
        assert!(graphene_correlation(&p, 0.0, 1.0, 10.0).is_err());
        let r = reflection_from_correlation(&p, 0.1, 1.0, 0.0, 1.0);
        assert_eq!(r.r_tm, 0.0);
    }

    #[test]
    fn thermal_shift_consistent() {
        let prov = ReflectionProvider::GraphenePt(GrapheneParams::new(0.0, 0.1).unwrap());
        let (xi, k, t) = (0.01, 5.0, 150.0);
        let (r0, dr) = prov.thermal_shift(xi, k, t, 1e-11).unwrap();
        let rt = prov.pair(xi, k, t).unwrap();
        assert!((r0.r_tm + dr.r_tm - rt.r_tm).abs() < 1e-10);
        assert!((r0.r_te + dr.r_te - rt.r_te).abs() < 1e-10);
    }

    #[test]
    fn complex_continuation_matches_real_axis() {
        let providers = [
            ReflectionProvider::IdealMetal,
            ReflectionProvider::Fresnel(DielectricModel::plasma(9.0).unwrap()),
            ReflectionProvider::Fresnel(DielectricModel::constant(3.0).unwrap()),
            ReflectionProvider::Hydrodynamic(HydrodynamicSheet::default()),
            ReflectionProvider::GraphenePt(GrapheneParams::pristine()),
            ReflectionProvider::GraphenePt(GrapheneParams::new(0.2, 0.05).unwrap()),
        ];
        for prov in providers {
            for &(xi, k) in &[(0.01, 0.5), (1.0, 3.0), (0.3, 100.0)] {
                let real = prov.pair_zero_t(xi, k).unwrap();
                let (tm, te) = prov.pair_complex(Complex64::new(xi, 0.0), k).unwrap();
                assert!((tm.re - real.r_tm).abs() < 1e-12, "{prov:?}");
                assert!((te.re - real.r_te).abs() < 1e-12, "{prov:?}");
                assert!(tm.im.abs() < 1e-14 && te.im.abs() < 1e-14);
            }
        }
        let drude = ReflectionProvider::Fresnel(DielectricModel::drude(9.0, 0.03).unwrap());
        assert!(drude.pair_complex(Complex64::new(0.1, 0.1), 1.0).is_err());
        assert!(!drude.zero_t_is_analytic());
    }

    #[test]
    fn gapped_zero_t_uses_undoped_tensor() {
        let p = GrapheneParams::new(0.2, 0.1).unwrap();
        let prov = ReflectionProvider::GraphenePt(p);
        let r = prov.pair_zero_t(0.05, 2.0).unwrap();
        let tp = tensor_zero_t_undoped(&p, 0.05, 2.0).unwrap();
        let q = q_of(0.05, 2.0);
        assert!((r.r_tm - q * tp.pi00 / (q * tp.pi00 + 8.0)).abs() < 1e-15);
    }
}
