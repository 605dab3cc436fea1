//! Material response on the imaginary frequency axis.
//!
//! Frequencies are energies `ħξ` in eV.

use serde::{Deserialize, Serialize};

use crate::error::{CasimirError, Result};

/// Temperature dependence of the Drude relaxation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DampingScaling {
    /// `γ` independent of temperature.
    #[default]
    Constant,
    /// Perfect-lattice relaxation `γ(T) = γ·(T/t_ref)^exponent`, vanishing
    /// as `T → 0`.
    PowerLaw { t_ref: f64, exponent: f64 },
}

/// Dielectric permittivity models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Permittivity {
    IdealMetal,
    Plasma {
        omega_p: f64,
    },
    Drude {
        omega_p: f64,
        gamma: f64,
        #[serde(default)]
        damping: DampingScaling,
    },
    ConstantEps {
        eps0: f64,
    },
    /// `ε0 + 4πσ0/ξ`; `dc` holds `ħ·4πσ0` in eV.
    ConstantEpsWithDc {
        eps0: f64,
        dc: f64,
    },
}

/// Magnetic permeability models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Permeability {
    #[default]
    Unity,
    Constant {
        mu0: f64,
    },
}

impl Permeability {
    pub fn value(&self) -> f64 {
        match *self {
            Permeability::Unity => 1.0,
            Permeability::Constant { mu0 } => mu0,
        }
    }
}

/// A bulk material: permittivity plus permeability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DielectricModel {
    pub permittivity: Permittivity,
    #[serde(default)]
    pub permeability: Permeability,
}

impl DielectricModel {
    pub fn new(permittivity: Permittivity) -> Result<Self> {
        let m = Self {
            permittivity,
            permeability: Permeability::Unity,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn ideal_metal() -> Self {
        Self {
            permittivity: Permittivity::IdealMetal,
            permeability: Permeability::Unity,
        }
    }

    pub fn plasma(omega_p: f64) -> Result<Self> {
        Self::new(Permittivity::Plasma { omega_p })
    }

    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        Self::new(Permittivity::Drude {
            omega_p,
            gamma,
            damping: DampingScaling::Constant,
        })
    }

    pub fn constant(eps0: f64) -> Result<Self> {
        Self::new(Permittivity::ConstantEps { eps0 })
    }

    pub fn constant_with_dc(eps0: f64, dc: f64) -> Result<Self> {
        Self::new(Permittivity::ConstantEpsWithDc { eps0, dc })
    }

    pub fn with_permeability(mut self, permeability: Permeability) -> Result<Self> {
        self.permeability = permeability;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(CasimirError::InvalidParameter(m.to_string()));
        match self.permittivity {
            Permittivity::IdealMetal => {}
            Permittivity::Plasma { omega_p } => {
                if !(omega_p > 0.0 && omega_p.is_finite()) {
                    return bad("plasma frequency must be positive");
                }
            }
            Permittivity::Drude {
                omega_p,
                gamma,
                damping,
            } => {
                if !(omega_p > 0.0 && omega_p.is_finite()) {
                    return bad("plasma frequency must be positive");
                }
                if !(gamma >= 0.0 && gamma.is_finite()) {
                    return bad("relaxation parameter must be non-negative");
                }
                if let DampingScaling::PowerLaw { t_ref, exponent } = damping {
                    if !(t_ref > 0.0) || !(exponent >= 0.0) {
                        return bad("damping scaling needs t_ref > 0 and exponent >= 0");
                    }
                }
            }
            Permittivity::ConstantEps { eps0 } => {
                if !(eps0 >= 1.0 && eps0.is_finite()) {
                    return bad("static permittivity must be >= 1");
                }
            }
            Permittivity::ConstantEpsWithDc { eps0, dc } => {
                if !(eps0 >= 1.0 && eps0.is_finite()) {
                    return bad("static permittivity must be >= 1");
                }
                if !(dc >= 0.0 && dc.is_finite()) {
                    return bad("dc conductivity must be non-negative");
                }
            }
        }
        let mu = self.permeability.value();
        if !(mu > 0.0 && mu.is_finite()) {
            return bad("permeability must be positive");
        }
        Ok(())
    }

    /// Relaxation parameter at temperature `t` (K); zero for non-Drude models.
    pub fn damping_at(&self, t: f64) -> f64 {
        match self.permittivity {
            Permittivity::Drude { gamma, damping, .. } => match damping {
                DampingScaling::Constant => gamma,
                DampingScaling::PowerLaw { t_ref, exponent } => {
                    gamma * (t.max(0.0) / t_ref).powf(exponent)
                }
            },
            _ => 0.0,
        }
    }

    /// Whether the permittivity depends on temperature.
    pub fn is_temperature_dependent(&self) -> bool {
        matches!(
            self.permittivity,
            Permittivity::Drude {
                damping: DampingScaling::PowerLaw { .. },
                gamma,
                ..
            } if gamma > 0.0
        )
    }

    /// Whether `ε(iξ)` diverges as `ξ → 0`.
    pub fn diverges_at_zero(&self) -> bool {
        match self.permittivity {
            Permittivity::IdealMetal | Permittivity::Plasma { .. } | Permittivity::Drude { .. } => true,
            Permittivity::ConstantEpsWithDc { dc, .. } => dc > 0.0,
            Permittivity::ConstantEps { .. } => false,
        }
    }
}

/// `ε(iξ)` at the reference damping.
pub fn permittivity_at(model: &DielectricModel, xi: f64) -> Result<f64> {
    permittivity_with_damping(model, xi, model.damping_at_reference())
}

/// `ε(iξ)` with the Drude damping evaluated at temperature `t`.
pub fn permittivity_at_temperature(model: &DielectricModel, xi: f64, t: f64) -> Result<f64> {
    permittivity_with_damping(model, xi, model.damping_at(t))
}

impl DielectricModel {
    fn damping_at_reference(&self) -> f64 {
        match self.permittivity {
            Permittivity::Drude { gamma, .. } => gamma,
            _ => 0.0,
        }
    }
}

pub(crate) fn permittivity_with_damping(model: &DielectricModel, xi: f64, gamma: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(CasimirError::domain("imaginary frequency must be non-negative"));
    }
    let zero = || {
        Err(CasimirError::domain(
            "permittivity diverges at ξ = 0; use the zero-frequency reflection limit",
        ))
    };
    match model.permittivity {
        Permittivity::IdealMetal => Ok(f64::INFINITY),
        Permittivity::Plasma { omega_p } => {
            if xi == 0.0 {
                return zero();
            }
            Ok(1.0 + (omega_p / xi).powi(2))
        }
        Permittivity::Drude { omega_p, .. } => {
            if xi == 0.0 {
                return zero();
            }
            Ok(1.0 + omega_p * omega_p / (xi * (xi + gamma)))
        }
        Permittivity::ConstantEps { eps0 } => Ok(eps0),
        Permittivity::ConstantEpsWithDc { eps0, dc } => {
            if dc == 0.0 {
                return Ok(eps0);
            }
            if xi == 0.0 {
                return zero();
            }
            Ok(eps0 + dc / xi)
        }
    }
}

/// Single-oscillator atomic polarizability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomModel {
    /// Static polarizability α0 in µm³.
    pub alpha0: f64,
    /// Resonance energy ħω0 in eV; `None` for a static polarizability.
    #[serde(default)]
    pub omega0: Option<f64>,
}

impl AtomModel {
    pub fn new(alpha0: f64, omega0: Option<f64>) -> Result<Self> {
        let m = Self { alpha0, omega0 };
        m.validate()?;
        Ok(m)
    }

    pub fn static_polarizability(alpha0: f64) -> Result<Self> {
        Self::new(alpha0, None)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha0 >= 0.0 && self.alpha0.is_finite()) {
            return Err(CasimirError::InvalidParameter(
                "static polarizability must be non-negative".into(),
            ));
        }
        if let Some(w) = self.omega0 {
            if !(w > 0.0) {
                return Err(CasimirError::InvalidParameter(
                    "resonance energy must be positive".into(),
                ));
            }
        }
        Ok(())
    }
}

/// `α(iξ) = α0/(1 + ξ²/ω0²)` in µm³.
pub fn polarizability_at(model: &AtomModel, xi: f64) -> f64 {
    match model.omega0 {
        None => model.alpha0,
        Some(w) => model.alpha0 / (1.0 + (xi / w).powi(2)),
    }
}

/// Two-dimensional free-electron gas sheet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HydrodynamicSheet {
    /// Wave number `K` in m⁻¹.
    pub k_per_m: f64,
}

impl Default for HydrodynamicSheet {
    fn default() -> Self {
        Self { k_per_m: 6.75e5 }
    }
}

impl HydrodynamicSheet {
    pub fn new(k_per_m: f64) -> Result<Self> {
        if !(k_per_m > 0.0 && k_per_m.is_finite()) {
            return Err(CasimirError::InvalidParameter("K must be positive".into()));
        }
        Ok(Self { k_per_m })
    }

    /// `K` in µm⁻¹.
    pub fn k(&self) -> f64 {
        self.k_per_m * 1e-6
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permittivity_examples() {
        let c = DielectricModel::constant(2.0).unwrap();
        assert_eq!(permittivity_at(&c, 3.7).unwrap(), 2.0);
        let p = DielectricModel::plasma(9.0).unwrap();
        assert_eq!(permittivity_at(&p, 9.0).unwrap(), 2.0);
        let d = DielectricModel::drude(9.0, 0.03).unwrap();
        let v = permittivity_at(&d, 0.03).unwrap();
        assert!((v - 45001.0).abs() < 1e-8);
    }

    #[test]
    fn divergent_models_reject_zero() {
        let d = DielectricModel::drude(9.0, 0.03).unwrap();
        assert!(matches!(permittivity_at(&d, 0.0), Err(CasimirError::Domain(_))));
        let dc = DielectricModel::constant_with_dc(2.0, 1e-3).unwrap();
        assert!(permittivity_at(&dc, 0.0).is_err());
        let no_dc = DielectricModel::constant_with_dc(2.0, 0.0).unwrap();
        assert_eq!(permittivity_at(&no_dc, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn drude_tends_to_plasma() {
        let wp = 9.0;
        let d = DielectricModel::drude(wp, 1e-6 * wp).unwrap();
        let p = DielectricModel::plasma(wp).unwrap();
        for &xi in &[1.0, 10.0] {
            let a = permittivity_at(&d, xi).unwrap();
            let b = permittivity_at(&p, xi).unwrap();
            assert!(((a - b) / b).abs() < 1e-5);
        }
    }

    #[test]
    fn power_law_damping() {
        let m = DielectricModel::new(Permittivity::Drude {
            omega_p: 9.0,
            gamma: 0.03,
            damping: DampingScaling::PowerLaw {
                t_ref: 300.0,
                exponent: 2.0,
            },
        })
        .unwrap();
        assert!((m.damping_at(150.0) - 0.0075).abs() < 1e-15);
        assert_eq!(m.damping_at(0.0), 0.0);
        assert!(m.is_temperature_dependent());
    }

    #[test]
    fn invalid_parameters() {
        assert!(DielectricModel::plasma(0.0).is_err());
        assert!(DielectricModel::constant(0.5).is_err());
        assert!(DielectricModel::drude(9.0, -1.0).is_err());
        assert!(AtomModel::new(1.0, Some(0.0)).is_err());
        assert!(HydrodynamicSheet::new(-1.0).is_err());
    }

    #[test]
    fn polarizability_examples() {
        let s = AtomModel::static_polarizability(2.5).unwrap();
        assert_eq!(polarizability_at(&s, 5.0), 2.5);
        let a = AtomModel::new(1.0, Some(10.0)).unwrap();
        assert_eq!(polarizability_at(&a, 10.0), 0.5);
        assert!((polarizability_at(&a, 30.0) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn hydrodynamic_units() {
        let h = HydrodynamicSheet::default();
        assert!((h.k() - 0.675).abs() < 1e-15);
    }
}
