//! Ready-made configurations for the graphene cases and the bulk-material
//! anomalies.

use casimir_core::reflection::ReflectionProvider;
use casimir_core::response::{AtomModel, DampingScaling, DielectricModel, Permittivity};
use casimir_core::tensor::GrapheneParams;

use crate::config::{Command, Geometry, OutputSpec, RunConfig, TemperatureSpec, Tolerances};
use crate::error::CliError;

/// Static polarizability of ground-state hydrogen, 4.5 a.u., in µm³.
pub const HYDROGEN_ALPHA0: f64 = 6.668e-13;

/// Points per preset temperature grid.
pub const PRESET_POINTS: usize = 8;

pub const PRESET_NAMES: &[&str] = &[
    "pristine",
    "pristine-atom",
    "gapped",
    "doped",
    "critical",
    "critical-atom",
    "drude",
    "plasma",
    "dielectric-dc",
    "dielectric-dc-atom",
];

fn graphene(gap: f64, mu: f64) -> ReflectionProvider {
    ReflectionProvider::GraphenePt(GrapheneParams::new(gap, mu).expect("preset parameters are valid"))
}

fn dielectric(p: Permittivity) -> ReflectionProvider {
    ReflectionProvider::Fresnel(DielectricModel::new(p).expect("preset parameters are valid"))
}

fn hydrogen() -> Option<AtomModel> {
    Some(AtomModel::static_polarizability(HYDROGEN_ALPHA0).expect("valid polarizability"))
}

fn scan(material: ReflectionProvider, atom: Option<AtomModel>, a: f64, t_min: f64, t_max: f64) -> RunConfig {
    RunConfig {
        command: Command::NernstCheck,
        geometry: Geometry { a, radius: None },
        material,
        material2: None,
        atom,
        temperature: TemperatureSpec::grid(t_min, t_max, PRESET_POINTS, true),
        tolerances: Tolerances::default(),
        threads: None,
        output: OutputSpec::default(),
    }
}

/// Drude metal with a perfect-lattice relaxation vanishing as T².
pub fn drude_metal() -> ReflectionProvider {
    dielectric(Permittivity::Drude {
        omega_p: 9.0,
        gamma: 0.03,
        damping: DampingScaling::PowerLaw {
            t_ref: 300.0,
            exponent: 2.0,
        },
    })
}

pub fn plasma_metal() -> ReflectionProvider {
    dielectric(Permittivity::Plasma { omega_p: 9.0 })
}

/// ε0 = 2 with a small dc conductivity (ħ·4πσ0 = 10⁻⁹ eV).
pub fn dielectric_with_dc() -> ReflectionProvider {
    dielectric(Permittivity::ConstantEpsWithDc { eps0: 2.0, dc: 1e-9 })
}

/// The configuration registered under `name`.
pub fn preset(name: &str) -> Result<RunConfig, CliError> {
    let cfg = match name {
        "pristine" => scan(graphene(0.0, 0.0), None, 0.05, 1.0, 20.0),
        "pristine-atom" => scan(graphene(0.0, 0.0), hydrogen(), 0.05, 1.0, 20.0),
        "gapped" => scan(graphene(0.2, 0.0), None, 2.0, 5.0, 50.0),
        "doped" => scan(graphene(0.0, 0.1), None, 1.0, 5.0, 50.0),
        "critical" => scan(graphene(0.2, 0.1), None, 2.0, 2.0, 30.0),
        "critical-atom" => scan(graphene(0.2, 0.1), hydrogen(), 2.0, 2.0, 30.0),
        "drude" => scan(drude_metal(), None, 1.0, 1.0, 10.0),
        "plasma" => scan(plasma_metal(), None, 1.0, 1.0, 10.0),
        "dielectric-dc" => scan(dielectric_with_dc(), None, 1.0, 1.0, 10.0),
        "dielectric-dc-atom" => scan(dielectric_with_dc(), hydrogen(), 1.0, 1.0, 10.0),
        other => {
            return Err(CliError::Config(format!(
                "unknown preset `{other}`; available: {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    Ok(cfg)
}
