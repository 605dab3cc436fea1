//! Run configuration: TOML schema, validation and system construction.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use casimir_core::energy::{AtomPlateSystem, PlatePlateSystem, System};
use casimir_core::reflection::ReflectionProvider;
use casimir_core::response::AtomModel;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// What to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Energy,
    CpEnergy,
    EntropyScan,
    NernstCheck,
    Breakdown,
    Pfa,
}

impl FromStr for Command {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "energy" => Command::Energy,
            "cp-energy" => Command::CpEnergy,
            "entropy-scan" => Command::EntropyScan,
            "nernst-check" => Command::NernstCheck,
            "breakdown" => Command::Breakdown,
            "pfa" => Command::Pfa,
            other => return Err(CliError::Config(format!("unknown command `{other}`"))),
        })
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Energy => "energy",
            Command::CpEnergy => "cp-energy",
            Command::EntropyScan => "entropy-scan",
            Command::NernstCheck => "nernst-check",
            Command::Breakdown => "breakdown",
            Command::Pfa => "pfa",
        })
    }
}

/// Output file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    /// Separation in µm.
    pub a: f64,
    /// Sphere radius in µm (pfa only).
    #[serde(default)]
    pub radius: Option<f64>,
}

/// A single temperature or a grid, in K.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemperatureSpec {
    #[serde(default)]
    pub value: Option<f64>,
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
    #[serde(default)]
    pub points: Option<usize>,
    #[serde(default)]
    pub log_spaced: bool,
}

impl TemperatureSpec {
    pub fn single(t: f64) -> Self {
        Self {
            value: Some(t),
            ..Self::default()
        }
    }

    pub fn grid(min: f64, max: f64, points: usize, log_spaced: bool) -> Self {
        Self {
            value: None,
            min: Some(min),
            max: Some(max),
            points: Some(points),
            log_spaced,
        }
    }

    /// The temperatures in increasing order.
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        match (self.value, self.min, self.max, self.points) {
            (Some(t), None, None, None) => {
                if t >= 0.0 && t.is_finite() {
                    Ok(vec![t])
                } else {
                    Err(CliError::Config(format!("temperature must be non-negative, got {t}")))
                }
            }
            (None, Some(lo), Some(hi), Some(n)) => {
                if !(lo > 0.0 && hi > lo && hi.is_finite()) {
                    return Err(CliError::Config(format!(
                        "temperature grid needs 0 < min < max, got [{lo}, {hi}]"
                    )));
                }
                if n < 2 {
                    return Err(CliError::Config("temperature grid needs at least 2 points".into()));
                }
                let last = (n - 1) as f64;
                Ok((0..n)
                    .map(|i| {
                        let f = i as f64 / last;
                        if i == n - 1 {
                            hi
                        } else if self.log_spaced {
                            lo * (hi / lo).powf(f)
                        } else {
                            lo + (hi - lo) * f
                        }
                    })
                    .collect())
            }
            _ => Err(CliError::Config(
                "temperature needs either `value` or all of `min`, `max`, `points`".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
}

fn default_rel_tol() -> f64 {
    1e-6
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rel_tol: default_rel_tol(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

/// Everything one run needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub geometry: Geometry,
    /// First (or only) plate.
    pub material: ReflectionProvider,
    /// Second plate; defaults to `material`.
    #[serde(default)]
    pub material2: Option<ReflectionProvider>,
    /// Present for atom–plate runs.
    #[serde(default)]
    pub atom: Option<AtomModel>,
    pub temperature: TemperatureSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub output: OutputSpec,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs serialize")
    }

    /// Checks every block and the command's requirements.
    pub fn validate(&self) -> Result<(), CliError> {
        let tol = self.tolerances.rel_tol;
        if !(tol > 0.0 && tol < 1.0) {
            return Err(CliError::Config(format!("rel_tol must lie in (0, 1), got {tol}")));
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        let temps = self.temperature.values()?;
        let system = self.system()?;
        system.validate().map_err(|e| CliError::Config(e.to_string()))?;
        match self.command {
            Command::Energy | Command::Pfa if self.atom.is_some() => {
                return Err(CliError::Config(format!(
                    "`{}` is a plate–plate command; remove the [atom] block",
                    self.command
                )))
            }
            Command::CpEnergy if self.atom.is_none() => {
                return Err(CliError::Config("`cp-energy` needs an [atom] block".into()))
            }
            Command::Pfa if self.geometry.radius.is_none() => {
                return Err(CliError::Config("`pfa` needs geometry.radius".into()))
            }
            Command::EntropyScan | Command::NernstCheck | Command::Breakdown => {
                if temps.iter().any(|&t| t <= 0.0) {
                    return Err(CliError::Config(format!(
                        "`{}` needs positive temperatures",
                        self.command
                    )));
                }
            }
            _ => {}
        }
        if self.command == Command::NernstCheck && temps.len() < 6 {
            return Err(CliError::Config("`nernst-check` needs at least 6 temperatures".into()));
        }
        if let Some(r) = self.geometry.radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(CliError::Config(format!("radius must be positive, got {r}")));
            }
        }
        Ok(())
    }

    /// The physical system described by the material, atom and geometry blocks.
    pub fn system(&self) -> Result<System, CliError> {
        let a = self.geometry.a;
        let sys = match self.atom {
            Some(atom) => System::AtomPlate(AtomPlateSystem {
                atom,
                provider: self.material,
                a,
            }),
            None => System::PlatePlate(PlatePlateSystem {
                provider1: self.material,
                provider2: self.material2.unwrap_or(self.material),
                a,
            }),
        };
        Ok(sys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
command = "energy"

[geometry]
a = 1.0

[material]
material = "ideal_metal"

[temperature]
value = 300.0
"#;

    #[test]
    fn parses_minimal_config() {
        let cfg = RunConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(cfg.command, Command::Energy);
        assert_eq!(cfg.tolerances.rel_tol, 1e-6);
        assert_eq!(cfg.output.format, Format::Csv);
        cfg.validate().unwrap();
    }

    #[test]
    fn round_trips_through_toml() {
        let cfg = RunConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(RunConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn grids() {
        let g = TemperatureSpec::grid(1.0, 16.0, 5, true).values().unwrap();
        for (x, y) in g.iter().zip([1.0, 2.0, 4.0, 8.0, 16.0]) {
            assert!((x - y).abs() < 1e-12);
        }
        let l = TemperatureSpec::grid(2.0, 4.0, 3, false).values().unwrap();
        assert_eq!(l, vec![2.0, 3.0, 4.0]);
        assert!(TemperatureSpec::grid(4.0, 2.0, 3, false).values().is_err());
        assert!(TemperatureSpec::default().values().is_err());
    }

    #[test]
    fn rejects_bad_blocks() {
        let mut cfg = RunConfig::from_toml(SAMPLE).unwrap();
        cfg.command = Command::CpEnergy;
        assert!(cfg.validate().is_err());
        cfg.command = Command::Pfa;
        assert!(cfg.validate().is_err());
        cfg.command = Command::Energy;
        cfg.tolerances.rel_tol = 0.0;
        assert!(cfg.validate().is_err());
        assert!(RunConfig::from_toml("command = \"energy\"").is_err());
        assert!(RunConfig::from_toml(&SAMPLE.replace("a = 1.0", "a = -1.0")).unwrap().validate().is_err());
        assert!(RunConfig::from_toml(&format!("{SAMPLE}\nbogus = 1")).is_err());
    }
}
