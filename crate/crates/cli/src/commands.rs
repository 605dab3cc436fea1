//! Command execution: each command produces a table plus optional report.

use casimir_core::energy::{pfa_sphere_force, System};
use casimir_core::thermo::{low_t_scan, nernst_verdict, system_case, NernstReport};
use serde::Serialize;

use crate::config::{Command, RunConfig};
use crate::error::CliError;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Result of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub system: System,
    #[serde(flatten)]
    pub table: Table,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nernst: Option<NernstReport>,
    pub warnings: Vec<String>,
}

pub const ENTROPY_SCAN_COLUMNS: [&str; 7] = [
    "T_K",
    "F_total_eV",
    "dF_implicit",
    "dF_explicit_l0",
    "dF_explicit_lge1",
    "S_eV_per_K",
    "S_err",
];

/// Runs the configured command on the current rayon pool.
pub fn execute(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let system = cfg.system()?;
    let temps = cfg.temperature.values()?;
    let tol = cfg.tolerances.rel_tol;
    let a = cfg.geometry.a;
    let mut warnings = Vec::new();
    let mut nernst = None;

    let table = match cfg.command {
        Command::Energy | Command::CpEnergy => {
            let columns = if cfg.command == Command::Energy {
                vec!["T_K", "a_um", "F_eV_per_um2"]
            } else {
                vec!["T_K", "a_um", "F_eV"]
            };
            let mut rows = Vec::with_capacity(temps.len());
            for &t in &temps {
                let f = if t == 0.0 {
                    system.energy_t0(tol)?
                } else {
                    system.free_energy(t, tol)?
                };
                rows.push(vec![t.into(), a.into(), f.into()]);
            }
            Table { columns, rows }
        }
        Command::Breakdown => {
            let mut rows = Vec::with_capacity(temps.len());
            for &t in &temps {
                let b = system.breakdown(t, tol)?;
                rows.push(vec![
                    t.into(),
                    b.total_correction.into(),
                    b.implicit.into(),
                    b.explicit_l0.into(),
                    b.explicit_lge1.into(),
                    b.abs_error.into(),
                ]);
            }
            Table {
                columns: vec!["T_K", "dF_total", "dF_implicit", "dF_explicit_l0", "dF_explicit_lge1", "abs_error"],
                rows,
            }
        }
        Command::Pfa => {
            let System::PlatePlate(plates) = system else {
                unreachable!("validated as plate–plate")
            };
            let radius = cfg.geometry.radius.expect("validated");
            let mut rows = Vec::with_capacity(temps.len());
            for &t in &temps {
                let f = pfa_sphere_force(&plates, t, radius, tol)?;
                rows.push(vec![t.into(), a.into(), radius.into(), f.into()]);
            }
            Table {
                columns: vec!["T_K", "a_um", "R_um", "F_eV_per_um"],
                rows,
            }
        }
        Command::EntropyScan => {
            let scan = low_t_scan(&system, &temps, tol)?;
            let e0 = system.energy_t0(tol)?;
            warnings = scan.warnings.clone();
            let rows = scan
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.t.into(),
                        (e0 + r.breakdown.total_correction).into(),
                        r.breakdown.implicit.into(),
                        r.breakdown.explicit_l0.into(),
                        r.breakdown.explicit_lge1.into(),
                        r.entropy.value.into(),
                        r.entropy.error.into(),
                    ]
                })
                .collect();
            Table {
                columns: ENTROPY_SCAN_COLUMNS.to_vec(),
                rows,
            }
        }
        Command::NernstCheck => {
            let scan = low_t_scan(&system, &temps, tol)?;
            warnings = scan.warnings.clone();
            let report = nernst_verdict(&scan, system_case(&system))?;
            let case = report.case.map_or("none".to_string(), |c| c.to_string());
            let (exponent, log_factor) = match report.fit {
                Some(f) => (Cell::Num(f.exponent), Cell::Text(f.log_factor.to_string())),
                None => (Cell::from("none"), Cell::from("none")),
            };
            let expected = report.expected_exponent.map_or(Cell::from("none"), Cell::Num);
            let row = vec![
                Cell::Text(case),
                exponent,
                log_factor,
                expected,
                report.entropy_limit_estimate.into(),
                report.entropy_limit_error.into(),
                Cell::Text(report.verdict.to_string()),
            ];
            nernst = Some(report);
            Table {
                columns: vec!["case", "exponent", "log_factor", "expected_exponent", "S0_kB", "S0_err_kB", "verdict"],
                rows: vec![row],
            }
        }
    };

    Ok(Report {
        command: cfg.command.to_string(),
        system,
        table,
        nernst,
        warnings,
    })
}
