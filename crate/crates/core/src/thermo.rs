//! Entropies, low-temperature scans, scaling fits and Nernst verdicts.
//!
//! Entropies are `S = −∂F/∂T` of the breakdown-based thermal correction, in
//! eV/K (per µm² for plates). Closed-form zero-temperature limits are given
//! in units of k_B (per µm² for plates).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{thermal_energy, HBAR_C, K_B, ZETA3};
use crate::energy::{FreeEnergyBreakdown, System};
use crate::error::{CasimirError, Result};
use crate::math::derivative::default_step;
use crate::math::{fit_scaling, polylog3, richardson, ScalingFit};
use crate::reflection::graphene_params;
use crate::tensor::GrapheneParams;

/// Default tolerance (eV) for recognising `Δ = 2μ`.
pub const DEFAULT_CASE_TOL: f64 = 1e-9;

/// Upper bound for every small parameter of a validity window.
pub const WINDOW_LIMIT: f64 = 0.1;

/// Fitted exponent separating a vanishing entropy from a plateau.
pub const VERDICT_EXPONENT: f64 = 0.5;

/// Graphene regimes by the relation between gap and chemical potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    Pristine,
    Gapped,
    Critical,
    Doped,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseLabel::Pristine => "Pristine",
            CaseLabel::Gapped => "Gapped",
            CaseLabel::Critical => "Critical",
            CaseLabel::Doped => "Doped",
        };
        f.write_str(s)
    }
}

/// Plate–plate or atom–plate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    PlatePlate,
    AtomPlate,
}

impl System {
    pub fn kind(&self) -> SystemKind {
        match self {
            System::PlatePlate(_) => SystemKind::PlatePlate,
            System::AtomPlate(_) => SystemKind::AtomPlate,
        }
    }
}

/// Classifies `(Δ, μ)`; `tol` (eV) decides what counts as equality.
pub fn classify_case(params: &GrapheneParams, tol: f64) -> CaseLabel {
    let tol = tol.abs();
    let gap = params.gap;
    let excess = gap - 2.0 * params.mu.abs();
    if gap <= tol && params.mu.abs() <= tol {
        CaseLabel::Pristine
    } else if excess.abs() <= tol && gap != 0.0 {
        CaseLabel::Critical
    } else if excess > tol {
        CaseLabel::Gapped
    } else {
        CaseLabel::Doped
    }
}

/// The graphene case of a system, if its reflecting body is graphene.
pub fn system_case(system: &System) -> Option<CaseLabel> {
    let providers = system.providers();
    let params = graphene_params(&providers[0])?;
    if providers.iter().all(|p| graphene_params(p) == Some(params)) {
        Some(classify_case(&params, DEFAULT_CASE_TOL))
    } else {
        None
    }
}

/// Entropy and its error estimate, eV/K (per µm² for plates).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entropy {
    pub value: f64,
    pub error: f64,
}

/// `S = −∂(F − E₀)/∂T` by Richardson-extrapolated central differences.
pub fn entropy(system: &System, t: f64, rel_tol: f64) -> Result<Entropy> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(CasimirError::domain("temperature must be positive"));
    }
    let h0 = default_step(t, 0.0);
    let noise = std::cell::Cell::new(0.0f64);
    let d = richardson(
        |tt| {
            let b = system.breakdown(tt, rel_tol)?;
            noise.set(noise.get().max(b.abs_error));
            Ok(b.total_correction)
        },
        t,
        h0,
    )?;
    Ok(Entropy {
        value: -d.value,
        error: d.error_estimate + noise.get() / (0.25 * h0),
    })
}

/// One small parameter of a validity window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowParameter {
    pub name: String,
    pub value: f64,
}

/// Small parameters of the low-temperature expansion for the system's case.
/// The thermal parameter is `k_BT/ħω_c` with `ω_c = c/2a`; pristine
/// graphene uses `ω_c = v_F/2a` instead.
pub fn validity_window(system: &System, t: f64) -> Vec<WindowParameter> {
    let a = system.separation();
    let kt = thermal_energy(t);
    let mut v = vec![WindowParameter {
        name: "2a·k_BT/ħc".into(),
        value: 2.0 * a * kt / HBAR_C,
    }];
    let providers = system.providers();
    let Some(p) = graphene_params(&providers[0]) else {
        return v;
    };
    match classify_case(&p, DEFAULT_CASE_TOL) {
        CaseLabel::Pristine => v.push(WindowParameter {
            name: "2a·k_BT/ħv_F".into(),
            value: 2.0 * a * kt / (HBAR_C * p.vf_ratio),
        }),
        CaseLabel::Gapped | CaseLabel::Critical => {
            v.push(WindowParameter {
                name: "ħv_F/(2aΔ)".into(),
                value: HBAR_C * p.vf_ratio / (2.0 * a * p.gap),
            });
            // the exponential parameter is identically 1 at Δ = 2μ
            if p.gap - 2.0 * p.mu.abs() > DEFAULT_CASE_TOL {
                v.push(WindowParameter {
                    name: "exp(−(Δ−2μ)/2k_BT)".into(),
                    value: (-(p.gap - 2.0 * p.mu.abs()) / (2.0 * kt)).exp(),
                });
            }
        }
        CaseLabel::Doped => {
            if p.gap > 0.0 {
                v.push(WindowParameter {
                    name: "ħv_F/(2aΔ)".into(),
                    value: HBAR_C * p.vf_ratio / (2.0 * a * p.gap),
                });
            }
            v.push(WindowParameter {
                name: "exp(−(2μ−Δ)/2k_BT)".into(),
                value: (-(2.0 * p.mu.abs() - p.gap) / (2.0 * kt)).exp(),
            });
        }
    }
    v
}

/// Warnings for every small parameter above [`WINDOW_LIMIT`].
pub fn window_warnings(system: &System, t: f64) -> Vec<String> {
    validity_window(system, t)
        .into_iter()
        .filter(|w| w.value > WINDOW_LIMIT)
        .map(|w| format!("T={t} K outside the validity window: {} = {:.3} > {WINDOW_LIMIT}", w.name, w.value))
        .collect()
}

/// One row of a temperature scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub t: f64,
    pub breakdown: FreeEnergyBreakdown,
    pub entropy: Entropy,
}

/// A temperature scan of one system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scan {
    pub system: System,
    pub rows: Vec<ScanRow>,
    pub warnings: Vec<String>,
}

/// Breakdown and entropy at every grid temperature. Rows are computed in
/// parallel and returned in grid order.
pub fn low_t_scan(system: &System, grid: &[f64], rel_tol: f64) -> Result<Scan> {
    if grid.is_empty() {
        return Err(CasimirError::InvalidParameter("temperature grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) || !(grid[0] > 0.0) {
        return Err(CasimirError::InvalidParameter(
            "temperature grid must be positive and strictly increasing".into(),
        ));
    }
    system.validate()?;
    let warnings: Vec<String> = grid.iter().flat_map(|&t| window_warnings(system, t)).collect();
    for w in &warnings {
        log::warn!("{w}");
    }
    let rows = grid
        .par_iter()
        .map(|&t| {
            let breakdown = system.breakdown(t, rel_tol)?;
            let entropy = entropy(system, t, rel_tol)?;
            Ok(ScanRow { t, breakdown, entropy })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Scan {
        system: *system,
        rows,
        warnings,
    })
}

/// A `T → 0` extrapolation with its error bar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub value: f64,
    pub error: f64,
}

impl Extrapolation {
    /// Whether zero lies within the error bar.
    pub fn consistent_with_zero(&self) -> bool {
        self.value.abs() <= self.error
    }
}

/// Extrapolates `y(T)` to `T = 0` by the parabola through the three lowest
/// temperatures; the error bar is its distance from the chord through the
/// two lowest, plus the propagated point errors.
pub fn extrapolate_to_zero(points: &[(f64, f64, f64)]) -> Result<Extrapolation> {
    if points.len() < 3 {
        return Err(CasimirError::DegenerateData(
            "extrapolation needs at least three points".into(),
        ));
    }
    let mut p: Vec<(f64, f64, f64)> = points.to_vec();
    p.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (t1, y1, e1) = p[0];
    let (t2, y2, e2) = p[1];
    let (t3, y3, e3) = p[2];
    // Lagrange weights at T = 0
    let w1 = t2 * t3 / ((t1 - t2) * (t1 - t3));
    let w2 = t1 * t3 / ((t2 - t1) * (t2 - t3));
    let w3 = t1 * t2 / ((t3 - t1) * (t3 - t2));
    let quadratic = w1 * y1 + w2 * y2 + w3 * y3;
    let linear = (t2 * y1 - t1 * y2) / (t2 - t1);
    let propagated = w1.abs() * e1 + w2.abs() * e2 + w3.abs() * e3;
    Ok(Extrapolation {
        value: quadratic,
        error: (quadratic - linear).abs() + propagated,
    })
}

/// Expected low-temperature entropy behaviour: `S ~ C·T^p`, times
/// `|ln(ak_BT/ħc)|` when `log_factor`, with `C` in eV/K^{p+1} (per µm² for
/// plates). The prefactor is known only up to an order of magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Asymptote {
    pub exponent: f64,
    pub log_factor: bool,
    pub scale_estimate: f64,
}

impl Asymptote {
    /// The order-of-magnitude entropy at temperature `t`.
    pub fn entropy_at(&self, t: f64, a: f64) -> f64 {
        let log = if self.log_factor {
            (a * thermal_energy(t) / HBAR_C).ln().abs()
        } else {
            1.0
        };
        self.scale_estimate * t.powf(self.exponent) * log
    }
}

/// Low-temperature entropy asymptotics of graphene for a case and geometry
/// (`alpha0` in µm³ is used for atom–plate only).
pub fn expected_asymptote(
    case: CaseLabel,
    kind: SystemKind,
    a: f64,
    params: &GrapheneParams,
    alpha0: f64,
) -> Asymptote {
    let hc = HBAR_C;
    let vf = params.vf_ratio * hc;
    let (gap, mu) = (params.gap, params.mu.abs());
    let doping = (4.0 * mu * mu - gap * gap).max(0.0);
    let (exponent, log_factor, scale_estimate) = match (kind, case) {
        (SystemKind::AtomPlate, CaseLabel::Pristine) => (2.0, false, alpha0 * K_B.powi(3) / (vf * vf * a)),
        (SystemKind::AtomPlate, CaseLabel::Gapped) => (4.0, false, alpha0 * K_B.powi(5) / (hc.powi(3) * gap)),
        (SystemKind::AtomPlate, CaseLabel::Critical) => (0.0, false, alpha0 * K_B / a.powi(3)),
        (SystemKind::AtomPlate, CaseLabel::Doped) => (
            1.0,
            false,
            alpha0 * mu * mu * K_B * K_B / (hc * hc * a * doping.sqrt()),
        ),
        (SystemKind::PlatePlate, CaseLabel::Pristine) => (2.0, true, K_B.powi(3) / (hc * hc)),
        (SystemKind::PlatePlate, CaseLabel::Gapped) => (4.0, false, K_B.powi(5) / (hc * hc * gap * gap)),
        (SystemKind::PlatePlate, CaseLabel::Critical) => (0.0, false, K_B / (a * a)),
        (SystemKind::PlatePlate, CaseLabel::Doped) => (1.0, false, a * doping * K_B * K_B / hc.powi(3)),
    };
    Asymptote {
        exponent,
        log_factor,
        scale_estimate,
    }
}

/// Nernst-theorem verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Satisfied,
    Violated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Satisfied => "Satisfied",
            Verdict::Violated => "Violated",
        })
    }
}

/// Outcome of [`nernst_verdict`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NernstReport {
    /// Graphene case; `None` for other materials.
    pub case: Option<CaseLabel>,
    /// `S(T → 0)` in units of k_B (per µm² for plates).
    pub entropy_limit_estimate: f64,
    pub entropy_limit_error: f64,
    /// Power-law fit of `S(T)`; `None` when `S` changes sign on the grid.
    pub fit: Option<ScalingFit>,
    pub expected_exponent: Option<f64>,
    pub verdict: Verdict,
}

/// Fits the scan's entropy and decides whether it vanishes as `T → 0`:
/// satisfied iff the limit is zero within its error bar and the fitted
/// exponent exceeds [`VERDICT_EXPONENT`].
pub fn nernst_verdict(scan: &Scan, case: Option<CaseLabel>) -> Result<NernstReport> {
    if scan.rows.len() < 6 {
        return Err(CasimirError::DegenerateData(
            "a Nernst verdict needs at least six scan rows".into(),
        ));
    }
    let points: Vec<(f64, f64)> = scan.rows.iter().map(|r| (r.t, r.entropy.value)).collect();
    let kind = scan.system.kind();
    let try_log = matches!((case, kind), (Some(CaseLabel::Pristine), SystemKind::PlatePlate));
    let fit = match fit_scaling(&points, try_log) {
        Ok(f) => Some(f),
        Err(CasimirError::DegenerateData(_)) if points.iter().any(|p| p.1 != 0.0) => None,
        Err(e) => return Err(e),
    };
    let with_errors: Vec<(f64, f64, f64)> = scan
        .rows
        .iter()
        .map(|r| (r.t, r.entropy.value, r.entropy.error))
        .collect();
    let limit = extrapolate_to_zero(&with_errors)?;
    let expected_exponent = case.map(|c| match c {
        CaseLabel::Pristine => 2.0,
        CaseLabel::Gapped => 4.0,
        CaseLabel::Critical => 0.0,
        CaseLabel::Doped => 1.0,
    });
    let vanishing = fit.map_or(true, |f| f.exponent > VERDICT_EXPONENT);
    let verdict = if limit.consistent_with_zero() && vanishing {
        Verdict::Satisfied
    } else {
        Verdict::Violated
    };
    Ok(NernstReport {
        case,
        entropy_limit_estimate: limit.value / K_B,
        entropy_limit_error: limit.error / K_B,
        fit,
        expected_exponent,
        verdict,
    })
}

/// Zero-temperature entropy (k_B/µm²) of two Drude half-spaces with a
/// perfect lattice, to second order in `c/(aω_p)`.
pub fn drude_entropy_t0(a: f64, omega_p: f64) -> Result<f64> {
    if !(a > 0.0 && omega_p > 0.0) {
        return Err(CasimirError::InvalidParameter(
            "separation and plasma frequency must be positive".into(),
        ));
    }
    let x = HBAR_C / (a * omega_p);
    if x > 0.3 {
        return Err(CasimirError::SeriesOutOfRange(format!(
            "c/(aω_p) = {x:.3} exceeds 0.3"
        )));
    }
    Ok(-ZETA3 / (16.0 * std::f64::consts::PI * a * a) * (1.0 - 4.0 * x + 12.0 * x * x))
}

/// Zero-temperature entropy (k_B/µm²) of two dielectric half-spaces with dc
/// conductivity and static permittivity `eps0`.
pub fn dielectric_dc_entropy_t0(a: f64, eps0: f64) -> Result<f64> {
    if !(a > 0.0) || !(eps0 > 1.0) {
        return Err(CasimirError::InvalidParameter(
            "need a > 0 and ε0 > 1".into(),
        ));
    }
    let r = (eps0 - 1.0) / (eps0 + 1.0);
    let li = if eps0.is_infinite() { ZETA3 } else { polylog3(r * r)? };
    Ok((ZETA3 - li) / (16.0 * std::f64::consts::PI * a * a))
}

/// Zero-temperature Casimir–Polder entropy (k_B) of an atom near a
/// dielectric plate with dc conductivity.
pub fn cp_dc_entropy_t0(a: f64, alpha0: f64, eps0: f64) -> Result<f64> {
    if !(a > 0.0 && alpha0 > 0.0 && eps0 > 1.0) {
        return Err(CasimirError::InvalidParameter(
            "need a > 0, α0 > 0 and ε0 > 1".into(),
        ));
    }
    let r = if eps0.is_infinite() { 1.0 } else { (eps0 - 1.0) / (eps0 + 1.0) };
    Ok(alpha0 / (4.0 * a.powi(3)) * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::PlatePlateSystem;
    use crate::reflection::ReflectionProvider;
    use crate::response::DielectricModel;
    use std::f64::consts::PI;

    #[test]
    fn classification() {
        let c = |g, m| classify_case(&GrapheneParams::new(g, m).unwrap(), DEFAULT_CASE_TOL);
        assert_eq!(c(0.0, 0.0), CaseLabel::Pristine);
        assert_eq!(c(0.2, 0.05), CaseLabel::Gapped);
        assert_eq!(c(0.2, 0.1), CaseLabel::Critical);
        assert_eq!(c(0.2, 0.1 + 1e-12), CaseLabel::Critical);
        assert_eq!(c(0.0, 0.1), CaseLabel::Doped);
        assert_eq!(c(0.1, 0.1), CaseLabel::Doped);
        assert_eq!(c(0.2, 0.0), CaseLabel::Gapped);
    }

    #[test]
    fn drude_closed_form() {
        let s = drude_entropy_t0(1.0, 9.0).unwrap();
        let x = 0.197_326_980_4 / 9.0;
        let oracle = -1.202_056_903_159_594 / (16.0 * PI) * (1.0 - 4.0 * x + 12.0 * x * x);
        assert!((s - oracle).abs() < 1e-15);
        assert!((s + 0.02196).abs() < 1e-5);
        assert!(s < 0.0);
        let lead = drude_entropy_t0(1.0, 1e9).unwrap();
        assert!((lead + ZETA3 / (16.0 * PI)).abs() < 1e-9);
        assert!(matches!(drude_entropy_t0(1.0, 0.5), Err(CasimirError::SeriesOutOfRange(_))));
    }

    #[test]
    fn dielectric_dc_closed_form() {
        // Li₃(1/9) by its defining series
        let li: f64 = (1..60).map(|k| (1.0 / 9.0f64).powi(k) / (k as f64).powi(3)).sum();
        let oracle = (ZETA3 - li) / (16.0 * PI);
        let s = dielectric_dc_entropy_t0(1.0, 2.0).unwrap();
        assert!((s - oracle).abs() < 1e-14);
        assert!((s - 0.021674).abs() < 3e-6);
        assert!((dielectric_dc_entropy_t0(1.0, 1.0 + 1e-9).unwrap() - ZETA3 / (16.0 * PI)).abs() < 1e-9);
        assert!(dielectric_dc_entropy_t0(1.0, f64::INFINITY).unwrap().abs() < 1e-15);
    }

    #[test]
    fn cp_dc_closed_form() {
        let alpha0 = 2e-10;
        assert!((cp_dc_entropy_t0(1.0, alpha0, 3.0).unwrap() - alpha0 / 8.0).abs() < 1e-25);
        assert!(cp_dc_entropy_t0(1.0, alpha0, 1.0 + 1e-12).unwrap() < 1e-20);
        assert!((cp_dc_entropy_t0(2.0, alpha0, f64::INFINITY).unwrap() - alpha0 / 32.0).abs() < 1e-25);
    }

    #[test]
    fn asymptote_table_entries() {
        let p = GrapheneParams::new(0.2, 0.1).unwrap();
        let c = expected_asymptote(CaseLabel::Critical, SystemKind::PlatePlate, 2.0, &p, 0.0);
        assert_eq!(c.exponent, 0.0);
        assert!((c.scale_estimate - K_B / 4.0).abs() < 1e-20);
        let pr = expected_asymptote(CaseLabel::Pristine, SystemKind::AtomPlate, 1.0, &GrapheneParams::pristine(), 1.0);
        assert_eq!(pr.exponent, 2.0);
        let d = expected_asymptote(CaseLabel::Doped, SystemKind::PlatePlate, 1.0, &GrapheneParams::new(0.0, 0.1).unwrap(), 0.0);
        assert_eq!(d.exponent, 1.0);
        assert!((d.scale_estimate - 0.04 * K_B * K_B / HBAR_C.powi(3)).abs() < 1e-18);
    }

    #[test]
    fn extrapolation_of_power_laws() {
        let pts = |p: f64| -> Vec<(f64, f64, f64)> {
            [1.0, 1.3, 1.69].iter().map(|&t: &f64| (t, t.powf(p), 0.0)).collect()
        };
        for &p in &[1.0, 2.0, 4.0] {
            assert!(extrapolate_to_zero(&pts(p)).unwrap().consistent_with_zero(), "{p}");
        }
        let plateau: Vec<(f64, f64, f64)> = [1.0, 1.3, 1.69].iter().map(|&t| (t, 2.0 + 0.1 * t, 0.0)).collect();
        let e = extrapolate_to_zero(&plateau).unwrap();
        assert!((e.value - 2.0).abs() < 1e-12);
        assert!(!e.consistent_with_zero());
    }

    #[test]
    fn entropy_of_ideal_metal_is_positive_and_vanishes() {
        let s = System::PlatePlate(PlatePlateSystem::identical(ReflectionProvider::IdealMetal, 1.0).unwrap());
        let mut last = f64::INFINITY;
        for &t in &[40.0, 20.0, 10.0] {
            let e = entropy(&s, t, 1e-8).unwrap();
            assert!(e.value > 0.0);
            assert!(e.value < last);
            let kt = K_B * t;
            let lead = 3.0 * ZETA3 * K_B * kt * kt / (2.0 * PI * HBAR_C * HBAR_C)
                - 4.0 * PI * PI * K_B * kt.powi(3) / (45.0 * HBAR_C.powi(3));
            assert!((e.value - lead).abs() < 1e-3 * lead, "{t}: {} {lead}", e.value);
            last = e.value;
        }
    }

    #[test]
    fn entropy_matches_centered_difference() {
        let m = DielectricModel::constant(2.0).unwrap();
        let s = System::PlatePlate(PlatePlateSystem::identical(ReflectionProvider::Fresnel(m), 1.0).unwrap());
        let t = 30.0;
        let e = entropy(&s, t, 1e-9).unwrap();
        let h = 0.5;
        let fd = -(s.free_energy(t + h, 1e-10).unwrap() - s.free_energy(t - h, 1e-10).unwrap()) / (2.0 * h);
        assert!((e.value - fd).abs() < 1e-3 * e.value.abs() + e.error, "{e:?} {fd}");
    }

    #[test]
    fn scan_rejects_bad_grids() {
        let s = System::PlatePlate(PlatePlateSystem::identical(ReflectionProvider::IdealMetal, 1.0).unwrap());
        assert!(low_t_scan(&s, &[], 1e-6).is_err());
        assert!(low_t_scan(&s, &[2.0, 1.0], 1e-6).is_err());
        assert!(low_t_scan(&s, &[0.0, 1.0], 1e-6).is_err());
    }

    #[test]
    fn window_flags_hot_grids() {
        let p = ReflectionProvider::GraphenePt(GrapheneParams::pristine());
        let s = System::PlatePlate(PlatePlateSystem::identical(p, 0.05).unwrap());
        assert!(window_warnings(&s, 1.0).is_empty());
        assert!(!window_warnings(&s, 300.0).is_empty());
    }
}
