//! Casimir (plate–plate) and Casimir–Polder (atom–plate) free energies.
//!
//! Both geometries are evaluated through a dimensionless spectrum `Φ(ζ)`
//! with `ζ = 2aκ` and `y = 2aq`:
//!
//! * plates: `Φ(ζ) = (1/8πa²)∫_ζ^∞ y dy Σ_λ ln(1 − r_λ⁽¹⁾r_λ⁽²⁾e^{−y})` (µm⁻²),
//! * atom: `Φ(ζ) = −(1/8a³)∫_ζ^∞ dy α(ξ)e^{−y}[(2y² − ζ²)r_TM − ζ²r_TE]`,
//!
//! so that `F(T) = k_BT Σ′_l Φ(τl)` with `τ = 4πak_BT/ħc`, and
//! `E(0) = (ħc/4πa)∫₀^∞Φ(ζ)dζ`.
//!
//! The thermal correction `F(T) − E(0)` is split into an implicit part
//! (sum minus integral of the zero-temperature spectrum, done with the
//! Abel–Plana formula) and explicit parts carrying `r(T) − r⁰`, so that
//! nothing is obtained by subtracting two large energies.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{thermal_energy, HBAR_C};
use crate::error::{CasimirError, Result};
use crate::math::{
    abel_plana_contour, gaussian_difference, integrate_semi_infinite_with,
    integrate_with_breakpoints, matsubara_sum_parallel, with_fallible, QuadOptions, SumResult,
};
use crate::reflection::{graphene_params, ReflectionPair, ReflectionProvider};
use crate::response::{polarizability_at, AtomModel, Permittivity};

const CHUNK: u64 = 32;

/// Two parallel plates (or sheets) at separation `a` (µm).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlatePlateSystem {
    pub provider1: ReflectionProvider,
    pub provider2: ReflectionProvider,
    pub a: f64,
}

impl PlatePlateSystem {
    pub fn new(provider1: ReflectionProvider, provider2: ReflectionProvider, a: f64) -> Result<Self> {
        let s = Self {
            provider1,
            provider2,
            a,
        };
        s.validate()?;
        Ok(s)
    }

    /// Two identical plates.
    pub fn identical(provider: ReflectionProvider, a: f64) -> Result<Self> {
        Self::new(provider, provider, a)
    }

    pub fn validate(&self) -> Result<()> {
        check_separation(self.a)?;
        self.provider1.validate()?;
        self.provider2.validate()
    }
}

/// A polarizable atom at distance `a` (µm) from a plate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomPlateSystem {
    pub atom: AtomModel,
    pub provider: ReflectionProvider,
    pub a: f64,
}

impl AtomPlateSystem {
    pub fn new(atom: AtomModel, provider: ReflectionProvider, a: f64) -> Result<Self> {
        let s = Self { atom, provider, a };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_separation(self.a)?;
        self.atom.validate()?;
        self.provider.validate()
    }
}

/// Either geometry. Plate–plate energies are per unit area (eV/µm²),
/// atom–plate energies are in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum System {
    PlatePlate(PlatePlateSystem),
    AtomPlate(AtomPlateSystem),
}

impl System {
    pub fn validate(&self) -> Result<()> {
        match self {
            System::PlatePlate(s) => s.validate(),
            System::AtomPlate(s) => s.validate(),
        }
    }

    pub fn separation(&self) -> f64 {
        match self {
            System::PlatePlate(s) => s.a,
            System::AtomPlate(s) => s.a,
        }
    }

    /// The same system at another separation.
    pub fn with_separation(&self, a: f64) -> Result<System> {
        let s = match *self {
            System::PlatePlate(s) => System::PlatePlate(PlatePlateSystem { a, ..s }),
            System::AtomPlate(s) => System::AtomPlate(AtomPlateSystem { a, ..s }),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn providers(&self) -> Vec<ReflectionProvider> {
        match self {
            System::PlatePlate(s) => vec![s.provider1, s.provider2],
            System::AtomPlate(s) => vec![s.provider],
        }
    }

    pub fn free_energy(&self, t: f64, rel_tol: f64) -> Result<f64> {
        match self {
            System::PlatePlate(s) => casimir_free_energy(s, t, rel_tol),
            System::AtomPlate(s) => casimir_polder_free_energy(s, t, rel_tol),
        }
    }

    pub fn energy_t0(&self, rel_tol: f64) -> Result<f64> {
        match self {
            System::PlatePlate(s) => casimir_energy_t0(s, rel_tol),
            System::AtomPlate(s) => casimir_polder_energy_t0(s, rel_tol),
        }
    }

    pub fn breakdown(&self, t: f64, rel_tol: f64) -> Result<FreeEnergyBreakdown> {
        thermal_correction_breakdown(self, t, rel_tol)
    }
}

/// Decomposition of `F(T) − E(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FreeEnergyBreakdown {
    pub total_correction: f64,
    pub implicit: f64,
    pub explicit_l0: f64,
    pub explicit_lge1: f64,
    /// Accumulated error estimate of `total_correction`.
    pub abs_error: f64,
}

fn check_separation(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(CasimirError::InvalidParameter("separation must be positive".into()));
    }
    Ok(())
}

fn check_inputs(t: f64, rel_tol: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(CasimirError::domain("temperature must be positive"));
    }
    check_tol(rel_tol)
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(CasimirError::InvalidParameter("rel_tol must lie in (0, 1)".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
enum Branch {
    #[cfg_attr(not(test), allow(dead_code))]
    Thermal(f64),
    ZeroT,
    Reference,
}

fn pair_at(p: &ReflectionProvider, branch: Branch, xi: f64, k: f64) -> Result<ReflectionPair> {
    match branch {
        Branch::Thermal(t) => p.pair(xi, k, t),
        Branch::ZeroT => p.pair_zero_t(xi, k),
        Branch::Reference => p.analytic_reference().pair_zero_t(xi, k),
    }
}

#[derive(Clone, Copy)]
enum Geometry<'s> {
    Plates(&'s ReflectionProvider, &'s ReflectionProvider),
    Atom(&'s AtomModel, &'s ReflectionProvider),
}

/// Evaluation context shared by all spectra of one system.
struct Engine<'s> {
    geom: Geometry<'s>,
    a: f64,
    tol: f64,
    /// Absolute floor for the inner integrals, relative to the static spectrum.
    floor: f64,
    /// Looser floor for thermal shifts, whose integrands carry the noise of
    /// the inner tensor integrals.
    shift_floor: f64,
}

/// Complex polarizability `α0/(1 + ξ²/ω0²)`.
fn polarizability_complex(atom: &AtomModel, xi: Complex64) -> Complex64 {
    match atom.omega0 {
        None => Complex64::new(atom.alpha0, 0.0),
        Some(w) => atom.alpha0 / (1.0 + (xi / w) * (xi / w)),
    }
}

/// Characteristic `ζ` values of a provider's frequency dependence.
fn feature_scales(p: &ReflectionProvider, a: f64) -> Vec<f64> {
    let z = |e: f64| 2.0 * a * e / HBAR_C;
    let mut v = Vec::new();
    match p {
        ReflectionProvider::Fresnel(m) => match m.permittivity {
            Permittivity::Plasma { omega_p } => v.push(z(omega_p)),
            Permittivity::Drude { omega_p, gamma, .. } => {
                v.push(z(omega_p));
                v.push(z(gamma));
            }
            Permittivity::ConstantEpsWithDc { dc, .. } if dc > 0.0 => {
                // 1/ξ tails need every decade resolved
                let mut s = z(dc);
                while s < 10.0 {
                    v.push(s);
                    s *= 10.0;
                }
            }
            _ => {}
        },
        ReflectionProvider::Hydrodynamic(h) => v.push((2.0 * a * h.k()).sqrt()),
        _ => {
            if let Some(g) = graphene_params(p) {
                for e in [g.gap, g.mu, 2.0 * g.mu] {
                    if e > 0.0 {
                        v.push(z(e));
                    }
                }
            }
        }
    }
    v.retain(|s| s.is_finite() && *s > 0.0);
    v
}

fn ln_one_minus(w: f64) -> f64 {
    (-w).ln_1p()
}

/// `ln(1 − w)` for complex `w`, accurate for small `|w|`.
fn ln_one_minus_complex(w: Complex64) -> Complex64 {
    let (x, y) = (-w.re, -w.im);
    Complex64::new(0.5 * (x * (2.0 + x) + y * y).ln_1p(), y.atan2(1.0 + x))
}

impl<'s> Engine<'s> {
    fn new(geom: Geometry<'s>, a: f64, tol: f64) -> Self {
        Self {
            geom,
            a,
            tol,
            floor: 0.0,
            shift_floor: 0.0,
        }
    }

    fn providers(&self) -> Vec<&'s ReflectionProvider> {
        match self.geom {
            Geometry::Plates(p1, p2) => vec![p1, p2],
            Geometry::Atom(_, p) => vec![p],
        }
    }

    fn temperature_dependent(&self) -> bool {
        self.providers().iter().any(|p| p.is_temperature_dependent())
    }

    fn analytic(&self) -> bool {
        self.providers().iter().all(|p| p.zero_t_is_analytic())
    }

    fn prefactor(&self) -> f64 {
        match self.geom {
            Geometry::Plates(..) => 1.0 / (8.0 * PI * self.a * self.a),
            Geometry::Atom(..) => -1.0 / (8.0 * self.a.powi(3)),
        }
    }

    fn xi(&self, zeta: f64) -> f64 {
        HBAR_C * zeta / (2.0 * self.a)
    }

    fn scales(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .providers()
            .iter()
            .flat_map(|p| feature_scales(p, self.a))
            .collect();
        if let Geometry::Atom(atom, _) = self.geom {
            if let Some(w) = atom.omega0 {
                v.push(2.0 * self.a * w / HBAR_C);
            }
        }
        v
    }

    fn inner_opts(&self) -> QuadOptions {
        QuadOptions::relative(0.1 * self.tol).with_abs_tol(self.floor)
    }

    /// `(ξ, k⊥, y)` at `y = ζ + x`.
    fn node(&self, zeta: f64, x: f64) -> (f64, f64, f64) {
        let k = (x * (x + 2.0 * zeta)).sqrt() / (2.0 * self.a);
        (self.xi(zeta), k, zeta + x)
    }

    /// y-integrand of the spectrum on one branch, prefactor excluded.
    fn integrand(&self, branch: Branch, zeta: f64, x: f64) -> Result<f64> {
        let (xi, k, y) = self.node(zeta, x);
        if y == 0.0 {
            return Ok(0.0);
        }
        let e = (-y).exp();
        if e == 0.0 {
            return Ok(0.0);
        }
        match self.geom {
            Geometry::Plates(p1, p2) => {
                let r1 = pair_at(p1, branch, xi, k)?;
                let r2 = if p1 == p2 { r1 } else { pair_at(p2, branch, xi, k)? };
                Ok(y * (ln_one_minus(r1.r_tm * r2.r_tm * e) + ln_one_minus(r1.r_te * r2.r_te * e)))
            }
            Geometry::Atom(atom, p) => {
                let r = pair_at(p, branch, xi, k)?;
                Ok(polarizability_at(atom, xi) * e * atom_bracket(zeta, y, r))
            }
        }
    }

    /// `integrand(hi) − integrand(lo)` formed without cancellation.
    fn integrand_difference(&self, hi: Branch, lo: Branch, zeta: f64, x: f64) -> Result<f64> {
        let (xi, k, y) = self.node(zeta, x);
        if y == 0.0 {
            return Ok(0.0);
        }
        let e = (-y).exp();
        if e == 0.0 {
            return Ok(0.0);
        }
        match self.geom {
            Geometry::Plates(p1, p2) => {
                let a1 = pair_at(p1, hi, xi, k)?;
                let b1 = pair_at(p1, lo, xi, k)?;
                let (a2, b2) = if p1 == p2 {
                    (a1, b1)
                } else {
                    (pair_at(p2, hi, xi, k)?, pair_at(p2, lo, xi, k)?)
                };
                let d = |ra1: f64, ra2: f64, rb1: f64, rb2: f64| {
                    let wb = rb1 * rb2 * e;
                    let dw = (ra1 * ra2 - rb1 * rb2) * e;
                    (-dw / (1.0 - wb)).ln_1p()
                };
                Ok(y * (d(a1.r_tm, a2.r_tm, b1.r_tm, b2.r_tm) + d(a1.r_te, a2.r_te, b1.r_te, b2.r_te)))
            }
            Geometry::Atom(atom, p) => {
                let a = pair_at(p, hi, xi, k)?;
                let b = pair_at(p, lo, xi, k)?;
                let d = ReflectionPair::new(a.r_tm - b.r_tm, a.r_te - b.r_te);
                Ok(polarizability_at(atom, xi) * e * atom_bracket(zeta, y, d))
            }
        }
    }

    /// y-integrand of `Φ_T − Φ⁰` built from `δ_T r`.
    fn integrand_shift(&self, t: f64, zeta: f64, x: f64) -> Result<f64> {
        let (xi, k, y) = self.node(zeta, x);
        if y == 0.0 {
            return Ok(0.0);
        }
        let e = (-y).exp();
        if e == 0.0 {
            return Ok(0.0);
        }
        let shift_tol = (0.01 * self.tol).max(1e-12);
        match self.geom {
            Geometry::Plates(p1, p2) => {
                let (r01, d1) = p1.thermal_shift(xi, k, t, shift_tol)?;
                let (r02, d2) = if p1 == p2 {
                    (r01, d1)
                } else {
                    p2.thermal_shift(xi, k, t, shift_tol)?
                };
                // exact ln(1 − w_T) − ln(1 − w⁰); r⁰ may vanish at the node
                let d = |r01: f64, d1: f64, r02: f64, d2: f64| {
                    let w0 = r01 * r02 * e;
                    let dw = (d1 * r02 + r01 * d2 + d1 * d2) * e;
                    (-dw / (1.0 - w0)).ln_1p()
                };
                Ok(y * (d(r01.r_tm, d1.r_tm, r02.r_tm, d2.r_tm) + d(r01.r_te, d1.r_te, r02.r_te, d2.r_te)))
            }
            Geometry::Atom(atom, p) => {
                let (_, d) = p.thermal_shift(xi, k, t, shift_tol)?;
                Ok(polarizability_at(atom, xi) * e * atom_bracket(zeta, y, d))
            }
        }
    }

    /// `prefactor·∫₀^∞ f(x)dx` for a spectrum at `ζ`.
    fn spectrum<F>(&self, zeta: f64, f: F) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        self.spectrum_with(zeta, self.inner_opts(), f)
    }

    fn spectrum_with<F>(&self, zeta: f64, opts: QuadOptions, f: F) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let a = self.a;
        let r = with_fallible(
            |x| {
                f(x).map_err(|e| {
                    let k = (x * (x + 2.0 * zeta)).sqrt() / (2.0 * a);
                    e.with_context(format!("k⊥={k:.6e} µm⁻¹"))
                })
            },
            |g| integrate_semi_infinite_with(g, 1.0, opts),
        )?;
        Ok(self.prefactor() * r.value)
    }

    fn phi(&self, branch: Branch, zeta: f64) -> Result<f64> {
        self.spectrum(zeta, |x| self.integrand(branch, zeta, x))
    }

    fn phi_difference(&self, hi: Branch, lo: Branch, zeta: f64) -> Result<f64> {
        self.spectrum(zeta, |x| self.integrand_difference(hi, lo, zeta, x))
    }

    fn phi_shift(&self, t: f64, zeta: f64) -> Result<f64> {
        let opts = self.inner_opts().with_abs_tol(self.shift_floor);
        self.spectrum_with(zeta, opts, |x| self.integrand_shift(t, zeta, x))
    }

    /// `Σ′_l term(τl)`, summed in parallel with a fixed reduction order.
    fn matsubara<F>(&self, tau: f64, t: f64, abs_tol: f64, term: F) -> Result<SumResult>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        let l_max = ((80.0 / tau).ceil() as u64).clamp(2_000, 50_000_000);
        matsubara_sum_parallel(
            |l| {
                term(tau * l as f64).map_err(|e| e.with_context(format!("l={l}, T={t} K")))
            },
            self.tol,
            abs_tol,
            l_max,
            CHUNK,
        )
    }

    /// `∫₀^∞ f(ζ)dζ` with the material feature scales as breakpoints;
    /// `abs_tol` is an absolute floor.
    fn integrate_zeta<F>(&self, f: F, abs_tol: f64) -> Result<(f64, f64)>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let mut pts: Vec<f64> = self.scales().into_iter().filter(|s| *s < 60.0).collect();
        pts.extend([0.5, 2.0, 8.0]);
        let top = pts.iter().cloned().fold(1.0, f64::max) * 1.5;
        let opts = QuadOptions::relative(0.5 * self.tol).with_abs_tol(abs_tol);
        let head = with_fallible(&f, |g| integrate_with_breakpoints(g, 0.0, top, &pts, opts))?;
        let tail = with_fallible(|x| f(top + x), |g| integrate_semi_infinite_with(g, 1.0, opts))?;
        Ok((
            head.value + tail.value,
            head.abs_error_estimate + tail.abs_error_estimate,
        ))
    }

    /// Complex s-integrand of the analytic reference spectrum at complex `ζ`,
    /// prefactor excluded.
    fn integrand_complex(&self, zeta: Complex64, s: f64) -> Result<Complex64> {
        if s == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let k = s / (2.0 * self.a);
        let xi = zeta * (HBAR_C / (2.0 * self.a));
        let y = crate::math::csqrt(s * s + zeta * zeta);
        let e = (-y).exp();
        match self.geom {
            Geometry::Plates(p1, p2) => {
                let (tm1, te1) = p1.analytic_reference().pair_complex(xi, k)?;
                let (tm2, te2) = if p1 == p2 {
                    (tm1, te1)
                } else {
                    p2.analytic_reference().pair_complex(xi, k)?
                };
                Ok(s * (ln_one_minus_complex(tm1 * tm2 * e) + ln_one_minus_complex(te1 * te2 * e)))
            }
            Geometry::Atom(atom, p) => {
                let (tm, te) = p.analytic_reference().pair_complex(xi, k)?;
                let z2 = zeta * zeta;
                let bracket = (2.0 * y * y - z2) * tm - z2 * te;
                Ok(polarizability_complex(atom, xi) * s * e * bracket / y)
            }
        }
    }

    /// The same integrand at `ζ = 0` (where `y = s`), from real coefficients.
    fn integrand_static(&self, s: f64) -> Result<f64> {
        self.integrand(Branch::Reference, 0.0, s)
    }

    /// Abel–Plana difference `Σ′Φ(τl) − ∫₀^∞Φ(τz)dz` of the analytic
    /// reference spectrum. `F(0)e^{−τ²z²}` is subtracted under the inner
    /// integral, so the contour only sees the genuinely thermal remainder.
    fn reference_sum_minus_integral(&self, tau: f64) -> Result<(f64, f64)> {
        let pref = self.prefactor();
        let phi0 = self.phi(Branch::Reference, 0.0)?;
        let static_abs = if pref != 0.0 { (phi0 / pref).abs() } else { 0.0 };
        let inner = QuadOptions::relative(0.1 * self.tol).with_abs_tol(1e-13 * static_abs);
        let g = |z: Complex64| -> Result<Complex64> {
            let zeta = z * tau;
            let damp = (-zeta * zeta).exp();
            let scale = 1.0 + zeta.norm();
            let h = |s: f64| -> Result<Complex64> {
                Ok(self.integrand_complex(zeta, s)? - self.integrand_static(s)? * damp)
            };
            let ctx = |e: CasimirError| e.with_context(format!("contour point ζ={zeta:.6e}"));
            // either component may cancel to far below |G|; its accuracy is
            // judged against the size of the whole integrand
            let coarse = QuadOptions::relative(1e-3).with_abs_tol(inner.abs_tol);
            let mag = with_fallible(|s| Ok(h(s)?.norm()), |f| integrate_semi_infinite_with(f, scale, coarse))
                .map_err(ctx)?
                .value;
            let inner = inner.with_abs_tol(inner.abs_tol.max(0.1 * self.tol * mag));
            let re = with_fallible(|s| Ok(h(s)?.re), |f| integrate_semi_infinite_with(f, scale, inner))
                .map_err(ctx)?;
            let im = with_fallible(|s| Ok(h(s)?.im), |f| integrate_semi_infinite_with(f, scale, inner))
                .map_err(ctx)?;
            Ok(pref * Complex64::new(re.value, im.value))
        };
        let abs = 1e-9 * self.tol * phi0.abs();
        let contour = abel_plana_contour(g, self.tol, abs)
            .map_err(|e| e.with_context("Abel–Plana contour"))?;
        let value = contour + phi0 * gaussian_difference(tau);
        Ok((value, self.tol * contour.abs() + abs))
    }
}

/// `(2y² − ζ²)r_TM − ζ²r_TE`; the TE term is dropped at `ζ = 0`.
fn atom_bracket(zeta: f64, y: f64, r: ReflectionPair) -> f64 {
    if zeta == 0.0 {
        2.0 * y * y * r.r_tm
    } else {
        let z2 = zeta * zeta;
        (2.0 * y * y - z2) * r.r_tm - z2 * r.r_te
    }
}

fn engine_of(system: &System, rel_tol: f64) -> Result<Engine<'_>> {
    let mut engine = match system {
        System::PlatePlate(s) => Engine::new(Geometry::Plates(&s.provider1, &s.provider2), s.a, rel_tol),
        System::AtomPlate(s) => Engine::new(Geometry::Atom(&s.atom, &s.provider), s.a, rel_tol),
    };
    let phi0 = engine.phi(Branch::ZeroT, 0.0)?;
    let raw = (phi0 / engine.prefactor()).abs();
    engine.floor = 1e-15 * raw;
    engine.shift_floor = (1e-6 * rel_tol * raw).max(engine.floor);
    Ok(engine)
}

/// Explicit parts `(k_BT·½ΔΦ(0), k_BT·Σ_{l≥1}ΔΦ(τl), error)`.
fn explicit_parts(engine: &Engine, t: f64, tau: f64, scale: f64) -> Result<(f64, f64, f64)> {
    if !engine.temperature_dependent() {
        return Ok((0.0, 0.0, 0.0));
    }
    let kt = thermal_energy(t);
    let d0 = engine
        .phi_shift(t, 0.0)
        .map_err(|e| e.with_context(format!("l=0, T={t} K")))?;
    let rest = engine.matsubara(tau, t, 1e-12 * engine.tol * scale, |zeta| {
        if zeta == 0.0 {
            Ok(0.0)
        } else {
            engine.phi_shift(t, zeta)
        }
    })?;
    let l0 = 0.5 * kt * d0;
    let lge1 = kt * rest.value;
    let err = engine.tol * (l0.abs() + lge1.abs()) + kt * rest.tail_estimate.abs();
    Ok((l0, lge1, err))
}

fn free_energy(system: &System, t: f64, rel_tol: f64) -> Result<f64> {
    check_inputs(t, rel_tol)?;
    system.validate()?;
    let engine = engine_of(system, rel_tol)?;
    let tau = crate::constants::matsubara_spacing(system.separation(), t);
    let kt = thermal_energy(t);
    let phi0 = engine.phi(Branch::ZeroT, 0.0)?;
    let base = engine.matsubara(tau, t, 1e-12 * rel_tol * phi0.abs(), |zeta| {
        engine.phi(Branch::ZeroT, zeta)
    })?;
    let (l0, lge1, _) = explicit_parts(&engine, t, tau, phi0.abs())?;
    Ok(kt * base.value + l0 + lge1)
}

fn energy_t0(system: &System, rel_tol: f64) -> Result<f64> {
    check_tol(rel_tol)?;
    system.validate()?;
    let engine = engine_of(system, rel_tol)?;
    let phi0 = engine.phi(Branch::ZeroT, 0.0)?;
    let (v, _) = engine.integrate_zeta(|zeta| engine.phi(Branch::ZeroT, zeta), 1e-6 * rel_tol * phi0.abs())?;
    Ok(HBAR_C / (4.0 * PI * system.separation()) * v)
}

/// Casimir free energy per unit area (eV/µm²) at temperature `t` (K).
pub fn casimir_free_energy(system: &PlatePlateSystem, t: f64, rel_tol: f64) -> Result<f64> {
    free_energy(&System::PlatePlate(*system), t, rel_tol)
}

/// Casimir energy per unit area (eV/µm²) at zero temperature.
pub fn casimir_energy_t0(system: &PlatePlateSystem, rel_tol: f64) -> Result<f64> {
    energy_t0(&System::PlatePlate(*system), rel_tol)
}

/// Casimir–Polder free energy (eV) at temperature `t` (K).
pub fn casimir_polder_free_energy(system: &AtomPlateSystem, t: f64, rel_tol: f64) -> Result<f64> {
    free_energy(&System::AtomPlate(*system), t, rel_tol)
}

/// Casimir–Polder interaction energy (eV) at zero temperature.
pub fn casimir_polder_energy_t0(system: &AtomPlateSystem, rel_tol: f64) -> Result<f64> {
    energy_t0(&System::AtomPlate(*system), rel_tol)
}

/// `F(T) − E(0)` split into implicit and explicit contributions.
///
/// The implicit part is `k_BT[Σ′Φ⁰(τl) − ∫Φ⁰(τz)dz]`. When `r⁰` is not
/// analytic at `ξ = 0` (Drude with constant damping, dc conductivity,
/// doped graphene) the Abel–Plana formula is applied to an analytic
/// companion and the remainder `Φ⁰ − Φ_ref` is summed and integrated
/// directly.
pub fn thermal_correction_breakdown(system: &System, t: f64, rel_tol: f64) -> Result<FreeEnergyBreakdown> {
    check_inputs(t, rel_tol)?;
    system.validate()?;
    let engine = engine_of(system, rel_tol)?;
    let tau = crate::constants::matsubara_spacing(system.separation(), t);
    let kt = thermal_energy(t);

    let (mut implicit, mut err) = engine.reference_sum_minus_integral(tau)?;
    if !engine.analytic() {
        let d0 = engine.phi_difference(Branch::ZeroT, Branch::Reference, 0.0)?;
        let sum = engine.matsubara(tau, t, 1e-12 * rel_tol * d0.abs(), |zeta| {
            engine.phi_difference(Branch::ZeroT, Branch::Reference, zeta)
        })?;
        let (int, int_err) = engine.integrate_zeta(
            |zeta| engine.phi_difference(Branch::ZeroT, Branch::Reference, zeta),
            1e-6 * rel_tol * d0.abs() * tau,
        )?;
        implicit += sum.value - int / tau;
        err += rel_tol * sum.value.abs() + sum.tail_estimate.abs() + int_err / tau;
    }
    implicit *= kt;
    err *= kt;

    let scale = engine.phi(Branch::ZeroT, 0.0)?.abs();
    let (explicit_l0, explicit_lge1, e_err) = explicit_parts(&engine, t, tau, scale)?;
    Ok(FreeEnergyBreakdown {
        total_correction: implicit + explicit_l0 + explicit_lge1,
        implicit,
        explicit_l0,
        explicit_lge1,
        abs_error: err + e_err,
    })
}

/// Sphere–plate force (eV/µm) in the proximity force approximation,
/// `2πR·F(a, T)`; `t = 0` uses the zero-temperature energy.
pub fn pfa_sphere_force(system: &PlatePlateSystem, t: f64, radius: f64, rel_tol: f64) -> Result<f64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(CasimirError::InvalidParameter("sphere radius must be positive".into()));
    }
    if system.a / radius > 0.1 {
        log::warn!(
            "a/R = {:.3} exceeds 0.1; the proximity force approximation is unreliable",
            system.a / radius
        );
    }
    let f = if t == 0.0 {
        casimir_energy_t0(system, rel_tol)?
    } else {
        casimir_free_energy(system, t, rel_tol)?
    };
    Ok(2.0 * PI * radius * f)
}

/// Free energy summed directly from `r(T)` at every Matsubara node, used
/// to cross-check the split evaluation.
#[cfg(test)]
fn free_energy_direct(system: &System, t: f64, rel_tol: f64) -> Result<f64> {
    let engine = engine_of(system, rel_tol)?;
    let tau = crate::constants::matsubara_spacing(system.separation(), t);
    let s = engine.matsubara(tau, t, 0.0, |zeta| engine.phi(Branch::Thermal(t), zeta))?;
    Ok(thermal_energy(t) * s.value)
}
