//! Physical constants and unit conversions.
//!
//! Energies and frequencies are carried in eV (`ħξ`), lengths in µm and
//! temperatures in K. Imaginary frequencies are turned into wave numbers
//! through `κ = ħξ / ħc` (µm⁻¹).

/// ħc in eV·µm.
pub const HBAR_C: f64 = 0.197_326_980_4;

/// Boltzmann constant in eV/K.
pub const K_B: f64 = 8.617_333e-5;

/// Fine-structure constant.
pub const ALPHA_FS: f64 = 7.297_352_569_3e-3;

/// Default ratio v_F / c for graphene.
pub const FERMI_VELOCITY_RATIO: f64 = 1.0 / 300.0;

/// Riemann ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_2;

/// Thermal energy k_B·T in eV.
#[inline]
pub fn thermal_energy(temperature: f64) -> f64 {
    K_B * temperature
}

/// Matsubara frequency ħξ_l in eV.
#[inline]
pub fn matsubara_energy(l: u64, temperature: f64) -> f64 {
    2.0 * std::f64::consts::PI * K_B * temperature * l as f64
}

/// Converts an energy in eV to a wave number in µm⁻¹.
#[inline]
pub fn energy_to_wavenumber(e: f64) -> f64 {
    e / HBAR_C
}

/// Dimensionless Matsubara spacing `τ = 4π a k_B T / ħc` (so that `2aκ_l = τ l`).
#[inline]
pub fn matsubara_spacing(separation: f64, temperature: f64) -> f64 {
    4.0 * std::f64::consts::PI * separation * K_B * temperature / HBAR_C
}
