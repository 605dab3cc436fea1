//! Lifshitz-theory Casimir and Casimir-Polder free energies, entropies and
//! low-temperature asymptotics for metals, dielectrics and graphene.
//!
//! Units: energies and imaginary frequencies `ħξ` in eV, lengths in µm,
//! temperatures in K.

pub mod constants;
pub mod energy;
pub mod error;
pub mod math;
pub mod response;
pub mod reflection;
pub mod tensor;
pub mod thermo;

pub use error::{CasimirError, Result};
