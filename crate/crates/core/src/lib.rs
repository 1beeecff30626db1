//! Work and heat exchanged between a single photon and a two-level emitter in
//! a one-dimensional waveguide.
//!
//! The emitter starts in its ground state and is hit by a single photon with
//! an exponential temporal profile (linewidth Δ, central frequency ω_L). In the
//! one-excitation sector the dynamics is exact, and the reduced emitter state
//! obeys a time-local master equation with an induced frequency ω_s(t) and
//! decay rate Γ(t). From these the crate computes work and heat fluxes,
//! cycle integrals, detuning sweeps and field-side signatures. A brute-force
//! discretized-continuum simulator serves as an independent oracle.
//!
//! Units: ħ = c = 1, rates and frequencies in units of Γ_1D.

pub mod acceptance;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod io;
pub mod lattice;
pub mod numerics;
pub mod params;
pub mod thermo;

pub use dynamics::{AmplitudeTrace, CoefficientTrace, Emitter, Scattering, Source, SpontaneousEmission};
pub use error::{Error, Result};
pub use params::SimParams;
