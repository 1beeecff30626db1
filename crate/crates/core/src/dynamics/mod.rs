//! Exact one-excitation dynamics of the emitter and the coefficients of its
//! time-local master equation, ω_s(t) = −Im[ψ̇/ψ] and Γ(t) = −2 Re[ψ̇/ψ].

pub mod closed;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::ode;
use crate::params::SimParams;

pub use closed::{
    excited_amplitude_closed, instantaneous_decay_rate, instantaneous_frequency, interaction_energy,
    spontaneous_emission_amplitude,
};

/// Where an amplitude trace came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedForm,
    OdeOracle,
    LatticeOracle,
}

/// Excited-state amplitude sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeTrace {
    pub times: Vec<f64>,
    pub psi: Vec<Complex64>,
    pub source: Source,
}

impl AmplitudeTrace {
    pub fn populations(&self) -> impl Iterator<Item = f64> + '_ {
        self.psi.iter().map(|p| p.norm_sqr())
    }

    /// Largest |ψ_self − ψ_other| over a shared grid.
    pub fn max_abs_diff(&self, other: &AmplitudeTrace) -> f64 {
        assert_eq!(self.times.len(), other.times.len(), "traces on different grids");
        self.psi
            .iter()
            .zip(&other.psi)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// A single-excitation emitter whose amplitude is known in closed form.
///
/// The amplitude is represented in a frame rotating at [`Emitter::carrier`]:
/// ψ(t) = c(t) e^{−i carrier t}.
pub trait Emitter: Sync {
    /// Vacuum decay rate into the waveguide.
    fn gamma1d(&self) -> f64;
    fn carrier(&self) -> f64;
    fn rotating_amplitude(&self, t: f64) -> Complex64;
    fn frequency(&self, t: f64) -> Result<f64>;
    fn decay_rate(&self, t: f64) -> Result<f64>;
    fn frequency_rate(&self, t: f64) -> Result<f64>;
    fn work_flux(&self, t: f64) -> f64;
    fn heat_flux(&self, t: f64) -> f64;
    /// dP_e/dt from the equation of motion (not from Γ(t)).
    fn population_rate(&self, t: f64) -> f64;

    fn amplitude(&self, t: f64) -> Complex64 {
        self.rotating_amplitude(t) * Complex64::from_polar(1.0, -self.carrier() * t)
    }

    fn population(&self, t: f64) -> f64 {
        self.rotating_amplitude(t).norm_sqr()
    }
}

/// The emitter driven by the exponential single-photon packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scattering(pub SimParams);

impl Emitter for Scattering {
    fn gamma1d(&self) -> f64 {
        self.0.gamma1d
    }
    fn carrier(&self) -> f64 {
        self.0.omega0
    }
    fn rotating_amplitude(&self, t: f64) -> Complex64 {
        closed::rotating_amplitude(&self.0, t)
    }
    fn frequency(&self, t: f64) -> Result<f64> {
        closed::instantaneous_frequency(&self.0, t)
    }
    fn decay_rate(&self, t: f64) -> Result<f64> {
        closed::instantaneous_decay_rate(&self.0, t)
    }
    fn frequency_rate(&self, t: f64) -> Result<f64> {
        closed::frequency_rate(&self.0, t)
    }
    fn work_flux(&self, t: f64) -> f64 {
        closed::work_flux(&self.0, t)
    }
    fn heat_flux(&self, t: f64) -> f64 {
        closed::heat_flux(&self.0, t)
    }
    fn population_rate(&self, t: f64) -> f64 {
        closed::population_rate(&self.0, t)
    }
}

/// An emitter starting in |e⟩ with the field in vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpontaneousEmission {
    pub gamma1d: f64,
    pub omega_l: f64,
}

impl Emitter for SpontaneousEmission {
    fn gamma1d(&self) -> f64 {
        self.gamma1d
    }
    fn carrier(&self) -> f64 {
        self.omega_l
    }
    fn rotating_amplitude(&self, t: f64) -> Complex64 {
        Complex64::new((-0.5 * self.gamma1d * t).exp(), 0.0)
    }
    fn frequency(&self, _t: f64) -> Result<f64> {
        Ok(self.omega_l)
    }
    fn decay_rate(&self, _t: f64) -> Result<f64> {
        Ok(self.gamma1d)
    }
    fn frequency_rate(&self, _t: f64) -> Result<f64> {
        Ok(0.0)
    }
    fn work_flux(&self, _t: f64) -> f64 {
        0.0
    }
    fn heat_flux(&self, t: f64) -> f64 {
        -self.gamma1d * self.omega_l * (-self.gamma1d * t).exp()
    }
    fn population_rate(&self, t: f64) -> f64 {
        -self.gamma1d * (-self.gamma1d * t).exp()
    }
    fn amplitude(&self, t: f64) -> Complex64 {
        spontaneous_emission_amplitude(self.gamma1d, self.omega_l, t)
    }
}

/// Samples the closed-form amplitude on `grid`.
pub fn closed_form_trace(params: &SimParams, grid: &[f64]) -> AmplitudeTrace {
    AmplitudeTrace {
        times: grid.to_vec(),
        psi: grid.iter().map(|&t| excited_amplitude_closed(params, t)).collect(),
        source: Source::ClosedForm,
    }
}

/// Independent oracle: integrates the rotating-frame amplitude equation
/// ċ = −(Γ_1D/2) c − k e^{−(Δ/2+iδ)t} with adaptive Dormand–Prince steps from
/// c(0) = 0, then restores the carrier e^{−iω_0 t}.
pub fn excited_amplitude_ode(params: &SimParams, grid: &[f64]) -> Result<AmplitudeTrace> {
    if let Some(&bad) = grid.iter().find(|&&t| t < 0.0 || t > params.t_max) {
        return Err(Error::OutOfRange(format!("grid point {bad} outside [0, t_max = {}]", params.t_max)));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::OutOfRange("grid must be strictly increasing".into()));
    }
    let half_gamma = 0.5 * params.gamma1d;
    let k = params.drive();
    let pole = Complex64::new(0.5 * params.delta_lw, params.detuning);
    let rhs = |t: f64, c: Complex64| -half_gamma * c - k * (-pole * t).exp();
    let tol = ode::Tolerance {
        rtol: 1e-12,
        atol: 1e-14,
        ..ode::Tolerance::default()
    };
    let rotating = ode::solve(rhs, 0.0, Complex64::new(0.0, 0.0), grid, tol)?;
    let psi = grid
        .iter()
        .zip(rotating)
        .map(|(&t, c)| c * Complex64::from_polar(1.0, -params.omega0 * t))
        .collect();
    Ok(AmplitudeTrace {
        times: grid.to_vec(),
        psi,
        source: Source::OdeOracle,
    })
}

/// ω_s, Γ, P_e and both fluxes on one grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTrace {
    pub times: Vec<f64>,
    pub omega_s: Vec<f64>,
    pub gamma_t: Vec<f64>,
    pub pe: Vec<f64>,
    pub w_flux: Vec<f64>,
    pub q_flux: Vec<f64>,
    /// Samples where ψ vanishes; ω_s and Γ are NaN there.
    pub pole: Vec<bool>,
}

impl CoefficientTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn max_pe(&self) -> f64 {
        self.pe.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_gamma(&self) -> f64 {
        self.gamma_t
            .iter()
            .copied()
            .filter(|g| g.is_finite())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Assembles the coefficient series for `emitter` on `grid`.
///
/// Pole samples are flagged and carry NaN for ω_s and Γ; their fluxes are the
/// finite limits returned by the emitter.
pub fn coefficient_trace<E: Emitter + ?Sized>(emitter: &E, grid: &[f64]) -> Result<CoefficientTrace> {
    if let Some(&bad) = grid.iter().find(|&&t| t <= 0.0) {
        return Err(Error::OutOfRange(format!("coefficient grid must be positive, found {bad}")));
    }
    let n = grid.len();
    let mut tr = CoefficientTrace {
        times: grid.to_vec(),
        omega_s: Vec::with_capacity(n),
        gamma_t: Vec::with_capacity(n),
        pe: Vec::with_capacity(n),
        w_flux: Vec::with_capacity(n),
        q_flux: Vec::with_capacity(n),
        pole: Vec::with_capacity(n),
    };
    for &t in grid {
        let (w, g, pole) = match (emitter.frequency(t), emitter.decay_rate(t)) {
            (Ok(w), Ok(g)) => (w, g, false),
            (Err(Error::Pole { .. }), _) | (_, Err(Error::Pole { .. })) => (f64::NAN, f64::NAN, true),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        tr.omega_s.push(w);
        tr.gamma_t.push(g);
        tr.pe.push(emitter.population(t));
        tr.w_flux.push(emitter.work_flux(t));
        tr.q_flux.push(emitter.heat_flux(t));
        tr.pole.push(pole);
    }
    Ok(tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{default_grid, uniform_grid};

    #[test]
    fn ode_matches_closed_form_at_mode_matching() {
        let prm = SimParams::new(1.0, 1.0, 0.0);
        let grid = uniform_grid(0.0, 30.0, 301);
        let ode = excited_amplitude_ode(&prm, &grid).unwrap();
        for (t, psi) in grid.iter().zip(&ode.psi) {
            let envelope = t * (-0.5 * t).exp() / 2f64.sqrt();
            assert!((psi.norm() - envelope).abs() < 1e-8);
        }
        assert_eq!(ode.source, Source::OdeOracle);
    }

    #[test]
    fn ode_respects_norm_bound() {
        for prm in [SimParams::new(1.0, 10.0, 3.0), SimParams::new(1.0, 0.1, -1.0)] {
            let ode = excited_amplitude_ode(&prm, &default_grid(&prm)).unwrap();
            assert!(ode.populations().all(|p| p <= 1.0));
        }
    }

    #[test]
    fn ode_rejects_grid_outside_horizon() {
        let prm = SimParams::new(1.0, 10.0, 3.0);
        assert!(excited_amplitude_ode(&prm, &[0.0, prm.t_max * 2.0]).is_err());
        assert!(excited_amplitude_ode(&prm, &[1.0, 0.5]).is_err());
    }

    #[test]
    fn resonant_trace_has_no_work() {
        let prm = SimParams::new(1.0, 3.0, 0.0);
        let tr = coefficient_trace(&Scattering(prm), &default_grid(&prm)).unwrap();
        assert!(tr.w_flux.iter().all(|&w| w == 0.0));
        assert!(tr.omega_s.iter().all(|&w| w == prm.omega0));
    }

    #[test]
    fn spontaneous_emission_trace() {
        let se = SpontaneousEmission { gamma1d: 1.0, omega_l: 100.0 };
        let grid = uniform_grid(1e-6, 40.0, 2001);
        let tr = coefficient_trace(&se, &grid).unwrap();
        for (i, &t) in grid.iter().enumerate() {
            assert_eq!(tr.omega_s[i], 100.0);
            assert_eq!(tr.gamma_t[i], 1.0);
            assert!((tr.q_flux[i] + 100.0 * (-t).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn pole_samples_are_flagged() {
        let prm = SimParams::new(1.0, 1.0, 1.0);
        let t0 = 2.0 * std::f64::consts::PI;
        let tr = coefficient_trace(&Scattering(prm), &[1.0, t0, 7.0]).unwrap();
        assert_eq!(tr.pole, vec![false, true, false]);
        assert!(tr.omega_s[1].is_nan());
        assert!(tr.w_flux[1].is_finite() && tr.q_flux[1].is_finite());
    }
}
