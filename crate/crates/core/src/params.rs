//! Physical parameters of one scattering scenario.
//!
//! Natural units: ħ = 1, c = 1, and by convention Γ_1D = 1 sets the scale, so
//! rates and frequencies are in units of Γ_1D and times in units of 1/Γ_1D.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bare frequency in units of Γ_1D.
pub const DEFAULT_OMEGA0: f64 = 100.0;

/// Number of e-folds of the slowest rate covered by the default horizon.
/// e^{-40} ≈ 4e-18 keeps P_e(t_max) below 1e-12 including the t² prefactor
/// at the degenerate point.
pub const HORIZON_EFOLDS: f64 = 40.0;

/// Radius around z = 0 inside which the closed form switches to its series branch.
pub const DEGENERACY_EPS: f64 = 1e-9;

/// Parameters of the exponential-packet scattering problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimParams {
    /// Vacuum decay rate into the waveguide, Γ_1D.
    pub gamma1d: f64,
    /// Packet linewidth Δ.
    pub delta_lw: f64,
    /// Detuning δ = ω_L − ω_0.
    pub detuning: f64,
    /// Bare transition frequency ω_0.
    pub omega0: f64,
    /// Cycle horizon.
    pub t_max: f64,
    /// First evaluation time for ψ̇/ψ ratios.
    pub t_min: f64,
}

impl SimParams {
    /// Parameters with default ω_0, t_max and t_min for the given rates.
    pub fn new(gamma1d: f64, delta_lw: f64, detuning: f64) -> Self {
        SimParams {
            gamma1d,
            delta_lw,
            detuning,
            omega0: DEFAULT_OMEGA0 * gamma1d,
            t_max: default_t_max(gamma1d, delta_lw),
            t_min: default_t_min(gamma1d, delta_lw),
        }
    }

    pub fn with_omega0(mut self, omega0: f64) -> Self {
        self.omega0 = omega0;
        self
    }

    pub fn with_t_max(mut self, t_max: f64) -> Self {
        self.t_max = t_max;
        self
    }

    /// Photon central frequency ω_L = ω_0 + δ.
    pub fn omega_l(&self) -> f64 {
        self.omega0 + self.detuning
    }

    /// Amplitude with which the incoming packet drives the emitter,
    /// √(Γ_1D Δ / 2). Only the forward channel carries the packet, and it
    /// couples at half the total rate.
    pub fn drive(&self) -> f64 {
        (0.5 * self.gamma1d * self.delta_lw).sqrt()
    }

    /// z = (Γ_1D − Δ)/2 − iδ, the rate difference between the two poles of ψ.
    pub fn pole_gap(&self) -> Complex64 {
        Complex64::new(0.5 * (self.gamma1d - self.delta_lw), -self.detuning)
    }

    /// True when |z| falls below [`DEGENERACY_EPS`] (mode matched and resonant).
    pub fn is_degenerate(&self) -> bool {
        self.pole_gap().norm() < DEGENERACY_EPS
    }

    /// Checks hard invariants and returns soft warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        let finite = [
            self.gamma1d,
            self.delta_lw,
            self.detuning,
            self.omega0,
            self.t_max,
            self.t_min,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if self.gamma1d <= 0.0 {
            return Err(Error::InvalidParams(format!("gamma1d must be > 0, got {}", self.gamma1d)));
        }
        if self.delta_lw <= 0.0 {
            return Err(Error::InvalidParams(format!("delta_lw must be > 0, got {}", self.delta_lw)));
        }
        if self.omega0 <= 0.0 {
            return Err(Error::InvalidParams(format!("omega0 must be > 0, got {}", self.omega0)));
        }
        if !(self.t_min > 0.0 && self.t_max > self.t_min) {
            return Err(Error::InvalidParams(format!(
                "need t_max > t_min > 0, got t_min = {}, t_max = {}",
                self.t_min, self.t_max
            )));
        }
        let mut warnings = Vec::new();
        let scale = self.gamma1d.max(self.delta_lw).max(self.detuning.abs());
        if self.omega0 < 10.0 * scale {
            warnings.push(format!(
                "omega0 = {} is below 10x max(gamma1d, delta_lw, |detuning|) = {}; rotating-wave regime is marginal",
                self.omega0,
                10.0 * scale
            ));
        }
        Ok(warnings)
    }

    /// Validates and logs warnings.
    pub fn checked(self) -> Result<Self> {
        for w in self.validate()? {
            log::warn!("{w}");
        }
        Ok(self)
    }
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams::new(1.0, 1.0, 0.0)
    }
}

pub fn default_t_max(gamma1d: f64, delta_lw: f64) -> f64 {
    HORIZON_EFOLDS / gamma1d.min(delta_lw)
}

pub fn default_t_min(gamma1d: f64, delta_lw: f64) -> f64 {
    1e-6 / gamma1d.max(delta_lw)
}

/// Uniform grid of `n` points on `[a, b]`, endpoints included.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|k| if k == n - 1 { b } else { a + h * k as f64 })
                .collect()
        }
    }
}

/// Default trace grid size.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// The default trace grid for `params`.
pub fn default_grid(params: &SimParams) -> Vec<f64> {
    uniform_grid(params.t_min, params.t_max, DEFAULT_GRID_POINTS)
}
