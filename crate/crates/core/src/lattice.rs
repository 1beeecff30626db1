//! Brute-force one-excitation simulator: emitter plus a discretized
//! bidirectional continuum.
//!
//! Modes sit on a uniform grid ν_m = (m − N/2) dν, m = 0..N, measured from ω_0
//! (the rotating frame). Both channels couple to the emitter with the flat
//! strength g = √(Γ_1D dν / 4π):
//!
//! ```text
//! ċ   = −g Σ_m (a_m + b_m)
//! ȧ_m = −iν_m a_m + g c,   ḃ_m = −iν_m b_m + g c
//! ```
//!
//! Only the symmetric combination s = (a + b)/√2 couples; d = (a − b)/√2
//! evolves freely. Stepping is done on the real-space image of the modes, a
//! ring of N sites with spacing dx = L/N, L = 2π/dν. Choosing dt = dx makes
//! the free propagator e^{−iν_m dt} an exact one-site shift, and the coupling
//! is an exact rotation between the emitter and the site at the origin, so a
//! symmetric (Strang) step costs O(1).

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::dynamics::{AmplitudeTrace, Source};
use crate::error::{Error, Result};
use crate::params::SimParams;

/// Minimum fraction of the packet's Lorentzian norm the band must hold.
pub const REQUIRED_CAPTURE: f64 = 0.999;

/// Allowed norm drift per unit Γ_1D⁻¹ of evolution.
pub const DRIFT_PER_DECAY_TIME: f64 = 1e-6;

const fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Discretization of the continuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    /// Modes per channel. Must be a multiple of 4.
    pub n_modes: usize,
    /// Half-width of the retained band around ω_0.
    pub bandwidth: f64,
    /// Half-length of the region where real-space fields are reported.
    pub x_extent: f64,
}

impl LatticeConfig {
    /// Defaults for a scattering run.
    ///
    /// The band is the widest of 1000·max(Γ_1D, Δ), 50|δ| and the width that
    /// captures [`REQUIRED_CAPTURE`] of the packet spectrum. The box is large
    /// enough for `x_extent = 1.2 t_max`.
    pub fn for_params(p: &SimParams) -> Self {
        let capture = 1.02 * (p.delta_lw / (PI * (1.0 - REQUIRED_CAPTURE)) + p.detuning.abs());
        let bandwidth = (1000.0 * p.gamma1d.max(p.delta_lw))
            .max(50.0 * p.detuning.abs())
            .max(capture);
        Self::sized(bandwidth, 1.2 * p.t_max)
    }

    /// Defaults for spontaneous emission over `[0, t_max]`.
    pub fn for_emission(gamma1d: f64, t_max: f64) -> Self {
        Self::sized(1000.0 * gamma1d, 1.2 * t_max)
    }

    /// Smallest power-of-two mode count (at least 4096) whose box holds
    /// `[−x_extent, x_extent]`.
    pub fn sized(bandwidth: f64, x_extent: f64) -> Self {
        let need = (2.0 * x_extent * bandwidth / PI).ceil() as usize;
        LatticeConfig {
            n_modes: need.max(4096).next_power_of_two(),
            bandwidth,
            x_extent,
        }
    }

    /// dν.
    pub fn mode_spacing(&self) -> f64 {
        2.0 * self.bandwidth / self.n_modes as f64
    }

    /// L = 2π/dν, also the recurrence time of the ring.
    pub fn box_length(&self) -> f64 {
        PI * self.n_modes as f64 / self.bandwidth
    }

    /// Site spacing, equal to the time step (c = 1).
    pub fn dt(&self) -> f64 {
        PI / self.bandwidth
    }

    pub fn frequency(&self, m: usize) -> f64 {
        (m as f64 - 0.5 * self.n_modes as f64) * self.mode_spacing()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n_modes).map(|m| self.frequency(m)).collect()
    }

    /// Site positions x_j = (j − N/2) dx.
    pub fn positions(&self) -> Vec<f64> {
        let dx = self.dt();
        (0..self.n_modes)
            .map(|j| (j as f64 - 0.5 * self.n_modes as f64) * dx)
            .collect()
    }

    /// g = √(Γ_1D dν / 4π).
    pub fn coupling(&self, gamma1d: f64) -> f64 {
        (gamma1d * self.mode_spacing() / (4.0 * PI)).sqrt()
    }

    /// Hard errors for unusable configurations; warnings for low fidelity.
    pub fn validate(&self, p: &SimParams) -> Result<Vec<String>> {
        if self.n_modes < 16 || self.n_modes % 4 != 0 {
            return Err(Error::InvalidParams(format!(
                "n_modes must be a multiple of 4 and at least 16, got {}",
                self.n_modes
            )));
        }
        if !(self.bandwidth.is_finite() && self.bandwidth > 0.0) {
            return Err(Error::InvalidParams(format!("bandwidth must be positive, got {}", self.bandwidth)));
        }
        if !(self.x_extent > 0.0 && self.x_extent <= 0.5 * self.box_length()) {
            return Err(Error::InvalidParams(format!(
                "x_extent {} must lie in (0, L/2 = {}]",
                self.x_extent,
                0.5 * self.box_length()
            )));
        }
        let mut warnings = Vec::new();
        for (name, scale) in [("Gamma_1D", p.gamma1d), ("Delta", p.delta_lw), ("|delta|", p.detuning.abs())] {
            if self.bandwidth < 20.0 * scale {
                warnings.push(format!(
                    "low fidelity: bandwidth {} is below 20 x {name} = {}",
                    self.bandwidth,
                    20.0 * scale
                ));
            }
        }
        Ok(warnings)
    }
}

/// Emitter amplitude (rotating frame) and mode amplitudes of both channels.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    /// c = ψ e^{iω_0 t}.
    pub psi: Complex64,
    /// Forward-channel amplitudes, ascending ν.
    pub phi_a: Vec<Complex64>,
    /// Backward-channel amplitudes, ascending ν.
    pub phi_b: Vec<Complex64>,
    pub time: f64,
}

impl FieldState {
    pub fn norm(&self) -> f64 {
        self.psi.norm_sqr() + channel_norm(&self.phi_a) + channel_norm(&self.phi_b)
    }
}

pub fn channel_norm(modes: &[Complex64]) -> f64 {
    modes.iter().map(|z| z.norm_sqr()).sum()
}

/// The incoming exponential packet, φ_a(x, 0) ∝ Θ(−x) e^{(Δ/2 + iδ)x}.
///
/// Its modes are a_m = k dν / (2π g) / (Δ/2 + i(δ − ν_m)), which makes the
/// field at the emitter drive ċ with exactly −k e^{−(Δ/2+iδ)t}. After band
/// truncation the packet is renormalized.
pub fn init_exponential_packet(config: &LatticeConfig, params: &SimParams) -> Result<FieldState> {
    config.validate(params)?;
    let g = config.coupling(params.gamma1d);
    let amp = params.drive() * config.mode_spacing() / (2.0 * PI * g);
    let phi_a: Vec<Complex64> = config
        .frequencies()
        .into_iter()
        .map(|nu| amp / Complex64::new(0.5 * params.delta_lw, params.detuning - nu))
        .collect();
    let captured = channel_norm(&phi_a);
    if captured < REQUIRED_CAPTURE {
        return Err(Error::Truncation {
            captured,
            required: REQUIRED_CAPTURE,
        });
    }
    let scale = 1.0 / captured.sqrt();
    Ok(FieldState {
        psi: zero(),
        phi_a: phi_a.into_iter().map(|z| z * scale).collect(),
        phi_b: vec![zero(); config.n_modes],
        time: 0.0,
    })
}

/// Emitter in |e⟩, field in vacuum.
pub fn init_excited_tls(config: &LatticeConfig) -> FieldState {
    FieldState {
        psi: Complex64::new(1.0, 0.0),
        phi_a: vec![zero(); config.n_modes],
        phi_b: vec![zero(); config.n_modes],
        time: 0.0,
    }
}

fn alternate(v: &mut [Complex64]) {
    for z in v.iter_mut().skip(1).step_by(2) {
        *z = -*z;
    }
}

/// Site amplitudes s̃_j = N^{−1/2} Σ_m s_m e^{iν_m x_j}.
fn modes_to_sites(modes: &[Complex64]) -> Vec<Complex64> {
    let n = modes.len();
    let mut buf = modes.to_vec();
    alternate(&mut buf);
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    alternate(&mut buf);
    let s = 1.0 / (n as f64).sqrt();
    buf.iter_mut().for_each(|z| *z *= s);
    buf
}

fn sites_to_modes(sites: &[Complex64]) -> Vec<Complex64> {
    let n = sites.len();
    let mut buf = sites.to_vec();
    alternate(&mut buf);
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    alternate(&mut buf);
    let s = 1.0 / (n as f64).sqrt();
    buf.iter_mut().for_each(|z| *z *= s);
    buf
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Output of a recorded evolution.
#[derive(Debug, Clone)]
pub struct LatticeRun {
    pub state: FieldState,
    /// Lab-frame ψ at the recorded steps.
    pub trace: AmplitudeTrace,
    /// ⟨H_int⟩ = 2g Im[φ_a(0,t) ψ*], on-site field taken as the mean of its
    /// left and right limits.
    pub interaction_energy: Vec<f64>,
    /// |norm − norm₀| at the end of the run.
    pub norm_drift: f64,
}

/// Advances `state` to the step nearest `t_target`.
pub fn evolve(state: &FieldState, config: &LatticeConfig, params: &SimParams, t_target: f64) -> Result<FieldState> {
    Ok(evolve_recorded(state, config, params, t_target, 0)?.state)
}

/// As [`evolve`], recording ψ and ⟨H_int⟩ every `stride` steps (never if 0).
/// The first record is the initial state.
pub fn evolve_recorded(
    state: &FieldState,
    config: &LatticeConfig,
    params: &SimParams,
    t_target: f64,
    stride: usize,
) -> Result<LatticeRun> {
    config.validate(params)?;
    let n = config.n_modes;
    if state.phi_a.len() != n || state.phi_b.len() != n {
        return Err(Error::InvalidParams(format!(
            "state has {}/{} modes, config expects {n}",
            state.phi_a.len(),
            state.phi_b.len()
        )));
    }
    if !(t_target >= state.time) {
        return Err(Error::OutOfRange(format!(
            "target time {t_target} precedes state time {}",
            state.time
        )));
    }
    let dt = config.dt();
    let steps = ((t_target - state.time) / dt).round() as usize;
    if (steps as f64) * dt > config.box_length() {
        log::warn!(
            "evolving for {} exceeds the recurrence time {} of the box",
            steps as f64 * dt,
            config.box_length()
        );
    }

    let sym: Vec<Complex64> = state
        .phi_a
        .iter()
        .zip(&state.phi_b)
        .map(|(a, b)| (a + b) * FRAC_1_SQRT_2)
        .collect();
    let anti: Vec<Complex64> = state
        .phi_a
        .iter()
        .zip(&state.phi_b)
        .map(|(a, b)| (a - b) * FRAC_1_SQRT_2)
        .collect();
    let mut ring = modes_to_sites(&sym);
    let free = modes_to_sites(&anti);
    let free_norm = channel_norm(&free);
    let mut c = state.psi;
    let norm0 = c.norm_sqr() + channel_norm(&ring) + free_norm;

    let omega = (2.0 * n as f64).sqrt() * config.coupling(params.gamma1d);
    let (sh, ch) = (0.5 * omega * dt).sin_cos();
    let origin = n / 2;
    let site = |k: usize| (origin + n - k % n) % n;

    let mut times = Vec::new();
    let mut psi = Vec::new();
    let mut h_int = Vec::new();
    let mut record = |k: usize, c: Complex64, f: Complex64| {
        let t = state.time + k as f64 * dt;
        times.push(t);
        psi.push(c * Complex64::from_polar(1.0, -params.omega0 * t));
        h_int.push(2.0 * omega * (c.conj() * f).im);
    };
    if stride > 0 {
        record(0, c, ring[site(0)]);
    }

    let drift_limit = |elapsed: f64| DRIFT_PER_DECAY_TIME * (params.gamma1d * elapsed).max(1.0);
    let check_every = (n / 4).max(1024);
    for k in 0..steps {
        let o = site(k);
        let f = ring[o];
        ring[o] = sh * c + ch * f;
        c = ch * c - sh * f;
        let o = site(k + 1);
        let f = ring[o];
        ring[o] = sh * c + ch * f;
        c = ch * c - sh * f;
        if stride > 0 && (k + 1) % stride == 0 {
            record(k + 1, c, ring[o]);
        }
        if (k + 1) % check_every == 0 {
            let drift = (c.norm_sqr() + channel_norm(&ring) + free_norm - norm0).abs();
            let elapsed = (k + 1) as f64 * dt;
            if drift > drift_limit(elapsed) {
                return Err(Error::Unitarity {
                    drift,
                    limit: drift_limit(elapsed),
                    t: state.time + elapsed,
                });
            }
        }
    }
    let elapsed = steps as f64 * dt;
    let norm_drift = (c.norm_sqr() + channel_norm(&ring) + free_norm - norm0).abs();
    if norm_drift > drift_limit(elapsed) {
        return Err(Error::Unitarity {
            drift: norm_drift,
            limit: drift_limit(elapsed),
            t: state.time + elapsed,
        });
    }

    ring.rotate_right(steps % n);
    let mut moved = free;
    moved.rotate_right(steps % n);
    let sym = sites_to_modes(&ring);
    let anti = sites_to_modes(&moved);
    let out = FieldState {
        psi: c,
        phi_a: sym.iter().zip(&anti).map(|(s, d)| (s + d) * FRAC_1_SQRT_2).collect(),
        phi_b: sym.iter().zip(&anti).map(|(s, d)| (s - d) * FRAC_1_SQRT_2).collect(),
        time: state.time + elapsed,
    };
    Ok(LatticeRun {
        state: out,
        trace: AmplitudeTrace {
            times,
            psi,
            source: Source::LatticeOracle,
        },
        interaction_energy: h_int,
        norm_drift,
    })
}

/// Real-space fields on the lattice sites, as densities per √length:
/// φ_a(x) = L^{−1/2} Σ a_m e^{iν_m x}, φ_b(x) = L^{−1/2} Σ b_m e^{−iν_m x}.
/// Returns `(x, φ_a, φ_b)` over the whole box.
pub fn site_fields(state: &FieldState, config: &LatticeConfig) -> (Vec<f64>, Vec<Complex64>, Vec<Complex64>) {
    let n = config.n_modes;
    let scale = 1.0 / config.dt().sqrt();
    let a: Vec<Complex64> = modes_to_sites(&state.phi_a).into_iter().map(|z| z * scale).collect();
    let b_mirror = modes_to_sites(&state.phi_b);
    // φ_b(x_j) uses e^{−iν x_j} = e^{iν x_{N−j}}; x_0 = −L/2 maps to itself.
    let b = (0..n).map(|j| b_mirror[(n - j) % n] * scale).collect();
    (config.positions(), a, b)
}

/// One sample of a real-space snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotPoint {
    pub x: f64,
    pub phi_a: Complex64,
    pub phi_b: Complex64,
}

/// Direct inverse transform of the mode amplitudes onto arbitrary points
/// inside `[−x_extent, x_extent]`.
pub fn realspace_snapshot(state: &FieldState, config: &LatticeConfig, x_grid: &[f64]) -> Result<Vec<SnapshotPoint>> {
    if let Some(&x) = x_grid.iter().find(|x| x.abs() > config.x_extent) {
        return Err(Error::OutOfRange(format!("x = {x} outside the reported extent {}", config.x_extent)));
    }
    let dnu = config.mode_spacing();
    let scale = 1.0 / config.box_length().sqrt();
    Ok(x_grid
        .iter()
        .map(|&x| {
            let step = Complex64::from_polar(1.0, dnu * x);
            let mut ph = Complex64::from_polar(1.0, config.frequency(0) * x);
            let (mut fa, mut fb) = (zero(), zero());
            for (a, b) in state.phi_a.iter().zip(&state.phi_b) {
                fa += a * ph;
                fb += b * ph.conj();
                ph *= step;
            }
            SnapshotPoint {
                x,
                phi_a: fa * scale,
                phi_b: fb * scale,
            }
        })
        .collect())
}

/// Probability held in the outer `fraction` of the box on either side,
/// where the periodic images of the two ends meet.
pub fn boundary_weight(state: &FieldState, config: &LatticeConfig, fraction: f64) -> f64 {
    let (xs, a, b) = site_fields(state, config);
    let edge = (1.0 - fraction) * 0.5 * config.box_length();
    let dx = config.dt();
    xs.iter()
        .zip(a.iter().zip(&b))
        .filter(|(x, _)| x.abs() >= edge)
        .map(|(_, (a, b))| (a.norm_sqr() + b.norm_sqr()) * dx)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::closed;

    fn small(bandwidth: f64, x_extent: f64) -> LatticeConfig {
        LatticeConfig::sized(bandwidth, x_extent)
    }

    #[test]
    fn transforms_are_inverse() {
        let modes: Vec<Complex64> = (0..64).map(|m| Complex64::new(m as f64, (m * m % 7) as f64)).collect();
        let back = sites_to_modes(&modes_to_sites(&modes));
        for (a, b) in modes.iter().zip(&back) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn packet_is_normalized_exponential() {
        let p = SimParams::new(1.0, 2.0, 1.0);
        let cfg = small(2000.0, 30.0);
        let st = init_exponential_packet(&cfg, &p).unwrap();
        assert!((st.norm() - 1.0).abs() < 1e-12);
        assert_eq!(st.psi, zero());
        let pts = realspace_snapshot(&st, &cfg, &[-2.0, -0.5, 0.5, 2.0]).unwrap();
        for pt in &pts {
            let expect = if pt.x < 0.0 { p.delta_lw.sqrt() * (0.5 * p.delta_lw * pt.x).exp() } else { 0.0 };
            assert!((pt.phi_a.norm() - expect).abs() < 2e-2, "{pt:?}");
            assert!(pt.phi_b.norm() < 1e-12);
        }
        let (xs, a, _) = site_fields(&st, &cfg);
        let j = xs.iter().position(|&x| x >= -0.5).unwrap();
        assert!((a[j].norm() - pts[1].phi_a.norm()).abs() < 1e-2);
    }

    #[test]
    fn narrow_band_is_rejected() {
        let p = SimParams::new(1.0, 10.0, 0.0);
        let cfg = small(500.0, 20.0);
        assert!(matches!(init_exponential_packet(&cfg, &p), Err(Error::Truncation { .. })));
    }

    #[test]
    fn config_validation() {
        let p = SimParams::new(1.0, 1.0, 0.0);
        let mut cfg = small(100.0, 10.0);
        assert!(cfg.validate(&p).unwrap().is_empty());
        cfg.n_modes = 4098;
        assert!(cfg.validate(&p).is_err());
        let narrow = small(10.0, 10.0);
        assert!(!narrow.validate(&p).unwrap().is_empty());
        let short = LatticeConfig { x_extent: 1e6, ..small(100.0, 10.0) };
        assert!(short.validate(&p).is_err());
    }

    #[test]
    fn spontaneous_decay_and_symmetric_emission() {
        let cfg = LatticeConfig::for_emission(1.0, 6.0);
        let p = SimParams::new(1.0, 1.0, 0.0).with_t_max(6.0);
        let run = evolve_recorded(&init_excited_tls(&cfg), &cfg, &p, 5.0, 64).unwrap();
        for (t, psi) in run.trace.times.iter().zip(&run.trace.psi) {
            let exact = (-t).exp();
            assert!((psi.norm_sqr() - exact).abs() <= 1e-2 * exact, "t={t}");
        }
        let na = channel_norm(&run.state.phi_a);
        let nb = channel_norm(&run.state.phi_b);
        assert!((na - nb).abs() < 1e-12);
        assert!(run.norm_drift < 1e-10);
    }

    #[test]
    fn causal_backward_channel() {
        let p = SimParams::new(1.0, 2.0, 1.0);
        let cfg = small(4000.0, 20.0);
        let st = init_exponential_packet(&cfg, &p).unwrap();
        let st = evolve(&st, &cfg, &p, 3.0).unwrap();
        let pts = realspace_snapshot(&st, &cfg, &[-6.0, -4.0, -2.0, 5.0]).unwrap();
        assert!(pts[0].phi_b.norm() < 1e-2);
        assert!(pts[1].phi_b.norm() < 1e-2);
        assert!(pts[2].phi_b.norm() > 0.05);
        // backward field at x < 0 mirrors the emitter a time |x| earlier
        let c = closed::rotating_amplitude(&p, st.time - 2.0);
        let expect = (0.5 * p.gamma1d).sqrt() * c.norm();
        assert!((pts[2].phi_b.norm() - expect).abs() < 5e-3, "{} vs {expect}", pts[2].phi_b.norm());
    }
}
