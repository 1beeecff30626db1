//! Signatures of the emitter in the outgoing field: the backward-channel
//! amplitude at a detector, its effective color, the interaction energy,
//! the energy split between channels and a time-windowed spectrum.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::dynamics::Emitter;
use crate::error::{Error, Result};
use crate::lattice::{boundary_weight, channel_norm, FieldState, LatticeConfig};
use crate::numerics::richardson_derivative;
use crate::params::SimParams;

pub use crate::dynamics::closed::interaction_energy;

/// Below this excited population ratios such as ⟨H_int⟩/P_e are refused.
pub const MIN_POPULATION: f64 = 1e-8;

/// Backward-channel field at a fixed detector position x_d < 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorTrace {
    pub x_d: f64,
    /// Frame frequency used to demodulate the phase.
    pub carrier: f64,
    pub times: Vec<f64>,
    /// φ^(b)(x_d, t) = √(Γ_1D/2) ψ(t − |x_d|), zero before the light cone.
    pub amp_b: Vec<Complex64>,
    pub intensity: Vec<f64>,
    /// ω_eff = −dθ_b/dt; NaN where the phase could not be differentiated.
    pub eff_color: Vec<f64>,
    pub valid: Vec<bool>,
}

impl DetectorTrace {
    pub fn retarded_time(&self, t: f64) -> f64 {
        t + self.x_d
    }

    pub fn invalid_count(&self) -> usize {
        self.valid.iter().filter(|v| !**v).count()
    }
}

/// −dθ/dt of ψ at `t` from phase increments of the rotating-frame amplitude,
/// with one Richardson step. `None` when the phase is not locally smooth.
fn phase_rate<E: Emitter + ?Sized>(emitter: &E, t: f64, h0: f64) -> Option<f64> {
    if t <= 0.0 {
        return None;
    }
    let h = h0.min(0.25 * t);
    let increment = |h: f64| -> Option<f64> {
        let (lo, hi) = (emitter.rotating_amplitude(t - h), emitter.rotating_amplitude(t + h));
        let r = hi * lo.conj();
        let ok = lo.norm() > 0.0 && hi.norm() > 0.0 && r.is_finite();
        // Larger jumps cannot be told apart from a wrap of the phase.
        let dtheta = r.arg();
        (ok && dtheta.abs() < 1.0).then(|| -dtheta / (2.0 * h))
    };
    let coarse = increment(h)?;
    let fine = increment(0.5 * h)?;
    let scale = emitter.gamma1d();
    // Disagreement at this level means a near-zero of ψ inside the stencil.
    if (coarse - fine).abs() > 1e-4 * scale {
        return None;
    }
    Some(emitter.carrier() + (4.0 * fine - coarse) / 3.0)
}

/// Samples the backward-channel field at `x_d` on the detection grid.
pub fn detector_trace<E: Emitter + ?Sized>(emitter: &E, x_d: f64, grid: &[f64], h: f64) -> Result<DetectorTrace> {
    if !(x_d < 0.0) {
        return Err(Error::InvalidParams(format!("detector must sit at x_d < 0, got {x_d}")));
    }
    if !(h > 0.0) {
        return Err(Error::InvalidParams(format!("differentiation step must be positive, got {h}")));
    }
    let pre = (0.5 * emitter.gamma1d()).sqrt();
    let mut tr = DetectorTrace {
        x_d,
        carrier: emitter.carrier(),
        times: grid.to_vec(),
        amp_b: Vec::with_capacity(grid.len()),
        intensity: Vec::with_capacity(grid.len()),
        eff_color: Vec::with_capacity(grid.len()),
        valid: Vec::with_capacity(grid.len()),
    };
    for &t in grid {
        let tr_ = t + x_d;
        let amp = if tr_ > 0.0 { pre * emitter.amplitude(tr_) } else { Complex64::new(0.0, 0.0) };
        let color = phase_rate(emitter, tr_, h);
        tr.amp_b.push(amp);
        tr.intensity.push(amp.norm_sqr());
        tr.eff_color.push(color.unwrap_or(f64::NAN));
        tr.valid.push(color.is_some());
    }
    Ok(tr)
}

/// Default step for the phase derivative: a thousandth of the fastest scale.
pub fn default_phase_step(p: &SimParams) -> f64 {
    1e-3 / p.gamma1d.max(p.delta_lw).max(p.detuning.abs())
}

/// ω̇_s recovered from the interaction energy, (1/2) d/dt (⟨H_int⟩/P_e).
pub fn frequency_rate_from_interaction(params: &SimParams, t: f64, h: f64) -> Result<f64> {
    let h = h.min(0.25 * t);
    for s in [t - h, t + h] {
        let pe = crate::dynamics::closed::population(params, s);
        if pe < MIN_POPULATION {
            return Err(Error::OutOfRange(format!("P_e = {pe:e} at t = {s} is below {MIN_POPULATION:e}")));
        }
    }
    let ratio = |s: f64| interaction_energy(params, s) / crate::dynamics::closed::population(params, s);
    Ok(0.5 * richardson_derivative(ratio, t, h))
}

/// Energy and photon number carried by each channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyPartition {
    pub e_a: f64,
    pub e_b: f64,
    pub norm_a: f64,
    pub norm_b: f64,
}

/// Splits the energy of a final lattice state, E = Σ_m (ω_0 + ν_m)|φ_m|².
///
/// The emitter must have decayed (P_e < 10⁻⁸) and no probability above 10⁻⁸
/// may sit in the outer 5% of the box, where the periodic images meet.
pub fn energy_partition(state: &FieldState, config: &LatticeConfig, omega0: f64) -> Result<EnergyPartition> {
    let pe = state.psi.norm_sqr();
    if pe >= MIN_POPULATION {
        return Err(Error::OutOfRange(format!("emitter still excited, P_e = {pe:e}")));
    }
    let margin = boundary_weight(state, config, 0.05);
    if margin > 1e-8 {
        return Err(Error::BoundaryContamination { margin });
    }
    let freqs = config.frequencies();
    let energy = |modes: &[Complex64]| -> f64 {
        modes
            .iter()
            .zip(&freqs)
            .map(|(z, nu)| (omega0 + nu) * z.norm_sqr())
            .sum()
    };
    Ok(EnergyPartition {
        e_a: energy(&state.phi_a),
        e_b: energy(&state.phi_b),
        norm_a: channel_norm(&state.phi_a),
        norm_b: channel_norm(&state.phi_b),
    })
}

/// Sliding-window power spectra of the detected field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrogram {
    pub window_width: f64,
    pub hop: f64,
    /// Window centers in detection time.
    pub centers: Vec<f64>,
    /// Physical angular frequencies, ascending.
    pub frequencies: Vec<f64>,
    /// `power[w][k]` at `centers[w]`, `frequencies[k]`.
    pub power: Vec<Vec<f64>>,
    /// Interpolated peak frequency per window.
    pub peaks: Vec<f64>,
    /// Windows dropped for carrying less than 10⁻¹⁰ of power.
    pub skipped: usize,
}

impl Spectrogram {
    /// Keeps only frequencies within `span` of `center`.
    pub fn restrict(&mut self, center: f64, span: f64) {
        let keep: Vec<bool> = self.frequencies.iter().map(|f| (f - center).abs() <= span).collect();
        let pick = |v: &Vec<f64>| v.iter().zip(&keep).filter(|(_, k)| **k).map(|(x, _)| *x).collect::<Vec<_>>();
        self.frequencies = pick(&self.frequencies);
        self.power = self.power.iter().map(pick).collect();
    }

    /// Spectral resolution of the window, 2π/width.
    pub fn resolution(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.window_width
    }
}

/// Default window width 8/Δ.
pub fn default_window(p: &SimParams) -> f64 {
    8.0 / p.delta_lw
}

const MIN_WINDOW_POWER: f64 = 1e-10;

/// Gaussian-tapered short-time spectrum of `detector.amp_b`.
///
/// Each window spans `window_width` with σ = width/6. The signal is
/// demodulated by the carrier, zero-padded to eight times the window length
/// and transformed with the e^{+iωt} kernel, so a field ∝ e^{−iωt} peaks at
/// +ω. Peaks are refined by a parabola through the log-power around the
/// maximum bin, which is exact for a Gaussian line.
pub fn time_windowed_spectrum(detector: &DetectorTrace, window_width: f64, hop: f64) -> Result<Spectrogram> {
    let t = &detector.times;
    if t.len() < 3 {
        return Err(Error::InvalidParams("detector trace too short for a spectrum".into()));
    }
    if !(window_width > 0.0 && hop > 0.0) {
        return Err(Error::InvalidParams(format!(
            "window width and hop must be positive, got {window_width}, {hop}"
        )));
    }
    let dt = (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64;
    if t.windows(2).any(|w| ((w[1] - w[0]) - dt).abs() > 1e-6 * dt) {
        return Err(Error::InvalidParams("spectrum needs a uniform time grid".into()));
    }
    let half = (0.5 * window_width / dt).round() as usize;
    if 2 * half + 1 > t.len() || half < 2 {
        return Err(Error::InvalidParams(format!(
            "window of width {window_width} does not fit a trace of {} samples spaced {dt}",
            t.len()
        )));
    }
    if hop > 0.25 * window_width {
        log::warn!("hop {hop} exceeds a quarter of the window width {window_width}");
    }
    let len = 2 * half + 1;
    let nfft = (8 * len).next_power_of_two();
    let df = 2.0 * std::f64::consts::PI / (nfft as f64 * dt);
    let sigma = window_width / 6.0;
    let taper: Vec<f64> = (0..len)
        .map(|j| {
            let u = (j as f64 - half as f64) * dt / sigma;
            (-0.5 * u * u).exp()
        })
        .collect();
    let fft = FftPlanner::new().plan_fft_inverse(nfft);
    // Bin k ↔ baseband k·df for k < nfft/2, (k − nfft)·df above.
    let order: Vec<usize> = (nfft / 2..nfft).chain(0..nfft / 2).collect();
    let frequencies: Vec<f64> = order
        .iter()
        .map(|&k| detector.carrier + if k < nfft / 2 { k as f64 } else { k as f64 - nfft as f64 } * df)
        .collect();

    let mut out = Spectrogram {
        window_width,
        hop,
        centers: Vec::new(),
        frequencies,
        power: Vec::new(),
        peaks: Vec::new(),
        skipped: 0,
    };
    let steps = ((t[t.len() - 1] - t[0] - 2.0 * half as f64 * dt) / hop).floor() as usize;
    let mut buf = vec![Complex64::new(0.0, 0.0); nfft];
    for w in 0..=steps {
        let center_guess = t[0] + half as f64 * dt + w as f64 * hop;
        let ic = (((center_guess - t[0]) / dt).round() as usize).clamp(half, t.len() - 1 - half);
        let lo = ic - half;
        buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        let mut energy = 0.0;
        for j in 0..len {
            let s = lo + j;
            let demod = detector.amp_b[s] * Complex64::from_polar(1.0, detector.carrier * t[s]);
            buf[j] = demod * taper[j];
            energy += buf[j].norm_sqr() * dt;
        }
        if energy < MIN_WINDOW_POWER {
            out.skipped += 1;
            continue;
        }
        fft.process(&mut buf);
        let power: Vec<f64> = order.iter().map(|&k| buf[k].norm_sqr() * dt * dt).collect();
        let (kmax, _) = power
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (k, &p)| if p > acc.1 { (k, p) } else { acc });
        let mut peak = out.frequencies[kmax];
        if kmax > 0 && kmax + 1 < power.len() && power[kmax - 1] > 0.0 && power[kmax + 1] > 0.0 {
            let (l0, lm, lp) = (power[kmax].ln(), power[kmax - 1].ln(), power[kmax + 1].ln());
            let curv = lm - 2.0 * l0 + lp;
            if curv < 0.0 {
                peak += 0.5 * (lm - lp) / curv * df;
            }
        }
        out.centers.push(t[ic]);
        out.power.push(power);
        out.peaks.push(peak);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{closed, Scattering, SpontaneousEmission};
    use crate::lattice::{evolve, init_excited_tls, init_exponential_packet};
    use crate::params::{default_grid, uniform_grid};

    #[test]
    fn spontaneous_color_is_carrier() {
        let se = SpontaneousEmission {
            gamma1d: 1.0,
            omega_l: 37.0,
        };
        let grid = uniform_grid(0.5, 20.0, 200);
        let tr = detector_trace(&se, -0.25, &grid, 1e-3).unwrap();
        assert_eq!(tr.invalid_count(), 0);
        for c in &tr.eff_color {
            assert!((c - 37.0).abs() < 1e-9);
        }
        assert!(tr.intensity.iter().all(|&i| i >= 0.0));
    }

    #[test]
    fn color_follows_retarded_frequency() {
        let p = SimParams::new(1.0, 10.0, 1.0);
        let grid: Vec<f64> = default_grid(&p).into_iter().map(|t| t + 2.0).collect();
        let tr = detector_trace(&Scattering(p), -2.0, &grid, default_phase_step(&p)).unwrap();
        assert_eq!(tr.invalid_count(), 0);
        for (&t, &c) in tr.times.iter().zip(&tr.eff_color).skip(1) {
            let ws = closed::instantaneous_frequency(&p, t - 2.0).unwrap();
            assert!((c - ws).abs() <= 1e-4 * ws, "t={t} {c} {ws}");
        }
        let early = detector_trace(&Scattering(p), -2.0, &[1.0], 1e-3).unwrap();
        assert_eq!(early.amp_b[0].norm(), 0.0);
        assert!(!early.valid[0]);
    }

    #[test]
    fn resonant_color_is_bare() {
        let p = SimParams::new(1.0, 3.0, 0.0);
        let grid = uniform_grid(0.1, 30.0, 300);
        let tr = detector_trace(&Scattering(p), -0.05, &grid, 1e-3).unwrap();
        for c in &tr.eff_color {
            assert!((c - p.omega0).abs() < 1e-9);
        }
    }

    #[test]
    fn interaction_energy_identity() {
        let p = SimParams::new(1.0, 10.0, 1.0);
        for &t in &[0.3, 1.0, 2.5, 6.0] {
            let lhs = frequency_rate_from_interaction(&p, t, 1e-3).unwrap();
            let rhs = closed::frequency_rate(&p, t).unwrap();
            assert!((lhs - rhs).abs() <= 1e-4 * rhs.abs(), "t={t}: {lhs} vs {rhs}");
        }
        let res = SimParams::new(1.0, 10.0, 0.0);
        for &t in &[0.1, 1.0, 10.0] {
            assert_eq!(interaction_energy(&res, t), 0.0);
        }
        assert!(frequency_rate_from_interaction(&p, 39.0, 1e-3).is_err());
    }

    #[test]
    fn spontaneous_partition_is_symmetric() {
        let cfg = LatticeConfig::for_emission(1.0, 25.0);
        let p = SimParams::new(1.0, 1.0, 0.0).with_t_max(25.0);
        let st = evolve(&init_excited_tls(&cfg), &cfg, &p, 20.0).unwrap();
        let part = energy_partition(&st, &cfg, p.omega0).unwrap();
        assert!((part.e_a - part.e_b).abs() < 1e-9);
        assert!((part.e_a + part.e_b - p.omega0).abs() < 1e-4 * p.omega0);
        assert!((part.norm_a + part.norm_b - 1.0).abs() < 1e-6);
    }

    #[test]
    fn partition_refuses_excited_emitter() {
        let p = SimParams::new(1.0, 2.0, 1.0);
        let cfg = LatticeConfig::for_params(&p);
        let st = init_exponential_packet(&cfg, &p).unwrap();
        let st = evolve(&st, &cfg, &p, 2.0).unwrap();
        assert!(matches!(energy_partition(&st, &cfg, p.omega0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn stationary_peaks() {
        let se = SpontaneousEmission {
            gamma1d: 1.0,
            omega_l: 100.0,
        };
        let grid = uniform_grid(1.0, 41.0, 4001);
        let tr = detector_trace(&se, -1.0, &grid, 1e-3).unwrap();
        let sp = time_windowed_spectrum(&tr, 8.0, 2.0).unwrap();
        assert!(!sp.peaks.is_empty());
        for f in &sp.peaks {
            assert!((f - 100.0).abs() < 1e-6, "{f}");
        }

        let p = SimParams::new(1.0, 1.0, 0.0);
        let tr = detector_trace(&Scattering(p), -1.0, &grid, 1e-3).unwrap();
        let sp = time_windowed_spectrum(&tr, 8.0, 2.0).unwrap();
        for f in &sp.peaks {
            assert!((f - p.omega0).abs() < 1e-6, "{f}");
        }
    }

    #[test]
    fn late_peak_moves_to_the_drive() {
        let p = SimParams::new(1.0, 0.1, 1.0);
        let grid = uniform_grid(1.0, 1.0 + p.t_max, 8001);
        let tr = detector_trace(&Scattering(p), -1.0, &grid, default_phase_step(&p)).unwrap();
        let w = default_window(&p);
        let sp = time_windowed_spectrum(&tr, w, 0.25 * w).unwrap();
        let last = *sp.peaks.last().unwrap();
        assert!((last - p.omega_l()).abs() < sp.resolution(), "{last}");
    }

    #[test]
    fn rejects_bad_windows() {
        let se = SpontaneousEmission {
            gamma1d: 1.0,
            omega_l: 10.0,
        };
        let tr = detector_trace(&se, -1.0, &uniform_grid(1.0, 5.0, 41), 1e-3).unwrap();
        assert!(time_windowed_spectrum(&tr, 100.0, 1.0).is_err());
        assert!(time_windowed_spectrum(&tr, 1.0, 0.0).is_err());
    }
}
