//! Closed-form excited-state amplitude and the master-equation coefficients.
//!
//! In the frame rotating at ω_0 the amplitude c(t) = ψ(t) e^{iω_0 t} obeys
//!
//! ```text
//! ċ = −(Γ_1D/2) c − k e^{−(Δ/2 + iδ) t},   k = √(Γ_1D Δ / 2),   c(0) = 0,
//! ```
//!
//! whose solution is c(t) = −k t e^{−Γ_1D t/2} φ₁(z t) with z = (Γ_1D − Δ)/2 − iδ
//! and φ₁(w) = (e^w − 1)/w. This single expression covers the mode-matched
//! resonant point z = 0 without a removable singularity. The logarithmic
//! derivative is ċ/c = −Γ_1D/2 + B(zt)/t with B(w) = w/(1 − e^{−w}), and its
//! time derivative is −S(zt)/t² with S(w) = ((w/2)/sinh(w/2))².

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::special::{bernoulli, expm1c, phi1, sinhc2};
use crate::params::SimParams;

/// Beyond this |zt| the two-exponential difference is used directly.
const SERIES_SWITCH: f64 = 0.5;

/// Rotating-frame amplitude c(t) = ψ(t) e^{iω_0 t}.
pub fn rotating_amplitude(params: &SimParams, t: f64) -> Complex64 {
    if t <= 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let k = params.drive();
    let z = params.pole_gap();
    let w = z * t;
    if params.is_degenerate() || w.norm() < SERIES_SWITCH {
        -k * t * (-0.5 * params.gamma1d * t).exp() * phi1(w)
    } else {
        let incoming = (-Complex64::new(0.5 * params.delta_lw, params.detuning) * t).exp();
        let free = Complex64::new((-0.5 * params.gamma1d * t).exp(), 0.0);
        -k * (incoming - free) / z
    }
}

/// ψ(t) for the exponential-packet scattering problem. ψ(0) = 0.
pub fn excited_amplitude_closed(params: &SimParams, t: f64) -> Complex64 {
    rotating_amplitude(params, t) * Complex64::from_polar(1.0, -params.omega0 * t)
}

/// The complex drive term k e^{−(Δ/2 + iδ)t} in the rotating frame.
pub fn drive_term(params: &SimParams, t: f64) -> Complex64 {
    params.drive() * (-Complex64::new(0.5 * params.delta_lw, params.detuning) * t).exp()
}

fn pole_guard(params: &SimParams, t: f64) -> Result<Complex64> {
    let w = params.pole_gap() * t;
    let d = if w.re >= 0.0 { expm1c(-w) } else { expm1c(w) };
    // Zeros of ψ sit at |w| = 2πn, n ≥ 1.
    if w.norm() > 1.0 && d.norm() < 1e-13 * w.norm() {
        return Err(Error::Pole { t });
    }
    Ok(w)
}

/// B(zt)/t = ċ/c + Γ_1D/2, evaluated symbolically.
fn scaled_bernoulli(params: &SimParams, t: f64) -> Result<Complex64> {
    if t <= 0.0 {
        return Err(Error::OutOfRange(format!("coefficient ratios need t > 0, got {t}")));
    }
    let w = pole_guard(params, t)?;
    Ok(bernoulli(w) / t)
}

/// ψ̇/ψ from the closed form.
pub fn log_derivative(params: &SimParams, t: f64) -> Result<Complex64> {
    let b = scaled_bernoulli(params, t)?;
    Ok(Complex64::new(-0.5 * params.gamma1d, -params.omega0) + b)
}

/// ω_s(t) from the explicit arctan expression,
/// ω_0 + ∂_t arctan( sin δt / (cos δt − e^{(Δ−Γ_1D)t/2}) ),
/// differentiated analytically and rearranged so that neither the
/// arctan branch nor the zero of its denominator matters.
pub fn instantaneous_frequency(params: &SimParams, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::OutOfRange(format!("frequency needs t > 0, got {t}")));
    }
    let a = 0.5 * (params.delta_lw - params.gamma1d);
    let d = params.detuning;
    let (s, sh) = ((d * t).sin(), (0.5 * d * t).sin());
    let versine = 2.0 * sh * sh; // 1 − cos δt
    // E = e^{at}; with u = sin/(cos − E): u̇/(1+u²) = [δ(1 − E cos) + aE sin] / [(1−E)² + 2E(1 − cos)]
    let (num, den) = if a <= 0.0 {
        let e = (a * t).exp();
        let one_minus_e = -(a * t).exp_m1();
        (
            d * (one_minus_e + e * versine) + a * e * s,
            one_minus_e * one_minus_e + 2.0 * e * versine,
        )
    } else {
        // scale by F² with F = 1/E
        let f = (-a * t).exp();
        let f_minus_1 = (-a * t).exp_m1();
        (
            d * (f * f_minus_1 + f * versine) + a * f * s,
            f_minus_1 * f_minus_1 + 2.0 * f * versine,
        )
    };
    if den <= 0.0 || !(num / den).is_finite() {
        return Err(Error::Pole { t });
    }
    Ok(params.omega0 + num / den)
}

/// ω_s(t) = −Im[ψ̇/ψ] from the logarithmic derivative of the closed form.
pub fn frequency_from_log_derivative(params: &SimParams, t: f64) -> Result<f64> {
    Ok(-log_derivative(params, t)?.im)
}

/// Γ(t) = −2 Re[ψ̇/ψ].
pub fn instantaneous_decay_rate(params: &SimParams, t: f64) -> Result<f64> {
    Ok(-2.0 * log_derivative(params, t)?.re)
}

/// ω̇_s(t) = Im[S(zt)]/t².
pub fn frequency_rate(params: &SimParams, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::OutOfRange(format!("frequency rate needs t > 0, got {t}")));
    }
    let w = pole_guard(params, t)?;
    Ok(sinhc2(w).im / (t * t))
}

/// Γ̇(t) = 2 Re[S(zt)]/t².
pub fn decay_rate_derivative(params: &SimParams, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::OutOfRange(format!("decay-rate derivative needs t > 0, got {t}")));
    }
    let w = pole_guard(params, t)?;
    Ok(2.0 * sinhc2(w).re / (t * t))
}

/// P_e(t) = |ψ(t)|².
pub fn population(params: &SimParams, t: f64) -> f64 {
    rotating_amplitude(params, t).norm_sqr()
}

/// dP_e/dt from the equation of motion, −Γ_1D P_e − 2 Re[k e^{−(Δ/2+iδ)t} c*].
/// Independent of the coefficient functions; used to cross-check Q̇.
pub fn population_rate(params: &SimParams, t: f64) -> f64 {
    let c = rotating_amplitude(params, t);
    -params.gamma1d * c.norm_sqr() - 2.0 * (drive_term(params, t) * c.conj()).re
}

/// Ẇ(t) = ω̇_s(t) P_e(t), evaluated as one product.
///
/// |Ẇ| ≤ (Γ_1D Δ/2) e^{−(Γ_1D+Δ)t/2} everywhere, including the zeros of ψ at
/// mode matching where ω̇_s alone is singular.
pub fn work_flux(params: &SimParams, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let z = params.pole_gap();
    let w = z * t;
    let unit = if z.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { z / z.conj() };
    let (d, phase) = if w.re >= 0.0 {
        (-expm1c(-w), Complex64::from_polar(1.0, -w.im))
    } else {
        (expm1c(w), Complex64::from_polar(1.0, w.im))
    };
    let ratio = if d.norm() == 0.0 {
        return 0.0;
    } else {
        d.conj() / d
    };
    let envelope = 0.5 * params.gamma1d * params.delta_lw * (-0.5 * (params.gamma1d + params.delta_lw) * t).exp();
    envelope * (unit * phase * ratio).im
}

/// Q̇(t) = −Γ(t) ω_s(t) P_e(t), with Γ(t) P_e formed without the 1/t blow-up.
pub fn heat_flux(params: &SimParams, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let c = rotating_amplitude(params, t);
    let p = c.norm_sqr();
    let Ok(b) = scaled_bernoulli(params, t) else {
        // ψ = 0: P_e has a minimum, so Ṗ_e and Q̇ vanish.
        return 0.0;
    };
    let gamma_p = params.gamma1d * p - 2.0 * b.re * p;
    let omega_s = params.omega0 - b.im;
    -gamma_p * omega_s
}

/// Ṗ_e (ω_s − ω_0), the part of Q̇ left after removing ω_0 Ṗ_e.
///
/// ∫ω_0 Ṗ_e dt = ω_0 P_e is exact, so cycle heat is accumulated from this
/// O(δ) integrand instead of the O(ω_0) one.
pub fn heat_flux_shift(params: &SimParams, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let p = population(params, t);
    let Ok(b) = scaled_bernoulli(params, t) else {
        return 0.0;
    };
    (params.gamma1d * p - 2.0 * b.re * p) * b.im
}

/// ⟨H_int(t)⟩ = 2 g Im[φ^(a)(0,t) ψ*(t)] = 2k Im[e^{−(Δ/2+iδ)t} c*(t)].
///
/// The emitted part of the on-site forward field (mean of the left and right
/// limits) is in phase with ψ and drops out.
pub fn interaction_energy(params: &SimParams, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    2.0 * (drive_term(params, t) * rotating_amplitude(params, t).conj()).im
}

/// ψ^SE(t) = e^{−(Γ_1D/2 + iω_L)t}, the free decay of an initially excited emitter.
pub fn spontaneous_emission_amplitude(gamma1d: f64, omega_l: f64, t: f64) -> Complex64 {
    (-Complex64::new(0.5 * gamma1d, omega_l) * t).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::richardson_derivative;

    fn p(g: f64, d: f64, det: f64) -> SimParams {
        SimParams::new(g, d, det)
    }

    #[test]
    fn starts_in_ground_state() {
        for prm in [p(1.0, 10.0, 1.0), p(1.0, 1.0, 0.0), p(2.0, 0.1, -3.0)] {
            assert_eq!(excited_amplitude_closed(&prm, 0.0), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn mode_matched_resonant_limit() {
        // c(t) = −(1/√2) t e^{−t/2}: linear-in-t times decaying exponential.
        let prm = p(1.0, 1.0, 0.0);
        for &t in &[1e-3, 0.5, 2.0, 7.5, 30.0] {
            let c = rotating_amplitude(&prm, t);
            let expect = -t * (-0.5 * t).exp() / 2f64.sqrt();
            assert!((c.re - expect).abs() < 1e-15, "t={t}");
            assert!(c.im.abs() < 1e-15);
            let psi = excited_amplitude_closed(&prm, t);
            assert!((psi.norm() - expect.abs()).abs() < 1e-14);
        }
    }

    #[test]
    fn continuous_across_series_switch() {
        let prm = p(1.0, 1.3, 0.2);
        let z = prm.pole_gap().norm();
        let t_switch = SERIES_SWITCH / z;
        let a = rotating_amplitude(&prm, t_switch * (1.0 - 1e-12));
        let b = rotating_amplitude(&prm, t_switch * (1.0 + 1e-12));
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn near_degenerate_matches_limit_branch() {
        let exact = p(1.0, 1.0, 0.0);
        let near = p(1.0, 1.0 + 2e-10, 0.0);
        assert!(near.is_degenerate());
        for &t in &[0.3, 3.0, 20.0] {
            let d = (rotating_amplitude(&exact, t) - rotating_amplitude(&near, t)).norm();
            assert!(d < 1e-9);
        }
    }

    #[test]
    fn ratio_against_finite_differences() {
        let prm = p(1.0, 10.0, 1.0);
        for &t in &[0.05, 0.4, 1.0, 3.0, 9.0] {
            let r = log_derivative(&prm, t).unwrap() + Complex64::new(0.0, prm.omega0);
            let h = 1e-3 * t.min(1.0);
            let re = richardson_derivative(|s| rotating_amplitude(&prm, s).re, t, h);
            let im = richardson_derivative(|s| rotating_amplitude(&prm, s).im, t, h);
            let c = rotating_amplitude(&prm, t);
            let fd = Complex64::new(re, im) / c;
            assert!((r - fd).norm() < 1e-7 * r.norm().max(1.0), "t={t}: {r} vs {fd}");
        }
    }

    #[test]
    fn arctan_and_log_derivative_agree() {
        for prm in [p(1.0, 10.0, 1.0), p(1.0, 0.1, -2.0), p(1.0, 2.0, 20.0), p(1.0, 0.01, 5.0)] {
            for &t in &[1e-6, 1e-3, 0.3, 2.0, 10.0, 100.0, 0.9 * prm.t_max] {
                let a = instantaneous_frequency(&prm, t).unwrap();
                let b = frequency_from_log_derivative(&prm, t).unwrap();
                assert!((a - b).abs() < 1e-9 * a.abs(), "{prm:?} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn resonance_keeps_bare_frequency() {
        for d in [0.01, 0.5, 2.0, 10.0] {
            let prm = p(1.0, d, 0.0);
            for &t in &[1e-4, 0.7, 5.0, 40.0] {
                assert_eq!(instantaneous_frequency(&prm, t).unwrap(), prm.omega0);
                assert_eq!(frequency_rate(&prm, t).unwrap(), 0.0);
                assert_eq!(work_flux(&prm, t), 0.0);
                assert_eq!(interaction_energy(&prm, t), 0.0);
            }
        }
    }

    #[test]
    fn decay_rate_diverges_as_minus_two_over_t() {
        for prm in [p(1.0, 10.0, 1.0), p(1.0, 0.01, -5.0), p(1.0, 1.0, 0.0)] {
            let t = prm.t_min;
            let g = instantaneous_decay_rate(&prm, t).unwrap();
            assert!((g * t + 2.0).abs() < 0.02, "{}", g * t);
        }
    }

    #[test]
    fn frequency_rate_matches_differences() {
        let prm = p(1.0, 10.0, 1.0);
        for &t in &[0.1, 0.5, 1.0, 2.5] {
            let fd = richardson_derivative(|s| instantaneous_frequency(&prm, s).unwrap(), t, 1e-3);
            let an = frequency_rate(&prm, t).unwrap();
            assert!((fd - an).abs() < 1e-7 * an.abs().max(1e-3), "t={t}: {fd} vs {an}");
            let gd = richardson_derivative(|s| instantaneous_decay_rate(&prm, s).unwrap(), t, 1e-3);
            let ga = decay_rate_derivative(&prm, t).unwrap();
            assert!((gd - ga).abs() < 1e-6 * ga.abs().max(1e-3));
        }
    }

    #[test]
    fn flux_products_match_factors() {
        for prm in [p(1.0, 10.0, 1.0), p(1.0, 0.1, -1.0), p(1.0, 2.0, 5.0)] {
            for &t in &[0.01, 0.3, 1.5, 6.0] {
                let pe = population(&prm, t);
                let w = frequency_rate(&prm, t).unwrap() * pe;
                assert!((work_flux(&prm, t) - w).abs() < 1e-12 * w.abs().max(1e-3));
                let q = -instantaneous_decay_rate(&prm, t).unwrap() * instantaneous_frequency(&prm, t).unwrap() * pe;
                let q_alt = instantaneous_frequency(&prm, t).unwrap() * population_rate(&prm, t);
                assert!((heat_flux(&prm, t) - q).abs() < 1e-9 * q.abs().max(1e-6));
                assert!((q_alt - q).abs() < 1e-9 * q.abs().max(1e-6));
            }
        }
    }

    #[test]
    fn mode_matching_has_zeros_and_flat_frequency() {
        let prm = p(1.0, 1.0, 1.0);
        let t0 = 2.0 * std::f64::consts::PI;
        assert!(matches!(instantaneous_frequency(&prm, t0), Err(Error::Pole { .. })) || population(&prm, t0) < 1e-28);
        assert!(population(&prm, t0) < 1e-28);
        for &t in &[0.5, 3.0, 7.0] {
            let w = instantaneous_frequency(&prm, t).unwrap();
            assert!((w - (prm.omega0 + 0.5)).abs() < 1e-9);
            assert!(work_flux(&prm, t).abs() < 1e-15);
        }
        assert_eq!(work_flux(&prm, t0), work_flux(&prm, t0));
    }

    #[test]
    fn spontaneous_emission_reference() {
        let psi0 = spontaneous_emission_amplitude(1.0, 100.0, 0.0);
        assert_eq!(psi0, Complex64::new(1.0, 0.0));
        let t = 1.7;
        let psi = spontaneous_emission_amplitude(1.0, 100.0, t);
        assert!((psi.norm_sqr() - (-t).exp()).abs() < 1e-15);
    }

    #[test]
    fn interaction_energy_gives_frequency_shift() {
        let prm = p(1.0, 10.0, 1.0);
        for &t in &[0.2, 1.0, 4.0] {
            let shift = interaction_energy(&prm, t) / (2.0 * population(&prm, t));
            let w = instantaneous_frequency(&prm, t).unwrap() - prm.omega0;
            assert!((shift - w).abs() < 1e-12 * prm.omega0);
        }
    }
}
