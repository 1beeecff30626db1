//! Frozen reference values and lattice cross-checks.

use num_complex::Complex64;
use photonwork::dynamics::{closed, excited_amplitude_ode};
use photonwork::lattice::{evolve_recorded, init_exponential_packet, LatticeConfig};
use photonwork::params::{uniform_grid, SimParams};
use photonwork::thermo::run_cycle;

// Evaluated at 30 digits with independent arbitrary-precision arithmetic.
const PSI_1_10_1_AT_HALF: (f64, f64) = (-0.3415621993394454115, -0.035111674643037580653);
const OMEGA_S_1_10_1_AT_ONE: f64 = 100.03662184047240191;
const MAX_PE_1_10_0: f64 = 0.11989685006378820296;

#[test]
fn amplitude_matches_frozen_value() {
    let p = SimParams::new(1.0, 10.0, 1.0);
    let want = Complex64::new(PSI_1_10_1_AT_HALF.0, PSI_1_10_1_AT_HALF.1);
    let got = closed::excited_amplitude_closed(&p, 0.5);
    assert!((got - want).norm() < 1e-13, "{got} vs {want}");
}

#[test]
fn frequency_matches_frozen_value() {
    let p = SimParams::new(1.0, 10.0, 1.0);
    let got = closed::instantaneous_frequency(&p, 1.0).unwrap();
    assert!((got - OMEGA_S_1_10_1_AT_ONE).abs() < 1e-12 * OMEGA_S_1_10_1_AT_ONE, "{got}");
}

#[test]
fn peak_population_matches_frozen_value() {
    let p = SimParams::new(1.0, 10.0, 0.0);
    let got = run_cycle(&p, 1e-10).unwrap().max_pe;
    assert!((got - MAX_PE_1_10_0).abs() < 1e-7, "{got}");
}

#[test]
fn ode_tracks_closed_form_near_degeneracy() {
    // Δ = Γ: the closed form switches to its series branch.
    let p = SimParams::new(1.0, 1.0, 0.0);
    let grid = uniform_grid(1e-4, 20.0, 300);
    let ode = excited_amplitude_ode(&p, &grid).unwrap();
    for (&t, &c) in grid.iter().zip(&ode.psi) {
        let exact = closed::excited_amplitude_closed(&p, t);
        assert!((c - exact).norm() < 1e-8, "t={t}");
    }
}

#[test]
fn lattice_reproduces_amplitude_off_resonance() {
    let p = SimParams::new(1.0, 2.0, -3.0);
    let cfg = LatticeConfig::for_params(&p);
    let st = init_exponential_packet(&cfg, &p).unwrap();
    let run = evolve_recorded(&st, &cfg, &p, 12.0, 500).unwrap();
    let mut worst = 0.0f64;
    for (&t, &c) in run.trace.times.iter().zip(&run.trace.psi) {
        worst = worst.max((c - closed::excited_amplitude_closed(&p, t)).norm());
    }
    assert!(worst < 1e-3, "worst {worst}");
    assert!(run.norm_drift < 1e-9);
}
