//! Work and heat over a scattering cycle.
//!
//! With ⟨E⟩ = ω_s P_e the energy balance splits into Ẇ = ω̇_s P_e and
//! Q̇ = ω_s Ṗ_e = −Γ ω_s P_e. The emitter returns to |g⟩, so over a full
//! cycle W_net = −Q_net.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{closed, CoefficientTrace};
use crate::error::{Error, Result};
use crate::numerics::{quadrature, scan_max};
use crate::params::{uniform_grid, SimParams};

/// Default absolute tolerance on cycle integrals, in units of ħΓ_1D.
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_INTERVALS: usize = 20_000;
const SCAN_SAMPLES: usize = 4096;

/// Net work and heat of one scattering cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleResult {
    /// ∫Ẇ dt; negative means the emitter delivers work.
    pub w_net: f64,
    /// ∫Q̇ dt, heat absorbed by the emitter.
    pub q_net: f64,
    /// E(t_max) − E(0) with E = ω_s P_e.
    pub residual_energy: f64,
    pub max_pe: f64,
    /// Γ(t) < 0 somewhere in (0, t_max).
    pub had_negative_rate: bool,
    pub min_gamma: f64,
    /// Quadrature error estimate plus the analytic bound on the tail beyond t_max.
    pub quad_error: f64,
    /// Whether `quad_error` met the requested tolerance.
    pub converged: bool,
}

fn breakpoints(p: &SimParams) -> Vec<f64> {
    let fastest = p.gamma1d + p.delta_lw + p.detuning.abs();
    let mut t = 0.125 / fastest;
    let mut out = Vec::new();
    while t < p.t_max {
        out.push(t);
        t *= 2.0;
    }
    out
}

/// ∫_T^∞ t^j e^{−αt} dt for j ∈ {0, 1, 2}.
fn gamma_tail(j: u32, alpha: f64, t: f64) -> f64 {
    let e = (-alpha * t).exp();
    match j {
        0 => e / alpha,
        1 => e * (t / alpha + 1.0 / (alpha * alpha)),
        _ => e * (t * t / alpha + 2.0 * t / (alpha * alpha) + 2.0 / alpha.powi(3)),
    }
}

/// Rigorous bounds on ∫_{t_max}^∞ |Ẇ| and ∫_{t_max}^∞ |Q̇|.
///
/// Uses |Ẇ| ≤ (Γ_1D Δ/2) e^{−(Γ_1D+Δ)t/2}, |c| ≤ k e^{−mt/2} min(t, 2/|z|) with
/// m = min(Γ_1D, Δ), and |Q̇| ≤ |ω_s||Ṗ_e| expanded through the equation of motion.
pub fn tail_bounds(p: &SimParams) -> (f64, f64) {
    let (g, d, big_t) = (p.gamma1d, p.delta_lw, p.t_max);
    let k2 = 0.5 * g * d;
    let w_tail = g * d / (g + d) * (-(g + d) * big_t / 2.0).exp();

    let m = g.min(d);
    let zn = p.pole_gap().norm();
    // |c|² ≤ k² L(t)² e^{−mt}, |c| ≤ k L(t) e^{−mt/2}, with L = t or the constant 2/|z|.
    let (pw, cst) = if zn > 0.0 && big_t >= 2.0 / zn { (0, 2.0 / zn) } else { (1, 1.0) };
    let w0 = p.omega0;
    let a1 = (d + m) / 2.0;
    let q_tail = w0 * g * k2 * cst * cst * gamma_tail(2 * pw, m, big_t)
        + (2.0 * w0 + g) * k2 * cst * gamma_tail(pw, a1, big_t)
        + 2.0 * k2 * gamma_tail(0, d, big_t);
    (w_tail, q_tail)
}

/// Integrates work and heat over [0, t_max].
///
/// The t = 0 endpoint uses the zero-flux limit (P_e ~ t² beats Γ ~ −2/t).
/// If the tolerance cannot be met the result is still returned, with
/// `converged = false` and the honest error estimate.
pub fn run_cycle(params: &SimParams, tol: f64) -> Result<CycleResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!("tolerance must be > 0, got {tol}")));
    }
    params.validate()?;
    let p = *params;
    let (w_tail, q_tail) = tail_bounds(&p);
    let budget = (0.5 * tol - w_tail.max(q_tail)).max(0.05 * tol);
    let breaks = breakpoints(&p);

    let w = quadrature::integrate(|t| closed::work_flux(&p, t), 0.0, p.t_max, &breaks, budget, MAX_INTERVALS);
    let q = quadrature::integrate(|t| closed::heat_flux_shift(&p, t), 0.0, p.t_max, &breaks, budget, MAX_INTERVALS);
    let quad_error = w.error + q.error + w_tail + q_tail;

    let c_end = closed::rotating_amplitude(&p, p.t_max);
    let q_net = p.omega0 * c_end.norm_sqr() + q.value;
    let energy_end = p.omega0 * c_end.norm_sqr() + 0.5 * closed::interaction_energy(&p, p.t_max);

    let (_, max_pe) = scan_max(|t| closed::population(&p, t), p.t_min, p.t_max, SCAN_SAMPLES);
    let min_gamma = min_decay_rate(&p);

    Ok(CycleResult {
        w_net: w.value,
        q_net,
        residual_energy: energy_end,
        max_pe,
        had_negative_rate: min_gamma < 0.0,
        min_gamma,
        quad_error,
        converged: quad_error <= tol,
    })
}

/// Smallest Γ(t) on a combined uniform and logarithmic grid over [t_min, t_max].
pub fn min_decay_rate(p: &SimParams) -> f64 {
    let mut grid = uniform_grid(p.t_min, p.t_max, SCAN_SAMPLES);
    grid.extend(uniform_grid(p.t_min.ln(), p.t_max.ln(), SCAN_SAMPLES).into_iter().map(f64::exp));
    grid.into_iter()
        .filter_map(|t| closed::instantaneous_decay_rate(p, t).ok())
        .fold(f64::INFINITY, f64::min)
}

/// One (Δ, δ) point of a detuning sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta_lw: f64,
    pub detuning: f64,
    pub w_net: f64,
    pub q_net: f64,
    pub max_pe: f64,
    pub quad_error: f64,
    #[serde(skip)]
    pub min_gamma: f64,
    #[serde(skip)]
    pub converged: bool,
}

/// A row that could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub delta_lw: f64,
    pub detuning: f64,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepTable {
    /// Ordered by Δ as given, then δ ascending.
    pub rows: Vec<SweepRow>,
    pub failures: Vec<SweepFailure>,
}

impl SweepTable {
    /// Rows for one linewidth.
    pub fn for_linewidth(&self, delta_lw: f64) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.delta_lw == delta_lw)
    }

    pub fn lookup(&self, delta_lw: f64, detuning: f64) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.delta_lw == delta_lw && r.detuning == detuning)
    }

    /// Rows violating |W(δ=0)| ≤ quad_error.
    pub fn resonance_violations(&self) -> Vec<&SweepRow> {
        self.rows
            .iter()
            .filter(|r| r.detuning == 0.0 && r.w_net.abs() > r.quad_error)
            .collect()
    }

    /// Pairs (δ, −δ) violating |W(δ) + W(−δ)| ≤ 2 quad_error.
    pub fn antisymmetry_violations(&self) -> Vec<(&SweepRow, &SweepRow)> {
        let mut out = Vec::new();
        for r in self.rows.iter().filter(|r| r.detuning > 0.0) {
            if let Some(m) = self.lookup(r.delta_lw, -r.detuning) {
                if (r.w_net + m.w_net).abs() > r.quad_error + m.quad_error {
                    out.push((r, m));
                }
            }
        }
        out
    }
}

/// Linewidths plotted in the reference net-work curves.
pub const FIG2_LINEWIDTHS: [f64; 4] = [0.01, 0.1, 2.0, 10.0];

/// Default detuning grid: 161 points on [−20, 20] Γ_1D, exactly symmetric.
pub fn default_detuning_grid() -> Vec<f64> {
    (0..161).map(|k| -20.0 + 0.25 * k as f64).collect()
}

/// Net work and heat for every (Δ, δ) pair. Rows are computed in parallel on
/// the current rayon pool; a failing row is recorded and the sweep continues.
pub fn detuning_sweep(
    gamma1d: f64,
    omega0: f64,
    delta_lw_list: &[f64],
    delta_grid: &[f64],
    tol: f64,
) -> Result<SweepTable> {
    if delta_grid.is_empty() {
        return Err(Error::InvalidParams("detuning grid is empty".into()));
    }
    if delta_lw_list.is_empty() {
        return Err(Error::InvalidParams("linewidth list is empty".into()));
    }
    let mut detunings = delta_grid.to_vec();
    detunings.sort_by(f64::total_cmp);
    let jobs: Vec<(f64, f64)> = delta_lw_list
        .iter()
        .flat_map(|&d| detunings.iter().map(move |&det| (d, det)))
        .collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(d, det)| {
            let p = SimParams::new(gamma1d, d, det).with_omega0(omega0);
            (d, det, run_cycle(&p, tol))
        })
        .collect();
    let mut table = SweepTable::default();
    for (delta_lw, detuning, r) in results {
        match r {
            Ok(c) => table.rows.push(SweepRow {
                delta_lw,
                detuning,
                w_net: c.w_net,
                q_net: c.q_net,
                max_pe: c.max_pe,
                quad_error: c.quad_error,
                min_gamma: c.min_gamma,
                converged: c.converged,
            }),
            Err(e) => table.failures.push(SweepFailure {
                delta_lw,
                detuning,
                message: e.to_string(),
            }),
        }
    }
    Ok(table)
}

/// Net work along a linewidth sequence approaching the monochromatic limit.
pub fn monochromatic_limit_check(
    gamma1d: f64,
    detuning: f64,
    delta_lw_sequence: &[f64],
    tol: f64,
) -> Result<Vec<CycleResult>> {
    if delta_lw_sequence.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParams("linewidth sequence must be strictly decreasing".into()));
    }
    delta_lw_sequence
        .iter()
        .map(|&d| run_cycle(&SimParams::new(gamma1d, d, detuning), tol))
        .collect()
}

/// Work extracted when the emitter that produced the photon starts in a
/// thermal state with excited population `pe_t` instead of |e⟩.
pub fn thermal_emitter_scaling(w_net_inverted: f64, pe_t: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&pe_t) {
        return Err(Error::OutOfRange(format!("thermal excited population must lie in [0, 1/2], got {pe_t}")));
    }
    Ok(pe_t * w_net_inverted)
}

/// Maximum excited population on the trace and whether the state stayed
/// passive (no population inversion). The reduced state has no coherences
/// by construction, so only populations are checked.
pub fn passivity_monitor(trace: &CoefficientTrace) -> (f64, bool) {
    let max_pe = trace.max_pe();
    (max_pe, max_pe < 0.5)
}
