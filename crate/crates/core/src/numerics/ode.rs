//! Dormand–Prince 5(4) integrator for a complex scalar ODE.

use num_complex::Complex64;

use crate::error::{Error, Result};

// Butcher tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b − b̂ (error weights)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Step-control settings.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rtol: 1e-12,
            atol: 1e-13,
            h_min: 1e-14,
            max_steps: 5_000_000,
        }
    }
}

/// Integrates y' = f(t, y) from (t0, y0), returning y at every point of
/// `outputs` (ascending, all ≥ t0). Steps are clipped to land on each output.
pub fn solve<F>(f: F, t0: f64, y0: Complex64, outputs: &[f64], tol: Tolerance) -> Result<Vec<Complex64>>
where
    F: Fn(f64, Complex64) -> Complex64,
{
    let mut t = t0;
    let mut y = y0;
    let mut out = Vec::with_capacity(outputs.len());
    let span = outputs.last().map_or(0.0, |&e| e - t0);
    let mut h = (span * 1e-3).max(1e-6).min(1e-2);
    let mut k1 = f(t, y);
    let mut steps = 0usize;

    for &target in outputs {
        if target < t {
            return Err(Error::Integration {
                t: target,
                reason: "output times must be ascending and after the start".into(),
            });
        }
        while t < target {
            steps += 1;
            if steps > tol.max_steps {
                return Err(Error::Integration { t, reason: "step budget exhausted".into() });
            }
            let last = t + h >= target;
            let hs = if last { target - t } else { h };

            let k2 = f(t + C2 * hs, y + hs * (A21 * k1));
            let k3 = f(t + C3 * hs, y + hs * (A31 * k1 + A32 * k2));
            let k4 = f(t + C4 * hs, y + hs * (A41 * k1 + A42 * k2 + A43 * k3));
            let k5 = f(t + C5 * hs, y + hs * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
            let k6 = f(t + hs, y + hs * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
            let y_new = y + hs * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
            let k7 = f(t + hs, y_new);
            let err_vec = hs * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
            let scale = tol.atol + tol.rtol * y.norm().max(y_new.norm());
            let err = err_vec.norm() / scale;

            if err <= 1.0 {
                t = if last { target } else { t + hs };
                y = y_new;
                k1 = k7;
                let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                if !last || hs >= h {
                    h = hs * fac;
                }
            } else {
                h = hs * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
                if h < tol.h_min {
                    return Err(Error::Integration { t, reason: format!("step size underflow (h = {h:e})") });
                }
            }
        }
        out.push(y);
    }
    Ok(out)
}
