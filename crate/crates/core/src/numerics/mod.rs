//! Numerical kernels: special functions, quadrature, ODE stepping,
//! finite differences and scalar maximization.

pub mod ode;
pub mod quadrature;
pub mod special;

/// Central difference with one Richardson extrapolation step:
/// (4 D(h/2) − D(h)) / 3, error O(h⁴).
pub fn richardson_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

/// Maximizes a unimodal `f` on `[a, b]` by golden-section search.
/// Returns `(argmax, max)`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Maximum of `f` over `[a, b]`: scan `samples` points on a grid that is
/// uniform in t and in log t, then polish the best sample by golden section.
pub fn scan_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, samples: usize) -> (f64, f64) {
    let mut pts = crate::params::uniform_grid(a, b, samples);
    if a > 0.0 {
        let (la, lb) = (a.ln(), b.ln());
        pts.extend(crate::params::uniform_grid(la, lb, samples).into_iter().map(f64::exp));
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
    for (i, &t) in pts.iter().enumerate() {
        let v = f(t);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = pts[best_i.saturating_sub(1)];
    let hi = pts[(best_i + 1).min(pts.len() - 1)];
    let (x, v) = golden_max(&f, lo, hi, 1e-12 * hi.max(1.0));
    if v >= best {
        (x, v)
    } else {
        (pts[best_i], best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_on_sine() {
        let d = richardson_derivative(f64::sin, 0.7, 1e-2);
        assert!((d - 0.7f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn golden_finds_peak() {
        let (x, v) = golden_max(|t| t * t * (-t).exp(), 0.0, 10.0, 1e-10);
        assert!((x - 2.0).abs() < 1e-6);
        assert!((v - 4.0 * (-2.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn scan_handles_wide_ranges() {
        let (x, _) = scan_max(|t| t * (-t / 300.0).exp(), 1e-6, 4000.0, 512);
        assert!((x - 300.0).abs() < 1e-3);
    }
}
