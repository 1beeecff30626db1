//! Cancellation-free complex exponential helpers.

use num_complex::Complex64;

/// e^w − 1 without cancellation for small |w|.
pub fn expm1c(w: Complex64) -> Complex64 {
    let (x, y) = (w.re, w.im);
    let em1 = x.exp_m1();
    let s = (0.5 * y).sin();
    // cos y − 1 = −2 sin²(y/2)
    let cm1 = -2.0 * s * s;
    Complex64::new(em1 * y.cos() + cm1, x.exp() * y.sin())
}

/// φ₁(w) = (e^w − 1)/w, with φ₁(0) = 1.
pub fn phi1(w: Complex64) -> Complex64 {
    if w.norm() < 1e-8 {
        Complex64::new(1.0, 0.0) + w * (0.5 + w / 6.0)
    } else {
        expm1c(w) / w
    }
}

/// B(w) = w / (1 − e^{−w}), the Bernoulli generating function; B(0) = 1.
///
/// Evaluated on whichever side keeps the exponential bounded.
pub fn bernoulli(w: Complex64) -> Complex64 {
    if w.norm() < 1e-8 {
        return Complex64::new(1.0, 0.0) + w * (0.5 + w / 12.0);
    }
    if w.re >= 0.0 {
        w / (-expm1c(-w))
    } else {
        // w e^w / (e^w − 1)
        w * w.exp() / expm1c(w)
    }
}

/// S(w) = ((w/2) / sinh(w/2))², even in w; S(0) = 1.
pub fn sinhc2(w: Complex64) -> Complex64 {
    if w.norm() < 1e-8 {
        return Complex64::new(1.0, 0.0) - w * w / 12.0;
    }
    let u = if w.re >= 0.0 { w } else { -w };
    // u² e^{−u} / (1 − e^{−u})²
    let d = expm1c(-u);
    u * u * (-u).exp() / (d * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expm1c_small_argument() {
        let w = c(1e-12, -3e-12);
        let e = expm1c(w);
        assert!((e - w).norm() < 1e-23);
    }

    #[test]
    fn bernoulli_matches_direct_form() {
        for &w in &[c(0.3, 0.7), c(-2.0, 1.5), c(5.0, -4.0), c(-0.01, 0.02)] {
            let direct = w / (c(1.0, 0.0) - (-w).exp());
            assert!((bernoulli(w) - direct).norm() < 1e-12 * direct.norm().max(1.0));
        }
        // Far on either side the exponentials would overflow in the direct form.
        assert!((bernoulli(c(2000.0, 3.0)) - c(2000.0, 3.0)).norm() < 1e-9);
        assert!(bernoulli(c(-2000.0, 3.0)).norm() < 1e-300);
    }

    #[test]
    fn sinhc2_matches_direct_form() {
        for &w in &[c(0.3, 0.7), c(-2.0, 1.5), c(5.0, -4.0), c(0.0, 3.0)] {
            let s = (w / 2.0) / (w / 2.0).sinh();
            let direct = s * s;
            assert!((sinhc2(w) - direct).norm() < 1e-12 * direct.norm().max(1.0));
        }
        assert!(sinhc2(c(3000.0, 1.0)).is_finite());
        assert!(sinhc2(c(-3000.0, 1.0)).is_finite());
    }

    #[test]
    fn series_branches_are_continuous() {
        let w = c(1.1e-8, 0.3e-8);
        let inner = c(0.9e-8, 0.3e-8);
        assert!((phi1(w) - phi1(inner)).norm() < 1e-8);
        assert!((bernoulli(w) - bernoulli(inner)).norm() < 1e-8);
        assert!((sinhc2(w) - sinhc2(inner)).norm() < 1e-8);
    }
}
