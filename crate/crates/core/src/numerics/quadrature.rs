//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_3,
    0.949_107_912_342_758_524_526_189_684_047_9,
    0.864_864_423_359_769_072_789_712_788_640_9,
    0.741_531_185_599_394_439_863_864_773_280_8,
    0.586_087_235_467_691_130_294_144_845_693_0,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_2,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_5,
    0.140_653_259_715_525_918_745_189_590_510_2,
    0.169_004_726_639_267_902_826_583_426_598_6,
    0.190_350_578_064_785_409_913_256_402_421_0,
    0.204_432_940_075_298_892_414_161_999_234_6,
    0.209_482_141_084_727_828_012_999_174_891_7,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_1,
    0.279_705_391_489_276_667_901_467_771_423_8,
    0.381_830_050_505_118_944_950_369_775_489_0,
    0.417_959_183_673_469_387_755_102_040_816_3,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    pub evaluations: usize,
    /// Whether `error <= tol` was reached before the interval budget ran out.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut lo = [0.0; 7];
    let mut hi = [0.0; 7];
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    let mut abs_sum = fc.abs() * WGK[7];
    for j in 0..7 {
        let x = h * XGK[j];
        lo[j] = f(c - x);
        hi[j] = f(c + x);
        kron += WGK[j] * (lo[j] + hi[j]);
        abs_sum += WGK[j] * (lo[j].abs() + hi[j].abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo[j] + hi[j]);
        }
    }
    let value = kron * h;
    let mut error = ((kron - gauss) * h).abs();
    // QUADPACK-style sharpening of the raw Gauss/Kronrod difference.
    let mean = kron * 0.5;
    let mut asc = (fc - mean).abs() * WGK[7];
    for j in 0..7 {
        asc += WGK[j] * ((lo[j] - mean).abs() + (hi[j] - mean).abs());
    }
    asc *= h.abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let resabs = abs_sum * h.abs();
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Piece { a, b, value, error }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`, using at most
/// `max_intervals` subintervals. `breaks` are interior points where the
/// initial partition is split (e.g. known time scales).
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
    max_intervals: usize,
) -> Integral {
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let mut heap = BinaryHeap::new();
    for w in pts.windows(2) {
        heap.push(kronrod(&mut f, w[0], w[1]));
    }
    let mut evals = 15 * heap.len();
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if error <= tol || heap.len() >= max_intervals {
            return Integral {
                value,
                error,
                evaluations: evals,
                converged: error <= tol,
            };
        }
        let worst = heap.pop().expect("non-empty partition");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval cannot be split further in floating point.
            heap.push(Piece { error: 0.0, ..worst });
            let (value, error) = heap
                .iter()
                .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
            return Integral {
                value,
                error: error + worst.error,
                evaluations: evals,
                converged: error + worst.error <= tol,
            };
        }
        heap.push(kronrod(&mut f, worst.a, mid));
        heap.push(kronrod(&mut f, mid, worst.b));
        evals += 30;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| 3.0 * x * x - x + 2.0, -1.0, 2.0, &[], 1e-12, 100);
        assert!((r.value - 13.5).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn oscillatory_decaying() {
        // ∫_0^∞ e^{-t} cos(20 t) dt = 1/401
        let r = integrate(|t| (-t).exp() * (20.0 * t).cos(), 0.0, 60.0, &[1.0, 5.0], 1e-13, 10_000);
        assert!((r.value - 1.0 / 401.0).abs() < 1e-12, "{}", r.value);
        assert!(r.error <= 1e-13);
    }

    #[test]
    fn sqrt_endpoint() {
        let r = integrate(f64::sqrt, 0.0, 1.0, &[], 1e-10, 1000);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn reports_nonconvergence() {
        let r = integrate(|x| (1.0 / x).sin(), 1e-6, 1.0, &[], 1e-14, 8);
        assert!(!r.converged);
        assert!(r.error > 1e-14);
    }
}
