#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wiener_core::fourier_quad::{analyze_with_rule, Basis};
use wiener_core::modal::ModalCoefficients;
use wiener_core::par::Strategy;
use wiener_core::Complex64;

/// Coefficients of `f` against `basis` by quadrature on a rule 40 modes
/// finer than the truncation, so aliasing of a smooth `f` is negligible.
pub fn project<F: Fn(f64) -> Complex64>(basis: Basis, extent: usize, f: F) -> ModalCoefficients {
    let rule = basis.rule(extent + 40).unwrap();
    let samples: Vec<_> = rule.nodes.iter().map(|&t| f(t)).collect();
    analyze_with_rule(&basis, extent, &rule, &samples, Strategy::Sequential).unwrap()
}

/// exp(c₁e^{iθ} + c₂e^{−iθ}): entire, 2π-periodic, with geometrically
/// decaying Fourier coefficients.
#[derive(Debug, Clone, Copy)]
pub struct Smooth {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl Smooth {
    pub fn at(&self, theta: f64) -> Complex64 {
        (self.c1 * Complex64::from_polar(1.0, theta) + self.c2 * Complex64::from_polar(1.0, -theta))
            .exp()
    }
}

pub fn random_smooth(count: usize, seed: u64) -> Vec<Smooth> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut c = || {
        Complex64::from_polar(
            rng.gen_range(0.1..0.45),
            rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        )
    };
    (0..count).map(|_| Smooth { c1: c(), c2: c() }).collect()
}

pub fn random_entries(seed: u64, len: usize) -> Vec<Complex64> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// (f(x + h) − f(x − h)) / 2h.
pub fn central_difference<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// 40 points on ℝ: a dense cluster near the origin, a sparser outer
/// range, and the far points ±50.
pub fn sample_points() -> Vec<f64> {
    let mut pts: Vec<f64> = (0..30).map(|j| -7.25 + 0.5 * j as f64).collect();
    pts.extend([
        -30.0, -20.0, -12.5, -9.0, 9.0, 12.5, 20.0, 30.0, -50.0, 50.0,
    ]);
    pts
}

pub fn max_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|v| v.norm()).fold(0.0, f64::max)
}
