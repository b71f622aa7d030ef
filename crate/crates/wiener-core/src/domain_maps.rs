//! The four coordinate charts and the maps between them.
//!
//! | chart | domain            | relation to θ             |
//! |-------|-------------------|---------------------------|
//! | X     | extended reals    | x = tan(θ/2)              |
//! | Z     | unit circle       | z = e^{iθ}                |
//! | Theta | [−π, π]           | identity                  |
//! | R     | [−1, 1]           | r = cos θ                 |
//!
//! The R chart only sees |θ|, so maps out of R land in θ ∈ [0, π] (x ≥ 0,
//! Im z ≥ 0).

use crate::error::{contract, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    X,
    Z,
    Theta,
    R,
}

/// A point on one chart. Real charts keep the imaginary part at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainPoint {
    chart: Chart,
    value: Complex64,
}

const Z_MODULUS_TOL: f64 = 1e-12;

impl DomainPoint {
    /// Any real or signed infinite x. NaN is rejected.
    pub fn x(x: f64) -> Result<Self> {
        if x.is_nan() {
            return contract("x must not be NaN");
        }
        Ok(Self::raw(Chart::X, x))
    }

    /// θ must already lie in [−π, π]; nothing is wrapped.
    pub fn theta(theta: f64) -> Result<Self> {
        if !(-PI..=PI).contains(&theta) {
            return contract(format!("theta = {theta} lies outside [-pi, pi]"));
        }
        Ok(Self::raw(Chart::Theta, theta))
    }

    pub fn r(r: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&r) {
            return contract(format!("r = {r} lies outside [-1, 1]"));
        }
        Ok(Self::raw(Chart::R, r))
    }

    pub fn z(z: Complex64) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() || (z.norm() - 1.0).abs() > Z_MODULUS_TOL {
            return contract(format!("z = {z} is not on the unit circle"));
        }
        Ok(Self {
            chart: Chart::Z,
            value: z,
        })
    }

    /// Builds a point on `chart` from a real coordinate (the Z chart takes θ).
    pub fn on(chart: Chart, value: f64) -> Result<Self> {
        match chart {
            Chart::X => Self::x(value),
            Chart::Theta => Self::theta(value),
            Chart::R => Self::r(value),
            Chart::Z => {
                Self::theta(value)?;
                Self::z(Complex64::from_polar(1.0, value))
            }
        }
    }

    fn raw(chart: Chart, v: f64) -> Self {
        Self {
            chart,
            value: Complex64::new(v, 0.0),
        }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// Real coordinate; for the Z chart this is the real part.
    pub fn real(&self) -> f64 {
        self.value.re
    }
}

/// θ = 2·arctan x, with θ(±∞) = ±π.
pub fn theta_of_x(x: f64) -> f64 {
    if x.is_infinite() {
        PI.copysign(x)
    } else {
        2.0 * x.atan()
    }
}

/// x = tan(θ/2), with x(±π) = ±∞.
pub fn x_of_theta(theta: f64) -> f64 {
    if theta.abs() == PI {
        f64::INFINITY.copysign(theta)
    } else {
        (0.5 * theta).tan()
    }
}

/// r = (1 − x²)/(1 + x²).
pub fn r_of_x(x: f64) -> f64 {
    if x.is_infinite() {
        return -1.0;
    }
    let x2 = x * x;
    (1.0 - x2) / (1.0 + x2)
}

/// x = √((1 − r)/(1 + r)) ≥ 0.
pub fn x_of_r(r: f64) -> f64 {
    if r == -1.0 {
        f64::INFINITY
    } else {
        ((1.0 - r) / (1.0 + r)).sqrt()
    }
}

/// Image of `p` on the `target` chart.
pub fn map_point(p: DomainPoint, target: Chart) -> DomainPoint {
    use Chart::*;
    let v = p.value;
    let real = |c, x: f64| DomainPoint::raw(c, x);
    match (p.chart, target) {
        (a, b) if a == b => p,
        (X, Theta) => real(Theta, theta_of_x(v.re)),
        (X, R) => real(R, r_of_x(v.re)),
        (X, Z) => {
            let x = v.re;
            let z = if x.is_infinite() {
                Complex64::new(-1.0, 0.0)
            } else {
                Complex64::new(1.0, x) / Complex64::new(1.0, -x)
            };
            DomainPoint { chart: Z, value: z }
        }
        (Theta, X) => real(X, x_of_theta(v.re)),
        (Theta, R) => real(R, v.re.cos()),
        (Theta, Z) => DomainPoint {
            chart: Z,
            value: Complex64::from_polar(1.0, v.re),
        },
        (Z, Theta) => real(Theta, v.arg()),
        (Z, X) => real(X, x_of_theta(v.arg())),
        (Z, R) => real(R, v.re),
        (R, Theta) => real(Theta, v.re.acos()),
        (R, X) => real(X, x_of_r(v.re)),
        (R, Z) => DomainPoint {
            chart: Z,
            value: Complex64::new(v.re, (1.0 - v.re * v.re).max(0.0).sqrt()),
        },
        _ => unreachable!("all chart pairs are covered"),
    }
}

/// Exponent pair of a weight family: (α, β) on R, (γ, δ) on Theta, (s, t) on X.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    pub first: f64,
    pub second: f64,
}

impl WeightParams {
    pub fn new(first: f64, second: f64) -> Self {
        Self { first, second }
    }
}

/// w_r^(α,β)(r) = (1 − r)^α (1 + r)^β.
pub fn weight_r(alpha: f64, beta: f64, r: f64) -> f64 {
    (1.0 - r).powf(alpha) * (1.0 + r).powf(beta)
}

/// w_θ^(γ,δ)(θ) = (1 + cos θ)^γ (1 − cos θ)^δ, evaluated through half angles.
pub fn weight_theta(gamma: f64, delta: f64, theta: f64) -> f64 {
    let c = (0.5 * theta).cos();
    let s = (0.5 * theta).sin();
    let (a, b) = if theta.abs() == PI {
        (0.0, 2.0)
    } else {
        (2.0 * c * c, 2.0 * s * s)
    };
    a.powf(gamma) * b.powf(delta)
}

/// w_x^(s,t)(x) = 2^{s+t} (1 + x²)^{−s} (x²/(1 + x²))^t.
pub fn weight_x(s: f64, t: f64, x: f64) -> f64 {
    if x.is_infinite() {
        return if s > 0.0 {
            0.0
        } else if s == 0.0 {
            2f64.powf(t)
        } else {
            f64::INFINITY
        };
    }
    let d = 1.0 + x * x;
    2f64.powf(s + t) * d.powf(-s) * (x * x / d).powf(t)
}

/// Weight of the family attached to `chart`. The Z chart carries no weight.
pub fn weight(chart: Chart, params: WeightParams, p: DomainPoint) -> Result<f64> {
    if p.chart != chart {
        return contract("point and weight live on different charts");
    }
    let (a, b) = (params.first, params.second);
    match chart {
        Chart::R => Ok(weight_r(a, b, p.real())),
        Chart::Theta => Ok(weight_theta(a, b, p.real())),
        Chart::X => Ok(weight_x(a, b, p.real())),
        Chart::Z => contract("the Z chart has no weight family"),
    }
}

fn principal_pow(base: f64, e: f64) -> Complex64 {
    if e == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if base >= 0.0 {
        Complex64::new(base.powf(e), 0.0)
    } else {
        Complex64::from_polar((-base).powf(e), PI * e)
    }
}

/// Phase-shifted root on the real line: 2^{(s+t)/2} x^t / (x − i)^{s+t},
/// principal branches throughout.
pub fn sqrt_star_x(s: f64, t: f64, x: f64) -> Complex64 {
    if x.is_infinite() {
        if s > 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let phase = if x > 0.0 { 0.0 } else { 2.0 * PI * t };
        return Complex64::from_polar(2f64.powf(0.5 * t), phase);
    }
    let xm = Complex64::new(x, -1.0);
    principal_pow(x, t) * 2f64.powf(0.5 * (s + t)) / xm.powf(s + t)
}

/// Phase-shifted root on the circle:
/// 2^{(γ+δ)/2} sin^δ(θ/2) cos^γ(θ/2) exp[i(γ+δ)(π − θ)/2].
///
/// The sine power uses the principal branch so that this agrees with
/// [`sqrt_star_x`] at x = tan(θ/2) for θ < 0 as well.
pub fn sqrt_star_theta(gamma: f64, delta: f64, theta: f64) -> Complex64 {
    let c = if theta.abs() == PI {
        0.0
    } else {
        (0.5 * theta).cos()
    };
    let mag = 2f64.powf(0.5 * (gamma + delta)) * c.powf(gamma);
    let phase = Complex64::from_polar(1.0, 0.5 * (gamma + delta) * (PI - theta));
    principal_pow((0.5 * theta).sin(), delta) * mag * phase
}

/// Phase-shifted root of the weight attached to `chart` (X or Theta).
pub fn sqrt_star(chart: Chart, params: WeightParams, p: DomainPoint) -> Result<Complex64> {
    if p.chart != chart {
        return contract("point and weight live on different charts");
    }
    match chart {
        Chart::X => Ok(sqrt_star_x(params.first, params.second, p.real())),
        Chart::Theta => Ok(sqrt_star_theta(params.first, params.second, p.real())),
        _ => contract("phase-shifted roots exist on the X and Theta charts only"),
    }
}

/// [i(1 + e^{−iθ})/√2]^s with the principal power.
pub fn sqrt_star_x_circle_form(s: f64, theta: f64) -> Complex64 {
    let base = Complex64::i() * (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, -theta))
        / std::f64::consts::SQRT_2;
    if base.norm() == 0.0 {
        return if s == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    base.powf(s)
}
