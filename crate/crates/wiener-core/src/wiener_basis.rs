//! Mapped bases on the real line and the half line.
//!
//! * Φ_k^(s)(x) = Ψ_k^(s−1)(θ(x)) with θ = 2 arctan x, and the generalized
//!   Wiener functions φ_k^(s) = √*w_x^(s,0) Φ_k^(s), orthonormal in L²(ℝ).
//! * ρ_n^(s) on [0, ∞), built from the class (−1/2, s − 3/2) under
//!   r = (1 − x²)/(1 + x²).
//! * PB_n^(s,t) and pb_n^(s,t) on ℝ under r = x/√(1 + x²).
//! * PL_n^(s) and pl_n^(s) on [0, ∞) under r = (1 − x)/(1 + x).
//!
//! Every evaluator accepts x = ±∞ and returns the limiting value.

use crate::domain_maps::{sqrt_star_x, theta_of_x};
use crate::error::{contract, Result};
use crate::fourier_basis::{eval_szego, eval_szego_batch};
use crate::jacobi::{eval_batch, JacobiParams};
use num_complex::Complex64;
use std::f64::consts::PI;

fn check_s(s: f64) -> Result<()> {
    if s > 0.5 {
        Ok(())
    } else {
        contract(format!("decay parameter must exceed 1/2, got {s}"))
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_nan() {
        contract("x is NaN")
    } else {
        Ok(())
    }
}

fn check_half_line(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        contract(format!("half-line functions need x in [0, inf], got {x}"))
    }
}

/// Φ_k^(s)(x).
pub fn eval_wiener_unweighted(s: f64, k: i64, x: f64) -> Result<Complex64> {
    check_s(s)?;
    check_x(x)?;
    eval_szego(s - 1.0, k, theta_of_x(x))
}

/// φ_k^(s)(x) = 2^{s/2} (x − i)^{−s} Φ_k^(s)(x).
pub fn eval_wiener(s: f64, k: i64, x: f64) -> Result<Complex64> {
    let big = eval_wiener_unweighted(s, k, x)?;
    Ok(sqrt_star_x(s, 0.0, x) * big)
}

/// [φ_{−K}(x), …, φ_K(x)].
pub fn eval_wiener_batch(s: f64, k_max: usize, x: f64) -> Result<Vec<Complex64>> {
    let big = eval_wiener_unweighted_batch(s, k_max, x)?;
    let root = sqrt_star_x(s, 0.0, x);
    Ok(big.into_iter().map(|v| root * v).collect())
}

/// [Φ_{−K}(x), …, Φ_K(x)].
pub fn eval_wiener_unweighted_batch(s: f64, k_max: usize, x: f64) -> Result<Vec<Complex64>> {
    check_s(s)?;
    check_x(x)?;
    eval_szego_batch(s - 1.0, k_max, theta_of_x(x))
}

/// Wiener's rational function (1 − ix)^n / (√π (1 + ix)^{n+1}).
pub fn eval_wiener_classical(n: usize, x: f64) -> Result<Complex64> {
    check_x(x)?;
    if x.is_infinite() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let num = Complex64::new(1.0, -x);
    let den = Complex64::new(1.0, x);
    Ok((num / den).powi(n as i32) / (den * PI.sqrt()))
}

fn rho_class(s: f64) -> Result<JacobiParams> {
    check_s(s)?;
    JacobiParams::new(-0.5, s - 1.5)
}

/// [ρ_0(x), …, ρ_N(x)] with ρ_n^(s)(x) = (2/(1 + x²))^{s/2} P̃_n^(−1/2, s−3/2)((1 − x²)/(1 + x²)).
pub fn eval_rho_batch(s: f64, n_max: usize, x: f64) -> Result<Vec<f64>> {
    let p = rho_class(s)?;
    check_half_line(x)?;
    if x.is_infinite() {
        return Ok(vec![0.0; n_max + 1]);
    }
    let d = 1.0 + x * x;
    let factor = (2.0 / d).powf(0.5 * s);
    let r = (1.0 - x * x) / d;
    Ok(eval_batch(p, n_max, r)
        .into_iter()
        .map(|v| factor * v)
        .collect())
}

/// ρ_n^(s)(x) for x ∈ [0, ∞].
pub fn eval_rho(s: f64, n: usize, x: f64) -> Result<f64> {
    Ok(eval_rho_batch(s, n, x)?[n])
}

fn mapped_class(s: f64, t: f64) -> Result<JacobiParams> {
    check_s(s)?;
    check_s(t)?;
    JacobiParams::new(s - 1.5, t - 1.5)
}

/// (r, 1 − r, 1 + r) for r = x/√(1 + x²), with both complements free of
/// cancellation.
fn mapped_point(x: f64) -> (f64, f64, f64) {
    if x.is_infinite() {
        return if x > 0.0 {
            (1.0, 0.0, 2.0)
        } else {
            (-1.0, 2.0, 0.0)
        };
    }
    let q = x.hypot(1.0);
    let small = 1.0 / (q * (q + x.abs()));
    let large = 1.0 + x.abs() / q;
    if x >= 0.0 {
        (x / q, small, large)
    } else {
        (x / q, large, small)
    }
}

/// [PB_0(x), …, PB_N(x)], or the weighted pb_n = (1 − r)^{s/2}(1 + r)^{t/2} PB_n
/// when `weighted`, r = x/√(1 + x²). PB is orthonormal under
/// (1 − r)^s (1 + r)^t dx and pb in unweighted L²(ℝ).
pub fn eval_mapped_jacobi_batch(
    s: f64,
    t: f64,
    n_max: usize,
    x: f64,
    weighted: bool,
) -> Result<Vec<f64>> {
    let p = mapped_class(s, t)?;
    check_x(x)?;
    let (r, u, v) = mapped_point(x);
    let vals = eval_batch(p, n_max, r);
    if !weighted {
        return Ok(vals);
    }
    let root = u.powf(0.5 * s) * v.powf(0.5 * t);
    Ok(vals.into_iter().map(|y| root * y).collect())
}

/// PB_n^(s,t)(x) or pb_n^(s,t)(x).
pub fn eval_mapped_jacobi(s: f64, t: f64, n: usize, x: f64, weighted: bool) -> Result<f64> {
    Ok(eval_mapped_jacobi_batch(s, t, n, x, weighted)?[n])
}

/// The Jacobi class (−1/2, 2s − 3/2) behind PL^(s); s > 1/4 keeps it valid,
/// and s = 1/2 gives the half-line Chebyshev functions TL_n.
pub fn half_line_class(s: f64) -> Result<JacobiParams> {
    if !(s > 0.25) {
        return contract(format!("PL needs s > 1/4, got {s}"));
    }
    JacobiParams::new(-0.5, 2.0 * s - 1.5)
}

/// [PL_0(x), …, PL_N(x)], or pl_n = (2/(1 + x))^s PL_n when `weighted`.
pub fn eval_semiinfinite_pl_batch(
    s: f64,
    n_max: usize,
    x: f64,
    weighted: bool,
) -> Result<Vec<f64>> {
    let p = half_line_class(s)?;
    check_half_line(x)?;
    let (r, factor) = if x.is_infinite() {
        (-1.0, 0.0)
    } else {
        ((1.0 - x) / (1.0 + x), (2.0 / (1.0 + x)).powf(s))
    };
    let vals = eval_batch(p, n_max, r);
    if !weighted {
        return Ok(vals);
    }
    Ok(vals.into_iter().map(|y| factor * y).collect())
}

/// PL_n^(s)(x) or pl_n^(s)(x).
pub fn eval_semiinfinite_pl(s: f64, n: usize, x: f64, weighted: bool) -> Result<f64> {
    Ok(eval_semiinfinite_pl_batch(s, n, x, weighted)?[n])
}
