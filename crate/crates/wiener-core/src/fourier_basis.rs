//! Szegő-Fourier functions Ψ_k^(γ) on [−π, π] and their weighted versions
//! ψ_k^(γ) = √*w_θ^(γ,0) Ψ_k^(γ).
//!
//! With r = cos θ, α = −1/2 and β = γ − 1/2,
//!
//! ```text
//! Ψ_0 = P̃_0^(α,β)(r)/√2,
//! Ψ_k = [P̃_|k|^(α,β)(r) + i sgn(k) sin θ P̃_{|k|−1}^(α+1,β+1)(r)] / 2.
//! ```
//!
//! Batches are built by Jacobi synthesis. The three six-term recurrences in
//! [`RecurrenceFamily`] are provided as an independent path and for
//! exporting their coefficients.

use crate::domain_maps::sqrt_star_theta;
use crate::error::{contract, Result};
use crate::jacobi::{
    eval_batch, recurrence_a, recurrence_b, transfer_coeff, JacobiParams, TransferKind,
};
use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > -0.5 {
        Ok(())
    } else {
        contract(format!("gamma must exceed -1/2, got {gamma}"))
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if (-PI..=PI).contains(&theta) {
        Ok(())
    } else {
        contract(format!("theta must lie in [-pi, pi], got {theta}"))
    }
}

/// The two Jacobi classes (−1/2, γ − 1/2) and (1/2, γ + 1/2) behind Ψ^(γ).
pub fn szego_classes(gamma: f64) -> Result<(JacobiParams, JacobiParams)> {
    check_gamma(gamma)?;
    Ok((
        JacobiParams::new(-0.5, gamma - 0.5)?,
        JacobiParams::new(0.5, gamma + 0.5)?,
    ))
}

fn combine(even: &[f64], odd: &[f64], sin_t: f64, k: i64) -> Complex64 {
    if k == 0 {
        return Complex64::new(even[0] / SQRT_2, 0.0);
    }
    let n = k.unsigned_abs() as usize;
    let sign = k.signum() as f64;
    Complex64::new(0.5 * even[n], 0.5 * sign * sin_t * odd[n - 1])
}

/// Ψ_k^(γ)(θ) by direct synthesis.
pub fn eval_szego(gamma: f64, k: i64, theta: f64) -> Result<Complex64> {
    check_theta(theta)?;
    let (even, odd) = szego_classes(gamma)?;
    let n = k.unsigned_abs() as usize;
    let r = theta.cos();
    let pe = eval_batch(even, n, r);
    let po = eval_batch(odd, n.saturating_sub(1), r);
    Ok(combine(&pe, &po, theta.sin(), k))
}

/// [Ψ_{−K}(θ), …, Ψ_K(θ)] by direct synthesis.
pub fn eval_szego_batch(gamma: f64, k_max: usize, theta: f64) -> Result<Vec<Complex64>> {
    check_theta(theta)?;
    let (even, odd) = szego_classes(gamma)?;
    let r = theta.cos();
    let pe = eval_batch(even, k_max, r);
    let po = eval_batch(odd, k_max.saturating_sub(1), r);
    let sin_t = theta.sin();
    let k_max = k_max as i64;
    Ok((-k_max..=k_max)
        .map(|k| combine(&pe, &po, sin_t, k))
        .collect())
}

fn weight_root(gamma: f64, theta: f64) -> Result<Complex64> {
    if gamma < 0.0 && theta.abs() == PI {
        return contract("psi with gamma < 0 is unbounded at theta = +-pi");
    }
    Ok(sqrt_star_theta(gamma, 0.0, theta))
}

/// ψ_k^(γ)(θ) = √*w_θ^(γ,0)(θ) Ψ_k^(γ)(θ); zero at θ = ±π when γ > 0.
pub fn eval_szego_weighted(gamma: f64, k: i64, theta: f64) -> Result<Complex64> {
    let psi = eval_szego(gamma, k, theta)?;
    Ok(weight_root(gamma, theta)? * psi)
}

/// [ψ_{−K}(θ), …, ψ_K(θ)].
pub fn eval_szego_weighted_batch(gamma: f64, k_max: usize, theta: f64) -> Result<Vec<Complex64>> {
    let batch = eval_szego_batch(gamma, k_max, theta)?;
    let root = weight_root(gamma, theta)?;
    Ok(batch.into_iter().map(|v| root * v).collect())
}

/// The six-term recurrences satisfied by Ψ^(γ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceFamily {
    /// Ψ_{n+1} = (U_n cos θ − V_n)Ψ_n + (U_{−n} cos θ − V_{−n})Ψ_{−n}
    ///          − W_n Ψ_{n−1} − W_{−n} Ψ_{−(n−1)}.
    CosUvw,
    /// As [`RecurrenceFamily::CosUvw`] with cos θ replaced by i sin θ.
    SinUvw,
    /// D_n Ψ_{n+1} = (A_n e^{iθ} − B_n)Ψ_n + (A_{−n} e^{−iθ} − B_{−n})Ψ_{−n}
    ///              + C_n Ψ_{n−1} + C_{−n} Ψ_{−(n−1)}.
    ExpAbcd,
}

/// A coefficient pair (value at +n, value at −n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pair {
    pub plus: f64,
    pub minus: f64,
}

impl Pair {
    fn new(plus: f64, minus: f64) -> Self {
        Self { plus, minus }
    }
}

/// Coefficients of one step n → n + 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RecurrenceCoeffs {
    Uvw { u: Pair, v: Pair, w: Pair },
    Abcd { d: f64, a: Pair, b: Pair, c: Pair },
}

fn cos_coeffs(gamma: f64, n: usize) -> Result<RecurrenceCoeffs> {
    let (p, q) = szego_classes(gamma)?;
    let sb_next = recurrence_b(p, n + 1).sqrt();
    let sb_odd = recurrence_b(q, n).sqrt();
    let u = Pair::new(
        0.5 * (1.0 / sb_next + 1.0 / sb_odd),
        0.5 * (1.0 / sb_next - 1.0 / sb_odd),
    );
    let (v1, v2) = (
        recurrence_a(p, n) / sb_next,
        recurrence_a(q, n - 1) / sb_odd,
    );
    let (w1, w2) = (
        (recurrence_b(p, n) / recurrence_b(p, n + 1)).sqrt(),
        (recurrence_b(q, n - 1) / recurrence_b(q, n)).sqrt(),
    );
    Ok(RecurrenceCoeffs::Uvw {
        u,
        v: Pair::new(0.5 * (v1 + v2), 0.5 * (v1 - v2)),
        w: Pair::new(0.5 * (w1 + w2), 0.5 * (w1 - w2)),
    })
}

fn sin_coeffs(gamma: f64, n: usize) -> Result<RecurrenceCoeffs> {
    use TransferKind::*;
    let (p, q) = szego_classes(gamma)?;
    let e0 = transfer_coeff(q, Eps0, n - 1)?;
    let e1 = transfer_coeff(q, Eps1, n - 1)?;
    let e2 = -transfer_coeff(q, Eps2, n - 1)?;
    let h0 = transfer_coeff(p, Eta0, n)?;
    let h1 = transfer_coeff(p, EtaM1, n)?;
    let h2 = if n >= 2 {
        transfer_coeff(p, EtaM2, n)?
    } else {
        0.0
    };
    Ok(RecurrenceCoeffs::Uvw {
        u: Pair::new(0.5 * (1.0 / h0 - 1.0 / e2), 0.5 * (1.0 / h0 + 1.0 / e2)),
        v: Pair::new(0.5 * (e1 / e2 + h1 / h0), 0.5 * (e1 / e2 - h1 / h0)),
        w: Pair::new(0.5 * (e0 / e2 + h2 / h0), 0.5 * (e0 / e2 - h2 / h0)),
    })
}

fn abcd_a(gamma: f64, m: usize, sign: f64) -> f64 {
    if m == 0 {
        SQRT_2 * ((gamma + 1.0).sqrt() + sign)
    } else {
        let m = m as f64;
        (m + gamma + 1.0).sqrt() + sign * (m + 1.0).sqrt()
    }
}

fn exp_coeffs(gamma: f64, n: usize) -> Result<RecurrenceCoeffs> {
    check_gamma(gamma)?;
    let g = gamma;
    let nf = n as f64;
    let a = Pair::new(abcd_a(g, n, 1.0), abcd_a(g, n, -1.0));
    if n == 0 {
        let b0 = g * SQRT_2 / (g + 1.0).sqrt();
        return Ok(RecurrenceCoeffs::Abcd {
            d: 4.0 * ((2.0 * g + 1.0) / ((g + 1.0) * (g + 2.0))).sqrt(),
            a,
            b: Pair::new(b0, b0),
            c: Pair::new(0.0, 0.0),
        });
    }
    let m = 2.0 * nf + g - 1.0;
    let eps2 = 2.0 / (m + 2.0)
        * ((nf + 1.0) * (nf + 2.0) * (nf + 0.5) * (nf + g + 0.5) / ((m + 1.0) * (m + 3.0))).sqrt();
    let d = 2.0 * eps2 * ((nf + g).sqrt() + nf.sqrt()) * ((nf + g + 1.0) / (nf + 2.0)).sqrt();

    let f = g / (m * (m + 2.0));
    let q = 2.0 * (nf * (nf + g)).sqrt() - 1.0;
    let b = Pair::new(
        f * (g * a.plus + q * a.minus),
        f * (g * a.minus + q * a.plus),
    );

    let c = if n == 1 {
        let c1 = g * (2.0 * g + 1.0).sqrt() / (abcd_a(g, 0, 1.0) * (g + 1.0));
        Pair::new(c1, c1)
    } else {
        let pre = g * 2.0 / m * ((nf - 0.5) * (nf + g - 0.5) / ((m - 1.0) * (m + 1.0))).sqrt()
            / abcd_a(g, n - 1, 1.0);
        let (s1, s2) = (((nf + g).powi(2) - 1.0).sqrt(), (nf * nf - 1.0).sqrt());
        Pair::new(pre * (s1 - s2), pre * (s1 + s2))
    };
    Ok(RecurrenceCoeffs::Abcd { d, a, b, c })
}

/// Coefficients of step n → n + 1 of `family`.
///
/// The UVW families need n ≥ 1; in their n = 1 step the Ψ_{±(n−1)} slots
/// both hold Ψ_0/√2. The ABCD family is defined for every n ≥ 0 and uses
/// Ψ_0 itself in both slots at n = 1.
pub fn fourier_recurrence_coeffs(
    gamma: f64,
    n: usize,
    family: RecurrenceFamily,
) -> Result<RecurrenceCoeffs> {
    match family {
        RecurrenceFamily::CosUvw | RecurrenceFamily::SinUvw if n == 0 => {
            contract("the UVW recurrences start at n = 1")
        }
        RecurrenceFamily::CosUvw => cos_coeffs(gamma, n),
        RecurrenceFamily::SinUvw => sin_coeffs(gamma, n),
        RecurrenceFamily::ExpAbcd => exp_coeffs(gamma, n),
    }
}

/// [Ψ_{−K}(θ), …, Ψ_K(θ)] from the seeds Ψ_0, Ψ_{±1} marched upward with
/// `family`; negative indices come from Ψ_{−k} = conj(Ψ_k).
pub fn eval_szego_recurrence(
    gamma: f64,
    k_max: usize,
    theta: f64,
    family: RecurrenceFamily,
) -> Result<Vec<Complex64>> {
    if k_max == 0 {
        return contract("k_max must be at least 1");
    }
    let seeds = eval_szego_batch(gamma, 1, theta)?;
    // pos[n] = Ψ_n for n ≥ 0.
    let mut pos = vec![seeds[1], seeds[2]];
    let z = Complex64::from_polar(1.0, theta);
    for n in 1..k_max {
        let cur = pos[n];
        let prev = pos[n - 1];
        let next = match fourier_recurrence_coeffs(gamma, n, family)? {
            RecurrenceCoeffs::Uvw { u, v, w } => {
                let f = match family {
                    RecurrenceFamily::SinUvw => Complex64::new(0.0, theta.sin()),
                    _ => Complex64::new(theta.cos(), 0.0),
                };
                let (lo, lo_conj) = if n == 1 {
                    (prev / SQRT_2, prev / SQRT_2)
                } else {
                    (prev, prev.conj())
                };
                (f * u.plus - v.plus) * cur + (f * u.minus - v.minus) * cur.conj()
                    - w.plus * lo
                    - w.minus * lo_conj
            }
            RecurrenceCoeffs::Abcd { d, a, b, c } => {
                ((z * a.plus - b.plus) * cur
                    + (z.conj() * a.minus - b.minus) * cur.conj()
                    + c.plus * prev
                    + c.minus * prev.conj())
                    / d
            }
        };
        pos.push(next);
    }
    let mut out: Vec<Complex64> = pos.iter().skip(1).rev().map(|v| v.conj()).collect();
    out.extend(pos);
    Ok(out)
}
