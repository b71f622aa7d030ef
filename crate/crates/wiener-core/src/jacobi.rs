//! Orthonormal Jacobi polynomials P̃_n^(α,β), the Jacobi functions
//! (1 − r²)^{1/2} P̃_n, and the closed-form transfer coefficients that relate
//! neighbouring parameter classes.
//!
//! Only normalized polynomials are ever formed: the three-term recurrence is
//! seeded with P̃_0 = 1/√b_0, so the norms h_n never appear explicitly.

use crate::error::{contract, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0 (Lanczos approximation, reflection below 1/2).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Class parameters (α, β), both greater than −1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return contract(format!(
                "Jacobi parameters must exceed -1, got ({alpha}, {beta})"
            ));
        }
        Ok(Self { alpha, beta })
    }

    /// Shifted class (α + da, β + db), validated.
    pub fn shifted(&self, da: f64, db: f64) -> Result<Self> {
        Self::new(self.alpha + da, self.beta + db)
    }

    /// Class with α and β exchanged; relations for (1 + r) reuse the (1 − r)
    /// coefficients of this class.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    fn up(&self) -> Self {
        Self {
            alpha: self.alpha + 1.0,
            beta: self.beta + 1.0,
        }
    }

    /// Total mass b_0 = ∫ w_r^(α,β) dr.
    pub fn mass(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        ((a + b + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0))
            .exp()
    }
}

/// Recurrence coefficients (a_n, b_n) of
/// √b_{n+1} P̃_{n+1} = (r − a_n) P̃_n − √b_n P̃_{n−1}.
pub fn recurrence_coeffs(p: JacobiParams, n: usize) -> (f64, f64) {
    (recurrence_a(p, n), recurrence_b(p, n))
}

pub fn recurrence_a(p: JacobiParams, n: usize) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    if n == 0 {
        return (b - a) / (a + b + 2.0);
    }
    let m = 2.0 * n as f64 + a + b;
    (b * b - a * a) / (m * (m + 2.0))
}

pub fn recurrence_b(p: JacobiParams, n: usize) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    match n {
        0 => p.mass(),
        1 => 4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0).powi(2) * (a + b + 3.0)),
        _ => {
            let nf = n as f64;
            let m = 2.0 * nf + a + b;
            4.0 * nf * (nf + a) * (nf + b) * (nf + a + b) / ((m - 1.0) * m * m * (m + 1.0))
        }
    }
}

/// [P̃_0(r), …, P̃_{n_max}(r)].
pub fn eval_batch(p: JacobiParams, n_max: usize, r: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = 0.0;
    let mut cur = 1.0 / p.mass().sqrt();
    let mut sqrt_b = 0.0;
    out.push(cur);
    for n in 0..n_max {
        let sqrt_b_next = recurrence_b(p, n + 1).sqrt();
        let next = ((r - recurrence_a(p, n)) * cur - sqrt_b * prev) / sqrt_b_next;
        prev = cur;
        cur = next;
        sqrt_b = sqrt_b_next;
        out.push(cur);
    }
    out
}

/// P̃_n(r); zero for negative n.
pub fn eval(p: JacobiParams, n: i64, r: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    *eval_batch(p, n as usize, r)
        .last()
        .expect("batch is never empty")
}

/// d/dr P̃_n^(α,β) = γ_n P̃_{n−1}^(α+1,β+1).
pub fn eval_derivative(p: JacobiParams, n: i64, r: f64) -> f64 {
    if n <= 0 {
        return 0.0;
    }
    gamma_diff(p, n as usize) * eval(p.up(), n - 1, r)
}

fn gamma_diff(p: JacobiParams, n: usize) -> f64 {
    let nf = n as f64;
    (nf * (nf + p.alpha + p.beta + 1.0)).sqrt()
}

/// Selector for the closed-form coefficient families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferKind {
    /// μ_{n,0}: (1 − r)P̃_n^(α,β) = μ_{n,0} P̃_n^(α−1,β) − μ_{n,1} P̃_{n+1}^(α−1,β).
    Mu0,
    Mu1,
    /// ν_{n,0}: P̃_n^(α,β) = ν_{n,0} P̃_n^(α+1,β) − ν_{n,−1} P̃_{n−1}^(α+1,β).
    Nu0,
    NuM1,
    /// γ_n of the derivative relation.
    GammaDiff,
    /// ε_{n,i}: (1 − r²)P̃_n^(α,β) = ε_{n,0}P̃_n + ε_{n,1}P̃_{n+1} − ε_{n,2}P̃_{n+2},
    /// right-hand side in class (α−1,β−1). The values are the printed ones,
    /// all of ε_{n,2} positive; the subtraction is part of the relation.
    Eps0,
    Eps1,
    Eps2,
    /// η_{n,−i}: P̃_n^(α,β) = η_{n,0}P̃_n + η_{n,−1}P̃_{n−1} + η_{n,−2}P̃_{n−2},
    /// right-hand side in class (α+1,β+1).
    Eta0,
    EtaM1,
    EtaM2,
    A3term,
    B3term,
}

fn eps(p: JacobiParams, n: usize, i: usize) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    let nf = n as f64;
    let ab = a + b;
    match (i, n) {
        (0, 0) => 2.0 * (a * b / (ab * (ab + 1.0))).sqrt(),
        (0, 1) => 2.0 / (ab + 2.0) * ((a + 1.0) * (b + 1.0) * ab / (ab + 3.0)).sqrt(),
        (0, _) => {
            let m = 2.0 * nf + ab;
            2.0 / m
                * ((nf + a) * (nf + b) * (nf + ab - 1.0) * (nf + ab) / ((m - 1.0) * (m + 1.0)))
                    .sqrt()
        }
        (1, 0) => 2.0 * (a - b) / ((ab + 2.0) * ab.sqrt()),
        (1, _) => {
            let m = 2.0 * nf + ab;
            2.0 * (a - b) * ((nf + 1.0) * (nf + ab)).sqrt() / (m * (m + 2.0))
        }
        (2, 0) => {
            2.0 / (ab + 2.0) * (2.0 * (a + 1.0) * (b + 1.0) / ((ab + 1.0) * (ab + 3.0))).sqrt()
        }
        (2, _) => {
            let m = 2.0 * nf + ab;
            2.0 / (m + 2.0)
                * ((nf + 1.0) * (nf + 2.0) * (nf + a + 1.0) * (nf + b + 1.0)
                    / ((m + 1.0) * (m + 3.0)))
                    .sqrt()
        }
        _ => unreachable!("ε has three families"),
    }
}

/// Closed-form coefficient of family `kind` at index `n`.
///
/// Demotion families (μ, ε) need the lowered class to exist, so they require
/// α > 0 (μ) or α, β > 0 (ε). Within that range every printed formula is
/// real, including the n = 0 special cases.
pub fn transfer_coeff(p: JacobiParams, kind: TransferKind, n: usize) -> Result<f64> {
    use TransferKind::*;
    let (a, b) = (p.alpha, p.beta);
    let nf = n as f64;
    let m = 2.0 * nf + a + b;
    match kind {
        Mu0 | Mu1 if a <= 0.0 => contract("mu coefficients need alpha > 0"),
        Eps0 | Eps1 | Eps2 if a <= 0.0 || b <= 0.0 => {
            contract("epsilon coefficients need alpha > 0 and beta > 0")
        }
        EtaM1 if n < 1 => contract("eta_{n,-1} needs n >= 1"),
        EtaM2 if n < 2 => contract("eta_{n,-2} needs n >= 2"),
        Mu0 if n == 0 => Ok((2.0 * a / (a + b + 1.0)).sqrt()),
        Mu0 => Ok((2.0 * (nf + a) * (nf + a + b) / (m * (m + 1.0))).sqrt()),
        Mu1 => Ok((2.0 * (nf + 1.0) * (nf + b + 1.0) / ((m + 1.0) * (m + 2.0))).sqrt()),
        Nu0 if n == 0 => Ok((2.0 * (a + 1.0) / (a + b + 2.0)).sqrt()),
        Nu0 => Ok((2.0 * (nf + a + 1.0) * (nf + a + b + 1.0) / ((m + 1.0) * (m + 2.0))).sqrt()),
        NuM1 if n == 0 => Ok(0.0),
        NuM1 => Ok((2.0 * nf * (nf + b) / (m * (m + 1.0))).sqrt()),
        GammaDiff => Ok(gamma_diff(p, n)),
        Eps0 => Ok(eps(p, n, 0)),
        Eps1 => Ok(eps(p, n, 1)),
        Eps2 => Ok(eps(p, n, 2)),
        Eta0 => Ok(eps(p.up(), n, 0)),
        EtaM1 => Ok(eps(p.up(), n - 1, 1)),
        EtaM2 => Ok(-eps(p.up(), n - 2, 2)),
        A3term => Ok(recurrence_a(p, n)),
        B3term => Ok(recurrence_b(p, n)),
    }
}

/// Jacobi function (1 − r²)^{1/2} P̃_n^(α,β)(r).
pub fn eval_jacobi_function(p: JacobiParams, n: usize, r: f64) -> f64 {
    (1.0 - r * r).max(0.0).sqrt() * eval(p, n as i64, r)
}

/// Eigenvalue λ_n = n(n + α + β + 1) − 2ab + a(β + 1) + b(α + 1) of the
/// Sturm-Liouville problem solved by (1 − r)^a (1 + r)^b P̃_n^(α,β).
pub fn sl_eigenvalue(p: JacobiParams, a: f64, b: f64, n: usize) -> f64 {
    let nf = n as f64;
    nf * (nf + p.alpha + p.beta + 1.0) - 2.0 * a * b + a * (p.beta + 1.0) + b * (p.alpha + 1.0)
}

/// −(p ρ′)′ + q ρ − λ_n w ρ for ρ = (1 − r)^a (1 + r)^b P̃_n^(α,β), with
/// p = (1 − r)^{α+1−2a}(1 + r)^{β+1−2b}, q = [a(α − a)/(1 − r)² + b(β − b)/(1 + r)²] p
/// and w = (1 − r)^{α−2a}(1 + r)^{β−2b}. All derivatives are analytic.
pub fn sl_residual(params: JacobiParams, a: f64, b: f64, n: usize, r: f64) -> Result<f64> {
    if !(r > -1.0 && r < 1.0) {
        return contract("the Sturm-Liouville residual needs r in (-1, 1)");
    }
    let (al, be) = (params.alpha, params.beta);
    let (u, v) = (1.0 - r, 1.0 + r);
    let ni = n as i64;

    let poly = eval(params, ni, r);
    let d1 = eval_derivative(params, ni, r);
    let d2 = if n >= 2 {
        gamma_diff(params, n) * gamma_diff(params.up(), n - 1) * eval(params.up().up(), ni - 2, r)
    } else {
        0.0
    };

    let f = u.powf(a) * v.powf(b);
    let g = -a / u + b / v;
    let f1 = f * g;
    let f2 = f * (g * g - a / (u * u) - b / (v * v));

    let rho = f * poly;
    let rho1 = f1 * poly + f * d1;
    let rho2 = f2 * poly + 2.0 * f1 * d1 + f * d2;

    let pa = al + 1.0 - 2.0 * a;
    let pb = be + 1.0 - 2.0 * b;
    let pp = u.powf(pa) * v.powf(pb);
    let pp1 = pp * (-pa / u + pb / v);
    let q = (a * (al - a) / (u * u) + b * (be - b) / (v * v)) * pp;
    let w = u.powf(al - 2.0 * a) * v.powf(be - 2.0 * b);
    let lam = sl_eigenvalue(params, a, b, n);

    Ok(-(pp1 * rho1 + pp * rho2) + q * rho - lam * w * rho)
}
