//! Sparse connection algorithms between parameter values.
//!
//! Every connection is a product of exact two-term steps. Raising α or β of
//! a Jacobi class by one turns coefficients c into d_n = a_n c_n + b_n c_{n+1}
//! (an upper bidiagonal map), so forward connections cost O(N) per step and
//! backward connections are O(N) back-substitutions from the top stored
//! index. Coefficients beyond the stored range are taken to be zero.
//!
//! Fourier coefficients split into the even ladder ê_n (class (−1/2, γ−1/2))
//! and the odd ladder ô_n (class (1/2, γ+1/2)); a shift γ → γ + G raises β
//! of both ladders by G. Passing between Ψ^(G) and ψ^(G) uses
//! √*w_θ^(1,0) = (i/√2)(1 + e^{−iθ}), whose action on γ = 0 coefficients is
//! the two-term stage v̂_k = (i/√2)(û_k + û_{k+1}).

use crate::error::{contract, Error, Result};
use crate::jacobi::{transfer_coeff, JacobiParams, TransferKind};
use crate::modal::{canonical_position, BasisKind, ModalCoefficients};
use num_complex::Complex64;
use std::f64::consts::SQRT_2;

/// Forward raises parameters, Backward lowers them (or, for the weighting
/// connections, Forward goes from the unweighted to the weighted family).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// One promotion step: output_n = diag[n] input_n + sup[n] input_{n+1}.
struct Step {
    diag: Vec<f64>,
    sup: Vec<f64>,
}

impl Step {
    fn alpha(p: JacobiParams, len: usize) -> Result<Self> {
        let mut diag = Vec::with_capacity(len);
        let mut sup = Vec::with_capacity(len);
        for n in 0..len {
            diag.push(transfer_coeff(p, TransferKind::Nu0, n)?);
            sup.push(-transfer_coeff(p, TransferKind::NuM1, n + 1)?);
        }
        Ok(Self { diag, sup })
    }

    fn beta(p: JacobiParams, len: usize) -> Result<Self> {
        let s = p.swapped();
        let mut diag = Vec::with_capacity(len);
        let mut sup = Vec::with_capacity(len);
        for n in 0..len {
            diag.push(transfer_coeff(s, TransferKind::Nu0, n)?);
            sup.push(transfer_coeff(s, TransferKind::NuM1, n + 1)?);
        }
        Ok(Self { diag, sup })
    }

    fn apply(&self, c: &mut [Complex64]) {
        let len = c.len();
        for n in 0..len {
            let next = if n + 1 < len {
                c[n + 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            c[n] = self.diag[n] * c[n] + self.sup[n] * next;
        }
    }

    fn solve(&self, d: &mut [Complex64]) {
        let len = d.len();
        for n in (0..len).rev() {
            let next = if n + 1 < len {
                d[n + 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            d[n] = (d[n] - self.sup[n] * next) / self.diag[n];
        }
    }
}

/// The single steps taking class p to (α + A, β + B), α first.
fn ladder(p: JacobiParams, a: u32, b: u32, len: usize) -> Result<Vec<Step>> {
    let mut steps = Vec::with_capacity((a + b) as usize);
    let mut cur = p;
    for _ in 0..a {
        steps.push(Step::alpha(cur, len)?);
        cur = cur.shifted(1.0, 0.0)?;
    }
    for _ in 0..b {
        steps.push(Step::beta(cur, len)?);
        cur = cur.shifted(0.0, 1.0)?;
    }
    Ok(steps)
}

fn run(steps: &[Step], c: &mut [Complex64], direction: Direction) {
    match direction {
        Direction::Forward => steps.iter().for_each(|s| s.apply(c)),
        Direction::Backward => steps.iter().rev().for_each(|s| s.solve(c)),
    }
}

/// Dense (size × size) matrix of λ^P for the promotion (α, β) → (α + A, β + B):
/// f̂_n^(α+A,β+B) = Σ_m λ_{n,m} f̂_m^(α,β). Row-major; upper triangular with
/// A + B superdiagonals.
pub fn lambda_p_matrix(p: JacobiParams, a: u32, b: u32, size: usize) -> Result<Vec<f64>> {
    let steps = ladder(p, a, b, size)?;
    let mut out = vec![0.0; size * size];
    for m in 0..size {
        let mut col = vec![Complex64::new(0.0, 0.0); size];
        col[m] = Complex64::new(1.0, 0.0);
        run(&steps, &mut col, Direction::Forward);
        for n in 0..size {
            out[n * size + m] = col[n].re;
        }
    }
    Ok(out)
}

/// λ^P_{n,m}; zero unless n ≤ m ≤ n + A + B.
pub fn lambda_p(p: JacobiParams, a: u32, b: u32, n: usize, m: usize) -> Result<f64> {
    if m < n || m > n + (a + b) as usize {
        return Ok(0.0);
    }
    let size = m + 1;
    Ok(lambda_p_matrix(p, a, b, size)?[n * size + m])
}

fn jacobi_params_of(coeffs: &ModalCoefficients) -> Result<JacobiParams> {
    if coeffs.kind != BasisKind::JacobiP || coeffs.params.len() != 2 {
        return contract("expected JacobiP coefficients with parameters [alpha, beta]");
    }
    JacobiParams::new(coeffs.params[0], coeffs.params[1])
}

/// Forward re-expands P̃^(α,β) coefficients in P̃^(α+A,β+B). Backward takes
/// coefficients of class (α, β) to class (α − A, β − B), assuming the lower
/// expansion is supported on the stored range.
pub fn jacobi_connect(
    coeffs: &ModalCoefficients,
    a: i64,
    b: i64,
    direction: Direction,
) -> Result<ModalCoefficients> {
    if a < 0 || b < 0 {
        return contract(format!(
            "connection shifts must be nonnegative, got ({a}, {b})"
        ));
    }
    let p = jacobi_params_of(coeffs)?;
    let (da, db) = (a as f64, b as f64);
    let (low, target) = match direction {
        Direction::Forward => (p, p.shifted(da, db)?),
        Direction::Backward => {
            let low = p.shifted(-da, -db)?;
            (low, low)
        }
    };
    let mut c = coeffs.entries.clone();
    let steps = ladder(low, a as u32, b as u32, c.len())?;
    run(&steps, &mut c, direction);
    ModalCoefficients::new(BasisKind::JacobiP, vec![target.alpha, target.beta], c)
}

/// Validates an integer shift; non-integers get [`Error::NonIntegerShift`].
pub fn integer_shift(g: f64) -> Result<u32> {
    if g.fract() != 0.0 || !g.is_finite() {
        return Err(Error::NonIntegerShift(g));
    }
    if g < 0.0 {
        return contract(format!("shift must be nonnegative, got {g}"));
    }
    Ok(g as u32)
}

fn ladder_classes(gamma: f64) -> Result<(JacobiParams, JacobiParams)> {
    crate::fourier_basis::szego_classes(gamma)
}

/// λ^Ψ_{k,l} of f̂_k^(γ+G) = Σ_l λ^Ψ_{k,l} f̂_l^(γ):
/// ½[λE_{|k|,|l|} + sgn(k) sgn(l) λO_{|k|−1,|l|−1}] for k, l ≠ 0,
/// λE_{0,0} at (0, 0) and λE_{0,|l|}/√2 at (0, l ≠ 0), where λE and λO are
/// the λ^P of the even and odd ladders. Zero outside |k| ≤ |l| ≤ |k| + G.
pub fn lambda_psi(gamma: f64, g: u32, k: i64, l: i64) -> Result<f64> {
    let (even, odd) = ladder_classes(gamma)?;
    let (n, m) = (k.unsigned_abs() as usize, l.unsigned_abs() as usize);
    if m < n || m > n + g as usize {
        return Ok(0.0);
    }
    let le = lambda_p(even, 0, g, n, m)?;
    Ok(match (k == 0, l == 0) {
        (true, true) => le,
        (true, false) => le / SQRT_2,
        (false, true) => 0.0,
        (false, false) => {
            let lo = lambda_p(odd, 0, g, n - 1, m - 1)?;
            0.5 * (le + (k.signum() * l.signum()) as f64 * lo)
        }
    })
}

/// Fourier kind parameter → γ.
fn gamma_of(coeffs: &ModalCoefficients) -> Result<(f64, bool)> {
    let p = match coeffs.params.as_slice() {
        [p] => *p,
        _ => return contract("Fourier coefficients carry one parameter"),
    };
    match coeffs.kind {
        BasisKind::Psi | BasisKind::PsiWeighted => Ok((p, false)),
        BasisKind::Phi | BasisKind::PhiWeighted => Ok((p - 1.0, true)),
        k => contract(format!("{k} is not a Fourier kind")),
    }
}

fn with_gamma(kind: BasisKind, gamma: f64, entries: Vec<Complex64>) -> Result<ModalCoefficients> {
    let param = match kind {
        BasisKind::Phi | BasisKind::PhiWeighted => gamma + 1.0,
        _ => gamma,
    };
    ModalCoefficients::new(kind, vec![param], entries)
}

/// Σ f̂_k Ψ_k^(γ) re-expanded in Ψ^(γ±G), on the stored range.
fn szego_shift(
    entries: &[Complex64],
    gamma: f64,
    g: u32,
    direction: Direction,
) -> Result<Vec<Complex64>> {
    let k_max = entries.len() / 2;
    let low = match direction {
        Direction::Forward => gamma,
        Direction::Backward => gamma - g as f64,
    };
    let (even, odd) = ladder_classes(low)?;
    let f = |k: i64| entries[canonical_position(k)];
    let mut e: Vec<Complex64> = (0..=k_max as i64)
        .map(|n| if n == 0 { SQRT_2 * f(0) } else { f(n) + f(-n) })
        .collect();
    let mut o: Vec<Complex64> = (0..k_max as i64).map(|n| f(n + 1) - f(-n - 1)).collect();
    run(&ladder(even, 0, g, e.len())?, &mut e, direction);
    run(&ladder(odd, 0, g, o.len())?, &mut o, direction);
    let mut out = vec![Complex64::new(0.0, 0.0); entries.len()];
    out[0] = e[0] / SQRT_2;
    for n in 1..=k_max {
        out[canonical_position(n as i64)] = 0.5 * (e[n] + o[n - 1]);
        out[canonical_position(-(n as i64))] = 0.5 * (e[n] - o[n - 1]);
    }
    Ok(out)
}

/// Ψ^(γ) coefficients to Ψ^(γ+G) (Forward) or Ψ^(γ−G) (Backward). Φ
/// coefficients are accepted and handled with γ = s − 1.
pub fn psi_psi_connect(
    coeffs: &ModalCoefficients,
    shift: f64,
    direction: Direction,
) -> Result<ModalCoefficients> {
    let g = integer_shift(shift)?;
    let (gamma, _) = gamma_of(coeffs)?;
    if !matches!(coeffs.kind, BasisKind::Psi | BasisKind::Phi) {
        return contract("Psi-Psi connections act on unweighted Szego-Fourier coefficients");
    }
    let target = match direction {
        Direction::Forward => gamma + g as f64,
        Direction::Backward => gamma - g as f64,
    };
    if !(target > -0.5) {
        return contract(format!("target gamma {target} is not above -1/2"));
    }
    let out = szego_shift(&coeffs.entries, gamma, g, direction)?;
    with_gamma(coeffs.kind, target, out)
}

fn ascending(entries: &[Complex64]) -> Vec<Complex64> {
    let k_max = (entries.len() / 2) as i64;
    (-k_max..=k_max)
        .map(|k| entries[canonical_position(k)])
        .collect()
}

fn canonical(asc: &[Complex64]) -> Vec<Complex64> {
    let k_max = (asc.len() / 2) as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); asc.len()];
    for (i, v) in asc.iter().enumerate() {
        out[canonical_position(i as i64 - k_max)] = *v;
    }
    out
}

/// γ = 0 coefficients of (i/√2)(1 + e^{−iθ}) u, truncated to the stored range.
fn multiply_stage(u: &mut [Complex64]) {
    let c = Complex64::new(0.0, 1.0 / SQRT_2);
    let len = u.len();
    for i in 0..len {
        let next = if i + 1 < len {
            u[i + 1]
        } else {
            Complex64::new(0.0, 0.0)
        };
        u[i] = c * (u[i] + next);
    }
}

/// Inverse of [`multiply_stage`], solved from the top index down.
fn divide_stage(v: &mut [Complex64]) {
    let c = Complex64::new(0.0, -SQRT_2);
    let len = v.len();
    for i in (0..len).rev() {
        let next = if i + 1 < len {
            v[i + 1]
        } else {
            Complex64::new(0.0, 0.0)
        };
        v[i] = c * v[i] - next;
    }
}

/// Applies √*w_θ^(1,0) (positive `power`) or its inverse (negative) |power|
/// times to γ = 0 coefficients. For power −G this solves
/// Σ_m C(G,m) ĝ_{k+m} = (√2/i)^G f̂_k by G two-term back-substitutions.
fn reweight(entries: &[Complex64], power: i64) -> Vec<Complex64> {
    let mut asc = ascending(entries);
    for _ in 0..power.unsigned_abs() {
        if power > 0 {
            multiply_stage(&mut asc);
        } else {
            divide_stage(&mut asc);
        }
    }
    canonical(&asc)
}

fn integer_gamma(gamma: f64) -> Result<u32> {
    if gamma.fract() != 0.0 || gamma < 0.0 {
        return Err(Error::NonIntegerShift(gamma));
    }
    Ok(gamma as u32)
}

/// Ψ^(G) coefficients of f to ψ^(G) coefficients of the same f (Forward), or
/// back (Backward). G must be a nonnegative integer.
pub fn szego_to_weighted(
    coeffs: &ModalCoefficients,
    direction: Direction,
) -> Result<ModalCoefficients> {
    let (gamma, mapped) = gamma_of(coeffs)?;
    let g = integer_gamma(gamma)?;
    let (from, to) = match (direction, mapped) {
        (Direction::Forward, false) => (BasisKind::Psi, BasisKind::PsiWeighted),
        (Direction::Backward, false) => (BasisKind::PsiWeighted, BasisKind::Psi),
        (Direction::Forward, true) => (BasisKind::Phi, BasisKind::PhiWeighted),
        (Direction::Backward, true) => (BasisKind::PhiWeighted, BasisKind::Phi),
    };
    if coeffs.kind != from {
        return contract(format!("expected {from} coefficients, got {}", coeffs.kind));
    }
    let power = match direction {
        Direction::Forward => -(g as i64),
        Direction::Backward => g as i64,
    };
    let at_zero = szego_shift(&coeffs.entries, gamma, g, Direction::Backward)?;
    let reweighted = reweight(&at_zero, power);
    let out = szego_shift(&reweighted, 0.0, g, Direction::Forward)?;
    with_gamma(to, gamma, out)
}

/// ψ^(F) coefficients of f to ψ^(G) coefficients of the same f, for
/// nonnegative integers F and G (φ^(s) coefficients take `target` as s).
pub fn modify_s(coeffs: &ModalCoefficients, target: f64) -> Result<ModalCoefficients> {
    let (gamma, mapped) = gamma_of(coeffs)?;
    let expected = if mapped {
        BasisKind::PhiWeighted
    } else {
        BasisKind::PsiWeighted
    };
    if coeffs.kind != expected {
        return contract("modify_s acts on weighted coefficients");
    }
    let f = integer_gamma(gamma)?;
    let g = integer_gamma(if mapped { target - 1.0 } else { target })?;
    let at_zero = szego_shift(&coeffs.entries, gamma, f, Direction::Backward)?;
    let reweighted = reweight(&at_zero, f as i64 - g as i64);
    let out = szego_shift(&reweighted, 0.0, g, Direction::Forward)?;
    with_gamma(coeffs.kind, g as f64, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier_quad::Basis;
    use crate::jacobi::eval_batch;
    use crate::jacobi_quad::gauss_rule;
    use crate::par::Strategy;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn random_entries(seed: u64, len: usize) -> Vec<Complex64> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    }

    fn jp(a: f64, b: f64) -> JacobiParams {
        JacobiParams::new(a, b).unwrap()
    }

    fn gram_projection(p: JacobiParams, a: u32, b: u32, n: usize, m: usize) -> f64 {
        let q = p.shifted(a as f64, b as f64).unwrap();
        let rule = gauss_rule(q, n.max(m) + 2).unwrap();
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&r, &w)| w * eval_batch(p, m, r)[m] * eval_batch(q, n, r)[n])
            .sum()
    }

    /// Coefficients of f against `basis` by quadrature with a generous rule.
    fn project<F: Fn(f64) -> Complex64>(basis: Basis, k_max: usize, f: F) -> ModalCoefficients {
        let rule = basis.rule(k_max + 40).unwrap();
        let samples: Vec<_> = rule.nodes.iter().map(|&t| f(t)).collect();
        crate::fourier_quad::analyze_with_rule(&basis, k_max, &rule, &samples, Strategy::Sequential)
            .unwrap()
    }

    fn smooth(c1: Complex64, c2: Complex64) -> impl Fn(f64) -> Complex64 {
        move |t: f64| {
            (c1 * Complex64::from_polar(1.0, t) + c2 * Complex64::from_polar(1.0, -t)).exp()
        }
    }

    #[test]
    fn identity_shifts() {
        let c = ModalCoefficients::new(BasisKind::JacobiP, vec![0.3, -0.2], random_entries(1, 9))
            .unwrap();
        assert_eq!(jacobi_connect(&c, 0, 0, Direction::Forward).unwrap(), c);
        let c = ModalCoefficients::new(BasisKind::Psi, vec![1.5], random_entries(2, 11)).unwrap();
        assert_eq!(psi_psi_connect(&c, 0.0, Direction::Forward).unwrap(), c);
        let c = ModalCoefficients::new(BasisKind::Psi, vec![0.0], random_entries(3, 11)).unwrap();
        let w = szego_to_weighted(&c, Direction::Forward).unwrap();
        assert_eq!(w.kind, BasisKind::PsiWeighted);
        assert!(w
            .entries
            .iter()
            .zip(&c.entries)
            .all(|(a, b)| (a - b).norm() <= 1e-15));
        let c = ModalCoefficients::new(BasisKind::PsiWeighted, vec![2.0], random_entries(4, 11))
            .unwrap();
        assert!(modify_s(&c, 2.0).unwrap().max_abs_diff(&c) <= 1e-12);
    }

    #[test]
    fn single_beta_step_of_chebyshev_constant() {
        let mut e = vec![Complex64::new(0.0, 0.0); 6];
        e[0] = Complex64::new(1.0, 0.0);
        let c = ModalCoefficients::new(BasisKind::JacobiP, vec![-0.5, -0.5], e).unwrap();
        let d = jacobi_connect(&c, 0, 1, Direction::Forward).unwrap();
        let p = jp(-0.5, -0.5);
        let nu = transfer_coeff(p.swapped(), TransferKind::Nu0, 0).unwrap();
        assert_abs_diff_eq!(d.entries[0].re, nu, epsilon = 1e-15);
        assert_abs_diff_eq!(
            d.entries[0].re,
            gram_projection(p, 0, 1, 0, 0),
            epsilon = 1e-14
        );
        assert!(d.entries[1..].iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn banded_lambda_matches_gram_projection() {
        for (a, b) in [(1u32, 0u32), (0, 1), (1, 1), (0, 3)] {
            for p in [jp(-0.5, -0.5), jp(0.3, 1.7), jp(-0.5, 2.5)] {
                let size = 16;
                let lam = lambda_p_matrix(p, a, b, size).unwrap();
                for n in 0..size {
                    for m in 0..size {
                        let oracle = gram_projection(p, a, b, n, m);
                        assert_abs_diff_eq!(lam[n * size + m], oracle, epsilon = 1e-11);
                    }
                }
                assert_abs_diff_eq!(
                    lambda_p(p, a, b, 3, 3 + (a + b) as usize).unwrap(),
                    lam[3 * size + 3 + (a + b) as usize],
                    epsilon = 1e-15
                );
            }
        }
    }

    #[test]
    fn jacobi_round_trip() {
        let c = ModalCoefficients::new(BasisKind::JacobiP, vec![0.2, 0.4], random_entries(5, 12))
            .unwrap();
        let up = jacobi_connect(&c, 1, 2, Direction::Forward).unwrap();
        assert_eq!(up.params, vec![1.2, 2.4]);
        let back = jacobi_connect(&up, 1, 2, Direction::Backward).unwrap();
        assert!(back.max_abs_diff(&c) <= 1e-12);
        assert!(jacobi_connect(&c, -1, 0, Direction::Forward).is_err());
        assert!(jacobi_connect(&c, 0, 2, Direction::Backward).is_err());
    }

    #[test]
    fn shift_validation() {
        assert!(matches!(integer_shift(1.5), Err(Error::NonIntegerShift(_))));
        assert!(matches!(integer_shift(-1.0), Err(Error::Contract(_))));
        let c = ModalCoefficients::new(BasisKind::Psi, vec![0.5], random_entries(6, 7)).unwrap();
        assert!(matches!(
            psi_psi_connect(&c, 0.5, Direction::Forward),
            Err(Error::NonIntegerShift(_))
        ));
        assert!(psi_psi_connect(&c, 1.0, Direction::Backward).is_err());
        assert!(matches!(
            szego_to_weighted(&c, Direction::Forward),
            Err(Error::NonIntegerShift(_))
        ));
        let w = ModalCoefficients::new(BasisKind::PsiWeighted, vec![1.0], random_entries(7, 7))
            .unwrap();
        assert!(matches!(modify_s(&w, 2.5), Err(Error::NonIntegerShift(_))));
    }

    #[test]
    fn lambda_psi_band_and_oracle() {
        for g in 0..=4u32 {
            for k in -10i64..=10 {
                for l in -16i64..=16 {
                    let v = lambda_psi(0.7, g, k, l).unwrap();
                    let inside = k.abs() <= l.abs() && l.abs() <= k.abs() + g as i64;
                    if !inside {
                        assert_eq!(v, 0.0);
                    }
                }
            }
        }
        // ⟨Ψ_1^(0), Ψ_0^(1)⟩ under w^(1,0).
        let basis = Basis::Szego {
            gamma: 1.0,
            weighted: false,
        };
        let oracle = project(basis, 2, |t| {
            crate::fourier_basis::eval_szego(0.0, 1, t).unwrap()
        });
        assert_abs_diff_eq!(
            lambda_psi(0.0, 1, 0, 1).unwrap(),
            oracle.get(0).re,
            epsilon = 1e-13
        );
        for k in -2i64..=2 {
            let e = if k.abs() <= 1 {
                lambda_psi(0.0, 1, k, 1).unwrap()
            } else {
                0.0
            };
            assert_abs_diff_eq!((oracle.get(k) - e).norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn ladder_path_equals_dense_lambda_psi() {
        let (gamma, g, k_max) = (0.4, 3u32, 7usize);
        let c = ModalCoefficients::new(
            BasisKind::Psi,
            vec![gamma],
            random_entries(8, 2 * k_max + 1),
        )
        .unwrap();
        let up = psi_psi_connect(&c, g as f64, Direction::Forward).unwrap();
        for k in -(k_max as i64)..=k_max as i64 {
            let mut dense = Complex64::new(0.0, 0.0);
            for l in -(k_max as i64)..=k_max as i64 {
                dense += lambda_psi(gamma, g, k, l).unwrap() * c.get(l);
            }
            assert_abs_diff_eq!((dense - up.get(k)).norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn unit_mode_has_narrow_band() {
        for (gamma, g, m) in [(1.0, 2u32, 5i64), (0.3, 1, 5), (2.5, 3, -7), (0.0, 3, 0)] {
            let mut c = ModalCoefficients::zeros(BasisKind::Psi, vec![gamma], 12);
            c.set(m, Complex64::new(1.0, 0.0));
            let up = psi_psi_connect(&c, g as f64, Direction::Forward).unwrap();
            let support: Vec<i64> = (-12..=12).filter(|&k| up.get(k).norm() > 1e-15).collect();
            assert!(support
                .iter()
                .all(|k| k.abs() <= m.abs() && m.abs() <= k.abs() + g as i64));
            let bound = if m == 0 { 2 * g + 1 } else { 2 * g + 2 };
            assert!(support.len() <= bound as usize, "{support:?}");
        }
    }

    #[test]
    fn psi_psi_matches_quadrature() {
        let f = smooth(Complex64::new(0.4, 0.1), Complex64::new(-0.3, 0.2));
        for (gamma, g) in [(0.0, 1u32), (0.5, 2), (1.0, 3)] {
            let lo = project(
                Basis::Szego {
                    gamma,
                    weighted: false,
                },
                24,
                &f,
            );
            let hi = project(
                Basis::Szego {
                    gamma: gamma + g as f64,
                    weighted: false,
                },
                24,
                &f,
            );
            let up = psi_psi_connect(&lo, g as f64, Direction::Forward).unwrap();
            assert!(up.max_abs_diff(&hi) <= 1e-9, "forward gamma={gamma} G={g}");
            let down = psi_psi_connect(&hi, g as f64, Direction::Backward).unwrap();
            assert!(
                down.max_abs_diff(&lo) <= 1e-9,
                "backward gamma={gamma} G={g}"
            );
        }
    }

    #[test]
    fn weighting_matches_quadrature() {
        for g in 1..=3u32 {
            let gf = g as f64;
            let h = smooth(Complex64::new(0.3, -0.2), Complex64::new(0.2, 0.1));
            let f = move |t: f64| crate::domain_maps::sqrt_star_theta(gf, 0.0, t) * h(t);
            let big = project(
                Basis::Szego {
                    gamma: gf,
                    weighted: false,
                },
                24,
                &f,
            );
            let small = project(
                Basis::Szego {
                    gamma: gf,
                    weighted: true,
                },
                24,
                &f,
            );
            let fwd = szego_to_weighted(&big, Direction::Forward).unwrap();
            let edge = if g < 3 { 0 } else { g as i64 };
            for k in -(24 - edge)..=24 - edge {
                assert!(
                    (fwd.get(k) - small.get(k)).norm() <= 1e-9,
                    "forward G={g} k={k}"
                );
            }
            let back = szego_to_weighted(&small, Direction::Backward).unwrap();
            assert!(back.max_abs_diff(&big) <= 1e-9, "backward G={g}");
        }
    }

    #[test]
    fn modify_s_matches_quadrature() {
        for (from, to) in [(1u32, 2u32), (2, 0), (0, 2), (4, 1)] {
            let top = from.max(to) as f64;
            let h = smooth(Complex64::new(-0.25, 0.15), Complex64::new(0.35, 0.0));
            let f = move |t: f64| crate::domain_maps::sqrt_star_theta(top, 0.0, t) * h(t);
            let a = project(
                Basis::Szego {
                    gamma: from as f64,
                    weighted: true,
                },
                24,
                &f,
            );
            let b = project(
                Basis::Szego {
                    gamma: to as f64,
                    weighted: true,
                },
                24,
                &f,
            );
            let m = modify_s(&a, to as f64).unwrap();
            assert!(
                m.max_abs_diff(&b) <= 1e-9,
                "F={from} G={to}: {}",
                m.max_abs_diff(&b)
            );
        }
    }

    #[test]
    fn x_space_delegates_to_theta_space() {
        let e = random_entries(9, 17);
        let psi = ModalCoefficients::new(BasisKind::Psi, vec![1.0], e.clone()).unwrap();
        let phi = ModalCoefficients::new(BasisKind::Phi, vec![2.0], e).unwrap();
        let a = psi_psi_connect(&psi, 2.0, Direction::Forward).unwrap();
        let b = psi_psi_connect(&phi, 2.0, Direction::Forward).unwrap();
        assert_eq!(a.entries, b.entries);
        assert_eq!(b.params, vec![4.0]);
        let a = szego_to_weighted(&psi, Direction::Forward).unwrap();
        let b = szego_to_weighted(&phi, Direction::Forward).unwrap();
        assert_eq!(a.entries, b.entries);
        assert_eq!(b.kind, BasisKind::PhiWeighted);
    }

    #[test]
    fn parseval_after_connection() {
        let f = smooth(Complex64::new(0.2, 0.0), Complex64::new(0.2, 0.0));
        let lo = project(
            Basis::Szego {
                gamma: 0.5,
                weighted: false,
            },
            24,
            &f,
        );
        let up = psi_psi_connect(&lo, 2.0, Direction::Forward).unwrap();
        let rule = crate::fourier_quad::fourier_theta_rule(2.5, 80).unwrap();
        let norm: f64 = rule
            .nodes
            .iter()
            .zip(&rule.big_weights)
            .map(|(&t, &w)| w * f(t).norm_sqr())
            .sum();
        let coef: f64 = up.entries.iter().map(|v| v.norm_sqr()).sum();
        assert_abs_diff_eq!(norm, coef, epsilon = 1e-9 * norm);
        for k in 1..=24i64 {
            assert!((lo.get(-k) - lo.get(k).conj()).norm() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn round_trips(seed in 0u64..10_000, gamma in -0.4f64..3.0, g in 0u32..3, k_max in 1usize..=16) {
            let e = random_entries(seed, 2 * k_max + 1);
            let c = ModalCoefficients::new(BasisKind::Psi, vec![gamma], e.clone()).unwrap();
            let there = psi_psi_connect(&c, g as f64, Direction::Forward).unwrap();
            let back = psi_psi_connect(&there, g as f64, Direction::Backward).unwrap();
            prop_assert!(back.max_abs_diff(&c) <= 1e-11);

            let c = ModalCoefficients::new(BasisKind::Psi, vec![g as f64], e.clone()).unwrap();
            let w = szego_to_weighted(&c, Direction::Forward).unwrap();
            let back = szego_to_weighted(&w, Direction::Backward).unwrap();
            prop_assert!(back.max_abs_diff(&c) <= 1e-11);

            let w = ModalCoefficients::new(BasisKind::PsiWeighted, vec![g as f64], e).unwrap();
            let there = modify_s(&w, (g + 1) as f64).unwrap();
            let back = modify_s(&there, g as f64).unwrap();
            prop_assert!(back.max_abs_diff(&w) <= 1e-11);
        }

        #[test]
        fn jacobi_round_trip_random(seed in 0u64..10_000, a in 0i64..3, b in 0i64..3, al in -0.9f64..2.0, be in -0.9f64..2.0) {
            let c = ModalCoefficients::new(BasisKind::JacobiP, vec![al, be], random_entries(seed, 12)).unwrap();
            let up = jacobi_connect(&c, a, b, Direction::Forward).unwrap();
            let back = jacobi_connect(&up, a, b, Direction::Backward).unwrap();
            prop_assert!(back.max_abs_diff(&c) <= 1e-12);
        }
    }
}
