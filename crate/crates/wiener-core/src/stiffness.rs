//! The Galerkin stiffness matrix of the weighted Wiener functions φ^(s).
//!
//! dφ_k/dx = Σ_l τ_{k,l} φ_l with l restricted to {±k^∨, ±k, ±k^∧}, where
//! k^∨ = k − sgn k and k^∧ = k + sgn k. The same band carries the derivative
//! coefficients σ of the unweighted Φ^(s) and the coefficients χ of
//! multiplication by −s/(x − i), with τ = σ + χ.
//!
//! The matrix is stored as S_{l,k} = ⟨φ_l, dφ_k/dx⟩ = τ_{k,l}. It is
//! skew-Hermitian with purely imaginary entries, so S = iM for a real
//! symmetric M and ρ(S) is the largest |eigenvalue| of M.

use crate::error::{contract, Result};
use crate::linalg::{power_max_abs, symmetric_eigenvalues};
use crate::modal::{canonical_index, canonical_position, BasisKind, ModalCoefficients};
use crate::par::{self, Strategy};
use crate::Complex64;
use std::collections::HashMap;

/// Dense eigen-solves are used up to this size, power iteration beyond.
pub const DENSE_LIMIT: usize = 600;

/// Decay parameters of the reference ρ(S^φ) table.
pub const TABLE_S: [f64; 5] = [
    0.6,
    1.0,
    6.0,
    std::f64::consts::PI * std::f64::consts::PI,
    15.5,
];

/// Matrix sizes of the reference ρ(S^φ) table.
pub const TABLE_N: [usize; 5] = [11, 50, 101, 250, 501];

/// Published ρ(S^φ) to two decimals; rows follow [`TABLE_S`], columns [`TABLE_N`].
pub const TABLE_REFERENCE: [[f64; 5]; 5] = [
    [7.31, 43.76, 91.50, 237.60, 483.75],
    [7.99, 44.51, 92.28, 238.39, 484.54],
    [15.96, 53.75, 101.81, 248.14, 494.40],
    [21.72, 60.67, 109.05, 255.63, 501.99],
    [29.73, 70.45, 119.40, 266.44, 512.99],
];

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_s(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.5 {
        Ok(())
    } else {
        contract(format!("decay parameter s must exceed 1/2, got {s}"))
    }
}

fn sgn(k: i64) -> f64 {
    k.signum() as f64
}

/// The distinct members of {±k^∨, ±k, ±k^∧}.
pub fn band(k: i64) -> Vec<i64> {
    if k == 0 {
        return vec![-1, 0, 1];
    }
    let (down, up) = (k - k.signum(), k + k.signum());
    let mut out = vec![down, -down, k, -k, up, -up];
    out.sort_unstable();
    out.dedup();
    out
}

/// τ_{k,l}: coefficient of φ_l in dφ_k/dx.
pub fn tau(s: f64, k: i64, l: i64) -> Result<Complex64> {
    check_s(s)?;
    if k == 0 {
        let c = (s - 0.5).sqrt();
        let r = (1.0 + s).sqrt();
        return Ok(match l {
            -1 => -I * 0.5 * c * (1.0 + s.sqrt()) / r,
            0 => -I * (s - 0.5),
            1 => -I * 0.5 * c * (1.0 - s.sqrt()) / r,
            _ => ZERO,
        });
    }
    let n = (k.abs() - 1) as f64;
    let sg = sgn(k);
    let (down, up) = (k - k.signum(), k + k.signum());
    if l == 0 && down == 0 {
        return Ok(I * 0.5 * ((2.0 * s - 1.0) / (2.0 * s + 2.0)).sqrt() * (sg * s.sqrt() - 1.0));
    }
    for pm in [1.0, -1.0] {
        let sign = pm as i64;
        if down != 0 && l == sign * down {
            let pre =
                0.25 * (1.0 - s * (s - 2.0) / ((2.0 * n + s - 1.0) * (2.0 * n + s + 1.0))).sqrt();
            let a = sg * (((n + s - 1.0) * (n + s)).sqrt() + pm * (n * (n + 1.0)).sqrt());
            let b = s / (2.0 * n + s)
                * (((n + 1.0) * (n + s - 1.0)).sqrt() + pm * (n * (n + s)).sqrt());
            return Ok(I * pre * (a - b));
        }
        if l == sign * up {
            let pre =
                0.25 * (1.0 - s * (s - 2.0) / ((2.0 * n + s + 1.0) * (2.0 * n + s + 3.0))).sqrt();
            let a = s / (2.0 * n + s + 2.0)
                * (((n + 2.0) * (n + s)).sqrt() + pm * ((n + 1.0) * (n + s + 1.0)).sqrt());
            let b = sg * (((n + 1.0) * (n + 2.0)).sqrt() + pm * ((n + s) * (n + s + 1.0)).sqrt());
            return Ok(I * pre * (b - a));
        }
    }
    let q = (2.0 * n + s) * (2.0 * n + s + 2.0);
    Ok(if l == k {
        I * (sg * ((n + 1.0) * (n + s)).sqrt() - s * (s - 1.0).powi(2) / (2.0 * q) - 0.5 * s)
    } else if l == -k {
        I * s * (s - 1.0) / (2.0 * q)
    } else {
        ZERO
    })
}

/// σ_{k,l}: coefficient of Φ_l in dΦ_k/dx. Φ_0 is constant, so the k = 0
/// row vanishes.
pub fn sigma(s: f64, k: i64, l: i64) -> Result<Complex64> {
    check_s(s)?;
    if k == 0 {
        return Ok(ZERO);
    }
    let n = (k.abs() - 1) as f64;
    let sg = sgn(k);
    let (down, up) = (k - k.signum(), k + k.signum());
    if l == 0 && down == 0 {
        return Ok(I * sg * (s * (2.0 * s - 1.0) / (2.0 * (s + 1.0))).sqrt());
    }
    for pm in [1.0, -1.0] {
        let sign = pm as i64;
        if down != 0 && l == sign * down {
            let root = ((2.0 * n + 1.0) * (2.0 * n + 2.0 * s - 1.0)
                / ((2.0 * n + s - 1.0) * (2.0 * n + s + 1.0)))
                .sqrt();
            let bracket = ((n + s - 1.0) * (n + s)).sqrt() + pm * (n * (n + 1.0)).sqrt();
            return Ok(I * sg * (n + s) / (2.0 * (2.0 * n + s)) * root * bracket);
        }
        if l == sign * up {
            return Ok(pm * (n + 1.0) / (n + s + 1.0) * sigma(s, up, sign * k)?);
        }
    }
    let diag = I * sg * ((n + 1.0) * (n + s)).sqrt();
    Ok(if l == k {
        diag
    } else if l == -k {
        diag * s * (1.0 - s) / ((2.0 * n + s) * (2.0 * n + s + 2.0))
    } else {
        ZERO
    })
}

/// χ_{k,l}: coefficient of φ_l in −s φ_k/(x − i), as τ − σ.
pub fn chi(s: f64, k: i64, l: i64) -> Result<Complex64> {
    Ok(tau(s, k, l)? - sigma(s, k, l)?)
}

/// Which N Fourier indices span the truncated space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    /// k = 0, 1, −1, 2, −2, ... (even N keeps +N/2).
    Canonical,
    /// k = 0, −1, 1, −2, 2, ... (even N keeps −N/2).
    Mirrored,
}

impl IndexSet {
    pub fn indices(self, n: usize) -> Vec<i64> {
        (0..n)
            .map(|p| match self {
                Self::Canonical => canonical_index(p),
                Self::Mirrored => -canonical_index(p),
            })
            .collect()
    }
}

/// Sparse S^φ in triplet form. `ordering[j]` is the Fourier index of
/// row/column j and triplets hold (row index l, column index k, τ_{k,l}).
#[derive(Debug, Clone, PartialEq)]
pub struct SparseStiffness {
    pub n: usize,
    pub s: f64,
    pub ordering: Vec<i64>,
    pub triplets: Vec<(i64, i64, Complex64)>,
}

impl SparseStiffness {
    fn positions(&self) -> HashMap<i64, usize> {
        self.ordering
            .iter()
            .enumerate()
            .map(|(j, &k)| (k, j))
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.triplets.len()
    }

    /// Number of stored entries in each row, in `ordering` order.
    pub fn row_counts(&self) -> Vec<usize> {
        let pos = self.positions();
        let mut counts = vec![0; self.n];
        for t in &self.triplets {
            counts[pos[&t.0]] += 1;
        }
        counts
    }

    /// Entry at (row l, column k), zero when not stored.
    pub fn get(&self, l: i64, k: i64) -> Complex64 {
        self.triplets
            .iter()
            .find(|t| t.0 == l && t.1 == k)
            .map_or(ZERO, |t| t.2)
    }

    /// Row-major dense copy in `ordering` order.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let pos = self.positions();
        let mut out = vec![ZERO; self.n * self.n];
        for &(r, c, v) in &self.triplets {
            if let (Some(&i), Some(&j)) = (pos.get(&r), pos.get(&c)) {
                out[i * self.n + j] = v;
            }
        }
        out
    }

    /// max |S + S^H| over all entries.
    pub fn skew_hermitian_defect(&self) -> f64 {
        let d = self.to_dense();
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((d[i * n + j] + d[j * n + i].conj()).norm());
            }
        }
        worst
    }

    /// S times a coefficient vector given in `ordering` order.
    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let pos = self.positions();
        let mut y = vec![ZERO; self.n];
        for &(r, c, v) in &self.triplets {
            if let (Some(&i), Some(&j)) = (pos.get(&r), pos.get(&c)) {
                y[i] += v * x[j];
            }
        }
        y
    }

    fn imaginary_csr(&self) -> Vec<Vec<(usize, f64)>> {
        let pos = self.positions();
        let mut rows = vec![Vec::new(); self.n];
        for &(r, c, v) in &self.triplets {
            if let (Some(&i), Some(&j)) = (pos.get(&r), pos.get(&c)) {
                rows[i].push((j, v.im));
            }
        }
        rows
    }
}

/// S^φ on the canonical index set.
pub fn assemble_stiffness(s: f64, n: usize) -> Result<SparseStiffness> {
    assemble_stiffness_on(s, n, IndexSet::Canonical)
}

pub fn assemble_stiffness_on(s: f64, n: usize, set: IndexSet) -> Result<SparseStiffness> {
    assemble_stiffness_ordered(s, set.indices(n))
}

/// S^φ on an arbitrary list of distinct indices, kept in the given order.
pub fn assemble_stiffness_ordered(s: f64, ordering: Vec<i64>) -> Result<SparseStiffness> {
    check_s(s)?;
    if ordering.is_empty() {
        return contract("stiffness matrix needs N >= 1");
    }
    let mut seen = ordering.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != ordering.len() {
        return contract("index ordering repeats an index");
    }
    let mut triplets = Vec::new();
    for &k in &ordering {
        for l in band(k) {
            if seen.binary_search(&l).is_ok() {
                let v = tau(s, k, l)?;
                if v != ZERO {
                    triplets.push((l, k, v));
                }
            }
        }
    }
    Ok(SparseStiffness {
        n: ordering.len(),
        s,
        ordering,
        triplets,
    })
}

/// Coefficients of dƒ/dx for ƒ = Σ f̂_k φ_k. The result has extent K + 1,
/// which holds the derivative exactly.
pub fn apply_derivative(coeffs: &ModalCoefficients) -> Result<ModalCoefficients> {
    if coeffs.kind != BasisKind::PhiWeighted || coeffs.params.len() != 1 {
        return contract("apply_derivative acts on weighted Wiener (phi) coefficients");
    }
    let s = coeffs.params[0];
    check_s(s)?;
    let k_max = coeffs.extent() as i64;
    let mut out = ModalCoefficients::zeros(BasisKind::PhiWeighted, vec![s], (k_max + 1) as usize);
    for (pos, &c) in coeffs.entries.iter().enumerate() {
        if c == ZERO {
            continue;
        }
        let k = canonical_index(pos);
        for l in band(k) {
            out.entries[canonical_position(l)] += tau(s, k, l)? * c;
        }
    }
    Ok(out)
}

/// ρ(S) = max |λ(S)|: dense Householder + QL up to [`DENSE_LIMIT`], power
/// iteration on the sparse matrix beyond, stopping at relative change `tol`.
pub fn spectral_radius(stiffness: &SparseStiffness, tol: f64) -> Result<f64> {
    let n = stiffness.n;
    let rows = stiffness.imaginary_csr();
    if n <= DENSE_LIMIT {
        let mut m = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            for &(j, v) in row {
                m[i * n + j] = v;
            }
        }
        let ev = symmetric_eigenvalues(m, n, f64::EPSILON)?;
        return Ok(ev.iter().fold(0.0f64, |a, v| a.max(v.abs())));
    }
    power_max_abs(
        n,
        |x, y| {
            for (yi, row) in y.iter_mut().zip(&rows) {
                *yi = row.iter().map(|&(j, v)| v * x[j]).sum();
            }
        },
        tol,
        200_000,
    )
}

/// ρ(S^φ) for every (s, N) pair; cells are independent and run through
/// `strategy`. Rows follow `s_values`, columns follow `n_values`. `tol` only
/// matters for sizes above [`DENSE_LIMIT`].
pub fn table_eig(
    s_values: &[f64],
    n_values: &[usize],
    set: IndexSet,
    tol: f64,
    strategy: Strategy,
) -> Result<Vec<Vec<f64>>> {
    let cells: Vec<(f64, usize)> = s_values
        .iter()
        .flat_map(|&s| n_values.iter().map(move |&n| (s, n)))
        .collect();
    let values = par::map(strategy, &cells, |&(s, n)| {
        assemble_stiffness_on(s, n, set).and_then(|m| spectral_radius(&m, tol))
    });
    let values: Vec<f64> = values.into_iter().collect::<Result<_>>()?;
    Ok(values
        .chunks(n_values.len().max(1))
        .map(<[f64]>::to_vec)
        .collect())
}
