//! Coefficient containers and the canonical index order.

use crate::error::{contract, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Basis family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisKind {
    /// Szegő-Fourier functions Ψ_k^(γ) on θ ∈ [−π, π].
    #[serde(rename = "Psi")]
    Psi,
    /// Weighted Szegő-Fourier functions ψ_k^(γ).
    #[serde(rename = "psi")]
    PsiWeighted,
    /// Unweighted Wiener functions Φ_k^(s) on the real line.
    #[serde(rename = "Phi")]
    Phi,
    /// Generalized Wiener rational functions φ_k^(s).
    #[serde(rename = "phi")]
    PhiWeighted,
    /// Half-line functions ρ_n^(s).
    #[serde(rename = "rho")]
    Rho,
    /// Mapped Jacobi polynomials PB_n^(s,t).
    #[serde(rename = "PB")]
    MappedJacobi,
    /// Weighted mapped Jacobi functions pb_n^(s,t).
    #[serde(rename = "pb")]
    MappedJacobiWeighted,
    /// Half-line mapped Jacobi polynomials PL_n^(s).
    #[serde(rename = "PL")]
    HalfLine,
    /// Weighted half-line functions pl_n^(s).
    #[serde(rename = "pl")]
    HalfLineWeighted,
    /// Orthonormal Jacobi polynomials P̃_n^(α,β).
    #[serde(rename = "JacobiP")]
    JacobiP,
}

impl BasisKind {
    /// Fourier-type kinds are indexed by k ∈ ℤ, the others by n ≥ 0.
    pub fn is_fourier(self) -> bool {
        matches!(
            self,
            BasisKind::Psi | BasisKind::PsiWeighted | BasisKind::Phi | BasisKind::PhiWeighted
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Psi => "Psi",
            BasisKind::PsiWeighted => "psi",
            BasisKind::Phi => "Phi",
            BasisKind::PhiWeighted => "phi",
            BasisKind::Rho => "rho",
            BasisKind::MappedJacobi => "PB",
            BasisKind::MappedJacobiWeighted => "pb",
            BasisKind::HalfLine => "PL",
            BasisKind::HalfLineWeighted => "pl",
            BasisKind::JacobiP => "JacobiP",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "Psi" => BasisKind::Psi,
            "psi" => BasisKind::PsiWeighted,
            "Phi" => BasisKind::Phi,
            "phi" => BasisKind::PhiWeighted,
            "rho" => BasisKind::Rho,
            "PB" => BasisKind::MappedJacobi,
            "pb" => BasisKind::MappedJacobiWeighted,
            "PL" => BasisKind::HalfLine,
            "pl" => BasisKind::HalfLineWeighted,
            "JacobiP" => BasisKind::JacobiP,
            other => return Err(format!("unknown basis kind `{other}`")),
        })
    }
}

/// Position of the Fourier index `k` in the canonical order `0, 1, -1, 2, -2, ...`.
pub fn canonical_position(k: i64) -> usize {
    if k > 0 {
        (2 * k - 1) as usize
    } else {
        (-2 * k) as usize
    }
}

/// Inverse of [`canonical_position`].
pub fn canonical_index(pos: usize) -> i64 {
    if pos == 0 {
        0
    } else if pos % 2 == 1 {
        pos.div_ceil(2) as i64
    } else {
        -((pos / 2) as i64)
    }
}

/// Largest |k| of a full symmetric canonical vector of length `len = 2K+1`.
pub fn fourier_extent(len: usize) -> Result<usize> {
    if len.is_multiple_of(2) {
        return contract(format!(
            "Fourier coefficient vectors hold 2K+1 entries, got {len}"
        ));
    }
    Ok(len / 2)
}

/// Expansion coefficients tagged with their basis.
///
/// Fourier kinds store `k = -K..=K` in canonical order; the polynomial kinds
/// store `n = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalCoefficients {
    pub kind: BasisKind,
    /// Family parameters: `[γ]` for Ψ/ψ, `[s]` for Φ/φ/ρ/PL/pl, `[s, t]` for
    /// PB/pb and `[α, β]` for JacobiP.
    pub params: Vec<f64>,
    pub entries: Vec<Complex64>,
}

impl ModalCoefficients {
    pub fn new(kind: BasisKind, params: Vec<f64>, entries: Vec<Complex64>) -> Result<Self> {
        if kind.is_fourier() {
            fourier_extent(entries.len())?;
        }
        Ok(Self {
            kind,
            params,
            entries,
        })
    }

    pub fn zeros(kind: BasisKind, params: Vec<f64>, extent: usize) -> Self {
        let len = if kind.is_fourier() {
            2 * extent + 1
        } else {
            extent
        };
        Self {
            kind,
            params,
            entries: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// K for Fourier kinds, N for polynomial kinds.
    pub fn extent(&self) -> usize {
        if self.kind.is_fourier() {
            self.entries.len() / 2
        } else {
            self.entries.len()
        }
    }

    /// The index (k or n) stored at position `pos`.
    pub fn index_at(&self, pos: usize) -> i64 {
        if self.kind.is_fourier() {
            canonical_index(pos)
        } else {
            pos as i64
        }
    }

    /// Coefficient of Fourier index `k`, zero outside storage.
    pub fn get(&self, k: i64) -> Complex64 {
        let pos = if self.kind.is_fourier() {
            canonical_position(k)
        } else if k < 0 {
            return Complex64::new(0.0, 0.0);
        } else {
            k as usize
        };
        self.entries
            .get(pos)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn set(&mut self, k: i64, v: Complex64) {
        let pos = if self.kind.is_fourier() {
            canonical_position(k)
        } else {
            k as usize
        };
        self.entries[pos] = v;
    }

    /// Largest absolute entrywise difference; vectors of different length are
    /// compared with zero padding.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.entries.len().max(other.entries.len());
        (0..n)
            .map(|i| {
                let a = self.entries.get(i).copied().unwrap_or_default();
                let b = other.entries.get(i).copied().unwrap_or_default();
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }
}
