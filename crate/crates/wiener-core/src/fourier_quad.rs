//! Symmetric quadrature on [−π, π] for the weight w_θ^(γ,0), its images on
//! the real line and half line, and modal analysis and synthesis.
//!
//! An N-point θ rule mirrors a Jacobi rule of class (−1/2, γ − 1/2) through
//! θ = ±arccos r: a Gauss rule of N/2 points for even N, a Gauss-Radau rule
//! of (N + 1)/2 points for odd N, whose node r = 1 becomes θ = 0 with its
//! weight doubled. Both integrate e^{ikθ} w_θ^(γ,0) exactly for |k| ≤ N − 1.

use crate::domain_maps::{weight_theta, Chart, WeightParams};
use crate::error::{contract, Result};
use crate::fourier_basis::{eval_szego_batch, szego_classes};
use crate::jacobi::{eval_batch, JacobiParams};
use crate::jacobi_quad::{gauss_radau_rule, gauss_rule, QuadratureRule};
use crate::modal::{canonical_index, BasisKind, ModalCoefficients};
use crate::par::{self, Strategy};
use crate::wiener_basis::{
    eval_mapped_jacobi_batch, eval_rho_batch, eval_semiinfinite_pl_batch, eval_wiener_batch,
    eval_wiener_unweighted_batch, half_line_class,
};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Symmetric θ rule: nodes ascending in (−π, π), big weights Ω for
/// ∫ f w_θ^(γ,0) dθ and small weights ω_n = Ω_n / w_θ^(γ,0)(θ_n) for ∫ f dθ.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierRule {
    pub gamma: f64,
    pub nodes: Vec<f64>,
    pub big_weights: Vec<f64>,
    pub small_weights: Option<Vec<f64>>,
}

impl FourierRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest |k| with ∫ e^{ikθ} w_θ^(γ,0) dθ reproduced exactly.
    pub fn exactness_degree(&self) -> usize {
        self.len() - 1
    }

    /// The rule with weights Ω, for integrals against w_θ^(γ,0).
    pub fn big_rule(&self) -> QuadratureRule {
        QuadratureRule {
            chart: Chart::Theta,
            nodes: self.nodes.clone(),
            weights: self.big_weights.clone(),
            exactness_degree: self.exactness_degree(),
            weight_params: WeightParams::new(self.gamma, 0.0),
        }
    }

    /// The rule with weights ω, for unweighted integrals of ψ products.
    pub fn small_rule(&self) -> QuadratureRule {
        let weights = self
            .small_weights
            .clone()
            .unwrap_or_else(|| small_weights(self.gamma, &self.nodes, &self.big_weights));
        QuadratureRule {
            chart: Chart::Theta,
            nodes: self.nodes.clone(),
            weights,
            exactness_degree: self.exactness_degree(),
            weight_params: WeightParams::new(0.0, 0.0),
        }
    }
}

fn small_weights(gamma: f64, nodes: &[f64], big: &[f64]) -> Vec<f64> {
    nodes
        .iter()
        .zip(big)
        .map(|(&t, &w)| w * weight_theta(-gamma, 0.0, t))
        .collect()
}

/// N-point symmetric θ rule for w_θ^(γ,0), N ≥ 2.
pub fn fourier_theta_rule(gamma: f64, n: usize) -> Result<FourierRule> {
    if n < 2 {
        return contract("a Fourier rule needs N >= 2");
    }
    let (p, _) = szego_classes(gamma)?;
    let half = if n.is_multiple_of(2) {
        gauss_rule(p, n / 2)?
    } else {
        gauss_radau_rule(p, n.div_ceil(2))?
    };
    let m = if n.is_multiple_of(2) {
        half.len()
    } else {
        half.len() - 1
    };
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for j in 0..m {
        nodes.push(-half.nodes[j].acos());
        weights.push(half.weights[j]);
    }
    if n % 2 == 1 {
        nodes.push(0.0);
        weights.push(2.0 * half.weights[m]);
    }
    for j in (0..m).rev() {
        nodes.push(-nodes[j]);
        weights.push(weights[j]);
    }
    Ok(FourierRule {
        gamma,
        nodes,
        big_weights: weights,
        small_weights: None,
    })
}

/// The θ rule together with its small weights ω.
pub fn weighted_fourier_rule(gamma: f64, n: usize) -> Result<FourierRule> {
    let mut rule = fourier_theta_rule(gamma, n)?;
    rule.small_weights = Some(small_weights(gamma, &rule.nodes, &rule.big_weights));
    Ok(rule)
}

/// Which integral a mapped real-line rule approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XWeights {
    /// ∫ f w_x^(s,0) dx, weights Ω; exact for Φ_k Φ̄_l.
    Weighted,
    /// ∫ f dx, weights Ω_n / (1 + cos θ_n)^s; exact for φ_k φ̄_l.
    Unweighted,
}

/// Nodes x_n = tan(θ_n/2) of a rule built for γ = s − 1.
pub fn map_rule_to_x(rule: &FourierRule, s: f64, family: XWeights) -> Result<QuadratureRule> {
    if (rule.gamma - (s - 1.0)).abs() > 1e-14 * (1.0 + s.abs()) {
        return contract(format!(
            "a rule for gamma = {} cannot be mapped with s = {s}",
            rule.gamma
        ));
    }
    let nodes = rule.nodes.iter().map(|t| (0.5 * t).tan()).collect();
    let (weights, params) = match family {
        XWeights::Weighted => (rule.big_weights.clone(), WeightParams::new(s, 0.0)),
        XWeights::Unweighted => (
            rule.nodes
                .iter()
                .zip(&rule.big_weights)
                .map(|(&t, &w)| w * weight_theta(-s, 0.0, t))
                .collect(),
            WeightParams::new(0.0, 0.0),
        ),
    };
    Ok(QuadratureRule {
        chart: Chart::X,
        nodes,
        weights,
        exactness_degree: rule.exactness_degree(),
        weight_params: params,
    })
}

fn sorted_x_rule(
    mut pairs: Vec<(f64, f64)>,
    exactness: usize,
    params: WeightParams,
) -> QuadratureRule {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    QuadratureRule {
        chart: Chart::X,
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        exactness_degree: exactness,
        weight_params: params,
    }
}

/// M-point rule for ∫_0^∞ f dx, exact for ρ_m ρ_n with m + n ≤ 2M − 1:
/// the Gauss rule of class (−1/2, s − 3/2) under x = √((1 − r)/(1 + r)),
/// weights ω_j / (1 + r_j)^s.
pub fn rho_rule(s: f64, m: usize) -> Result<QuadratureRule> {
    if !(s > 0.5) {
        return contract("rho needs s > 1/2");
    }
    let g = gauss_rule(JacobiParams::new(-0.5, s - 1.5)?, m)?;
    let pairs = g
        .nodes
        .iter()
        .zip(&g.weights)
        .map(|(&r, &w)| (((1.0 - r) / (1.0 + r)).sqrt(), w / (1.0 + r).powf(s)))
        .collect();
    Ok(sorted_x_rule(
        pairs,
        g.exactness_degree,
        WeightParams::new(0.0, 0.0),
    ))
}

/// M-point rule on [0, ∞) from the Gauss rule of class (−1/2, 2s − 3/2)
/// under x = (1 − r)/(1 + r). Weights ω_j integrate against w_PL^(s) (PL
/// products); with `weighted` they are ω_j/(1 + r_j)^{2s} and integrate
/// against 1/(2√x) (pl products).
pub fn half_line_rule(s: f64, m: usize, weighted: bool) -> Result<QuadratureRule> {
    let g = gauss_rule(half_line_class(s)?, m)?;
    let pairs = g
        .nodes
        .iter()
        .zip(&g.weights)
        .map(|(&r, &w)| {
            let w = if weighted {
                w / (1.0 + r).powf(2.0 * s)
            } else {
                w
            };
            ((1.0 - r) / (1.0 + r), w)
        })
        .collect();
    Ok(sorted_x_rule(
        pairs,
        g.exactness_degree,
        WeightParams::new(s, 0.0),
    ))
}

/// M-point rule on ℝ from the Gauss rule of class (s − 3/2, t − 3/2) under
/// x = r/√(1 − r²). Weights ω_j integrate against (1 − r)^s(1 + r)^t (PB
/// products); with `weighted` they are divided by that weight and integrate
/// dx (pb products).
pub fn mapped_jacobi_rule(s: f64, t: f64, m: usize, weighted: bool) -> Result<QuadratureRule> {
    if !(s > 0.5 && t > 0.5) {
        return contract("PB needs s, t > 1/2");
    }
    let g = gauss_rule(JacobiParams::new(s - 1.5, t - 1.5)?, m)?;
    let pairs = g
        .nodes
        .iter()
        .zip(&g.weights)
        .map(|(&r, &w)| {
            let (u, v) = (1.0 - r, 1.0 + r);
            let w = if weighted {
                w / (u.powf(s) * v.powf(t))
            } else {
                w
            };
            (r / (u * v).sqrt(), w)
        })
        .collect();
    Ok(sorted_x_rule(
        pairs,
        g.exactness_degree,
        WeightParams::new(s, t),
    ))
}

/// A basis family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    /// Ψ^(γ) (or ψ^(γ) when weighted) on the θ chart.
    Szego { gamma: f64, weighted: bool },
    /// Φ^(s) (or φ^(s) when weighted) on the x chart.
    Wiener { s: f64, weighted: bool },
    /// ρ^(s) on [0, ∞).
    Rho { s: f64 },
    /// PB^(s,t) (or pb^(s,t)) on ℝ.
    MappedJacobi { s: f64, t: f64, weighted: bool },
    /// PL^(s) (or pl^(s)) on [0, ∞).
    HalfLine { s: f64, weighted: bool },
    /// P̃^(α,β) on [−1, 1].
    Jacobi(JacobiParams),
}

impl Basis {
    pub fn from_kind(kind: BasisKind, params: &[f64]) -> Result<Self> {
        let need = match kind {
            BasisKind::MappedJacobi | BasisKind::MappedJacobiWeighted | BasisKind::JacobiP => 2,
            _ => 1,
        };
        if params.len() != need {
            return contract(format!(
                "{kind} takes {need} parameter(s), got {}",
                params.len()
            ));
        }
        let p = params[0];
        Ok(match kind {
            BasisKind::Psi => Self::Szego {
                gamma: p,
                weighted: false,
            },
            BasisKind::PsiWeighted => Self::Szego {
                gamma: p,
                weighted: true,
            },
            BasisKind::Phi => Self::Wiener {
                s: p,
                weighted: false,
            },
            BasisKind::PhiWeighted => Self::Wiener {
                s: p,
                weighted: true,
            },
            BasisKind::Rho => Self::Rho { s: p },
            BasisKind::MappedJacobi => Self::MappedJacobi {
                s: p,
                t: params[1],
                weighted: false,
            },
            BasisKind::MappedJacobiWeighted => Self::MappedJacobi {
                s: p,
                t: params[1],
                weighted: true,
            },
            BasisKind::HalfLine => Self::HalfLine {
                s: p,
                weighted: false,
            },
            BasisKind::HalfLineWeighted => Self::HalfLine {
                s: p,
                weighted: true,
            },
            BasisKind::JacobiP => Self::Jacobi(JacobiParams::new(p, params[1])?),
        })
    }

    pub fn kind(&self) -> BasisKind {
        match *self {
            Self::Szego {
                weighted: false, ..
            } => BasisKind::Psi,
            Self::Szego { weighted: true, .. } => BasisKind::PsiWeighted,
            Self::Wiener {
                weighted: false, ..
            } => BasisKind::Phi,
            Self::Wiener { weighted: true, .. } => BasisKind::PhiWeighted,
            Self::Rho { .. } => BasisKind::Rho,
            Self::MappedJacobi {
                weighted: false, ..
            } => BasisKind::MappedJacobi,
            Self::MappedJacobi { weighted: true, .. } => BasisKind::MappedJacobiWeighted,
            Self::HalfLine {
                weighted: false, ..
            } => BasisKind::HalfLine,
            Self::HalfLine { weighted: true, .. } => BasisKind::HalfLineWeighted,
            Self::Jacobi(_) => BasisKind::JacobiP,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Self::Szego { gamma, .. } => vec![gamma],
            Self::Wiener { s, .. } | Self::Rho { s } | Self::HalfLine { s, .. } => vec![s],
            Self::MappedJacobi { s, t, .. } => vec![s, t],
            Self::Jacobi(p) => vec![p.alpha, p.beta],
        }
    }

    /// Chart on which points are given to [`Basis::eval_all`].
    pub fn chart(&self) -> Chart {
        match self {
            Self::Szego { .. } => Chart::Theta,
            Self::Jacobi(_) => Chart::R,
            _ => Chart::X,
        }
    }

    /// Number of stored modes for extent K (Fourier kinds) or N (others).
    pub fn mode_count(&self, extent: usize) -> usize {
        if self.kind().is_fourier() {
            2 * extent + 1
        } else {
            extent
        }
    }

    /// All retained basis functions at `point`, in storage order.
    pub fn eval_all(&self, extent: usize, point: f64) -> Result<Vec<Complex64>> {
        let real = |v: Vec<f64>| {
            v.into_iter()
                .map(|y| Complex64::new(y, 0.0))
                .collect::<Vec<_>>()
        };
        let top = extent.saturating_sub(1);
        let mut vals = match *self {
            Self::Szego { gamma, weighted } => {
                let b = if weighted {
                    crate::fourier_basis::eval_szego_weighted_batch(gamma, extent, point)?
                } else {
                    eval_szego_batch(gamma, extent, point)?
                };
                return Ok(to_canonical(&b, extent));
            }
            Self::Wiener { s, weighted } => {
                let b = if weighted {
                    eval_wiener_batch(s, extent, point)?
                } else {
                    eval_wiener_unweighted_batch(s, extent, point)?
                };
                return Ok(to_canonical(&b, extent));
            }
            Self::Rho { s } => real(eval_rho_batch(s, top, point)?),
            Self::MappedJacobi { s, t, weighted } => {
                real(eval_mapped_jacobi_batch(s, t, top, point, weighted)?)
            }
            Self::HalfLine { s, weighted } => {
                real(eval_semiinfinite_pl_batch(s, top, point, weighted)?)
            }
            Self::Jacobi(p) => {
                if !(-1.0..=1.0).contains(&point) {
                    return contract("Jacobi polynomials are evaluated on [-1, 1]");
                }
                real(eval_batch(p, top, point))
            }
        };
        vals.truncate(extent);
        Ok(vals)
    }

    /// The rule under which the retained modes are orthonormal, with the
    /// fewest nodes that make their Gram matrix exact.
    pub fn rule(&self, extent: usize) -> Result<QuadratureRule> {
        let m = extent.max(1);
        match *self {
            Self::Szego { gamma, weighted } => {
                let r = fourier_theta_rule(gamma, 2 * extent + 2)?;
                Ok(if weighted {
                    r.small_rule()
                } else {
                    r.big_rule()
                })
            }
            Self::Wiener { s, weighted } => {
                let r = fourier_theta_rule(s - 1.0, 2 * extent + 2)?;
                let family = if weighted {
                    XWeights::Unweighted
                } else {
                    XWeights::Weighted
                };
                map_rule_to_x(&r, s, family)
            }
            Self::Rho { s } => rho_rule(s, m),
            Self::MappedJacobi { s, t, weighted } => mapped_jacobi_rule(s, t, m, weighted),
            Self::HalfLine { s, weighted } => half_line_rule(s, m, weighted),
            Self::Jacobi(p) => gauss_rule(p, m),
        }
    }

    /// Products of retained modes reach this degree (trigonometric for the
    /// Fourier kinds, polynomial otherwise).
    fn product_degree(&self, extent: usize) -> usize {
        if self.kind().is_fourier() {
            2 * extent
        } else {
            2 * extent.saturating_sub(1)
        }
    }
}

fn to_canonical(ascending: &[Complex64], k_max: usize) -> Vec<Complex64> {
    (0..2 * k_max + 1)
        .map(|pos| ascending[(canonical_index(pos) + k_max as i64) as usize])
        .collect()
}

/// Discrete inner products f̂_k = Σ_j w_j f(x_j) conj(b_k(x_j)) over the
/// nodes of `rule`, for the retained modes of `basis`.
pub fn analyze_with_rule(
    basis: &Basis,
    extent: usize,
    rule: &QuadratureRule,
    samples: &[Complex64],
    strategy: Strategy,
) -> Result<ModalCoefficients> {
    if samples.len() != rule.len() {
        return contract(format!(
            "{} samples for a rule with {} nodes",
            samples.len(),
            rule.len()
        ));
    }
    if rule.chart != basis.chart() {
        return contract("rule and basis live on different charts");
    }
    if rule.exactness_degree < basis.product_degree(extent) {
        return contract(format!(
            "rule of exactness {} cannot resolve {} modes",
            rule.exactness_degree,
            basis.mode_count(extent)
        ));
    }
    let rows = par::map_range(strategy, rule.len(), |j| {
        basis.eval_all(extent, rule.nodes[j])
    });
    let mut acc = vec![Complex64::new(0.0, 0.0); basis.mode_count(extent)];
    for (j, row) in rows.into_iter().enumerate() {
        let fw = samples[j] * rule.weights[j];
        for (a, b) in acc.iter_mut().zip(row?) {
            *a += fw * b.conj();
        }
    }
    ModalCoefficients::new(basis.kind(), basis.params(), acc)
}

/// [`analyze_with_rule`] with the basis's own rule; `samples` must be taken
/// at `basis.rule(extent)?.nodes`.
pub fn analyze(
    basis: &Basis,
    extent: usize,
    samples: &[Complex64],
    strategy: Strategy,
) -> Result<ModalCoefficients> {
    let rule = basis.rule(extent)?;
    analyze_with_rule(basis, extent, &rule, samples, strategy)
}

/// Σ_k f̂_k b_k(x) at every point.
pub fn synthesize(
    coeffs: &ModalCoefficients,
    points: &[f64],
    strategy: Strategy,
) -> Result<Vec<Complex64>> {
    let basis = Basis::from_kind(coeffs.kind, &coeffs.params)?;
    let extent = coeffs.extent();
    par::map(strategy, points, |&x| {
        let vals = basis.eval_all(extent, x)?;
        Ok(vals.iter().zip(&coeffs.entries).map(|(b, c)| b * c).sum())
    })
    .into_iter()
    .collect()
}

/// ∫ e^{ikθ} (1 + cos θ)^γ dθ over [−π, π] for integer γ ≥ 0, by binomial
/// expansion of the weight.
pub fn integer_weight_moment(gamma: u32, k: i64) -> f64 {
    let k = k.unsigned_abs() as u32;
    let mut total = 0.0;
    for j in k..=gamma {
        if (j - k).is_multiple_of(2) {
            total += binomial(gamma, j) * binomial(j, (j - k) / 2) / 2f64.powi(j as i32);
        }
    }
    2.0 * PI * total
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
