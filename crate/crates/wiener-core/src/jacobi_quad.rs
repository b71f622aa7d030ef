//! Gauss and Gauss-Radau rules for Jacobi weights, built by the Golub-Welsch
//! construction on the Jacobi matrix of the orthonormal recurrence.

use crate::domain_maps::{Chart, WeightParams};
use crate::error::{contract, Result};
use crate::jacobi::{eval_batch, recurrence_a, recurrence_b, JacobiParams};
use crate::linalg::tridiagonal_eigen;

/// Nodes (ascending) and positive weights of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub chart: Chart,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Highest polynomial degree (or trigonometric order) integrated exactly.
    pub exactness_degree: usize,
    pub weight_params: WeightParams,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_j f(x_j).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

fn jacobi_matrix(p: JacobiParams, n: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = (0..n).map(|j| recurrence_a(p, j)).collect();
    let off = (1..n).map(|j| recurrence_b(p, j).sqrt()).collect();
    (diag, off)
}

fn rule_from_matrix(
    p: JacobiParams,
    diag: &[f64],
    off: &[f64],
    exactness_degree: usize,
) -> Result<QuadratureRule> {
    let (nodes, first) = tridiagonal_eigen(diag, off, true, f64::EPSILON)?;
    let first = first.expect("first components were requested");
    let mass = p.mass();
    let mut pairs: Vec<(f64, f64)> = nodes
        .into_iter()
        .zip(first)
        .map(|(x, z)| (x, mass * z * z))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuadratureRule {
        chart: Chart::R,
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        exactness_degree,
        weight_params: WeightParams::new(p.alpha, p.beta),
    })
}

fn symmetrize(rule: &mut QuadratureRule) {
    let n = rule.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        let w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if n % 2 == 1 {
        rule.nodes[n / 2] = 0.0;
    }
}

/// N-point Gauss rule for w_r^(α,β), exact through degree 2N − 1.
pub fn gauss_rule(p: JacobiParams, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return contract("a Gauss rule needs at least one node");
    }
    let (diag, off) = jacobi_matrix(p, n);
    let mut rule = rule_from_matrix(p, &diag, &off, 2 * n - 1)?;
    if p.alpha == p.beta {
        symmetrize(&mut rule);
    }
    Ok(rule)
}

/// N-point Gauss-Radau rule for w_r^(α,β) with the node fixed at r = 1,
/// exact through degree 2N − 2.
///
/// The last diagonal entry of the Jacobi matrix is replaced by
/// 1 − √b_{N−1} P̃_{N−2}(1)/P̃_{N−1}(1), which makes r = 1 an eigenvalue.
pub fn gauss_radau_rule(p: JacobiParams, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return contract("a Gauss-Radau rule needs at least one node");
    }
    if n == 1 {
        return Ok(QuadratureRule {
            chart: Chart::R,
            nodes: vec![1.0],
            weights: vec![p.mass()],
            exactness_degree: 0,
            weight_params: WeightParams::new(p.alpha, p.beta),
        });
    }
    let (mut diag, off) = jacobi_matrix(p, n);
    let at_one = eval_batch(p, n - 1, 1.0);
    diag[n - 1] = 1.0 - recurrence_b(p, n - 1).sqrt() * at_one[n - 2] / at_one[n - 1];
    let mut rule = rule_from_matrix(p, &diag, &off, 2 * n - 2)?;
    rule.nodes[n - 1] = 1.0;
    Ok(rule)
}


#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn jp(a: f64, b: f64) -> JacobiParams {
        JacobiParams::new(a, b).unwrap()
    }

    fn moment(a: f64, b: f64, j: i32) -> f64 {
        reference::integrate(|r, u, v| r.powi(j) * u.powf(a) * v.powf(b))
    }

    #[test]
    fn one_point_legendre() {
        let r = gauss_rule(jp(0.0, 0.0), 1).unwrap();
        assert_abs_diff_eq!(r.nodes[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights[0], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn chebyshev_gauss_closed_form() {
        for n in 1..12 {
            let r = gauss_rule(jp(-0.5, -0.5), n).unwrap();
            let mut expected: Vec<f64> = (1..=n)
                .map(|j| ((2 * j - 1) as f64 * PI / (2 * n) as f64).cos())
                .collect();
            expected.sort_by(f64::total_cmp);
            for (x, e) in r.nodes.iter().zip(&expected) {
                assert_abs_diff_eq!(x, e, epsilon = 1e-14);
            }
            for w in &r.weights {
                assert_abs_diff_eq!(*w, PI / n as f64, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn gauss_rule_matches_reference_moments() {
        let r = gauss_rule(jp(-0.5, 1.5), 6).unwrap();
        for j in 0..=11 {
            let q = r.integrate(|x| x.powi(j));
            assert_abs_diff_eq!(q, moment(-0.5, 1.5, j), epsilon = 1e-11);
        }
    }

    #[test]
    fn radau_small_cases() {
        let r = gauss_radau_rule(jp(0.0, 0.0), 1).unwrap();
        assert_eq!(r.nodes, vec![1.0]);
        assert_abs_diff_eq!(r.weights[0], 2.0, epsilon = 1e-14);
        let r = gauss_radau_rule(jp(0.0, 0.0), 2).unwrap();
        assert_abs_diff_eq!(r.nodes[0], -1.0 / 3.0, epsilon = 1e-14);
        assert_eq!(r.nodes[1], 1.0);
        assert_abs_diff_eq!(r.weights[0], 1.5, epsilon = 1e-14);
        assert_abs_diff_eq!(r.weights[1], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn radau_matches_reference_moments() {
        let r = gauss_radau_rule(jp(-0.5, 1.5), 5).unwrap();
        for j in 0..=8 {
            let q = r.integrate(|x| x.powi(j));
            assert_abs_diff_eq!(q, moment(-0.5, 1.5, j), epsilon = 1e-11);
        }
    }

    #[test]
    fn published_node_sets_for_gamma_five() {
        let g = gauss_rule(jp(-0.5, 4.5), 5).unwrap();
        let expected = [-0.44636196, 0.01488278, 0.45080338, 0.79036954, 0.97602054];
        for (x, e) in g.nodes.iter().zip(&expected) {
            assert_abs_diff_eq!(x, e, epsilon = 5e-9);
        }
        let r = gauss_radau_rule(jp(-0.5, 4.5), 6).unwrap();
        let expected = [
            -0.50897301,
            -0.08716032,
            0.32980906,
            0.6822214,
            0.9174362,
            1.0,
        ];
        for (x, e) in r.nodes.iter().zip(&expected) {
            assert_abs_diff_eq!(x, e, epsilon = 5e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn exactness_and_invariants(a in -0.9f64..3.0, b in -0.9f64..3.0, n in 1usize..13) {
            let p = jp(a, b);
            let g = gauss_rule(p, n).unwrap();
            let r = gauss_radau_rule(p, n).unwrap();
            let mass = p.mass();
            for rule in [&g, &r] {
                prop_assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(rule.weights.iter().all(|&w| w > 0.0));
                let total: f64 = rule.weights.iter().sum();
                prop_assert!((total - mass).abs() <= 1e-12 * mass);
                for j in 0..=rule.exactness_degree as i32 {
                    let exact = moment(a, b, j);
                    let q = rule.integrate(|x| x.powi(j));
                    prop_assert!((q - exact).abs() <= 1e-10 * mass, "degree {} of {}", j, rule.exactness_degree);
                }
            }
            prop_assert_eq!(r.nodes[n - 1].to_bits(), 1.0f64.to_bits());
            if n >= 2 {
                let prev = gauss_rule(p, n - 1).unwrap();
                for i in 0..n - 1 {
                    prop_assert!(g.nodes[i] < prev.nodes[i] && prev.nodes[i] < g.nodes[i + 1]);
                }
            }
        }
    }
}
