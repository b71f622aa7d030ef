mod common;

use common::{central_difference, random_entries, sample_points};
use proptest::prelude::*;
use wiener_core::fourier_quad::synthesize;
use wiener_core::modal::{canonical_index, BasisKind, ModalCoefficients};
use wiener_core::par::Strategy;
use wiener_core::stiffness::{
    apply_derivative, assemble_stiffness, assemble_stiffness_on, spectral_radius, table_eig,
    IndexSet, TABLE_N, TABLE_REFERENCE, TABLE_S,
};
use wiener_core::Complex64;

#[test]
fn derivative_of_a_random_expansion() {
    let s = 1.7;
    let c = ModalCoefficients::new(BasisKind::PhiWeighted, vec![s], random_entries(3, 13)).unwrap();
    let d = apply_derivative(&c).unwrap();
    let pts = sample_points();
    let exact = synthesize(&d, &pts, Strategy::Sequential).unwrap();
    let f = |x: f64| synthesize(&c, &[x], Strategy::Sequential).unwrap()[0];
    for (&x, e) in pts.iter().zip(&exact) {
        assert!((central_difference(f, x, 1e-5) - e).norm() <= 1e-6, "x={x}");
    }
}

#[test]
fn matrix_columns_are_derivative_coefficients() {
    let m = assemble_stiffness(2.2, 15).unwrap();
    for pos in 0..15 {
        let k = canonical_index(pos);
        let mut c = ModalCoefficients::zeros(BasisKind::PhiWeighted, vec![2.2], 7);
        c.set(k, Complex64::new(1.0, 0.0));
        let d = apply_derivative(&c).unwrap();
        for &l in &m.ordering {
            assert_eq!(m.get(l, k), d.get(l));
        }
    }
}

#[test]
fn odd_sizes_agree_across_index_sets() {
    for n in [11, 31] {
        let a = spectral_radius(
            &assemble_stiffness_on(3.0, n, IndexSet::Canonical).unwrap(),
            1e-12,
        )
        .unwrap();
        let b = spectral_radius(
            &assemble_stiffness_on(3.0, n, IndexSet::Mirrored).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!((a - b).abs() <= 1e-10);
    }
}

#[test]
fn small_table_cells() {
    let t = table_eig(
        &TABLE_S,
        &TABLE_N[..2],
        IndexSet::Mirrored,
        1e-12,
        Strategy::Sequential,
    )
    .unwrap();
    for (row, reference) in t.iter().zip(&TABLE_REFERENCE) {
        for (v, r) in row.iter().zip(reference) {
            assert!((v - r).abs() <= 0.02, "{v} vs {r}");
        }
    }
}

#[test]
fn sequential_and_parallel_tables_agree() {
    let s = [0.6, 4.0];
    let n = [9, 20, 33];
    let a = table_eig(&s, &n, IndexSet::Canonical, 1e-12, Strategy::Sequential).unwrap();
    let b = table_eig(&s, &n, IndexSet::Canonical, 1e-12, Strategy::Parallel).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn radius_grows_with_size(s in 0.6f64..10.0, n in 3usize..80) {
        let a = spectral_radius(&assemble_stiffness(s, n).unwrap(), 1e-12).unwrap();
        let b = spectral_radius(&assemble_stiffness(s, n + 2).unwrap(), 1e-12).unwrap();
        prop_assert!(b >= a - 1e-9);
    }
}
