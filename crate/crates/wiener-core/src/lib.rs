//! Generalized Wiener rational functions and the Szegő-Fourier functions
//! they are built from.
//!
//! The crate covers point evaluation of every basis family, Gauss and
//! Gauss-Radau quadrature, symmetric Fourier quadrature with its mapped
//! real-line variants, modal analysis and synthesis, the sparse connection
//! algorithms between parameter values, and the sparse Galerkin stiffness
//! matrix of the Wiener functions together with its spectral radius.
//!
//! Fourier-type coefficient vectors are always stored in the canonical order
//! `k = 0, 1, -1, 2, -2, ...`; see [`modal::canonical_position`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod connections;
pub mod domain_maps;
pub mod error;
pub mod fourier_basis;
pub mod fourier_quad;
pub mod io;
pub mod jacobi;
pub mod jacobi_quad;
pub mod linalg;
pub mod modal;
pub mod par;
pub mod stiffness;
pub mod wiener_basis;

pub use error::{Error, Result};
pub use num_complex::Complex64;
