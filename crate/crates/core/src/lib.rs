//! Volumes of polynomial sub-level sets on bounded domains, and what follows
//! from them: explicit exponent brackets for `V(t) = Vol{x in A : |f(x)| <= t}`,
//! decay rates of oscillatory integrals with polynomial phase, and convergence
//! of singular integrals `int_A |f|^(-gamma)`.
//!
//! The crate is organized around exact symbolic building blocks (sparse
//! multivariate polynomials over arbitrary-precision rationals, real root
//! isolation) and numeric estimators on top of them (seeded Monte Carlo
//! volume sweeps, panel-based oscillatory quadrature, Stieltjes sums).
//!
//! All randomized estimators are deterministic functions of an explicit
//! 64-bit seed, and produce identical results whether the `parallel`
//! feature (rayon) is enabled or not, and for any worker count.

pub mod domain;
pub mod epsilon_lambda;
mod error;
pub mod exec;
pub mod numfmt;
pub mod oscillatory;
pub mod poly;
pub mod roots1d;
pub mod singular;
pub mod univariate;
pub mod volume;

pub use error::Error;
pub use poly::{parse_poly, Degree, Polynomial};
pub use univariate::UnivariateSlice;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
