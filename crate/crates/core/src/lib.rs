//! Numerics for limit functions of rescaled holomorphic families.
//!
//! Given a meromorphic function `f = R · e^P` (a rational factor times the
//! exponential of a polynomial), the family `{f(nz)}` typically fails to be
//! normal at the origin and along finitely many rays. Rescaling the family
//! around a point of non-normality,
//!
//! ```text
//! f_{n,α}(ζ) = f(k_n z_n + k_n ρ_n ζ) / ρ_n^α,      k_n → ∞, ρ_n → 0,
//! ```
//!
//! produces, along convergent subsequences, a small zoo of limit functions:
//! powers `c·(ζ + C)^m`, exponentials `e^{A₁ζ + A₀}` with constrained
//! `arg A₁`, and affine precompositions `f(C₁ + C₂ζ)`. This crate
//!
//! * evaluates `f` and its rescalings in a log-polar representation that is
//!   immune to overflow ([`kernel`]),
//! * measures distances on the Riemann sphere with the chordal metric
//!   ([`kernel::chordal`]),
//! * locates the rays of non-normality ([`locus`]),
//! * classifies, for a given `f` and scaling exponent `α ∈ (−1, 1)`, the
//!   attainable limit families ([`classify`]),
//! * builds explicit sequences `(k_n, z_n, ρ_n)` that realize a chosen
//!   limit ([`construct`]), and
//! * verifies convergence numerically on disk grids ([`verify`]).
//!
//! The crate is `no_std`-compatible (with `alloc`); disable default features
//! and enable `libm` for builds without the standard library. All
//! input/output concerns (CLI, JSON configs, CSV reports) live in the
//! companion crate `zalcman-lab`.
//!
//! # Example
//!
//! ```
//! use num_complex::Complex64;
//! use zalcman_core::model::{FuncSpec, PolynomialSpec, RationalSpec};
//! use zalcman_core::classify::classify;
//!
//! // f(z) = z · e^{z³}
//! let rational = RationalSpec::new(
//!     Complex64::new(1.0, 0.0),
//!     &[(Complex64::new(0.0, 0.0), 1)],
//!     &[],
//! ).unwrap();
//! let exponent = PolynomialSpec::from_roots(
//!     Complex64::new(1.0, 0.0),
//!     &[(Complex64::new(0.0, 0.0), 3)],
//! ).unwrap();
//! let f = FuncSpec::exp_rational(rational, exponent).unwrap();
//!
//! // The limit families for α = 1/2: one power family from the zero at the
//! // origin, plus exponentials with every nonzero argument allowed.
//! let families = classify(&f, 0.5).unwrap();
//! assert_eq!(families.len(), 2);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod construct;
pub mod kernel;
pub mod locus;
pub mod model;
pub mod verify;

pub use classify::{classify, ArgSet, DescriptorSet, FamilyDescriptor, FamilyInstance};
pub use construct::{Exactness, RescalePoint, RescalingRecipe};
pub use kernel::{chordal, LogComplex};
pub use locus::RaySet;
pub use model::FuncSpec;
pub use verify::{ConvergenceReport, GridSpec, VerifyMode};
