//! Numerical laboratory for eigenvalue-counting bounds of two-dimensional
//! Schrödinger operators `-Δ - V` with nonnegative potentials.
//!
//! The crate evaluates the right-hand sides of the classical counting
//! estimates (Orlicz-norm functionals, annular square-root sums, weak-ℓ¹
//! functionals), computes direct negative-eigenvalue counts for radial
//! potentials by oscillation/Prüfer shooting, and exposes the sharp
//! one-dimensional Sobolev constants together with their extremizers.
//!
//! Core numeric kernels are generic over the scalar type through the
//! [`Scalar`] trait; the domain layer is instantiated at [`Real`] (`f64`).

pub mod bounds;
pub mod constructions;
pub mod numerics;
pub mod orlicz;
pub mod partition;
pub mod potentials;
pub mod report;
pub mod scalar;
pub mod spectral1d;

pub use scalar::Scalar;

/// Scalar type used by the domain layer.
pub type Real = f64;

/// N-function over the default scalar.
pub type NFn = orlicz::NFunction<Real>;
