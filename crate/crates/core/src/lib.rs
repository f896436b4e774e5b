//! Exact-arithmetic engine for the representation theory and tractor calculus
//! of almost Grassmannian structures of type `(2, n)`.
//!
//! Everything here is computed over the rationals with no floating point:
//!
//! * [`weights`]: ε-coordinate weights of `sl(n+2)` and Casimir eigenvalues.
//! * [`young`]: row-then-column Young projectors and GL(n) dimensions.
//! * [`tensor`]: dense typed-index tensors with the ε-spinor conventions.
//! * [`forms`]: irreducible pieces of exterior forms and tractor composition series.
//! * [`tractor`]: injectors, the bullet action of one-forms, the formal curved
//!   Casimir and the principal-symbol computations.
//! * [`verma`]: the `g₁`-action on `⊗³g₋₁* ⊗ V` and the obstruction to lifting
//!   the nonstandard homomorphism to semi-holonomic jets.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod forms;
pub mod linalg;
pub mod report;
pub mod rng;
pub mod tensor;
pub mod tractor;
pub mod verma;
pub mod weights;
pub mod young;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the engine.
///
/// Arithmetic overflow panics (overflow checks are on in every profile), so a
/// result is either exact or the computation aborts.
pub type Q = num_rational::Ratio<i128>;

/// Shorthand for building a rational from a numerator and denominator.
#[inline]
pub fn q(num: i128, den: i128) -> Q {
    Q::new(num, den)
}

/// Shorthand for an integer rational.
#[inline]
pub fn qi(v: i128) -> Q {
    Q::from_integer(v)
}
