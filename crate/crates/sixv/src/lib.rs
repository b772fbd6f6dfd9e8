//! Exact evaluation of the partition function of the six-vertex model with
//! domain wall boundary conditions.
//!
//! The partition function `Z_N` of the inhomogeneous six-vertex model on an
//! `N x N` lattice with domain wall boundary conditions admits several
//! closed determinant representations: the Izergin-Korepin determinant, the
//! Kostov determinant (rational weights), the Foda-Wheeler determinants
//! (trigonometric weights), and a family of determinants parametrized by an
//! arbitrary basis of polynomials of degree `N - 1` that specializes to all
//! of the former. This crate evaluates every one of them, together with two
//! independent brute-force oracles:
//!
//! * [`enumerate`] - the definitional weighted sum over all allowed arrow
//!   configurations (these are counted by the alternating sign matrix
//!   numbers 1, 2, 7, 42, 429, ...);
//! * [`qism`] - the quantum inverse scattering picture, where `Z_N` is a
//!   matrix element of a product of `B`-operators over the `2^N`-dimensional
//!   quantum space.
//!
//! All core algorithms are generic over the [`Scalar`] field. Rational and
//! algebraic-trigonometric weights run over exact big rationals ([`Rat`]), so
//! agreement between representations is bit-exact; the trigonometric weights
//! in their analytic form run over complex doubles ([`Cpx`]).
//!
//! The [`verify`] module re-checks the defining properties of `Z_N`
//! (symmetry, degree, the vanishing conditions, the value at coinciding
//! parameter sets) against any of the implementations above, and can
//! reconstruct `Z_N` from those properties alone.

pub mod cli;
pub mod detrep;
pub mod enumerate;
pub mod error;
pub mod matrix;
pub mod model;
pub mod poly;
pub mod qism;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use model::{SpecPoint, SpectralParams, WeightModel, WeightSystem};
pub use poly::PolyBasis;
pub use scalar::{Cpx, Rat, Scalar};
