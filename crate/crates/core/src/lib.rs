//! Continuous primitive integral on piecewise-polynomial carriers.
//!
//! A distribution `f` is represented by its continuous primitive `F`, so
//! `∫_a^b f = F(b) - F(a)`. Bounded-variation multipliers, Stieltjes products
//! and convolutions are computed exactly on the piecewise-polynomial
//! representation, up to floating-point rounding.

pub mod bv;
pub mod convolution;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod harness;
pub mod io;
pub mod piecewise;
pub mod poly;
pub mod primitive;
pub mod stieltjes;

mod engine;

pub use convolution::{
    convolve_bv, convolve_derivative, convolve_l1, convolve_primitive, convolve_with_primitive_of, mollify,
    pairing_convolution, support_of, ExtendedContinuousFunction, Hull, Supported,
};
pub use bv::{BVFunction, L1Function, SignedMeasure};
pub use error::{CpintError, Result};
pub use ext::ExtReal;
pub use piecewise::PiecewisePolynomial;
pub use poly::Poly;
pub use primitive::{make_distribution, ContinuousPrimitive, Distribution, TestFunction};
