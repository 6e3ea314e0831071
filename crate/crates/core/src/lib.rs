//! Numerical laboratory for Fourier restriction and extension estimates on
//! flat tori `T^n = S^1 x ... x S^1` embedded in `R^{2n}`.
//!
//! The crate provides exponent-region predicates, torus surface quadrature,
//! closed-form test families with a brute-force Fourier oracle, mixed-norm
//! utilities, the extension operator with its Bessel kernel, and the sweep
//! experiments (Knapp caps, concentrating dilations, radial tail probes)
//! that witness the admissible region empirically.
//!
//! All numerics are generic over a scalar type implementing [`Float`];
//! `f64` aliases for the main types live at the crate root.

// Input validation writes `!(x > 0)` on purpose: unlike `x <= 0`, the
// negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exponents;
pub mod experiments;
pub mod extension;
pub mod fourier;
pub mod functions;
pub mod geometry;
pub mod norms;
mod numeric;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Float, IndexScalar};

pub use num_complex::Complex;

/// Default scalar for concrete work.
pub type Real = f64;
/// Complex value over the default scalar.
pub type Complex64 = num_complex::Complex<f64>;
/// Exact rational Lebesgue index, for boundary-exact region queries.
pub type RationalIndex = num_rational::Ratio<i64>;

pub type ExponentPair64 = exponents::ExponentPair<f64>;
pub type TorusGrid64 = geometry::TorusGrid<f64>;
pub type TestFunction64 = functions::TestFunction<f64>;
pub type SurfaceSamples64<'g> = fourier::SurfaceSamples<'g, f64>;
