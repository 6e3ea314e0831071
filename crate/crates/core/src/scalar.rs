//! Scalar abstractions: a floating-point trait for the numerics and an
//! ordered-field trait for exponent arithmetic that also admits exact
//! rationals.

use num_rational::Ratio;
use num_traits::{FloatConst, FromPrimitive, Num, ToPrimitive, Zero};

/// Floating-point scalar the numerical kernels are generic over.
pub trait Float:
    num_traits::Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + core::iter::Sum
    + core::fmt::Debug
    + core::fmt::Display
    + core::fmt::LowerExp
    + Send
    + Sync
    + 'static
{
}

impl Float for f32 {}
impl Float for f64 {}

/// Scalar usable as a Lebesgue index coordinate: an ordered field with a
/// boundary comparison slack. Floats compare with tolerance `1e-12`; exact
/// types report zero slack and compare exactly.
pub trait IndexScalar: Num + PartialOrd + Copy + core::fmt::Debug + core::fmt::Display {
    fn boundary_tol() -> Self;

    fn from_int(n: i64) -> Self;

    /// Lossy view for error messages and reporting.
    fn to_f64_lossy(self) -> f64;
}

impl IndexScalar for f64 {
    fn boundary_tol() -> Self {
        1e-12
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn to_f64_lossy(self) -> f64 {
        self
    }
}

impl IndexScalar for f32 {
    fn boundary_tol() -> Self {
        1e-12
    }

    fn from_int(n: i64) -> Self {
        n as f32
    }

    fn to_f64_lossy(self) -> f64 {
        f64::from(self)
    }
}

impl IndexScalar for Ratio<i64> {
    fn boundary_tol() -> Self {
        Self::zero()
    }

    fn from_int(n: i64) -> Self {
        Self::from_integer(n)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// `|a - b| <= tol` in a type that may lack `abs`.
pub(crate) fn within_tol<T: IndexScalar>(a: T, b: T) -> bool {
    let diff = if a < b { b - a } else { a - b };
    diff <= T::boundary_tol()
}

/// Strict `a < b`, treating values within tolerance as equal.
pub(crate) fn strictly_less<T: IndexScalar>(a: T, b: T) -> bool {
    a < b && !within_tol(a, b)
}

/// `a <= b` up to tolerance.
pub(crate) fn leq<T: IndexScalar>(a: T, b: T) -> bool {
    a <= b || within_tol(a, b)
}

pub(crate) fn one_third<T: IndexScalar>() -> T {
    T::one() / T::from_int(3)
}

pub(crate) fn four_thirds<T: IndexScalar>() -> T {
    T::from_int(4) / T::from_int(3)
}
