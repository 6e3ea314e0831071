//! Lebesgue exponent arithmetic and the admissible-region predicates.
//!
//! The restriction inequality on `T^n` holds exactly for `1 <= p < 4/3` and
//! `q <= p'/3`, independent of `n`; its dual extension statement holds for
//! `p' > 4` and `q' >= (p'/3)'`. Predicates here are generic over
//! [`IndexScalar`], so they run with float tolerance (`1e-12`) or exactly
//! over rationals.

use crate::error::{Error, Result};
use crate::scalar::{four_thirds, leq, one_third, strictly_less, within_tol, IndexScalar};

/// A Lebesgue index that may be the conjugate of 1. Kept as a dedicated
/// variant so region predicates branch on infinity explicitly instead of
/// comparing against a large sentinel float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent<T> {
    Finite(T),
    Infinity,
}

impl<T: IndexScalar> Exponent<T> {
    /// `1/e`, with `1/inf = 0`.
    pub fn reciprocal(self) -> T {
        match self {
            Exponent::Finite(v) => T::one() / v,
            Exponent::Infinity => T::zero(),
        }
    }

    /// Conjugation is an involution sending 1 to infinity and back.
    pub fn conjugate(self) -> Result<Exponent<T>> {
        match self {
            Exponent::Finite(v) => conjugate(v),
            Exponent::Infinity => Ok(Exponent::Finite(T::one())),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Exponent::Finite(_))
    }
}

/// Holder conjugate `p' = p/(p - 1)`; `p = 1` maps to [`Exponent::Infinity`].
pub fn conjugate<T: IndexScalar>(p: T) -> Result<Exponent<T>> {
    if p < T::one() && !within_tol(p, T::one()) {
        return Err(Error::InvalidParameter(format!(
            "Lebesgue index must be >= 1, got {p}"
        )));
    }
    if within_tol(p, T::one()) {
        return Ok(Exponent::Infinity);
    }
    Ok(Exponent::Finite(p / (p - T::one())))
}

/// An exponent pair `(p, q)`, both `>= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentPair<T> {
    p: T,
    q: T,
}

impl<T: IndexScalar> ExponentPair<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if v < T::one() {
                return Err(Error::InvalidParameter(format!(
                    "Lebesgue index {name} must be >= 1, got {v}"
                )));
            }
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn conjugates(&self) -> (Exponent<T>, Exponent<T>) {
        (
            conjugate(self.p).expect("validated at construction"),
            conjugate(self.q).expect("validated at construction"),
        )
    }
}

/// Whether `(p, q)` lies in the region where restriction to `T^n` holds:
/// `p < 4/3` strictly and `q <= p'/3` (no `q` constraint when `p = 1`).
/// The same region for every `n >= 1`.
pub fn torus_admissible<T: IndexScalar>(pair: &ExponentPair<T>) -> bool {
    if !strictly_less(pair.p, four_thirds::<T>()) {
        return false;
    }
    match conjugate(pair.p).expect("validated at construction") {
        Exponent::Infinity => true,
        Exponent::Finite(p_prime) => leq(pair.q, p_prime * one_third::<T>()),
    }
}

/// Conjectured region for restriction to the round sphere `S^{n-1}` in
/// `R^n`: `p < 2n/(n+1)` and `q <= p' (n-1)/(n+1)`. Ambient `n >= 2`;
/// `n = 2` reproduces the torus region.
pub fn sphere_conjecture_region<T: IndexScalar>(n: usize, pair: &ExponentPair<T>) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "sphere predicate needs ambient dimension >= 2, got {n}"
        )));
    }
    let np1 = T::from_int(n as i64 + 1);
    let p_max = T::from_int(2 * n as i64) / np1;
    if !strictly_less(pair.p, p_max) {
        return Ok(false);
    }
    Ok(match conjugate(pair.p).expect("validated at construction") {
        Exponent::Infinity => true,
        Exponent::Finite(p_prime) => {
            let bound = p_prime * T::from_int(n as i64 - 1) / np1;
            leq(pair.q, bound)
        }
    })
}

/// Dual (extension-side) region: `p' > 4` strictly and `q' >= (p'/3)'`.
/// Equivalent to [`torus_admissible`] under conjugation.
pub fn dual_extension_region<T: IndexScalar>(p_prime: T, q_prime: T) -> Result<bool> {
    dual_extension_region_ext(Exponent::Finite(p_prime), Exponent::Finite(q_prime))
}

/// [`dual_extension_region`] admitting the infinity marker, so conjugates of
/// `p = 1` or `q = 1` can be fed back in directly.
pub fn dual_extension_region_ext<T: IndexScalar>(
    p_prime: Exponent<T>,
    q_prime: Exponent<T>,
) -> Result<bool> {
    let four = T::from_int(4);
    let p_prime_ok = match p_prime {
        Exponent::Infinity => true,
        Exponent::Finite(v) => {
            if v < T::one() {
                return Err(Error::InvalidParameter(format!(
                    "Lebesgue index p' must be >= 1, got {v}"
                )));
            }
            strictly_less(four, v)
        }
    };
    if !p_prime_ok {
        return Ok(false);
    }
    // p' > 4 ensures p'/3 > 1, so its conjugate is finite: (p'/3)' = p'/(p'-3).
    let bound = match p_prime {
        Exponent::Infinity => Exponent::Finite(T::one()),
        Exponent::Finite(v) => Exponent::Finite(v / (v - T::from_int(3))),
    };
    Ok(match (q_prime, bound) {
        (Exponent::Infinity, _) => true,
        (Exponent::Finite(q), Exponent::Finite(b)) => {
            if q < T::one() {
                return Err(Error::InvalidParameter(format!(
                    "Lebesgue index q' must be >= 1, got {q}"
                )));
            }
            leq(b, q)
        }
        (Exponent::Finite(_), Exponent::Infinity) => unreachable!("bound is always finite"),
    })
}
