//! Discrete `L^q` norms of surface samples and the mixed-norm interchange
//! inequality on weighted arrays.

use crate::error::{Error, Result};
use crate::fourier::SurfaceSamples;
use crate::numeric::{cast, KahanSum};
use crate::scalar::Float;

/// `(Σ_nodes weight·|value|^q)^{1/q}` under the grid's mass-1 product
/// weights. On constant samples this returns the constant's modulus for
/// every `q`.
pub fn lq_surface_norm<T: Float>(samples: &SurfaceSamples<'_, T>, q: T) -> Result<T> {
    check_index("q", q)?;
    let w = samples.grid().node_weight();
    let mut acc = KahanSum::<T>::new();
    for v in samples.values() {
        acc.add(v.norm().powf(q));
    }
    Ok((acc.value() * w).powf(T::one() / q))
}

/// Weighted `ℓ^q` norm of raw nonnegative data against explicit weights.
fn weighted_lq<T: Float>(values: impl Iterator<Item = T>, weights: &[T], q: T) -> T {
    let mut acc = KahanSum::<T>::new();
    for (v, &w) in values.zip(weights) {
        acc.add(v.powf(q) * w);
    }
    acc.value().powf(T::one() / q)
}

/// Outcome of the norm-interchange comparison.
#[derive(Clone, Copy, Debug)]
pub struct MinkowskiReport<T> {
    /// `‖ ‖v‖_{L^p(ambient)} ‖_{L^q(surface)}`.
    pub lhs: T,
    /// `‖ ‖v‖_{L^q(surface)} ‖_{L^p(ambient)}`.
    pub rhs: T,
    /// Whether `lhs ≤ rhs·(1 + 1e-12)`.
    pub holds: bool,
    /// True when `q ≥ p`, the direction in which the inequality is a theorem.
    pub guaranteed: bool,
}

/// Compares the two orders of mixed integration for a nonnegative array
/// `v[surface_node][ambient_node]` (row-major): taking the inner `L^p` norm
/// over the ambient index first and the outer `L^q` over the surface index
/// never exceeds the interchanged order when `q ≥ p`. Both weight vectors
/// are arbitrary nonnegative measures.
pub fn minkowski_check<T: Float>(
    values: &[T],
    surface_weights: &[T],
    ambient_weights: &[T],
    p: T,
    q: T,
) -> Result<MinkowskiReport<T>> {
    check_index("p", p)?;
    check_index("q", q)?;
    let (ns, na) = (surface_weights.len(), ambient_weights.len());
    if ns == 0 || na == 0 {
        return Err(Error::InvalidParameter(
            "mixed-norm check needs nonempty weights".into(),
        ));
    }
    if values.len() != ns * na {
        return Err(Error::DimensionMismatch {
            expected: ns * na,
            actual: values.len(),
        });
    }
    if values.iter().any(|&v| v < T::zero())
        || surface_weights.iter().any(|&w| w < T::zero())
        || ambient_weights.iter().any(|&w| w < T::zero())
    {
        return Err(Error::InvalidParameter(
            "mixed-norm check expects nonnegative values and weights".into(),
        ));
    }

    // lhs: ambient L^p inside, surface L^q outside.
    let inner_p: Vec<T> = (0..ns)
        .map(|s| {
            weighted_lq(
                values[s * na..(s + 1) * na].iter().copied(),
                ambient_weights,
                p,
            )
        })
        .collect();
    let lhs = weighted_lq(inner_p.into_iter(), surface_weights, q);

    // rhs: surface L^q inside, ambient L^p outside.
    let inner_q: Vec<T> = (0..na)
        .map(|a| {
            weighted_lq(
                (0..ns).map(|s| values[s * na + a]),
                surface_weights,
                q,
            )
        })
        .collect();
    let rhs = weighted_lq(inner_q.into_iter(), ambient_weights, p);

    Ok(MinkowskiReport {
        lhs,
        rhs,
        holds: lhs <= rhs * (T::one() + cast::<T>(1e-12)),
        guaranteed: q >= p,
    })
}

fn check_index<T: Float>(name: &str, v: T) -> Result<()> {
    if !(v >= T::one() - cast::<T>(1e-12)) {
        return Err(Error::InvalidParameter(format!(
            "Lebesgue index {name} must be >= 1, got {v}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::TestFunction;
    use crate::fourier::restrict_ft_to_torus;
    use crate::geometry::TorusGrid;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_complex::Complex;
    use proptest::prelude::*;

    const EXP_NEG_TWO_PI: f64 = 1.867_442_731_707_988_8e-3;

    #[test]
    fn constant_samples_have_constant_norm() {
        let grid = TorusGrid::<f64>::new(2, 8).unwrap();
        let c = Complex::new(-0.3, 0.4); // modulus 1/2
        let samples = crate::fourier::SurfaceSamples::sample(&grid, |_| c);
        for q in [1.0, 1.5, 2.0, 3.7] {
            assert_relative_eq!(lq_surface_norm(&samples, q).unwrap(), 0.5, epsilon = 1e-14);
        }
    }

    #[test]
    fn restricted_gaussian_norm_is_its_constant_value() {
        let grid = TorusGrid::<f64>::new(2, 16).unwrap();
        let f = TestFunction::gaussian(1.0, 4).unwrap();
        let samples = restrict_ft_to_torus(&f, &grid).unwrap();
        for q in [1.0, 2.0, 4.0] {
            assert_relative_eq!(
                lq_surface_norm(&samples, q).unwrap(),
                EXP_NEG_TWO_PI,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn cosine_mode_has_exact_l2_norm() {
        let grid = TorusGrid::<f64>::new(1, 32).unwrap();
        let samples =
            crate::fourier::SurfaceSamples::sample(&grid, |x| Complex::new(x[0], 0.0));
        let got = lq_surface_norm(&samples, 2.0).unwrap();
        assert_relative_eq!(got, 0.5f64.sqrt(), epsilon = 1e-14);
        assert!(lq_surface_norm(&samples, 0.5).is_err());
    }

    #[test]
    fn interchange_is_equality_for_separable_data() {
        let a = [0.7, 1.3, 0.1];
        let b = [2.0, 0.5, 1.1, 0.9];
        let sw = [0.2, 0.5, 0.3];
        let aw = [0.1, 0.4, 0.25, 0.25];
        let values: Vec<f64> = a
            .iter()
            .flat_map(|&ai| b.iter().map(move |&bj| ai * bj))
            .collect();
        let rep = minkowski_check(&values, &sw, &aw, 1.2, 2.0).unwrap();
        assert_relative_eq!(rep.lhs, rep.rhs, epsilon = 1e-14);
        assert!(rep.holds && rep.guaranteed);
    }

    #[test]
    fn interchange_is_equality_when_exponents_match() {
        let values = [0.3f64, 1.7, 0.0, 2.2, 0.9, 1.1];
        let sw = [0.5, 0.5];
        let aw = [0.2, 0.3, 0.5];
        let rep = minkowski_check(&values, &sw, &aw, 1.7, 1.7).unwrap();
        assert_abs_diff_eq!(rep.lhs, rep.rhs, epsilon = 1e-14 * rep.rhs.max(1.0));
        assert!(rep.holds);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(minkowski_check(&[1.0, 2.0], &[1.0], &[1.0], 1.0, 2.0).is_err());
        assert!(minkowski_check(&[1.0, -2.0], &[1.0], &[0.5, 0.5], 1.0, 2.0).is_err());
        assert!(minkowski_check(&[1.0], &[1.0], &[1.0], 0.5, 2.0).is_err());
        assert!(minkowski_check::<f64>(&[], &[], &[1.0], 1.0, 2.0).is_err());
    }

    proptest! {
        #[test]
        fn interchange_holds_for_random_arrays(
            values in proptest::collection::vec(0.0f64..10.0, 12),
            sw in proptest::collection::vec(0.01f64..1.0, 3),
            aw in proptest::collection::vec(0.01f64..1.0, 4),
            p in 1.0f64..3.0,
            extra in 0.0f64..3.0,
        ) {
            let q = p + extra;
            let rep = minkowski_check(&values, &sw, &aw, p, q).unwrap();
            prop_assert!(rep.holds, "lhs={} rhs={}", rep.lhs, rep.rhs);
        }

        #[test]
        fn surface_norm_is_monotone_in_q(
            raw in proptest::collection::vec(-2.0f64..2.0, 16),
            q1 in 1.0f64..4.0,
            extra in 0.0f64..3.0,
        ) {
            // Hölder on a probability measure: smaller q gives smaller norm.
            let grid = TorusGrid::<f64>::new(1, 16).unwrap();
            let values: Vec<Complex<f64>> =
                raw.iter().map(|&v| Complex::new(v, 0.5 * v)).collect();
            let samples =
                crate::fourier::SurfaceSamples::from_values(&grid, values).unwrap();
            let n1 = lq_surface_norm(&samples, q1).unwrap();
            let n2 = lq_surface_norm(&samples, q1 + extra).unwrap();
            prop_assert!(n1 <= n2 * (1.0 + 1e-12), "{n1} vs {n2}");
        }
    }
}
