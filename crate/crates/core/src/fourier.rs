//! Sampling Fourier transforms on the torus, the separability (partial
//! transform) identity for tensor products, and a brute-force quadrature
//! oracle for closed-form transforms.
//!
//! The restriction path always evaluates closed forms; the oracle exists to
//! check them, never to replace them.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::functions::{KnappFrame, TestFunction};
use crate::geometry::TorusGrid;
use crate::numeric::{cast, gauss_legendre_on, KahanSum};
use crate::scalar::Float;

/// Values of a function at every node of a [`TorusGrid`], in the grid's
/// odometer order (first factor fastest).
#[derive(Clone, Debug)]
pub struct SurfaceSamples<'g, T> {
    grid: &'g TorusGrid<T>,
    values: Vec<Complex<T>>,
}

impl<'g, T: Float> SurfaceSamples<'g, T> {
    /// Wraps precomputed node values; the count must match the grid.
    pub fn from_values(grid: &'g TorusGrid<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::DimensionMismatch {
                expected: grid.node_count(),
                actual: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    /// Samples an arbitrary function of the ambient node coordinates.
    pub fn sample<F>(grid: &'g TorusGrid<T>, mut f: F) -> Self
    where
        F: FnMut(&[T]) -> Complex<T>,
    {
        let mut values = Vec::with_capacity(grid.node_count());
        grid.for_each_node(|_, point| values.push(f(point)));
        Self { grid, values }
    }

    pub fn grid(&self) -> &'g TorusGrid<T> {
        self.grid
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Samples the closed-form Fourier transform of `f` at every grid node: the
/// trace `f̂|_{T^n}` as discrete surface data.
pub fn restrict_ft_to_torus<'g, T: Float>(
    f: &TestFunction<T>,
    grid: &'g TorusGrid<T>,
) -> Result<SurfaceSamples<'g, T>> {
    if f.dim() != grid.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: grid.ambient_dim(),
            actual: f.dim(),
        });
    }
    Ok(SurfaceSamples::sample(grid, |point| {
        f.fourier_closed_form(point)
            .expect("dimension checked above")
    }))
}

/// Computes the transform of a two-factor tensor product through the partial
/// route — transform the second block first, then the first — which
/// collapses to `ĝ(ξ)·ĥ(η)`, and checks it against the direct
/// four-dimensional closed form. A mismatch beyond relative `1e-12` signals
/// an implementation bug in one of the two paths.
pub fn partial_ft_factorized<T: Float>(
    f: &TestFunction<T>,
    xi: &[T],
    eta: &[T],
) -> Result<Complex<T>> {
    let factors = match f {
        TestFunction::TensorProduct { factors } if factors.len() == 2 => factors,
        TestFunction::TensorProduct { factors } => {
            return Err(Error::InvalidParameter(format!(
                "partial transform expects exactly 2 factors, got {}",
                factors.len()
            )))
        }
        _ => {
            return Err(Error::InvalidParameter(
                "partial transform needs a tensor-product function".into(),
            ))
        }
    };
    if xi.len() != 2 || eta.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: xi.len().max(eta.len()),
        });
    }
    let inner = factors[1].fourier_closed_form(eta)?;
    let factored = factors[0].fourier_closed_form(xi)? * inner;

    let joint = [xi[0], xi[1], eta[0], eta[1]];
    let direct = f.fourier_closed_form(&joint)?;
    let scale = direct.norm().max(T::one());
    let gap = (factored - direct).norm();
    if gap > cast::<T>(1e-12) * scale {
        return Err(Error::FactorizationMismatch(
            (gap / scale).to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(factored)
}

/// Truncation and resolution of the quadrature oracle.
#[derive(Clone, Copy, Debug)]
pub struct OracleConfig<T> {
    /// Half-width of the integration box along each Gaussian axis. Indicator
    /// (tube) axes always integrate over their exact support instead.
    pub radius: T,
    /// Gauss–Legendre nodes per axis.
    pub nodes_per_axis: usize,
}

impl<T: Float> Default for OracleConfig<T> {
    fn default() -> Self {
        Self {
            radius: cast::<T>(6.0),
            nodes_per_axis: 128,
        }
    }
}

/// One integration axis of the oracle: Gauss–Legendre nodes along a unit
/// direction supported on at most two consecutive ambient coordinates.
struct AxisChart<T> {
    offset: usize,
    dir: [T; 2],
    nodes: Vec<T>,
    weights: Vec<T>,
}

fn build_charts<T: Float>(
    f: &TestFunction<T>,
    offset: usize,
    cfg: &OracleConfig<T>,
    charts: &mut Vec<AxisChart<T>>,
    tail: &mut T,
    whole_l1: T,
) -> Result<()> {
    match f {
        TestFunction::IsotropicGaussian { scale, dim } => {
            let r = cfg.radius;
            if !(r > T::zero()) {
                return Err(Error::InvalidParameter(
                    "oracle truncation radius must be positive".into(),
                ));
            }
            // Mass of the Gaussian outside the box, inflated by the L¹ mass
            // of the co-factors (|co-factors| integrate against the tail).
            let d = cast::<T>(*dim as f64);
            let s = *scale;
            let own = d * s.powi(*dim as i32 + 1) / (T::PI() * r)
                * (-T::PI() * r * r / (s * s)).exp();
            let own_l1 = s.powi(*dim as i32);
            *tail = *tail + own * (whole_l1 / own_l1);
            for i in 0..*dim {
                let (nodes, weights) = gauss_legendre_on(cfg.nodes_per_axis, -r, r);
                charts.push(AxisChart {
                    offset: offset + i,
                    dir: [T::one(), T::zero()],
                    nodes,
                    weights,
                });
            }
        }
        TestFunction::KnappTube {
            delta,
            center_angle,
        } => {
            // Integrate in the rotated frame over the exact support, so the
            // indicator edges never cross a quadrature panel.
            let frame = KnappFrame::new(*delta, *center_angle);
            for (dir, half) in [
                (frame.tangent, frame.half_tangent),
                (frame.center_freq, frame.half_normal),
            ] {
                let (nodes, weights) = gauss_legendre_on(cfg.nodes_per_axis, -half, half);
                charts.push(AxisChart {
                    offset,
                    dir,
                    nodes,
                    weights,
                });
            }
        }
        TestFunction::TensorProduct { factors } => {
            let mut local = offset;
            for g in factors {
                build_charts(g, local, cfg, charts, tail, whole_l1)?;
                local += g.dim();
            }
        }
    }
    Ok(())
}

/// Brute-force Fourier transform `∫ f(x) e^{−2πi x·ξ} dx` by tensorized
/// Gauss–Legendre quadrature over a truncated box (Gaussian axes) or the
/// exact support (tube axes). Serves as the independent oracle for
/// [`TestFunction::fourier_closed_form`]; `f` is evaluated honestly at every
/// product node.
pub fn numeric_ft<T: Float>(
    f: &TestFunction<T>,
    xi: &[T],
    cfg: &OracleConfig<T>,
) -> Result<Complex<T>> {
    if xi.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            actual: xi.len(),
        });
    }
    if cfg.nodes_per_axis < 2 {
        return Err(Error::InvalidParameter(
            "oracle needs at least 2 nodes per axis".into(),
        ));
    }
    let whole_l1 = f.lp_norm_closed_form(T::one())?;
    let mut charts = Vec::new();
    let mut tail = T::zero();
    build_charts(f, 0, cfg, &mut charts, &mut tail, whole_l1)?;
    if tail > cast::<T>(1e-12) {
        return Err(Error::InsufficientTruncation(
            tail.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let total: usize = charts
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.nodes.len()))
        .filter(|&t| t <= 1_000_000_000)
        .ok_or_else(|| {
            Error::InvalidParameter("oracle grid exceeds one billion nodes".into())
        })?;
    debug_assert!(total > 0);

    // Per-axis phase caches: weight · e^{−2πi (dir·ξ) t} at every node.
    let two_pi = cast::<T>(2.0) * T::PI();
    let caches: Vec<Vec<Complex<T>>> = charts
        .iter()
        .map(|c| {
            let mut proj = c.dir[0] * xi[c.offset];
            if c.dir[1] != T::zero() {
                proj = proj + c.dir[1] * xi[c.offset + 1];
            }
            c.nodes
                .iter()
                .zip(&c.weights)
                .map(|(&t, &w)| Complex::cis(-two_pi * proj * t) * w)
                .collect()
        })
        .collect();

    let d = f.dim();
    let mut digits = vec![0usize; charts.len()];
    let mut x = vec![T::zero(); d];
    let mut acc = KahanSum::<Complex<T>>::new();
    'nodes: loop {
        for v in x.iter_mut() {
            *v = T::zero();
        }
        let mut phase_weight = Complex::new(T::one(), T::zero());
        for (k, c) in charts.iter().enumerate() {
            let t = c.nodes[digits[k]];
            x[c.offset] = x[c.offset] + c.dir[0] * t;
            if c.dir[1] != T::zero() {
                x[c.offset + 1] = x[c.offset + 1] + c.dir[1] * t;
            }
            phase_weight = phase_weight * caches[k][digits[k]];
        }
        let val = f.evaluate(&x).expect("dimension checked above");
        acc.add(val * phase_weight);
        let mut k = 0;
        loop {
            digits[k] += 1;
            if digits[k] < charts[k].nodes.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
            if k == charts.len() {
                break 'nodes;
            }
        }
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const EXP_NEG_PI: f64 = 4.321_391_826_377_225e-2;
    const EXP_NEG_TWO_PI: f64 = 1.867_442_731_707_988_8e-3;

    fn gaussian(s: f64, d: usize) -> TestFunction<f64> {
        TestFunction::gaussian(s, d).unwrap()
    }

    fn knapp(delta: f64, angle: f64) -> TestFunction<f64> {
        TestFunction::knapp_tube(delta, angle).unwrap()
    }

    fn rect_area(delta: f64) -> f64 {
        1.0 / (16.0 * std::f64::consts::PI.powi(2) * delta.powi(3))
    }

    #[test]
    fn restriction_of_unit_gaussian_is_constant() {
        let grid = TorusGrid::<f64>::new(2, 8).unwrap();
        let samples = restrict_ft_to_torus(&gaussian(1.0, 4), &grid).unwrap();
        assert_eq!(samples.len(), 64);
        for v in samples.values() {
            assert_abs_diff_eq!(v.re, EXP_NEG_TWO_PI, epsilon = 1e-15);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn restriction_rejects_dimension_mismatch() {
        let grid = TorusGrid::<f64>::new(2, 8).unwrap();
        assert!(restrict_ft_to_torus(&gaussian(1.0, 2), &grid).is_err());
    }

    #[test]
    fn restriction_of_tensor_factors_nodewise() {
        let grid = TorusGrid::<f64>::new(2, 12).unwrap();
        let g = knapp(0.25, 0.0);
        let h = gaussian(0.8, 2);
        let t = TestFunction::tensor(vec![g.clone(), h.clone()]).unwrap();
        let samples = restrict_ft_to_torus(&t, &grid).unwrap();
        let n = grid.nodes_per_circle();
        for (j, pt_j) in grid.circle_points().iter().enumerate() {
            for (k, pt_k) in grid.circle_points().iter().enumerate() {
                let expect = g.fourier_closed_form(&pt_j[..]).unwrap()
                    * h.fourier_closed_form(&pt_k[..]).unwrap();
                let got = samples.values()[j + n * k];
                assert!((got - expect).norm() < 1e-14);
            }
        }
        // At the tube's center angle the first factor sits at its peak |R|.
        let peak = samples.values()[0].norm();
        let expect = rect_area(0.25) * h.fourier_closed_form(&[1.0, 0.0]).unwrap().re;
        assert_abs_diff_eq!(peak, expect, epsilon = 1e-12);
    }

    #[test]
    fn partial_transform_matches_direct() {
        let g = gaussian(1.0, 2);
        let t = TestFunction::tensor(vec![g.clone(), g.clone()]).unwrap();
        let v = partial_ft_factorized(&t, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(v.re, EXP_NEG_TWO_PI, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);

        let mixed = TestFunction::tensor(vec![knapp(0.25, 0.0), gaussian(1.0, 2)]).unwrap();
        let freqs = [
            ([0.0, 0.0], [0.0, 0.0]),
            ([1.0, 0.2], [-0.3, 0.4]),
            ([0.7, -1.1], [0.9, 0.1]),
            ([-0.2, 0.5], [1.5, -0.6]),
            ([2.0, 1.0], [-1.0, -1.0]),
            ([0.1, 0.0], [0.0, 2.0]),
            ([1.3, 1.3], [0.4, 0.4]),
            ([-1.7, 0.6], [0.2, -0.9]),
            ([0.55, -0.25], [-0.45, 1.05]),
            ([1.9, -1.9], [1.1, 0.8]),
        ];
        for (xi, eta) in freqs {
            let joint = [xi[0], xi[1], eta[0], eta[1]];
            let direct = mixed.fourier_closed_form(&joint).unwrap();
            let part = partial_ft_factorized(&mixed, &xi, &eta).unwrap();
            assert!((part - direct).norm() <= 1e-12 * direct.norm().max(1.0));
        }

        // Zero frequency gives the product of the factor integrals.
        let v0 = partial_ft_factorized(&t, &[0.0, 0.0], &[0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(v0.re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn partial_transform_rejects_bad_shapes() {
        let g = gaussian(1.0, 2);
        assert!(partial_ft_factorized(&g, &[0.0, 0.0], &[0.0, 0.0]).is_err());
        let t = TestFunction::tensor(vec![g.clone(), g.clone()]).unwrap();
        assert!(partial_ft_factorized(&t, &[0.0], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn oracle_reproduces_gaussian_transform() {
        let cfg = OracleConfig {
            radius: 6.0,
            nodes_per_axis: 128,
        };
        let got = numeric_ft(&gaussian(1.0, 2), &[1.0, 0.0], &cfg).unwrap();
        assert_abs_diff_eq!(got.re, EXP_NEG_PI, epsilon = 1e-10);
        assert_abs_diff_eq!(got.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn oracle_reproduces_tube_peak() {
        let cfg = OracleConfig {
            radius: 6.0,
            nodes_per_axis: 48,
        };
        let got = numeric_ft(&knapp(0.25, 0.0), &[1.0, 0.0], &cfg).unwrap();
        let want = rect_area(0.25);
        assert!((got.re - want).abs() <= 1e-8 * want, "{} vs {want}", got.re);
        assert!(got.im.abs() <= 1e-10 * want);
    }

    #[test]
    fn oracle_handles_rotated_tube_off_peak() {
        let cfg = OracleConfig {
            radius: 6.0,
            nodes_per_axis: 48,
        };
        let k = knapp(0.25, 0.37);
        for xi in [[0.4, -0.6], [1.2, 0.9], [0.0, 0.0]] {
            let got = numeric_ft(&k, &xi, &cfg).unwrap();
            let want = k.fourier_closed_form(&xi).unwrap();
            assert!(
                (got - want).norm() <= 1e-8 * want.norm().max(1e-3),
                "xi={xi:?}: {got:?} vs {want:?}"
            );
        }
    }

    #[test]
    fn oracle_handles_mixed_tensor() {
        // Gauss–Legendre nodes thin out mid-interval, so the box must stay
        // snug around the Gaussian bump for moderate node counts.
        let cfg = OracleConfig {
            radius: 3.5,
            nodes_per_axis: 48,
        };
        let t = TestFunction::tensor(vec![knapp(0.25, 0.1), gaussian(1.0, 2)]).unwrap();
        let xi = [0.9, 0.5, -0.4, 1.1];
        let got = numeric_ft(&t, &xi, &cfg).unwrap();
        let want = t.fourier_closed_form(&xi).unwrap();
        assert!(
            (got - want).norm() <= 1e-8 * want.norm().max(1e-3),
            "{got:?} vs {want:?}"
        );
    }

    #[test]
    fn oracle_flags_insufficient_truncation() {
        let cfg = OracleConfig {
            radius: 1.0,
            nodes_per_axis: 32,
        };
        match numeric_ft(&gaussian(1.0, 2), &[0.0, 0.0], &cfg) {
            Err(Error::InsufficientTruncation(b)) => assert!(b > 1e-12),
            other => panic!("expected truncation error, got {other:?}"),
        }
    }
}
