//! The flat torus `T^n` inside `R^{2n}` and product quadrature grids for its
//! surface measure.
//!
//! Each circle factor is parametrized by an angle `ϰ ∈ [0,1)` through
//! `(cos 2πϰ, sin 2πϰ)`, and carries the mass-1 measure `dϰ` (not arclength).
//! The product measure over `n` factors therefore has total mass 1. Grids use
//! equal-weight trapezoidal nodes `ϰ_j = j/N`, which integrate periodic smooth
//! functions with spectral accuracy and trigonometric polynomials of
//! per-factor degree `< N` exactly.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{cast, KahanSum};
use crate::scalar::Float;

/// Embeds angle coordinates into `R^{2n}`:
/// `(ϰ_1, …, ϰ_n) ↦ (cos 2πϰ_1, sin 2πϰ_1, …, cos 2πϰ_n, sin 2πϰ_n)`.
///
/// Angles must lie in `[0, 1)`.
pub fn torus_point<T: Float>(angles: &[T]) -> Result<Vec<T>> {
    if angles.is_empty() {
        return Err(Error::InvalidParameter(
            "torus point needs at least one angle".into(),
        ));
    }
    let mut out = Vec::with_capacity(2 * angles.len());
    for &a in angles {
        if a < T::zero() || a >= T::one() {
            return Err(Error::AngleOutOfRange(a.to_f64().unwrap_or(f64::NAN)));
        }
        let theta = cast::<T>(2.0) * T::PI() * a;
        out.push(theta.cos());
        out.push(theta.sin());
    }
    Ok(out)
}

/// Uniform product grid on `T^n` with `N` nodes per circle, realizing the
/// mass-1 surface measure: every node carries weight `N^{-n}`.
#[derive(Clone, Debug)]
pub struct TorusGrid<T> {
    factors: usize,
    nodes_per_circle: usize,
    angles: Vec<T>,
    circle_points: Vec<[T; 2]>,
}

impl<T: Float> TorusGrid<T> {
    /// `factors >= 1` circle factors, `nodes_per_circle >= 4` trapezoid nodes.
    pub fn new(factors: usize, nodes_per_circle: usize) -> Result<Self> {
        if factors == 0 {
            return Err(Error::InvalidParameter(
                "torus grid needs at least one circle factor".into(),
            ));
        }
        if nodes_per_circle < 4 {
            return Err(Error::InvalidParameter(format!(
                "torus grid needs at least 4 nodes per circle, got {nodes_per_circle}"
            )));
        }
        nodes_per_circle
            .checked_pow(factors as u32)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "node count {nodes_per_circle}^{factors} overflows"
                ))
            })?;
        let inv_n = T::one() / cast::<T>(nodes_per_circle as f64);
        let mut angles = Vec::with_capacity(nodes_per_circle);
        let mut circle_points = Vec::with_capacity(nodes_per_circle);
        for j in 0..nodes_per_circle {
            let a = cast::<T>(j as f64) * inv_n;
            let theta = cast::<T>(2.0) * T::PI() * a;
            angles.push(a);
            circle_points.push([theta.cos(), theta.sin()]);
        }
        Ok(Self {
            factors,
            nodes_per_circle,
            angles,
            circle_points,
        })
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn nodes_per_circle(&self) -> usize {
        self.nodes_per_circle
    }

    /// Ambient dimension `2n` of the embedding space.
    pub fn ambient_dim(&self) -> usize {
        2 * self.factors
    }

    /// Total number of product nodes, `N^n`.
    pub fn node_count(&self) -> usize {
        self.nodes_per_circle.pow(self.factors as u32)
    }

    /// Quadrature weight of a single product node, `N^{-n}`.
    pub fn node_weight(&self) -> T {
        (T::one() / cast::<T>(self.nodes_per_circle as f64)).powi(self.factors as i32)
    }

    /// The shared per-factor angle nodes `j/N`.
    pub fn circle_angles(&self) -> &[T] {
        &self.angles
    }

    /// The shared per-factor embedded points `(cos 2πϰ_j, sin 2πϰ_j)`.
    pub fn circle_points(&self) -> &[[T; 2]] {
        &self.circle_points
    }

    /// Angle coordinates of the node with per-factor indices `digits`.
    pub fn node_angles(&self, digits: &[usize]) -> Result<Vec<T>> {
        self.check_digits(digits)?;
        Ok(digits.iter().map(|&j| self.angles[j]).collect())
    }

    /// Ambient `R^{2n}` coordinates of the node with per-factor indices `digits`.
    pub fn ambient_point(&self, digits: &[usize]) -> Result<Vec<T>> {
        self.check_digits(digits)?;
        let mut out = Vec::with_capacity(2 * self.factors);
        for &j in digits {
            out.push(self.circle_points[j][0]);
            out.push(self.circle_points[j][1]);
        }
        Ok(out)
    }

    fn check_digits(&self, digits: &[usize]) -> Result<()> {
        if digits.len() != self.factors {
            return Err(Error::DimensionMismatch {
                expected: self.factors,
                actual: digits.len(),
            });
        }
        if let Some(&j) = digits.iter().find(|&&j| j >= self.nodes_per_circle) {
            return Err(Error::InvalidParameter(format!(
                "node index {j} exceeds grid resolution {}",
                self.nodes_per_circle
            )));
        }
        Ok(())
    }

    /// Visits every product node in a fixed odometer order (first factor
    /// cycles fastest), passing the angle coordinates and the embedded
    /// ambient point. The flat visit index of digits `(j_1, …, j_n)` is
    /// `j_1 + N·j_2 + … + N^{n-1}·j_n`.
    pub fn for_each_node<F>(&self, mut visit: F)
    where
        F: FnMut(&[T], &[T]),
    {
        let n = self.factors;
        let mut digits = vec![0usize; n];
        let mut angle_buf = vec![T::zero(); n];
        let mut point_buf = vec![T::zero(); 2 * n];
        for k in 0..n {
            self.write_factor(k, 0, &mut angle_buf, &mut point_buf);
        }
        'nodes: loop {
            visit(&angle_buf, &point_buf);
            let mut k = 0;
            loop {
                digits[k] += 1;
                if digits[k] == self.nodes_per_circle {
                    digits[k] = 0;
                } else {
                    self.write_factor(k, digits[k], &mut angle_buf, &mut point_buf);
                    break;
                }
                self.write_factor(k, 0, &mut angle_buf, &mut point_buf);
                k += 1;
                if k == n {
                    break 'nodes;
                }
            }
        }
    }

    /// Equal-weight product quadrature of `integrand` over all nodes, with
    /// compensated summation in the deterministic node order of
    /// [`Self::for_each_node`].
    pub fn quadrature_with<F>(&self, mut integrand: F) -> Complex<T>
    where
        F: FnMut(&[T], &[T]) -> Complex<T>,
    {
        let mut acc = KahanSum::<Complex<T>>::new();
        self.for_each_node(|angles, point| acc.add(integrand(angles, point)));
        acc.value() * self.node_weight()
    }

    fn write_factor(&self, k: usize, j: usize, angle_buf: &mut [T], point_buf: &mut [T]) {
        angle_buf[k] = self.angles[j];
        point_buf[2 * k] = self.circle_points[j][0];
        point_buf[2 * k + 1] = self.circle_points[j][1];
    }
}

/// Product quadrature of a function of the ambient point: approximates
/// `∫_{T^n} integrand(ξ) dσ_n(ξ)` with equal weights `N^{-n}`; exact for
/// trigonometric polynomials of per-factor degree `< N`.
pub fn surface_quadrature<T, F>(grid: &TorusGrid<T>, mut integrand: F) -> Complex<T>
where
    T: Float,
    F: FnMut(&[T]) -> Complex<T>,
{
    grid.quadrature_with(|_, point| integrand(point))
}
