//! Small numeric utilities shared across modules: compensated summation,
//! f64-literal casting, and least-squares line fits in log or linear scale.

use crate::error::{Error, Result};
use crate::scalar::Float;
use num_traits::Num;

/// Cast an `f64` literal into the working scalar.
pub(crate) fn cast<T: Float>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Kahan compensated accumulator. Works for complex values too, where the
/// correction applies componentwise through the field operations.
#[derive(Clone, Copy, Debug)]
pub(crate) struct KahanSum<V> {
    sum: V,
    carry: V,
}

impl<V: Num + Copy> KahanSum<V> {
    pub fn new() -> Self {
        Self {
            sum: V::zero(),
            carry: V::zero(),
        }
    }

    pub fn add(&mut self, value: V) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> V {
        self.sum
    }
}

/// Ordinary least squares `y ~ intercept + slope * x`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct LineFit<T> {
    pub slope: T,
    #[allow(dead_code)]
    pub intercept: T,
    /// Root-mean-square of the fit residuals in `y` units.
    pub residual_rms: T,
}

pub(crate) fn linear_fit<T: Float>(xs: &[T], ys: &[T]) -> Result<LineFit<T>> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "line fit needs >= 2 paired points, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let n = cast::<T>(xs.len() as f64);
    let mean = |v: &[T]| v.iter().copied().sum::<T>() / n;
    let mx = mean(xs);
    let my = mean(ys);
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
    }
    if sxx == T::zero() {
        return Err(Error::InvalidParameter(
            "line fit abscissae are all identical".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let r = y - (intercept + slope * x);
        ss = ss + r * r;
    }
    Ok(LineFit {
        slope,
        intercept,
        residual_rms: (ss / n).sqrt(),
    })
}

/// Least squares on `(ln x, ln y)`. Requires strictly positive data.
pub(crate) fn log_log_fit<T: Float>(xs: &[T], ys: &[T]) -> Result<LineFit<T>> {
    let lx = positive_logs(xs, "abscissa")?;
    let ly = positive_logs(ys, "ordinate")?;
    linear_fit(&lx, &ly)
}

fn positive_logs<T: Float>(vals: &[T], what: &str) -> Result<Vec<T>> {
    vals.iter()
        .map(|&v| {
            if v > T::zero() {
                Ok(v.ln())
            } else {
                Err(Error::InvalidParameter(format!(
                    "log fit {what} must be positive, got {v}"
                )))
            }
        })
        .collect()
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence. Nodes are returned in increasing order; weights sum
/// to 2 (machine exact up to rounding).
pub(crate) fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1, "quadrature rule needs at least one node");
    let mut nodes = vec![0.0f64; m];
    let mut weights = vec![0.0f64; m];
    let half = m.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess for the i-th root (counted from +1 down).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_m and P_m' by upward recurrence.
            let mut p0 = 1.0f64;
            let mut p1 = x;
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[m - 1 - i] = x;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        // The middle node of an odd rule is exactly 0.
        nodes[m / 2] = 0.0;
        let mut p0 = 1.0f64;
        let mut p1 = 0.0f64;
        for k in 2..=m {
            let kf = k as f64;
            let p2 = (-(kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = m as f64 * (0.0 * p1 - p0) / (0.0 - 1.0);
        weights[m / 2] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

/// [`gauss_legendre`] mapped to `[a, b]` and cast into the working scalar.
pub(crate) fn gauss_legendre_on<T: Float>(m: usize, a: T, b: T) -> (Vec<T>, Vec<T>) {
    let (xs, ws) = gauss_legendre(m);
    let mid = (a + b) / cast::<T>(2.0);
    let rad = (b - a) / cast::<T>(2.0);
    let nodes = xs.iter().map(|&x| mid + rad * cast::<T>(x)).collect();
    let weights = ws.iter().map(|&w| rad * cast::<T>(w)).collect();
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn kahan_sums_ill_conditioned_series() {
        let mut acc = KahanSum::<f64>::new();
        acc.add(1.0);
        for _ in 0..10_000_000 {
            acc.add(1e-16);
        }
        assert_relative_eq!(acc.value(), 1.0 + 1e-9, max_relative = 1e-12);
    }

    #[test]
    fn recovers_exact_power_law() {
        let xs: Vec<f64> = vec![1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(-1.5)).collect();
        let fit = log_log_fit(&xs, &ys).unwrap();
        assert_relative_eq!(fit.slope, -1.5, epsilon = 1e-12);
        assert_relative_eq!(fit.intercept, 3.0f64.ln(), epsilon = 1e-12);
        assert!(fit.residual_rms < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_log_data() {
        assert!(log_log_fit(&[1.0, 2.0], &[1.0, 0.0]).is_err());
        assert!(linear_fit(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn gauss_legendre_matches_reference_rule() {
        // Five-point rule, exact reference values.
        let (x, w) = gauss_legendre(5);
        let x_ref = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683,
            0.0,
            0.538_469_310_105_683,
            0.906_179_845_938_664,
        ];
        let w_ref = [
            0.236_926_885_056_189,
            0.478_628_670_499_366,
            0.568_888_888_888_889,
            0.478_628_670_499_366,
            0.236_926_885_056_189,
        ];
        for i in 0..5 {
            assert_relative_eq!(x[i], x_ref[i], epsilon = 1e-14);
            assert_relative_eq!(w[i], w_ref[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        // An m-point rule is exact through degree 2m-1.
        for m in [2usize, 3, 8, 32, 64, 128] {
            let (x, w) = gauss_legendre(m);
            let total: f64 = w.iter().sum();
            assert_relative_eq!(total, 2.0, epsilon = 1e-13);
            let deg = 2 * m - 1;
            let val: f64 = x
                .iter()
                .zip(&w)
                .map(|(&xi, &wi)| wi * xi.powi(deg as i32))
                .sum();
            assert!(val.abs() < 1e-12, "m={m}: odd power should vanish");
            let even = 2 * m - 2;
            let got: f64 = x
                .iter()
                .zip(&w)
                .map(|(&xi, &wi)| wi * xi.powi(even as i32))
                .sum();
            let exact = 2.0 / (even as f64 + 1.0);
            assert_relative_eq!(got, exact, max_relative = 1e-11);
        }
    }

    #[test]
    fn gauss_legendre_handles_analytic_integrands() {
        // ∫_{-1}^{1} e^x dx and a shifted interval via the mapped rule.
        let (x, w) = gauss_legendre(24);
        let got: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.exp()).sum();
        assert_relative_eq!(got, 1f64.exp() - (-1f64).exp(), epsilon = 1e-14);

        let (xs, ws) = gauss_legendre_on::<f64>(24, 0.0, 3.0);
        let got: f64 = xs.iter().zip(&ws).map(|(&xi, &wi)| wi * xi.cos()).sum();
        assert_relative_eq!(got, 3f64.sin(), epsilon = 1e-13);
    }
}
