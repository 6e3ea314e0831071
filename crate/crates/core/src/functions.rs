//! Closed-form test families on `R^d`: isotropic Gaussians, modulated
//! rectangle indicators adapted to a circle cap ("Knapp tubes"), and tensor
//! products of planar factors. Each family knows its pointwise values, its
//! exact Fourier transform under the `e^{-2πi x·ξ}` convention, and its exact
//! `L^p` norms, so restriction ratios never depend on ambient quadrature.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::cast;
use crate::scalar::Float;

/// Tangential aperture constant of the tube: half-widths are
/// `APERTURE/δ` (tangent) and `APERTURE/δ²` (normal). The value `1/(8π)`
/// keeps both sinc arguments of the transform below the half-height point on
/// the whole dual cap of angular width `δ`, so `|f̂| ≥ |R|/2` there.
fn knapp_aperture<T: Float>() -> T {
    T::one() / (cast::<T>(8.0) * T::PI())
}

/// Orthonormal frame and half-widths of a Knapp tube at center angle `ϰ₀`:
/// the rectangle lives in coordinates `(x·tangent, x·center_freq)`.
#[derive(Clone, Copy, Debug)]
pub struct KnappFrame<T> {
    /// Unit frequency `ξ₀ = (cos 2πϰ₀, sin 2πϰ₀)`, also the normal direction.
    pub center_freq: [T; 2],
    /// Unit tangent `(−sin 2πϰ₀, cos 2πϰ₀)` to the circle at `ξ₀`.
    pub tangent: [T; 2],
    /// Half-width `1/(8πδ)` along the tangent.
    pub half_tangent: T,
    /// Half-width `1/(8πδ²)` along the normal.
    pub half_normal: T,
}

impl<T: Float> KnappFrame<T> {
    pub fn new(delta: T, center_angle: T) -> Self {
        let theta = cast::<T>(2.0) * T::PI() * center_angle;
        let a = knapp_aperture::<T>();
        Self {
            center_freq: [theta.cos(), theta.sin()],
            tangent: [-theta.sin(), theta.cos()],
            half_tangent: a / delta,
            half_normal: a / (delta * delta),
        }
    }

    /// Area of the rectangle, `4·half_tangent·half_normal = δ^{-3}/(16π²)`.
    pub fn area(&self) -> T {
        cast::<T>(4.0) * self.half_tangent * self.half_normal
    }

    /// Rotated coordinates `(x·tangent, x·normal)` of a planar point.
    pub fn local_coords(&self, x: &[T]) -> (T, T) {
        (
            x[0] * self.tangent[0] + x[1] * self.tangent[1],
            x[0] * self.center_freq[0] + x[1] * self.center_freq[1],
        )
    }
}

/// A test function with closed-form transform and norms.
#[derive(Clone, Debug)]
pub enum TestFunction<T> {
    /// `exp(−π|x|²/s²)` on `R^d`.
    IsotropicGaussian { scale: T, dim: usize },
    /// `e^{2πi x·ξ₀} χ_R(x)` on `R²`, `R` the rectangle of [`KnappFrame`].
    KnappTube { delta: T, center_angle: T },
    /// Product `∏ f_k(x_k)` of planar (dim-2) factors on consecutive blocks.
    TensorProduct { factors: Vec<TestFunction<T>> },
}

impl<T: Float> TestFunction<T> {
    pub fn gaussian(scale: T, dim: usize) -> Result<Self> {
        if !(scale > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "Gaussian scale must be positive, got {scale}"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "Gaussian dimension must be at least 1".into(),
            ));
        }
        Ok(Self::IsotropicGaussian { scale, dim })
    }

    pub fn knapp_tube(delta: T, center_angle: T) -> Result<Self> {
        let quarter = T::one() / cast::<T>(4.0);
        if !(delta > T::zero()) || delta > quarter {
            return Err(Error::InvalidParameter(format!(
                "tube width must lie in (0, 1/4], got {delta}"
            )));
        }
        if center_angle < T::zero() || center_angle >= T::one() {
            return Err(Error::AngleOutOfRange(
                center_angle.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(Self::KnappTube {
            delta,
            center_angle,
        })
    }

    pub fn tensor(factors: Vec<TestFunction<T>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter(
                "tensor product needs at least one factor".into(),
            ));
        }
        for f in &factors {
            match f {
                TestFunction::TensorProduct { .. } => {
                    return Err(Error::InvalidParameter(
                        "tensor factors must be planar families, not nested tensors".into(),
                    ))
                }
                _ if f.dim() != 2 => {
                    return Err(Error::InvalidParameter(format!(
                        "tensor factors must have dimension 2, got {}",
                        f.dim()
                    )))
                }
                _ => {}
            }
        }
        Ok(Self::TensorProduct { factors })
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        match self {
            Self::IsotropicGaussian { dim, .. } => *dim,
            Self::KnappTube { .. } => 2,
            Self::TensorProduct { factors } => factors.iter().map(|f| f.dim()).sum(),
        }
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: len,
            });
        }
        Ok(())
    }

    /// Pointwise value `f(x)`.
    pub fn evaluate(&self, x: &[T]) -> Result<Complex<T>> {
        self.check_dim(x.len())?;
        Ok(match self {
            Self::IsotropicGaussian { scale, .. } => {
                let r2: T = x.iter().map(|&v| v * v).sum();
                Complex::new((-T::PI() * r2 / (*scale * *scale)).exp(), T::zero())
            }
            Self::KnappTube {
                delta,
                center_angle,
            } => {
                let frame = KnappFrame::new(*delta, *center_angle);
                let (u, v) = frame.local_coords(x);
                if u.abs() > frame.half_tangent || v.abs() > frame.half_normal {
                    Complex::new(T::zero(), T::zero())
                } else {
                    let phase = cast::<T>(2.0)
                        * T::PI()
                        * (x[0] * frame.center_freq[0] + x[1] * frame.center_freq[1]);
                    Complex::cis(phase)
                }
            }
            Self::TensorProduct { factors } => {
                let mut acc = Complex::new(T::one(), T::zero());
                let mut offset = 0;
                for f in factors {
                    let d = f.dim();
                    acc = acc * f.evaluate(&x[offset..offset + d])?;
                    offset += d;
                }
                acc
            }
        })
    }

    /// Exact Fourier transform `f̂(ξ) = ∫ f(x) e^{−2πi x·ξ} dx`.
    pub fn fourier_closed_form(&self, xi: &[T]) -> Result<Complex<T>> {
        self.check_dim(xi.len())?;
        Ok(match self {
            Self::IsotropicGaussian { scale, dim } => {
                let r2: T = xi.iter().map(|&v| v * v).sum();
                let s = *scale;
                let amp = s.powi(*dim as i32);
                Complex::new(amp * (-T::PI() * s * s * r2).exp(), T::zero())
            }
            Self::KnappTube {
                delta,
                center_angle,
            } => {
                // Modulation shifts the transform of χ_R to ξ₀; the rotated
                // rectangle transforms to a product of two sinc factors.
                let frame = KnappFrame::new(*delta, *center_angle);
                let zeta = [xi[0] - frame.center_freq[0], xi[1] - frame.center_freq[1]];
                let (zt, zn) = frame.local_coords(&zeta);
                let two = cast::<T>(2.0);
                let value = frame.area()
                    * sinc(two * frame.half_tangent * zt)
                    * sinc(two * frame.half_normal * zn);
                Complex::new(value, T::zero())
            }
            Self::TensorProduct { factors } => {
                let mut acc = Complex::new(T::one(), T::zero());
                let mut offset = 0;
                for f in factors {
                    let d = f.dim();
                    acc = acc * f.fourier_closed_form(&xi[offset..offset + d])?;
                    offset += d;
                }
                acc
            }
        })
    }

    /// Exact `L^p(R^d)` norm for finite `p ≥ 1`.
    pub fn lp_norm_closed_form(&self, p: T) -> Result<T> {
        if !(p >= T::one() - cast::<T>(1e-12)) {
            return Err(Error::InvalidParameter(format!(
                "Lebesgue index must be >= 1, got {p}"
            )));
        }
        Ok(match self {
            Self::IsotropicGaussian { scale, dim } => {
                // ∫ e^{−pπ|x|²/s²} dx = (s²/p)^{d/2} over R^d.
                let d = cast::<T>(*dim as f64);
                scale.powf(d / p) * p.powf(-d / (cast::<T>(2.0) * p))
            }
            Self::KnappTube { delta, .. } => {
                // |f| is the indicator of the rectangle, so ‖f‖_p = |R|^{1/p}.
                let frame = KnappFrame::new(*delta, T::zero());
                frame.area().powf(T::one() / p)
            }
            Self::TensorProduct { factors } => {
                let mut acc = T::one();
                for f in factors {
                    acc = acc * f.lp_norm_closed_form(p)?;
                }
                acc
            }
        })
    }
}

/// Normalized `sinc(u) = sin(πu)/(πu)`, with the removable singularity filled
/// by its Taylor value for tiny arguments.
fn sinc<T: Float>(u: T) -> T {
    let x = T::PI() * u;
    if x.abs() < cast::<T>(1e-4) {
        let x2 = x * x;
        T::one() - x2 / cast::<T>(6.0) * (T::one() - x2 / cast::<T>(20.0))
    } else {
        x.sin() / x
    }
}
