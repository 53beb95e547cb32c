//! Scalar types usable as amplitudes and matrix elements.
//!
//! Everything in the crate is generic over [`Scalar`]: a commutative ring
//! with conjugation and a magnitude for deviation reports. Floating types
//! additionally implement [`FloatScalar`], which is what normalization
//! (the `1/sqrt(N!)` factors) and random sampling need. Rationals implement
//! only [`Scalar`] and give bit-exact results.

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{Num, ToPrimitive};

/// Ring scalar used for amplitudes, tensor coefficients and matrix elements.
pub trait Scalar:
    Num + Neg<Output = Self> + Copy + PartialEq + Debug + Send + Sync + 'static
{
    /// Absolute tolerance used when comparing results in this scalar type.
    /// Zero for exact types.
    const TOLERANCE: f64;

    fn conj(self) -> Self;

    /// Modulus as `f64`, used only for reporting deviations.
    fn modulus(self) -> f64;

    fn from_i64(n: i64) -> Self;
}

/// Floating-point scalar, real or complex.
pub trait FloatScalar: Scalar {
    /// Builds a scalar from real and imaginary parts. Real types drop `im`.
    fn from_parts(re: f64, im: f64) -> Self;

    fn re(self) -> f64;

    fn im(self) -> f64;

    fn from_f64(x: f64) -> Self {
        Self::from_parts(x, 0.0)
    }
}

macro_rules! impl_real_float {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const TOLERANCE: f64 = $tol;

            #[inline]
            fn conj(self) -> Self {
                self
            }

            #[inline]
            fn modulus(self) -> f64 {
                self.abs() as f64
            }

            #[inline]
            fn from_i64(n: i64) -> Self {
                n as $t
            }
        }

        impl FloatScalar for $t {
            #[inline]
            fn from_parts(re: f64, _im: f64) -> Self {
                re as $t
            }

            #[inline]
            fn re(self) -> f64 {
                self as f64
            }

            #[inline]
            fn im(self) -> f64 {
                0.0
            }
        }

        impl Scalar for Complex<$t> {
            const TOLERANCE: f64 = $tol;

            #[inline]
            fn conj(self) -> Self {
                Complex::conj(&self)
            }

            #[inline]
            fn modulus(self) -> f64 {
                self.norm() as f64
            }

            #[inline]
            fn from_i64(n: i64) -> Self {
                Complex::new(n as $t, 0.0)
            }
        }

        impl FloatScalar for Complex<$t> {
            #[inline]
            fn from_parts(re: f64, im: f64) -> Self {
                Complex::new(re as $t, im as $t)
            }

            #[inline]
            fn re(self) -> f64 {
                self.re as f64
            }

            #[inline]
            fn im(self) -> f64 {
                self.im as f64
            }
        }
    };
}

impl_real_float!(f64, 1e-12);
impl_real_float!(f32, 1e-5);

impl Scalar for Rational64 {
    const TOLERANCE: f64 = 0.0;

    fn conj(self) -> Self {
        self
    }

    fn modulus(self) -> f64 {
        num_traits::Signed::abs(&self)
            .to_f64()
            .unwrap_or(f64::INFINITY)
    }

    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }
}

impl Scalar for Complex<Rational64> {
    const TOLERANCE: f64 = 0.0;

    fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }

    fn modulus(self) -> f64 {
        self.re.modulus().hypot(self.im.modulus())
    }

    fn from_i64(n: i64) -> Self {
        Complex::new(Rational64::from_integer(n), Rational64::from_integer(0))
    }
}

/// Tolerance for comparing values of magnitude up to `scale`:
/// `S::TOLERANCE * max(1, scale)`.
pub fn scaled_tolerance<S: Scalar>(scale: f64) -> f64 {
    S::TOLERANCE * scale.max(1.0)
}

/// Largest modulus among `values`, zero when empty.
pub fn max_modulus<S: Scalar>(values: impl IntoIterator<Item = S>) -> f64 {
    values.into_iter().map(Scalar::modulus).fold(0.0, f64::max)
}
