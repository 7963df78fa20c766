//! Scalar traits the numerical core is generic over.
//!
//! [`Scalar`] is the field-like bound used by inner products, Gram matrices,
//! determinants and rank; it is implemented for `f32`, `f64` and the exact
//! [`BigRational`]. [`Real`] adds square roots and is what the n-norm and
//! everything above it requires.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::linalg::Tolerance;

/// Ordered field element with absolute value and lossy f64 conversions.
pub trait Scalar:
    Num + Signed + PartialOrd + Clone + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact, so zero tests need no threshold.
    const EXACT: bool;

    /// Tolerance policy suited to the type's precision.
    fn default_tolerance() -> Tolerance;

    /// NaN and infinities are rejected at construction of every domain type.
    fn is_finite_value(&self) -> bool;

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::zero)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn default_tolerance() -> Tolerance {
        Tolerance::default()
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn default_tolerance() -> Tolerance {
        Tolerance {
            zero: 1e-4,
            rel: 1e-4,
            sym: 1e-6,
        }
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn default_tolerance() -> Tolerance {
        Tolerance::default()
    }

    fn is_finite_value(&self) -> bool {
        !self.denom().is_zero()
    }
}

/// Floating-point scalar: everything that needs `sqrt`.
pub trait Real: Scalar + Float {}

impl Real for f64 {}
impl Real for f32 {}

/// Exact rational from an integer, used by exact-arithmetic callers.
pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
