//! Scalar carriers for tensors.
//!
//! Every tensor operation only needs a commutative semiring: an addition and
//! a multiplication with identities, distributivity and annihilation by zero.
//! Real numbers, naturals and booleans all qualify. Operations that need more
//! (square roots, division) are restricted to [`RealScalar`].

use std::fmt::{self, Debug, Display};

use num_traits::{Float, One, Zero};
use serde::{Deserialize, Serialize};

/// Runtime tag naming the carrier of a [`Semiring`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemiringKind {
    Real,
    Boolean,
    Natural,
}

impl SemiringKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SemiringKind::Real => "real",
            SemiringKind::Boolean => "boolean",
            SemiringKind::Natural => "natural",
        }
    }
}

impl Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A commutative semiring `(T, add, mul, zero, one)`.
pub trait Semiring: Copy + Debug + PartialEq + Send + Sync + 'static {
    const KIND: SemiringKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Converts a literal from a file or a test. Returns `None` when the value
    /// is not a member of the carrier (e.g. `0.5` for booleans).
    fn from_f64(value: f64) -> Option<Self>;

    /// Lossy view used for reporting.
    fn to_f64(self) -> f64;
}

macro_rules! impl_float_semiring {
    ($($t:ty),*) => {$(
        impl Semiring for $t {
            const KIND: SemiringKind = SemiringKind::Real;

            #[inline]
            fn zero() -> Self { Zero::zero() }
            #[inline]
            fn one() -> Self { One::one() }
            #[inline]
            fn add(self, rhs: Self) -> Self { self + rhs }
            #[inline]
            fn mul(self, rhs: Self) -> Self { self * rhs }

            fn from_f64(value: f64) -> Option<Self> {
                if value.is_finite() {
                    num_traits::cast(value)
                } else {
                    None
                }
            }

            fn to_f64(self) -> f64 {
                num_traits::cast(self).unwrap_or(f64::NAN)
            }
        }
    )*};
}

macro_rules! impl_natural_semiring {
    ($($t:ty),*) => {$(
        impl Semiring for $t {
            const KIND: SemiringKind = SemiringKind::Natural;

            #[inline]
            fn zero() -> Self { Zero::zero() }
            #[inline]
            fn one() -> Self { One::one() }
            #[inline]
            fn add(self, rhs: Self) -> Self { self + rhs }
            #[inline]
            fn mul(self, rhs: Self) -> Self { self * rhs }

            fn from_f64(value: f64) -> Option<Self> {
                if value.is_finite() && value >= 0.0 && value.fract() == 0.0 {
                    num_traits::cast(value)
                } else {
                    None
                }
            }

            fn to_f64(self) -> f64 {
                num_traits::cast(self).unwrap_or(f64::NAN)
            }
        }
    )*};
}

impl_float_semiring!(f32, f64);
impl_natural_semiring!(u32, u64);

/// `(𝔹, ∨, ∧)`: relations instead of linear maps.
impl Semiring for bool {
    const KIND: SemiringKind = SemiringKind::Boolean;

    #[inline]
    fn zero() -> Self {
        false
    }
    #[inline]
    fn one() -> Self {
        true
    }
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self || rhs
    }
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        self && rhs
    }

    fn from_f64(value: f64) -> Option<Self> {
        if value == 0.0 {
            Some(false)
        } else if value == 1.0 {
            Some(true)
        } else {
            None
        }
    }

    fn to_f64(self) -> f64 {
        if self {
            1.0
        } else {
            0.0
        }
    }
}

/// Real carriers, where norms and cosine similarity make sense.
pub trait RealScalar: Semiring + Float {}

impl<T: Semiring + Float> RealScalar for T {}
