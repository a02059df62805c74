//! Number types the scheme calculators can produce.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};

/// A field-like scalar built from exact integer pieces.
///
/// [`BigRational`] gives exact results; `f64` and `f32` are for bulk sweeps
/// where only plotting precision matters.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Send + Sync {
    fn from_big(n: &BigUint) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact text when the type is exact, otherwise the shortest round-trip
    /// decimal.
    fn exact_string(&self) -> String;

    fn from_u64(n: u64) -> Self {
        Self::from_big(&BigUint::from(n))
    }

    fn ratio(num: &BigUint, den: &BigUint) -> Self {
        Self::from_big(num) / Self::from_big(den)
    }
}

impl Scalar for f64 {
    fn from_big(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn exact_string(&self) -> String {
        format!("{self}")
    }
}

impl Scalar for f32 {
    fn from_big(n: &BigUint) -> Self {
        n.to_f32().unwrap_or(f32::INFINITY)
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn exact_string(&self) -> String {
        format!("{self}")
    }
}

impl Scalar for BigRational {
    fn from_big(n: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(n.clone()))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn exact_string(&self) -> String {
        if self.denom() == &BigInt::from(1u8) || self.numer().is_zero() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn ratio(num: &BigUint, den: &BigUint) -> Self {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }
}
