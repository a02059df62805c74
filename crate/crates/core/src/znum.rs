//! Residues modulo an odd integer.
//!
//! Only what the non-half-sum machinery needs: canonical reduction and the
//! half-sum `r` with `2r = a + b (mod v)`, which is well defined because 2 is
//! invertible whenever `v` is odd.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd modulus `v >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(v: u64) -> Result<Self> {
        if v < 3 || v.is_multiple_of(2) {
            return Err(Error::InvalidModulus(v));
        }
        Ok(Modulus(v))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// The inverse of 2, `(v + 1) / 2`.
    #[inline]
    pub fn half(self) -> u64 {
        self.0.div_ceil(2)
    }

    /// Canonical representative of `x` in `[0, v)`.
    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.0 as i128) as u64
    }

    /// Half-sum of two canonical values, without the `Residue` wrapper.
    #[inline]
    pub fn half_sum_raw(self, a: u64, b: u64) -> u64 {
        let v = self.0 as u128;
        (((a as u128 + b as u128) % v) * self.half() as u128 % v) as u64
    }

    pub fn residue(self, x: i64) -> Residue {
        Residue {
            value: self.reduce(x),
            modulus: self,
        }
    }
}

impl<'de> Deserialize<'de> for Modulus {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = u64::deserialize(d)?;
        Modulus::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z_v` held in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Reduce a signed integer into `Z_v`.
pub fn reduce(x: i64, m: Modulus) -> Residue {
    m.residue(x)
}

/// The unique `r` with `2r = a + b (mod v)`.
pub fn half_sum(a: Residue, b: Residue) -> Result<Residue> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch(a.modulus.0, b.modulus.0));
    }
    let m = a.modulus;
    Ok(Residue {
        value: m.half_sum_raw(a.value, b.value),
        modulus: m,
    })
}
