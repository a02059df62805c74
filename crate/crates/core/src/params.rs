use std::collections::BTreeMap;

use serde::Serialize;

use crate::Rational;

/// Caching-scheme quantities realised by a PDA.
///
/// `memory_ratio = Z/F` and `load = S/F`, both kept as reduced fractions.
/// `gain_profile` maps an occurrence count to the number of symbols that
/// occur that many times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeParams {
    #[serde(rename = "K")]
    pub users: u64,
    #[serde(rename = "F")]
    pub subpacketization: u64,
    #[serde(rename = "Z")]
    pub stars_per_column: u64,
    #[serde(rename = "S")]
    pub symbols: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub memory_ratio: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub load: Rational,
    pub gain_profile: BTreeMap<u64, u64>,
}

impl SchemeParams {
    pub fn new(k: u64, f: u64, z: u64, s: u64, gain_profile: BTreeMap<u64, u64>) -> Self {
        SchemeParams {
            users: k,
            subpacketization: f,
            stars_per_column: z,
            symbols: s,
            memory_ratio: Rational::new(z, f),
            load: Rational::new(s, f),
            gain_profile,
        }
    }

    /// `(K, F, Z, S)`.
    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (
            self.users,
            self.subpacketization,
            self.stars_per_column,
            self.symbols,
        )
    }

    /// The coded caching gain when every symbol occurs equally often.
    pub fn uniform_gain(&self) -> Option<u64> {
        match self.gain_profile.len() {
            1 => self.gain_profile.keys().next().copied(),
            _ => None,
        }
    }
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}
