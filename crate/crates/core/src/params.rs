//! Code parameters and attributed bound values.

use crate::combinatorics::q_binomial;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Parameters (q, v, d; k) of a constant dimension code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub q: u64,
    pub v: u32,
    pub d: u32,
    pub k: u32,
}

/// Where a parameter set falls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regime {
    /// The maximum size is known outright.
    Trivial(BigUint),
    /// d = 2k after normalization.
    PartialSpread,
    General,
}

impl Params {
    pub fn new(q: u64, v: u32, d: u32, k: u32) -> Result<Self> {
        if crate::field::prime_power(q).is_none() {
            return Err(Error::Params(format!("q = {q} is not a prime power")));
        }
        if d % 2 == 1 {
            return Err(Error::Params(format!("d = {d} must be even")));
        }
        if k > v {
            return Err(Error::Params(format!("k = {k} exceeds v = {v}")));
        }
        Ok(Params { q, v, d, k })
    }

    /// Replaces k by min{k, v-k}; the maximum size is invariant under this.
    pub fn normalized(self) -> Params {
        Params { k: self.k.min(self.v - self.k), ..self }
    }

    pub fn regime(self) -> Regime {
        let n = self.normalized();
        if n.d > 2 * n.k {
            Regime::Trivial(BigUint::one())
        } else if n.d <= 2 {
            Regime::Trivial(q_binomial(n.v as u64, n.k as i64, n.q))
        } else if n.d == 2 * n.k {
            Regime::PartialSpread
        } else {
            Regime::General
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{}({},{};{})", self.q, self.v, self.d, self.k)
    }
}

/// A bound value together with the rule that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundValue {
    pub name: String,
    #[serde(with = "decimal")]
    pub value: BigUint,
    /// Parameters or sub-values used, for display.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub via: String,
}

impl BoundValue {
    pub fn new(name: impl Into<String>, value: BigUint) -> Self {
        BoundValue { name: name.into(), value, via: String::new() }
    }

    pub fn via(mut self, via: impl Into<String>) -> Self {
        self.via = via.into();
        self
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.via.is_empty() {
            write!(f, "{} ({})", self.value, self.name)
        } else {
            write!(f, "{} ({}: {})", self.value, self.name, self.via)
        }
    }
}

/// Big integers travel as decimal strings in JSON.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
