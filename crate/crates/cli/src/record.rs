//! The JSON run record.

use std::str::FromStr;

use fpzeta::{Flavor, Method, Params, ZetaPoly};
use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::input::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub ring: String,
    pub params: Params,
    pub p: u64,
    pub flavor: Flavor,
    pub method: String,
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    pub coefficients: Vec<BigUint>,
    /// timing and effort; left out of golden files
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub elapsed_ms: u64,
    /// search nodes for brute force, `Λ₂` visited for class2
    pub nodes: u64,
}

impl RunRecord {
    pub fn new(spec: &RingSpec, flavor: Flavor, method: Method, poly: &ZetaPoly, meta: Option<Meta>) -> Self {
        RunRecord {
            ring: spec.name.clone(),
            params: spec.params.clone(),
            p: poly.prime().get() as u64,
            flavor,
            method: method.as_str().to_string(),
            coefficients: poly.coefficients().to_vec(),
            meta,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn without_meta(&self) -> Self {
        RunRecord { meta: None, ..self.clone() }
    }
}

/// Exact integers, never floats or strings.
fn ser_big<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let nums: Vec<serde_json::Number> =
        v.iter().map(|b| serde_json::Number::from_str(&b.to_string()).expect("digits form a number")).collect();
    nums.serialize(s)
}

fn de_big<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
    let nums = Vec::<serde_json::Number>::deserialize(d)?;
    nums.iter()
        .map(|n| BigUint::from_str(&n.to_string()).map_err(|_| serde::de::Error::custom(format!("`{n}` is not a natural number"))))
        .collect()
}
