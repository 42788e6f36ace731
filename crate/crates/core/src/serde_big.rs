//! Big integers serialised as plain JSON numbers.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};

pub fn number(decimal: &str) -> serde_json::Number {
    serde_json::Number::from_str(decimal).expect("decimal integer is a valid JSON number")
}

pub fn int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    number(&v.to_string()).serialize(s)
}

pub fn uint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    number(&v.to_string()).serialize(s)
}

pub fn uint_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let nums: Vec<serde_json::Number> = v.iter().map(|x| number(&x.to_string())).collect();
    nums.serialize(s)
}
