//! Serializes big integers as exact JSON numbers.

use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

pub(crate) fn biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    serde_json::Number::from_str(&v.to_string())
        .expect("decimal digits form a JSON number")
        .serialize(s)
}
