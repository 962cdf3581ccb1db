//! JSON encoding of big integers: a number when it fits in `i64`, otherwise
//! a decimal string. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Borrowing wrapper that serializes a `BigInt` in the mixed encoding.
pub struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// Owned counterpart of [`JsonInt`] used for deserialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigNum(pub BigInt);

impl Serialize for BigNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BigNum;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> Result<BigNum, E> {
                Ok(BigNum(BigInt::from(x)))
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> Result<BigNum, E> {
                Ok(BigNum(BigInt::from(x)))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<BigNum, E> {
                s.parse().map(BigNum).map_err(|_| E::custom(format!("not an integer: {s:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn value(x: &BigInt) -> serde_json::Value {
    serde_json::to_value(JsonInt(x)).expect("integers always serialize")
}

pub fn values(xs: &[BigInt]) -> serde_json::Value {
    serde_json::Value::Array(xs.iter().map(value).collect())
}

/// `#[serde(serialize_with = "json::big")]`
pub fn big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    JsonInt(x).serialize(s)
}

/// `#[serde(serialize_with = "json::big_seq")]`
pub fn big_seq<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&JsonInt(x))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_are_numbers_and_large_are_strings() {
        assert_eq!(value(&BigInt::from(-12)), serde_json::json!(-12));
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(value(&huge), serde_json::json!("123456789012345678901234567890"));
        let back: Vec<BigNum> =
            serde_json::from_value(serde_json::json!([3, "123456789012345678901234567890"])).unwrap();
        assert_eq!(back[1].0, huge);
    }
}
