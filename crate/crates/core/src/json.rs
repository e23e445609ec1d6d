//! Exact JSON rendering of big numbers.
//!
//! Integers are written as bare JSON numbers in full decimal. Non-integral
//! rationals are written as `"p/q"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

pub(crate) struct Int<'a>(pub &'a BigInt);

impl Serialize for Int<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(self.0.to_string()).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub(crate) struct Rat<'a>(pub &'a BigRational);

impl Serialize for Rat<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            Int(self.0.numer()).serialize(s)
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}
