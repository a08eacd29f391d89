//! JSON encoding of arbitrary-precision integers.
//!
//! Integers travel as plain JSON numbers of any length. Anything with a
//! fraction or exponent is rejected, so `1.0` is not an integer here.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::ser::{SerializeSeq, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

/// Parses the textual form of a JSON number as an integer.
pub fn parse_integer_literal(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(text).ok()
}

pub fn number_to_bigint(n: &Number) -> Option<BigInt> {
    parse_integer_literal(&n.to_string())
}

pub fn bigint_to_number(x: &BigInt) -> Number {
    Number::from_str(&x.to_string()).expect("integer literal is a valid JSON number")
}

struct Int<'a>(&'a BigInt);

impl Serialize for Int<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = Number::from_str(&self.0.to_string()).map_err(S::Error::custom)?;
        n.serialize(s)
    }
}

struct IntRow<'a>(&'a [BigInt]);

impl Serialize for IntRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&Int(x))?;
        }
        seq.end()
    }
}

fn de_int<'de, D: Deserializer<'de>>(n: Number) -> Result<BigInt, D::Error> {
    number_to_bigint(&n).ok_or_else(|| D::Error::custom(format!("expected an integer, found {n}")))
}

pub fn serialize_rows<S: Serializer>(rows: &[Vec<BigInt>], _cols: usize, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&IntRow(r))?;
    }
    seq.end()
}

/// Reads a rectangular array of integer arrays; returns rows and column count.
pub fn deserialize_rows<'de, D: Deserializer<'de>>(d: D) -> Result<(Vec<Vec<BigInt>>, usize), D::Error> {
    let raw: Vec<Vec<Number>> = Vec::deserialize(d)?;
    let cols = raw.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(raw.len());
    for (i, r) in raw.into_iter().enumerate() {
        if r.len() != cols {
            return Err(D::Error::custom(format!("row {i} has {} entries, expected {cols}", r.len())));
        }
        rows.push(r.into_iter().map(de_int::<D>).collect::<Result<Vec<_>, _>>()?);
    }
    Ok((rows, cols))
}

/// `#[serde(with = "crate::json::int")]` for a single `BigInt`.
pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Int(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        de_int::<D>(Number::deserialize(d)?)
    }
}

/// `#[serde(with = "crate::json::int_vec")]` for `Vec<BigInt>`.
pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        IntRow(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Number>::deserialize(d)?.into_iter().map(de_int::<D>).collect()
    }
}

/// `#[serde(with = "crate::json::opt_int_vec")]` for `Option<Vec<BigInt>>`.
pub mod opt_int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&IntRow(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        Option::<Vec<Number>>::deserialize(d)?
            .map(|v| v.into_iter().map(de_int::<D>).collect())
            .transpose()
    }
}

/// `#[serde(with = "crate::json::opt_int")]` for `Option<BigInt>`.
pub mod opt_int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&Int(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<Number>::deserialize(d)?.map(de_int::<D>).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_integer_literal("-12"), Some(BigInt::from(-12)));
        assert_eq!(
            parse_integer_literal("123456789012345678901234567890").map(|x| x.to_string()),
            Some("123456789012345678901234567890".to_string())
        );
        assert_eq!(parse_integer_literal("1.0"), None);
        assert_eq!(parse_integer_literal("1e3"), None);
        assert_eq!(parse_integer_literal("-"), None);
    }
}
