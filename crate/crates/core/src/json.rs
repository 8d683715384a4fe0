//! JSON conventions shared by the report types and the CLI.
//!
//! Integers that fit in 64 bits are emitted as JSON numbers, larger ones as
//! decimal strings. Rationals are always strings, `"p/q"` or `"p"`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::Serializer;
use serde_json::Value;

use crate::exact::{parse_rational, Rational};
use crate::{Error, Result};

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn ints_value(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

pub fn rational_value(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn int<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn ints<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&int_value(x))?;
    }
    seq.end()
}

pub fn rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn rationals<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

/// Accepts a JSON integer or a decimal string.
pub fn parse_int(value: &Value) -> Result<BigInt> {
    match value {
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            Ok(n.to_string().parse().expect("integer literal"))
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("not an integer: {s:?}"))),
        other => Err(Error::invalid(format!(
            "expected an integer, found {other}"
        ))),
    }
}

/// Accepts `"p/q"`, `"p"`, or a JSON integer.
pub fn parse_rational_value(value: &Value) -> Result<Rational> {
    match value {
        Value::String(s) => parse_rational(s),
        Value::Number(_) => parse_int(value).map(Rational::from_integer),
        other => Err(Error::invalid(format!(
            "expected a rational, found {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(int_value(&BigInt::from(-28)), Value::from(-28));
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_value(&huge), Value::String(huge.to_string()));
        assert_eq!(parse_int(&int_value(&huge)).unwrap(), huge);
    }

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rational_value(&ratio(21, 2)), Value::String("21/2".into()));
        assert_eq!(parse_rational_value(&Value::from(3)).unwrap(), ratio(3, 1));
        assert_eq!(
            parse_rational_value(&Value::String("-4/6".into())).unwrap(),
            ratio(-2, 3)
        );
        assert!(parse_rational_value(&Value::Bool(true)).is_err());
        assert!(parse_int(&serde_json::json!(1.5)).is_err());
    }
}
