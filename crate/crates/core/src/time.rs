//! Exact rational time values.
//!
//! Every timestamp, interval endpoint and resolution is a [`Rational`]. Decimal
//! literals are parsed exactly, so `0.1` is `1/10` and never a binary float.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("empty numeric literal")]
    Empty,
    #[error("malformed numeric literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("negative value `{0}` where a non-negative rational is required")]
    Negative(String),
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `12`, `0.25`, `1/3` or `2.5e-3` into an exact non-negative rational.
pub fn parse_rational(text: &str) -> Result<Rational, RationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalError::Empty);
    }
    if text.starts_with('-') {
        return Err(RationalError::Negative(text.to_string()));
    }
    let text = text.strip_prefix('+').unwrap_or(text);
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_decimal(num).ok_or_else(|| RationalError::Malformed(text.to_string()))?;
        let den = parse_decimal(den).ok_or_else(|| RationalError::Malformed(text.to_string()))?;
        if den.is_zero() {
            return Err(RationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(num / den);
    }
    parse_decimal(text).ok_or_else(|| RationalError::Malformed(text.to_string()))
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(idx) => (&text[..idx], text[idx + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (whole, frac) = match mantissa.split_once('.') {
        Some((w, f)) => (w, f),
        None => (mantissa, ""),
    };
    if whole.is_empty() || !whole.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if !frac.bytes().all(|b| b.is_ascii_digit()) || (mantissa.contains('.') && frac.is_empty()) {
        return None;
    }
    let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Canonical text: a finite decimal when one exists, otherwise `a/b`.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let mut den = value.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", value.numer(), value.denom());
    }
    let places = twos.max(fives);
    let scaled = value * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (whole, frac) = digits.split_at(digits.len() - places);
    let sign = if value.is_negative() { "-" } else { "" };
    format!("{sign}{whole}.{frac}")
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}


/// Serde adapter: writes canonical text (`"0.1"`, `"1/3"`), reads either a
/// JSON number or such a string without going through `f64`.
pub mod serde_rational {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use super::{format_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        super::rational_from_json(&value).map_err(D::Error::custom)
    }
}

pub fn rational_from_json(value: &serde_json::Value) -> Result<Rational, RationalError> {
    match value {
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(RationalError::Malformed(other.to_string())),
    }
}

/// Integral and finite-decimal values become JSON numbers, anything else a
/// `"a/b"` string.
pub fn rational_to_json(value: &Rational) -> serde_json::Value {
    let text = format_rational(value);
    if text.contains('/') {
        return serde_json::Value::String(text);
    }
    serde_json::from_str(&text).unwrap_or(serde_json::Value::String(text))
}
