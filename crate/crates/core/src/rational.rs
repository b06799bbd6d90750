//! Exact rational arithmetic used for expectations and ratio bounds.

use num_rational::Ratio;
use std::fmt::Display;

use num_integer::Integer;
use num_traits::Signed;

pub type Rational = Ratio<i128>;

pub fn rational(numer: i128, denom: i128) -> Rational {
    Ratio::new(numer, denom)
}

pub fn from_int(value: usize) -> Rational {
    Ratio::from_integer(value as i128)
}

/// Renders `value` as a decimal string with exactly `digits` fractional digits,
/// rounding half away from zero.
pub fn to_decimal<T>(value: &Ratio<T>, digits: u32) -> String
where
    T: Clone + Integer + Signed + Display + From<u8>,
{
    let scale: T = num_traits::pow(T::from(10), digits as usize);
    let numer = value.numer().abs() * scale.clone();
    let denom = value.denom().clone();
    let (mut scaled, rem) = numer.div_rem(&denom);
    if rem.clone() + rem >= denom {
        scaled = scaled + T::one();
    }
    let sign = if value.is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{scaled}");
    }
    let (int_part, frac_part) = scaled.div_rem(&scale);
    format!(
        "{sign}{int_part}.{:0>width$}",
        frac_part.to_string(),
        width = digits as usize
    )
}

/// Parses a decimal literal such as `0.1`, `2`, or `-1.25` exactly.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: i128 = n.trim().parse().ok()?;
        let d: i128 = d.trim().parse().ok()?;
        return (d != 0).then(|| Ratio::new(n, d));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    if frac_part.len() > 30 {
        return None;
    }
    let int_value: i128 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().ok()?
    };
    let scale = 10i128.checked_pow(frac_part.len() as u32)?;
    let frac_value: i128 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().ok()?
    };
    let magnitude = int_value.checked_mul(scale)?.checked_add(frac_value)?;
    let value = Ratio::new(magnitude, scale);
    Some(if negative { -value } else { value })
}


/// Serde adapter writing a rational as the string `"p/q"` (or `"p"`).
pub mod text {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse_decimal(&raw).ok_or_else(|| D::Error::custom(format!("bad rational `{raw}`")))
    }
}

/// [`text`] for optional values.
pub mod text_opt {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|r| {
            super::parse_decimal(&r)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{r}`")))
        })
        .transpose()
    }
}
