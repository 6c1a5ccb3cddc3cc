//! Exact rational helpers shared by the evaluators and the file formats.
//!
//! Rationals travel through JSON as strings (`"3/2"`, `"-7"`, `"0.125"`) so no
//! precision is lost on the way in or out.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parse `p/q`, a plain integer, or a finite decimal literal into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !frac_part.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
        };
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
        return Ok(BigRational::new(num, den));
    }
    let num: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(BigRational::from_integer(num))
}

/// Render as `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Lossy conversion for the floating-point evaluators.
pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or_else(|| if value.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY })
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Serde adapter storing a [`BigRational`] as a `"p/q"` string.
pub mod serde_ratio {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&super::format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigRational, D::Error> {
        let raw = RawRational::deserialize(de)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accept both `"p/q"` strings and bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Int(i64),
        Text(String),
    }

    impl RawRational {
        pub(crate) fn into_rational(self) -> crate::error::Result<BigRational> {
            match self {
                RawRational::Int(v) => Ok(BigRational::from_integer(v.into())),
                RawRational::Text(s) => super::parse_rational(&s),
            }
        }
    }
}

/// Serde adapter for `Vec<BigRational>` as a list of strings.
pub mod serde_ratio_vec {
    use num_rational::BigRational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::serde_ratio::RawRational;

    pub fn serialize<S: Serializer>(values: &[BigRational], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&super::format_rational(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<RawRational>::deserialize(de)?;
        raw.into_iter().map(|r| r.into_rational().map_err(serde::de::Error::custom)).collect()
    }
}
