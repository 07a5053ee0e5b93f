//! Number types shared by the exact and the floating pipelines.
//!
//! The moment/cumulant algebra is written once against [`Field`] and
//! instantiated with [`Scalar`] (arbitrary precision rationals) for the
//! symbolic work and with `f64` for estimation.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in reduced form.
pub type Scalar = BigRational;

/// The arithmetic the conversion routines need.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;
    fn abs_value(&self) -> Self;

    fn from_u64(v: u64) -> Self {
        Self::from_i64(i64::try_from(v).expect("integer constant fits in i64"))
    }

    fn powi(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Field for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn powi(&self, exp: usize) -> Self {
        f64::powi(*self, exp as i32)
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn powi(&self, exp: usize) -> Self {
        num_traits::pow(self.clone(), exp)
    }
}

/// Shorthand for `num/den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact integer.
pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `"3/4"`, `"-3/4"`, `"−3/4"` or an integer string.
pub fn parse_rational(text: &str) -> Result<Scalar> {
    let norm: String = text.trim().replace('\u{2212}', "-");
    let bad = || Error::InvalidInput(format!("not a rational literal: {text:?}"));
    if norm.is_empty() {
        return Err(bad());
    }
    let value = match norm.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {text:?}")));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(BigInt::from_str(&norm).map_err(|_| bad())?),
    };
    Ok(value)
}

/// Canonical string form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(value: &Scalar) -> String {
    value.to_string()
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(value: &Scalar) -> f64 {
    num_traits::ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
}

/// `n choose k` as an exact integer.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Multinomial coefficient `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[u8]) -> u64 {
    let mut total = 0usize;
    let mut acc = 1u64;
    for &p in parts {
        total += p as usize;
        acc *= binomial(total, p as usize);
    }
    acc
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Serde adapter storing rationals as strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Scalar>` as a list of strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(values: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        let texts: Vec<String> = values.iter().map(format_rational).collect();
        texts.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Scalar>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
