//! Exact rationals and their textual forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `num/den`, always with the denominator.
pub fn to_machine(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `num/den`, or just `num` for integers.
pub fn to_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        to_machine(q)
    }
}

/// JSON form `{"num": "...", "den": "..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Option<Rational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(num, den))
    }
}

pub fn from_parts(num: &str, den: &str) -> Option<Rational> {
    RationalJson {
        num: num.to_string(),
        den: den.to_string(),
    }
    .to_rational()
}

/// `#[serde(with = "...")]` adapter writing a rational as [`RationalJson`].
pub mod json {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{Rational, RationalJson};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalJson::deserialize(d)?
            .to_rational()
            .ok_or_else(|| serde::de::Error::custom("invalid rational"))
    }
}
