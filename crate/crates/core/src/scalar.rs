//! Exact rational scalars and their textual form.
//!
//! Scalars are `BigRational`, which is always kept reduced with a positive
//! denominator, so structural equality is numeric equality. On the wire every
//! scalar is a reduced `"p/q"` string (integers included, e.g. `"-3/1"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn ints(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| int(v)).collect()
}

pub fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

/// Reduced `p/q` form. The denominator is always printed.
pub fn format_scalar(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::ParseScalar(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Comma-separated list of integers or `p/q` fractions.
pub fn parse_vector(s: &str) -> Result<Vec<Scalar>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_scalar).collect()
}

/// Compact command-line form: integers bare, fractions as `p/q`.
pub fn format_vector(v: &[Scalar]) -> String {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                x.numer().to_string()
            } else {
                format_scalar(x)
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Scale a rational vector by the lcm of its denominators, giving an
/// integer vector spanning the same line.
pub fn clear_denominators(v: &[Scalar]) -> Vec<Scalar> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let l = BigRational::from_integer(lcm);
    v.iter().map(|x| x * &l).collect()
}

/// Serde adapter writing `Vec<Scalar>` as a list of `"p/q"` strings.
pub mod serde_vec {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Scalar], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(format_scalar))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Scalar>, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        raw.iter()
            .map(|s| parse_scalar(s).map_err(D::Error::custom))
            .collect()
    }
}
