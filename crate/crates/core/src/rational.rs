//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `7`, `-7/3`, `0.25`, `1e-6`, `-2.5E3`.
pub fn parse_rational(text: &str) -> Result<Q> {
    let s = text.trim();
    let bad = || Error::InvalidNumber(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_decimal(n).ok_or_else(bad)?;
        let d = parse_decimal(d).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Q> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut v = Q::from_integer(n);
    if scale >= 0 {
        v *= Q::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        v /= Q::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -v } else { v })
}

/// `n` or `n/d` in lowest terms.
pub fn fmt_rational(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        // huge numerators or denominators: scale through bit lengths
        let nb = v.numer().bits() as i64;
        let db = v.denom().bits() as i64;
        let shift = nb - db;
        let scaled = if shift > 0 {
            v / Q::from_integer(BigInt::one() << (shift as usize))
        } else {
            v * Q::from_integer(BigInt::one() << ((-shift) as usize))
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// Nearby rational with a power-of-two denominator, `|v - r| <= 2^-bits`.
pub fn from_f64_dyadic(v: f64, bits: u32) -> Q {
    let scaled = (v * 2f64.powi(bits as i32)).round();
    let n = BigInt::from(scaled as i128);
    Q::new(n, BigInt::one() << bits as usize)
}

pub fn pow2(k: i64) -> Q {
    if k >= 0 {
        Q::from_integer(BigInt::one() << k as usize)
    } else {
        Q::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

/// Largest power of two `<= v` for `v > 0`.
pub fn pow2_floor(v: &Q) -> Q {
    debug_assert!(v.is_positive());
    let mut k = v.numer().bits() as i64 - v.denom().bits() as i64;
    while pow2(k) > *v {
        k -= 1;
    }
    while pow2(k + 1) <= *v {
        k += 1;
    }
    pow2(k)
}

/// Smallest power of two `>= v` for `v > 0`.
pub fn pow2_ceil(v: &Q) -> Q {
    let f = pow2_floor(v);
    if &f == v {
        f
    } else {
        f * q(2)
    }
}

pub fn floor(v: &Q) -> BigInt {
    v.numer().div_floor(v.denom())
}

pub fn ceil(v: &Q) -> BigInt {
    -((-v.numer()).div_floor(v.denom()))
}

pub fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / q(2)
}

/// Exact integer square root when `v` is a perfect square.
pub fn exact_sqrt_int(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    if &(&r * &r) == v {
        Some(r)
    } else {
        None
    }
}

pub fn abs(v: &Q) -> Q {
    v.abs()
}

/// Serde adapters writing rationals as `"n"` or `"n/d"` strings.
pub mod serde_q {
    use super::{fmt_rational, parse_rational, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        S(String),
        I(i64),
    }

    fn from_raw<E: serde::de::Error>(r: Raw) -> Result<Q, E> {
        match r {
            Raw::S(s) => parse_rational(&s).map_err(E::custom),
            Raw::I(i) => Ok(super::q(i)),
        }
    }

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        from_raw(Raw::deserialize(d)?)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&fmt_rational(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            Vec::<Raw>::deserialize(d)?.into_iter().map(from_raw).collect()
        }
    }

    pub mod vec2 {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
            let t: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
            serde::Serialize::serialize(&t, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
            Vec::<Vec<Raw>>::deserialize(d)?.into_iter().map(|r| r.into_iter().map(from_raw).collect()).collect()
        }
    }
}
