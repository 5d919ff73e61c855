//! Exact rational scalars.
//!
//! Values are `num_rational::BigRational`, which keeps every value in reduced
//! form with a positive denominator. This module adds the checked operations and
//! the `"p/q"` text encoding used in reports.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
}

/// Binary (or, for `Neg`, unary in `a`) rational arithmetic with a checked divide.
pub fn rational_arith(op: RatOp, a: &Rational, b: &Rational) -> Result<Rational> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => checked_div(a, b)?,
        RatOp::Neg => -a,
    })
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `x^e` for any integer `e`; fails only for `0^e` with `e < 0`.
pub fn pow(x: &Rational, e: i64) -> Result<Rational> {
    if e >= 0 {
        Ok(num_traits::pow(x.clone(), e as usize))
    } else if x.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(num_traits::pow(x.recip(), e.unsigned_abs() as usize))
    }
}

/// Canonical text form: `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Serde adapter for the `"p/q"` string encoding.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Height used to bound random draws: max(|p|, q).
pub fn height(x: &Rational) -> BigInt {
    std::cmp::max(x.numer().abs(), x.denom().clone())
}
