//! Exact scalars: the rational field, the ring/field traits the matrix code is
//! generic over, and canonical square-class representatives.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::Serializer;
use thiserror::Error;

/// Exact rational numbers. Every matrix in the crate is built from these.
pub type Rational = BigRational;

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every nonzero element can be divided by.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Canonical `"numerator/denominator"` rendering (denominator always shown).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {0:?} as a rational")]
pub struct ParseRationalError(pub String);

/// Accepts `"a/b"` or a bare integer `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| err())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Serde adapter writing rationals as canonical strings.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s: String = serde::Deserialize::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SquareClassError {
    #[error("square class of zero is undefined")]
    Zero,
    #[error("square class representative {0} does not fit in 64 bits")]
    Overflow(String),
}

/// Signed squarefree representative of `n` modulo nonzero squares.
pub fn squarefree_part(n: i64) -> Result<i64, SquareClassError> {
    if n == 0 {
        return Err(SquareClassError::Zero);
    }
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out: u64 = 1;
    let mut p: u64 = 2;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out *= m;
    Ok(sign * out as i64)
}

/// Square class of a nonzero rational: `num/den ~ num*den`.
pub fn rational_square_class(q: &Rational) -> Result<i64, SquareClassError> {
    if q.is_zero() {
        return Err(SquareClassError::Zero);
    }
    let prod = q.numer() * q.denom();
    let v = prod
        .to_i64()
        .ok_or_else(|| SquareClassError::Overflow(prod.to_string()))?;
    squarefree_part(v)
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && squarefree_part(n) == Ok(n)
}

/// Product of two square classes, reduced again.
pub fn square_class_product(a: i64, b: i64) -> Result<i64, SquareClassError> {
    let g = num::integer::gcd(a, b).abs();
    // a*b = g^2 * (a/g)*(b/g), which keeps the intermediate small.
    let prod = (a / g)
        .checked_mul(b / g)
        .ok_or_else(|| SquareClassError::Overflow(format!("{a}*{b}")))?;
    squarefree_part(prod)
}

pub fn is_rational_square(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    if q.is_zero() {
        return true;
    }
    is_perfect_square(q.numer()) && is_perfect_square(q.denom())
}

fn is_perfect_square(n: &BigInt) -> bool {
    let r = n.sqrt();
    &(&r * &r) == n
}
