//! Local invariants at the places of Q.

use std::fmt;
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Rational;

use super::StabilizerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = StabilizerError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "Infinity" => Ok(Place::Infinity),
            t => {
                let p: u64 = t.parse().map_err(|_| StabilizerError::BadPlaceName(t.to_string()))?;
                Place::prime(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Place {
    pub fn prime(p: u64) -> Result<Self, StabilizerError> {
        if is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(StabilizerError::BadPlace(p))
        }
    }
}

/// Distinct prime factors by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= m {
        let bd = BigInt::from(d);
        if (&m % &bd).is_zero() {
            out.push(d);
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += 1;
    }
    if m > BigInt::one() {
        out.push(m.to_u64().expect("remaining cofactor fits u64 for the inputs used here"));
    }
    out
}

/// `(v, u)` with `n = p^v · u`, `p ∤ u`.
fn split(n: &BigInt, p: u64) -> (u32, BigInt) {
    let bp = BigInt::from(p);
    let mut u = n.clone();
    let mut v = 0;
    while (&u % &bp).is_zero() {
        u /= &bp;
        v += 1;
    }
    (v, u)
}

/// Legendre symbol of a unit `u` modulo an odd prime.
fn legendre(u: &BigInt, p: u64) -> i8 {
    let bp = BigInt::from(p);
    let r = u.mod_floor(&bp).modpow(&BigInt::from((p - 1) / 2), &bp);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u32 {
    u.mod_floor(&BigInt::from(8)).to_u32().expect("residue below 8")
}

/// An integer in the same square class as a non-zero rational.
fn integral(q: &Rational) -> Result<BigInt, StabilizerError> {
    if q.is_zero() {
        return Err(StabilizerError::ZeroCoefficient);
    }
    Ok(q.numer() * q.denom())
}

fn hilbert_int(a: &BigInt, b: &BigInt, place: Place) -> i8 {
    match place {
        Place::Infinity => {
            if a.sign() == Sign::Minus && b.sign() == Sign::Minus {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (al, u) = split(a, 2);
            let (be, v) = split(b, 2);
            let eps = |x: &BigInt| ((mod8(x) - 1) / 2) % 2;
            let omega = |x: &BigInt| {
                let r = mod8(x);
                ((r * r - 1) / 8) % 2
            };
            let e = eps(&u) * eps(&v) + al * omega(&v) + be * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (al, u) = split(a, p);
            let (be, v) = split(b, p);
            let mut s: i8 = if (al * be) % 2 == 1 && ((p - 1) / 2) % 2 == 1 { -1 } else { 1 };
            if be % 2 == 1 {
                s *= legendre(&u, p);
            }
            if al % 2 == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    }
}

/// `(a, b)_v`: 1 iff `z² = a x² + b y²` has a non-zero solution over `Q_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> Result<i8, StabilizerError> {
    if let Place::Prime(p) = place {
        Place::prime(p)?;
    }
    Ok(hilbert_int(&integral(a)?, &integral(b)?, place))
}

pub(crate) fn hilbert_i(a: &BigInt, b: &BigInt, place: Place) -> i8 {
    hilbert_int(a, b, place)
}

/// Whether a non-zero integer is a square in `Q_v`.
pub fn is_local_square(d: &BigInt, place: Place) -> bool {
    match place {
        Place::Infinity => d.is_positive(),
        Place::Prime(2) => {
            let (v, u) = split(d, 2);
            v % 2 == 0 && mod8(&u) == 1
        }
        Place::Prime(p) => {
            let (v, u) = split(d, p);
            v % 2 == 0 && legendre(&u, p) == 1
        }
    }
}
