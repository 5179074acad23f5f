//! Isotropy of diagonal forms over Q.

use std::collections::BTreeSet;

use num::{BigInt, One};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::squarefree_part;

use super::hilbert::{hilbert_i, is_local_square, prime_factors, Place};
use super::StabilizerError;

/// `Σ aᵢ xᵢ²` with squarefree non-zero `aᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalQuadraticForm {
    coefficients: Vec<i64>,
}

impl DiagonalQuadraticForm {
    /// Each coefficient is replaced by its squarefree part.
    pub fn new(coefficients: Vec<i64>) -> Result<Self, StabilizerError> {
        let coefficients = coefficients
            .into_iter()
            .map(squarefree_part)
            .collect::<Result<_, _>>()?;
        Ok(DiagonalQuadraticForm { coefficients })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, x: &[i64]) -> i128 {
        self.coefficients
            .iter()
            .zip(x)
            .map(|(&a, &v)| i128::from(a) * i128::from(v) * i128::from(v))
            .sum()
    }

    pub fn is_indefinite(&self) -> bool {
        self.coefficients.iter().any(|&a| a > 0) && self.coefficients.iter().any(|&a| a < 0)
    }

    fn discriminant(&self) -> BigInt {
        self.coefficients.iter().map(|&a| BigInt::from(a)).product()
    }

    /// `Π_{i<j} (aᵢ, aⱼ)_v`.
    fn hasse(&self, place: Place) -> i8 {
        let mut s = 1;
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                s *= hilbert_i(
                    &BigInt::from(self.coefficients[i]),
                    &BigInt::from(self.coefficients[j]),
                    place,
                );
            }
        }
        s
    }

    /// `Infinity`, 2, and the primes dividing some coefficient.
    pub fn relevant_places(&self) -> Vec<Place> {
        let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
        for &a in &self.coefficients {
            primes.extend(prime_factors(&BigInt::from(a)));
        }
        let mut out: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
        out.push(Place::Infinity);
        out
    }

    /// Isotropy over `Q_v`.
    pub fn is_locally_isotropic(&self, place: Place) -> bool {
        let d = self.discriminant();
        let m1 = -BigInt::one();
        match self.dim() {
            0 | 1 => false,
            2 => is_local_square(&-d, place),
            3 => self.hasse(place) == hilbert_i(&m1, &-d, place),
            4 => !is_local_square(&d, place) || self.hasse(place) == hilbert_i(&m1, &m1, place),
            _ => place != Place::Infinity || self.is_indefinite(),
        }
    }
}

impl Serialize for DiagonalQuadraticForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coefficients.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalQuadraticForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        DiagonalQuadraticForm::new(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalDatum {
    pub place: Place,
    pub hasse: i8,
    pub isotropic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyDecision {
    pub isotropic: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<i64>>,
    pub local_data: Vec<LocalDatum>,
}

/// Search limits for witnesses: coordinates up to `WITNESS_HEIGHT` in absolute
/// value and at most `WITNESS_BUDGET` vectors in total.
pub const WITNESS_HEIGHT: i64 = 50;
pub const WITNESS_BUDGET: u64 = 2_000_000;

/// Next vector of `[-h, h]^d` in descending lexicographic order.
fn step_down(x: &mut [i64], h: i64) -> bool {
    for i in (0..x.len()).rev() {
        if x[i] > -h {
            x[i] -= 1;
            for v in &mut x[i + 1..] {
                *v = h;
            }
            return true;
        }
    }
    false
}

/// A non-zero zero of minimal height, lexicographically greatest among those;
/// `None` if the bounded search runs out.
pub fn find_witness(f: &DiagonalQuadraticForm, max_height: i64, budget: u64) -> Option<Vec<i64>> {
    let d = f.dim();
    if d == 0 {
        return None;
    }
    let mut spent = 0u64;
    for h in 1..=max_height {
        let mut x = vec![h; d];
        // descending odometer over [-h, h]^d
        loop {
            spent += 1;
            if spent > budget {
                return None;
            }
            if x.iter().any(|v| v.abs() == h) && f.eval(&x) == 0 {
                return Some(x);
            }
            if !step_down(&mut x, h) {
                break;
            }
        }
    }
    None
}

pub fn decide_isotropy(f: &DiagonalQuadraticForm) -> IsotropyDecision {
    let local_data: Vec<LocalDatum> = f
        .relevant_places()
        .into_iter()
        .map(|place| LocalDatum {
            place,
            hasse: f.hasse(place),
            isotropic: f.is_locally_isotropic(place),
        })
        .collect();
    let isotropic = f.dim() >= 2 && local_data.iter().all(|l| l.isotropic);
    let witness = if isotropic {
        find_witness(f, WITNESS_HEIGHT, WITNESS_BUDGET)
    } else {
        None
    };
    IsotropyDecision {
        isotropic,
        witness,
        local_data,
    }
}

/// Hasse-Minkowski: isotropic over Q iff isotropic at every place.
pub fn is_isotropic_rational(f: &DiagonalQuadraticForm) -> bool {
    f.dim() >= 2 && f.relevant_places().into_iter().all(|v| f.is_locally_isotropic(v))
}
