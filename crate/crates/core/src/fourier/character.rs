//! The character `v ↦ ψ(tr(X log v))` on `V_{p,2}` in entry form.

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::liealg::{build_nilpotent, log_unipotent, RationalMatrix};
use crate::partitions::{SquareClassAssignment, SymplecticPartition};
use crate::scalar::{rational_string, Rational};

use super::FourierError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryTerm {
    /// 1-based.
    pub row: usize,
    pub col: usize,
    #[serde(with = "rational_string")]
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterFunctional {
    pub partition: SymplecticPartition,
    pub classes: SquareClassAssignment,
    pub x: RationalMatrix,
    pub terms: Vec<EntryTerm>,
}

/// Sign with which the entry mirrored across the antidiagonal repeats an
/// entry of an sp(2n) element: `M[c'][r'] = s · M[r][c]`. 0-based.
pub fn mirror(two_n: usize, r: usize, c: usize) -> ((usize, usize), i64) {
    let n = two_n / 2;
    let sigma = |k: usize| if k < n { 1 } else { -1 };
    let (rp, cp) = (two_n - 1 - r, two_n - 1 - c);
    ((cp, rp), sigma(rp) * sigma(c))
}

/// Entry-form terms of `Z ↦ tr(X Z)` on sp(2n), one per mirror pair.
pub fn entry_terms(x: &RationalMatrix) -> Vec<EntryTerm> {
    let two_n = x.rows();
    let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (a, b, v) in x.nonzero_entries() {
        // X[a][b] multiplies v[b][a].
        let pos = (b, a);
        let (mpos, s) = mirror(two_n, b, a);
        let (key, coeff) = if mpos < pos {
            (mpos, v * Rational::from_integer(s.into()))
        } else {
            (pos, v.clone())
        };
        *acc.entry(key).or_insert_with(Rational::zero) += coeff;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((r, c), coeff)| EntryTerm {
            row: r + 1,
            col: c + 1,
            coeff,
        })
        .collect()
}

pub fn character_data(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<CharacterFunctional, FourierError> {
    a.check(p)?;
    let x = build_nilpotent(p, a)?;
    let terms = entry_terms(&x);
    Ok(CharacterFunctional {
        partition: p.clone(),
        classes: a.clone(),
        x,
        terms,
    })
}

impl CharacterFunctional {
    /// `Σ coeff · v[row][col]`.
    pub fn evaluate(&self, v: &RationalMatrix) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, t| acc + &t.coeff * v.get(t.row - 1, t.col - 1))
    }

    /// `tr(X log v)` for unipotent `v`.
    pub fn trace_value(&self, v: &RationalMatrix) -> Result<Rational, FourierError> {
        Ok(self.x.trace_product(&log_unipotent(v)?))
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterDoc {
    partition: SymplecticPartition,
    square_classes: Vec<i64>,
    terms: Vec<EntryTerm>,
}

impl Serialize for CharacterFunctional {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CharacterDoc {
            partition: self.partition.clone(),
            square_classes: self.classes.values(),
            terms: self.terms.clone(),
        }
        .serialize(s)
    }
}

/// Rebuilds from partition and classes; the stored terms must match.
impl<'de> Deserialize<'de> for CharacterFunctional {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = CharacterDoc::deserialize(d)?;
        let a = SquareClassAssignment::for_partition(&doc.partition, &doc.square_classes)
            .map_err(D::Error::custom)?;
        let c = character_data(&doc.partition, &a).map_err(D::Error::custom)?;
        if c.terms != doc.terms {
            return Err(D::Error::custom("terms do not match the partition data"));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn sp(parts: &[u32]) -> SymplecticPartition {
        SymplecticPartition::new(parts.to_vec()).unwrap()
    }

    fn terms(c: &CharacterFunctional) -> Vec<(usize, usize, Rational)> {
        c.terms.iter().map(|t| (t.row, t.col, t.coeff.clone())).collect()
    }

    #[test]
    fn worked_examples() {
        let p = sp(&[4, 1, 1]);
        let a = SquareClassAssignment::for_partition(&p, &[-3]).unwrap();
        let c = character_data(&p, &a).unwrap();
        assert_eq!(terms(&c), vec![(1, 2, rat(1)), (2, 5, rat(-3))]);

        let p = sp(&[4, 3, 3]);
        let a = SquareClassAssignment::for_partition(&p, &[2]).unwrap();
        let c = character_data(&p, &a).unwrap();
        assert_eq!(
            terms(&c),
            vec![(1, 2, rat(1)), (2, 9, rat(2)), (3, 4, rat(1)), (4, 5, rat(1))]
        );

        let p = sp(&[1, 1, 1, 1]);
        let c = character_data(&p, &SquareClassAssignment::ones(&p)).unwrap();
        assert!(c.terms.is_empty());
    }

    #[test]
    fn mirror_is_involution() {
        for two_n in [2, 4, 6] {
            for r in 0..two_n {
                for c in 0..two_n {
                    let ((r2, c2), s) = mirror(two_n, r, c);
                    let ((r3, c3), s2) = mirror(two_n, r2, c2);
                    assert_eq!((r3, c3), (r, c));
                    assert_eq!(s * s2, 1);
                }
            }
        }
    }
}
