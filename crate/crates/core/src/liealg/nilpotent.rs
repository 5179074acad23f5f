//! The nilpotent `X_{p,a}`, the cocharacter attached to `p`, and the grading
//! of sp(2n) it induces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::roots::{root_vector, BasisElement, RootLabel, SpBasis};
use super::{torus_element, LieError};
use crate::partitions::{SquareClassAssignment, SymplecticPartition};
use crate::scalar::{half, rat, Rational};

/// The roots summed into `X_{p,a}` with their coefficients, block by block.
pub fn recipe_roots(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<Vec<(RootLabel, Rational)>, LieError> {
    let mut out = Vec::new();
    for (bi, b) in p.blocks().blocks.iter().enumerate() {
        for k in 1..b.q {
            out.push((RootLabel::EiMinusEj(b.offset + k + 1, b.offset + k), half()));
        }
        if b.is_even() {
            let ai = a.get(bi).ok_or(LieError::MissingSquareClass(bi))?;
            out.push((RootLabel::NegTwoEi(b.offset + b.q), rat(ai)));
        }
    }
    Ok(out)
}

pub fn build_nilpotent(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<RationalMatrix, LieError> {
    let n = p.n();
    let mut x = RationalMatrix::zeros(2 * n, 2 * n);
    for (r, c) in recipe_roots(p, a)? {
        x = x + root_vector(&r, &c, n)?;
    }
    Ok(x)
}

/// Exponents `d` of the torus `diag(t^{d₁}, …, t^{d_n}, t^{-d_n}, …, t^{-d₁})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cocharacter {
    pub exponents: Vec<i64>,
}

impl Cocharacter {
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// The derivative at `t = 1`, a diagonal element of sp(2n).
    pub fn h_matrix(&self) -> RationalMatrix {
        torus_element(&self.exponents)
    }

    pub fn pair(&self, alpha: &RootLabel) -> i64 {
        alpha.weight(&self.exponents)
    }
}

pub fn build_cocharacter(p: &SymplecticPartition) -> Cocharacter {
    let mut exponents = Vec::with_capacity(p.n());
    for b in p.blocks().blocks {
        let top = b.part as i64 - 1;
        for k in 0..b.q as i64 {
            exponents.push(top - 2 * k);
        }
    }
    Cocharacter { exponents }
}

/// Basis of sp(2n) sorted into eigenspaces of the cocharacter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDecomposition {
    pub levels: BTreeMap<i64, Vec<BasisElement>>,
    /// Largest level present.
    pub m: i64,
}

impl GradedDecomposition {
    pub fn dim(&self, l: i64) -> usize {
        self.levels.get(&l).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.levels.values().map(Vec::len).sum()
    }

    /// Basis of `g_{≥ j}`.
    pub fn at_least(&self, j: i64) -> Vec<BasisElement> {
        self.levels.range(j..).flat_map(|(_, v)| v.iter().copied()).collect()
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.levels.iter().map(|(l, v)| (*l, v.len())).collect()
    }
}

pub fn grade(p: &SymplecticPartition) -> GradedDecomposition {
    grade_by(&build_cocharacter(p))
}

pub fn grade_by(d: &Cocharacter) -> GradedDecomposition {
    let mut levels: BTreeMap<i64, Vec<BasisElement>> = BTreeMap::new();
    for e in SpBasis::new(d.rank()).elements {
        levels.entry(e.weight(&d.exponents)).or_default().push(e);
    }
    let m = levels.keys().next_back().copied().unwrap_or(0);
    GradedDecomposition { levels, m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::sp_membership;

    fn sp(parts: &[u32]) -> SymplecticPartition {
        SymplecticPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn nilpotent_examples() {
        let p = sp(&[4, 1, 1]);
        let a = SquareClassAssignment::for_partition(&p, &[7]).unwrap();
        let x = build_nilpotent(&p, &a).unwrap();
        let want = root_vector(&RootLabel::EiMinusEj(2, 1), &half(), 3).unwrap()
            + root_vector(&RootLabel::NegTwoEi(2), &rat(7), 3).unwrap();
        assert_eq!(x, want);
        assert!(sp_membership(&x).unwrap());

        let ones = sp(&[1, 1, 1, 1]);
        assert!(build_nilpotent(&ones, &SquareClassAssignment::ones(&ones)).unwrap().is_zero());

        let two = sp(&[2]);
        let x = build_nilpotent(&two, &SquareClassAssignment::ones(&two)).unwrap();
        assert_eq!(x.to_rows(), vec![vec![rat(0), rat(0)], vec![rat(1), rat(0)]]);

        let empty = SquareClassAssignment::from_map(Default::default());
        assert_eq!(build_nilpotent(&p, &empty), Err(LieError::MissingSquareClass(0)));
    }

    #[test]
    fn cocharacter_examples() {
        assert_eq!(build_cocharacter(&sp(&[4, 1, 1])).exponents, vec![3, 1, 0]);
        assert_eq!(build_cocharacter(&sp(&[4, 3, 3])).exponents, vec![3, 1, 2, 0, -2]);
        assert_eq!(build_cocharacter(&sp(&[1, 1, 1, 1])).exponents, vec![0, 0]);
    }

    #[test]
    fn grading_examples() {
        let g = grade(&sp(&[4, 1, 1]));
        let want: BTreeMap<i64, usize> = [
            (-6, 1), (-4, 1), (-3, 2), (-2, 2), (-1, 2), (0, 5),
            (1, 2), (2, 2), (3, 2), (4, 1), (6, 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(g.dims(), want);
        assert_eq!(g.total_dim(), 21);
        assert_eq!(g.m, 6);

        let g = grade(&sp(&[2]));
        assert_eq!(g.dims(), [(-2, 1), (0, 1), (2, 1)].into_iter().collect());

        let g = grade(&sp(&[1, 1, 1, 1]));
        assert_eq!(g.dims(), [(0, 10)].into_iter().collect());
    }
}
