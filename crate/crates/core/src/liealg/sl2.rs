//! sl2 completion and the annihilator of a nilpotent under the trace form.

use num::Zero;
use serde::{Deserialize, Serialize};

use super::linalg::{kernel, solve};
use super::matrix::{Matrix, RationalMatrix};
use super::nilpotent::{build_cocharacter, build_nilpotent};
use super::roots::{bracket_dense_sparse, trace_with_sparse, BasisElement, SpBasis};
use super::{sp_membership, LieError};
use crate::partitions::{SquareClassAssignment, SymplecticPartition};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sl2Triple {
    pub x: RationalMatrix,
    pub h: RationalMatrix,
    pub y: RationalMatrix,
}

impl Sl2Triple {
    /// `[H,X] = -2X`, `[H,Y] = 2Y`, `[Y,X] = H`, all in sp(2n).
    pub fn relations_hold(&self) -> bool {
        let two = Rational::from_integer(2.into());
        self.h.commutator(&self.x) == self.x.scale(&-two.clone())
            && self.h.commutator(&self.y) == self.y.scale(&two)
            && self.y.commutator(&self.x) == self.h
            && [&self.x, &self.h, &self.y]
                .iter()
                .all(|m| sp_membership(m).unwrap_or(false))
    }
}

fn diagonal_integers(h: &RationalMatrix) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(h.rows());
    for (i, j, v) in h.entries() {
        if i != j && !v.is_zero() {
            return None;
        }
    }
    for i in 0..h.rows() {
        let v = h.get(i, i);
        if !v.is_integer() {
            return None;
        }
        out.push(i64::try_from(v.numer()).ok()?);
    }
    Some(out)
}

/// Finds `Y` in the `+2` eigenspace of `ad H` with `[Y, X] = H`.
///
/// Positive root vectors are listed first, so when the solution is not
/// unique the returned one is supported on positive roots where possible.
pub fn complete_sl2(x: &RationalMatrix, h: &RationalMatrix) -> Result<Sl2Triple, LieError> {
    if !x.is_square() || !h.is_square() {
        return Err(LieError::NotSquare);
    }
    if x.rows() != h.rows() {
        return Err(LieError::DimensionMismatch(format!("{} vs {}", x.rows(), h.rows())));
    }
    if x.rows() % 2 == 1 {
        return Err(LieError::OddDimension(x.rows()));
    }
    let diag = diagonal_integers(h).ok_or(LieError::NotDiagonal)?;
    let n = x.rows() / 2;
    let d: Vec<i64> = diag[..n].to_vec();
    if (0..n).any(|i| diag[2 * n - 1 - i] != -d[i]) {
        return Err(LieError::NoSolution("H is not in sp(2n)".into()));
    }
    let mut cands: Vec<BasisElement> = SpBasis::new(n)
        .elements
        .into_iter()
        .filter(|e| matches!(e, BasisElement::Root(_)) && e.weight(&d) == 2)
        .collect();
    cands.sort_by_key(|e| match e {
        BasisElement::Root(r) => !r.is_positive(),
        BasisElement::Cartan(_) => true,
    });
    // Column k is [B_k, X] flattened; [Y, X] = -[X, Y].
    let dim = 2 * n;
    let cols: Vec<RationalMatrix> = cands
        .iter()
        .map(|e| -bracket_dense_sparse(x, &e.sparse(n)))
        .collect();
    let a = Matrix::from_fn(dim * dim, cols.len(), |r, k| cols[k].as_slice()[r].clone());
    let y = if cols.is_empty() {
        if h.is_zero() {
            Some(Vec::new())
        } else {
            None
        }
    } else {
        solve(&a, h.as_slice())
    };
    let coords = y.ok_or_else(|| LieError::NoSolution("no Y of weight 2 with [Y,X] = H".into()))?;
    let y = super::roots::combine(n, &cands, &coords);
    let t = Sl2Triple {
        x: x.clone(),
        h: h.clone(),
        y,
    };
    if !t.relations_hold() {
        return Err(LieError::NoSolution("X is not of weight -2 for H".into()));
    }
    Ok(t)
}

/// The triple attached to a partition and square classes.
pub fn triple_for(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<Sl2Triple, LieError> {
    let x = build_nilpotent(p, a)?;
    let h = build_cocharacter(p).h_matrix();
    complete_sl2(&x, &h)
}

fn rank_of(x: &RationalMatrix) -> Result<usize, LieError> {
    if !x.is_square() {
        return Err(LieError::NotSquare);
    }
    if x.rows() % 2 == 1 {
        return Err(LieError::OddDimension(x.rows()));
    }
    Ok(x.rows() / 2)
}

/// Basis of `{Z : tr(X[Z, Z']) = 0 for all Z'}` via the Gram matrix of the form.
pub fn annihilator_sharp(x: &RationalMatrix) -> Result<Vec<RationalMatrix>, LieError> {
    let n = rank_of(x)?;
    let basis = SpBasis::new(n);
    let sparse: Vec<_> = basis.elements.iter().map(|e| e.sparse(n)).collect();
    // tr(X[Z, Z']) = tr([X, Z] Z').
    let brackets: Vec<RationalMatrix> = sparse.iter().map(|s| bracket_dense_sparse(x, s)).collect();
    let dim = basis.dim();
    let gram = Matrix::from_fn(dim, dim, |l, k| trace_with_sparse(&brackets[k], &sparse[l]));
    Ok(kernel(&gram).iter().map(|z| basis.combine(z)).collect())
}

/// Basis of the centralizer `{Z : [X, Z] = 0}` via the kernel of `ad X`.
pub fn centralizer(x: &RationalMatrix) -> Result<Vec<RationalMatrix>, LieError> {
    let n = rank_of(x)?;
    let basis = SpBasis::new(n);
    let cols: Vec<RationalMatrix> = basis
        .elements
        .iter()
        .map(|e| x.commutator(&basis_matrix(n, e)))
        .collect();
    let a = Matrix::from_fn(4 * n * n, cols.len(), |r, k| cols[k].as_slice()[r].clone());
    Ok(kernel(&a).iter().map(|z| basis.combine(z)).collect())
}

fn basis_matrix(n: usize, e: &BasisElement) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(2 * n, 2 * n);
    for (a, b, v) in e.sparse(n) {
        m.set(a, b, v);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::linalg::Subspace;
    use crate::scalar::rat;

    fn sp(parts: &[u32]) -> SymplecticPartition {
        SymplecticPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn sl2_small() {
        let mut x = RationalMatrix::zeros(2, 2);
        x.set(1, 0, rat(1));
        let h = RationalMatrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(0), rat(-1)]]);
        let t = complete_sl2(&x, &h).unwrap();
        let mut y = RationalMatrix::zeros(2, 2);
        y.set(0, 1, rat(1));
        assert_eq!(t.y, y);

        let z = RationalMatrix::zeros(4, 4);
        assert!(complete_sl2(&z, &z).unwrap().y.is_zero());

        let p = sp(&[4, 1, 1]);
        let t = triple_for(&p, &SquareClassAssignment::ones(&p)).unwrap();
        assert!(t.relations_hold());
    }

    #[test]
    fn sl2_rejects_bad_h() {
        let mut x = RationalMatrix::zeros(2, 2);
        x.set(1, 0, rat(1));
        let mut h = RationalMatrix::zeros(2, 2);
        h.set(0, 1, rat(1));
        assert_eq!(complete_sl2(&x, &h), Err(LieError::NotDiagonal));
        let h = RationalMatrix::from_rows(vec![vec![rat(3), rat(0)], vec![rat(0), rat(-3)]]);
        assert!(matches!(complete_sl2(&x, &h), Err(LieError::NoSolution(_))));
    }

    #[test]
    fn annihilator_examples() {
        let z = RationalMatrix::zeros(4, 4);
        assert_eq!(annihilator_sharp(&z).unwrap().len(), 10);

        let mut x = RationalMatrix::zeros(2, 2);
        x.set(1, 0, rat(1));
        let ann = annihilator_sharp(&x).unwrap();
        assert_eq!(ann.len(), 1);
        let coords = SpBasis::new(1).coordinates(&ann[0]);
        let xc = SpBasis::new(1).coordinates(&x);
        assert!(Subspace::span(3, &[coords]).contains(&xc));

        let p = sp(&[4, 1, 1]);
        let x = build_nilpotent(&p, &SquareClassAssignment::ones(&p)).unwrap();
        let b = SpBasis::new(3);
        let s1: Vec<_> = annihilator_sharp(&x).unwrap().iter().map(|m| b.coordinates(m)).collect();
        let s2: Vec<_> = centralizer(&x).unwrap().iter().map(|m| b.coordinates(m)).collect();
        assert_eq!(Subspace::span(21, &s1), Subspace::span(21, &s2));
    }
}
