//! Exact matrix model of sp(2n) over the rationals.

pub mod linalg;
pub mod matrix;
pub mod roots;

mod explog;
mod nilpotent;
mod sl2;

use thiserror::Error;

pub use explog::{exp_log, exp_nilpotent, log_unipotent, ExpLogDirection};
pub use matrix::{symplectic_form, Matrix, RationalMatrix};
pub use nilpotent::{
    build_cocharacter, build_nilpotent, grade, recipe_roots, Cocharacter, GradedDecomposition,
};
pub use roots::{all_roots, root_vector, BasisElement, RootLabel, SpBasis};
pub use sl2::{annihilator_sharp, centralizer, complete_sl2, triple_for, Sl2Triple};

use crate::scalar::{Rational, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix dimension {0} is odd")]
    OddDimension(usize),
    #[error("bad root indices: {0}")]
    BadIndices(String),
    #[error("cannot parse root label {0:?}")]
    BadRootLabel(String),
    #[error("no square class for block {0}")]
    MissingSquareClass(usize),
    #[error("no sl2 completion: {0}")]
    NoSolution(String),
    #[error("H must be diagonal with integer entries")]
    NotDiagonal,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// `Mᵗ J + J M = 0` for the fixed antidiagonal form `J`.
pub fn sp_membership(m: &RationalMatrix) -> Result<bool, LieError> {
    in_sp(m)
}

/// Generic membership test, usable over any exact ring.
pub fn in_sp<T: Ring>(m: &Matrix<T>) -> Result<bool, LieError> {
    if !m.is_square() {
        return Err(LieError::NotSquare);
    }
    if m.rows() % 2 == 1 {
        return Err(LieError::OddDimension(m.rows()));
    }
    let j: Matrix<T> = symplectic_form(m.rows());
    let lhs = m.transpose().matmul(&j) + j.matmul(m);
    Ok(lhs.is_zero())
}

/// `gᵗ J g = J`.
pub fn is_symplectic<T: Ring>(g: &Matrix<T>) -> Result<bool, LieError> {
    if !g.is_square() {
        return Err(LieError::NotSquare);
    }
    if g.rows() % 2 == 1 {
        return Err(LieError::OddDimension(g.rows()));
    }
    let j: Matrix<T> = symplectic_form(g.rows());
    Ok(g.transpose().matmul(&j).matmul(g) == j)
}

/// Inverse of a symplectic matrix: `g⁻¹ = -J gᵗ J`.
pub fn symplectic_inverse<T: Ring>(g: &Matrix<T>) -> Matrix<T> {
    let j: Matrix<T> = symplectic_form(g.rows());
    -(j.matmul(&g.transpose()).matmul(&j))
}

/// `diag(d₁…d_n, -d_n…-d₁)`.
pub fn torus_element(d: &[i64]) -> RationalMatrix {
    let n = d.len();
    let mut h = RationalMatrix::zeros(2 * n, 2 * n);
    for (i, &di) in d.iter().enumerate() {
        h.set(i, i, Rational::from_integer(di.into()));
        h.set(2 * n - 1 - i, 2 * n - 1 - i, Rational::from_integer((-di).into()));
    }
    h
}
