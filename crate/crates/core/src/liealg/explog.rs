//! Finite exponential and logarithm for nilpotent / unipotent matrices.

use num::One;
use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::LieError;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpLogDirection {
    Exp,
    Log,
}

pub fn exp_log(dir: ExpLogDirection, m: &RationalMatrix) -> Result<RationalMatrix, LieError> {
    match dir {
        ExpLogDirection::Exp => exp_nilpotent(m),
        ExpLogDirection::Log => log_unipotent(m),
    }
}

pub fn exp_nilpotent(m: &RationalMatrix) -> Result<RationalMatrix, LieError> {
    if !m.is_square() {
        return Err(LieError::NotSquare);
    }
    if !m.is_nilpotent() {
        return Err(LieError::NotNilpotent);
    }
    let dim = m.rows();
    let mut out = RationalMatrix::identity(dim);
    let mut term = RationalMatrix::identity(dim);
    for k in 1..dim {
        term = term.matmul(m).scale(&(Rational::one() / Rational::from_integer(k.into())));
        if term.is_zero() {
            break;
        }
        out = out + term.clone();
    }
    Ok(out)
}

pub fn log_unipotent(u: &RationalMatrix) -> Result<RationalMatrix, LieError> {
    if !u.is_square() {
        return Err(LieError::NotSquare);
    }
    let dim = u.rows();
    let nil = u.clone() - RationalMatrix::identity(dim);
    if !nil.is_nilpotent() {
        return Err(LieError::NotUnipotent);
    }
    let mut out = RationalMatrix::zeros(dim, dim);
    let mut pow = RationalMatrix::identity(dim);
    for k in 1..dim {
        pow = pow.matmul(&nil);
        if pow.is_zero() {
            break;
        }
        let c = Rational::one() / Rational::from_integer(k.into());
        let c = if k % 2 == 0 { -c } else { c };
        out = out + pow.scale(&c);
    }
    Ok(out)
}
