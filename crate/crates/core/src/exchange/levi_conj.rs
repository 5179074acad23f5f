//! The two Levi conjugations that rewrite the `q₂` part of the character
//! `β q₂(2k,2) + α q₂(2k+1,1)`, with `α`, `β` indeterminates.

use std::collections::BTreeMap;

use num::One;
use serde::{Deserialize, Serialize};

use crate::fourier::mirror;
use crate::liealg::{symplectic_inverse, Matrix};
use crate::poly::{Poly, RatFunc};
use crate::scalar::{half, rat, Ring};

use super::weyl::levi_embed;
use super::ExchangeError;

const NAMES: [&str; 2] = ["alpha", "beta"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicTerm {
    /// Position inside the `(2k+1)×(2k+1)` block `q₂`, 1-based.
    pub q_row: usize,
    pub q_col: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonCheck {
    pub k: usize,
    pub n: usize,
    pub terms: Vec<SymbolicTerm>,
    pub expected: Vec<SymbolicTerm>,
    pub holds: bool,
}

fn alpha() -> RatFunc {
    RatFunc::var(0)
}

fn beta() -> RatFunc {
    RatFunc::var(1)
}

fn c(v: i64) -> RatFunc {
    RatFunc::constant(rat(v))
}

pub fn render(f: &RatFunc) -> String {
    match f.as_poly() {
        Some(p) => p.display_with(&NAMES),
        None => format!(
            "({})/({})",
            f.num.display_with(&NAMES),
            f.den.display_with(&NAMES)
        ),
    }
}

/// Coefficients of `Z ↦ tr(M Z)` on the free entries of `Z ∈ sp(2n)`, each
/// mirror pair folded onto its lexicographically smaller position. 0-based.
pub fn fold_entries<T: Ring>(m: &Matrix<T>) -> BTreeMap<(usize, usize), T> {
    let two_n = m.rows();
    let mut acc: BTreeMap<(usize, usize), T> = BTreeMap::new();
    for (a, b, v) in m.nonzero_entries() {
        let pos = (b, a);
        let (mpos, s) = mirror(two_n, b, a);
        let (key, coeff) = if mpos < pos {
            (mpos, if s > 0 { v.clone() } else { -v.clone() })
        } else {
            (pos, v.clone())
        };
        let cur = acc.remove(&key).unwrap_or_else(T::zero);
        acc.insert(key, cur + coeff);
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

fn q2_col(n: usize, k: usize, j: usize) -> usize {
    2 * n - 2 * k - 1 + j
}

/// The `q₂` part of the character as a trace-form matrix.
fn q2_functional(n: usize, k: usize, b: RatFunc, a: RatFunc) -> Matrix<RatFunc> {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    // coefficient of Z[r][c] sits at M[c][r]
    m.set(q2_col(n, k, 2) - 1, 2 * k - 1, b);
    m.set(q2_col(n, k, 1) - 1, 2 * k, a);
    m
}

fn block_diag(k: usize, block: &Matrix<RatFunc>) -> Matrix<RatFunc> {
    let mut g = Matrix::zeros(2 * k + 1, 2 * k + 1);
    g.set(0, 0, RatFunc::one());
    for b in 0..k {
        for i in 0..2 {
            for j in 0..2 {
                g.set(1 + 2 * b + i, 1 + 2 * b + j, block.get(i, j).clone());
            }
        }
    }
    g
}

fn q2_terms(n: usize, k: usize, m: &Matrix<RatFunc>) -> BTreeMap<(usize, usize), RatFunc> {
    let first_col = q2_col(n, k, 1) - 1;
    fold_entries(m)
        .into_iter()
        .filter(|((r, c), _)| *r < 2 * k + 1 && *c >= first_col)
        .map(|((r, c), v)| ((r + 1, c - first_col + 1), v))
        .collect()
}

fn check_shape(k: usize, n: usize) -> Result<(), ExchangeError> {
    if k == 0 || n < 2 * k + 1 {
        return Err(ExchangeError::BadLeviBlock(2 * k + 1, n));
    }
    Ok(())
}

fn run(
    k: usize,
    n: usize,
    block: Matrix<RatFunc>,
    functional: Matrix<RatFunc>,
    expected: BTreeMap<(usize, usize), RatFunc>,
) -> Result<EpsilonCheck, ExchangeError> {
    let eps = levi_embed(&block_diag(k, &block), n)?;
    // ψ_new(u) = ψ_old(ε⁻¹ u ε), so tr(M ε⁻¹ Z ε) = tr(ε M ε⁻¹ Z).
    let moved = eps.matmul(&functional).matmul(&symplectic_inverse(&eps));
    let got = q2_terms(n, k, &moved);
    let holds = got.len() == expected.len()
        && got
            .iter()
            .all(|(pos, v)| expected.get(pos).is_some_and(|e| e == v));
    let list = |m: &BTreeMap<(usize, usize), RatFunc>| {
        m.iter()
            .map(|(&(q_row, q_col), v)| SymbolicTerm {
                q_row,
                q_col,
                coeff: render(v),
            })
            .collect()
    };
    Ok(EpsilonCheck {
        k,
        n,
        terms: list(&got),
        expected: list(&expected),
        holds,
    })
}

/// `A = (α+β)⁻¹ [[β, α], [-1, 1]]`, expecting
/// `(α+β) q₂(2k,2) + αβ(α+β) q₂(2k+1,1)`.
pub fn epsilon_check(k: usize, n: usize) -> Result<EpsilonCheck, ExchangeError> {
    check_shape(k, n)?;
    let s = alpha() + beta();
    let inv = RatFunc::one() / s.clone();
    let a = Matrix::from_rows(vec![vec![beta(), alpha()], vec![-c(1), c(1)]]).scale(&inv);
    let mut expected = BTreeMap::new();
    expected.insert((2 * k, 2), s.clone());
    expected.insert((2 * k + 1, 1), alpha() * beta() * s);
    run(k, n, a, q2_functional(n, k, beta(), alpha()), expected)
}

/// `B = ½ [[1, -1], [1, 1]]` with `β = -α`, expecting `-4α q₂(2k,1)`.
pub fn epsilon_bar_check(k: usize, n: usize) -> Result<EpsilonCheck, ExchangeError> {
    check_shape(k, n)?;
    let h = RatFunc::constant(half());
    let b = Matrix::from_rows(vec![vec![c(1), -c(1)], vec![c(1), c(1)]]).scale(&h);
    let mut expected = BTreeMap::new();
    expected.insert((2 * k, 1), RatFunc::from(Poly::var(0).scale(&rat(-4))));
    run(k, n, b, q2_functional(n, k, -alpha(), alpha()), expected)
}
