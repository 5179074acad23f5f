//! Signed permutations of the torus coordinates and Levi conjugations.

use serde::{Deserialize, Serialize};

use crate::liealg::{is_symplectic, symplectic_inverse, Cocharacter, Matrix, RationalMatrix};
use crate::scalar::{Field, Ring};

use super::ExchangeError;

/// Position `k` of the result takes coordinate `perm[k]` of the input, negated
/// when `signs[k] = -1`. 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// On equal exponents the later coordinate comes first.
    #[default]
    LaterFirst,
    EarlierFirst,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (1..=n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// Exponents of the conjugated cocharacter.
    pub fn apply(&self, d: &[i64]) -> Vec<i64> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&j, &s)| i64::from(s) * d[j - 1])
            .collect()
    }

    /// The monomial matrix `w` with `w · diag(d, -d*) · w⁻¹ = diag(apply(d), …)`.
    pub fn to_matrix<T: Ring>(&self) -> Matrix<T> {
        let n = self.rank();
        let two_n = 2 * n;
        let mut w = Matrix::zeros(two_n, two_n);
        for (k, (&j, &s)) in self.perm.iter().zip(&self.signs).enumerate() {
            let j = j - 1;
            let (kp, jp) = (two_n - 1 - k, two_n - 1 - j);
            if s > 0 {
                w.set(k, j, T::one());
                w.set(kp, jp, T::one());
            } else {
                w.set(kp, j, T::one());
                w.set(k, jp, -T::one());
            }
        }
        w
    }
}

pub fn weyl_sorter(d: &Cocharacter, tie_break: TieBreak) -> SignedPermutation {
    let e = &d.exponents;
    let mut idx: Vec<usize> = (0..e.len()).collect();
    idx.sort_by(|&a, &b| {
        e[b].abs().cmp(&e[a].abs()).then(match tie_break {
            TieBreak::LaterFirst => b.cmp(&a),
            TieBreak::EarlierFirst => a.cmp(&b),
        })
    });
    SignedPermutation {
        perm: idx.iter().map(|&j| j + 1).collect(),
        signs: idx.iter().map(|&j| if e[j] < 0 { -1 } else { 1 }).collect(),
    }
}

/// `diag(g, I, w g⁻ᵗ w)` for an `m×m` block `g` with `m ≤ n`.
pub fn levi_embed<T: Field>(g: &Matrix<T>, n: usize) -> Result<Matrix<T>, ExchangeError> {
    let m = g.rows();
    if !g.is_square() || m > n {
        return Err(ExchangeError::BadLeviBlock(m, n));
    }
    let inv = g.inverse().ok_or(ExchangeError::Singular)?;
    let two_n = 2 * n;
    let mut out = Matrix::identity(two_n);
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, g.get(i, j).clone());
            // (w g⁻ᵗ w)[i][j] = g⁻¹[m-1-j][m-1-i]
            let v = inv.get(m - 1 - j, m - 1 - i).clone();
            out.set(two_n - m + i, two_n - m + j, v);
        }
    }
    Ok(out)
}

/// `g X g⁻¹`; the functional `tr(X log ·)` moves to `tr(gXg⁻¹ log ·)`.
pub fn conjugate_nilpotent(
    x: &RationalMatrix,
    g: &RationalMatrix,
) -> Result<RationalMatrix, ExchangeError> {
    if x.rows() != g.rows() || !is_symplectic(g)? {
        return Err(ExchangeError::NotSymplectic);
    }
    Ok(g.matmul(x).matmul(&symplectic_inverse(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::torus_element;
    use crate::scalar::rat;

    fn cochar(e: &[i64]) -> Cocharacter {
        Cocharacter {
            exponents: e.to_vec(),
        }
    }

    #[test]
    fn sorter_examples() {
        let w = weyl_sorter(&cochar(&[3, 1, 0]), TieBreak::default());
        assert!(w.is_identity());

        let w = weyl_sorter(&cochar(&[1, 3]), TieBreak::default());
        assert_eq!(w.perm, vec![2, 1]);
        assert_eq!(w.signs, vec![1, 1]);

        let w = weyl_sorter(&cochar(&[-1, 2]), TieBreak::default());
        assert_eq!(w.apply(&[-1, 2]), vec![2, 1]);
        assert_eq!(w.signs, vec![1, -1]);
        let m: RationalMatrix = w.to_matrix();
        assert!(is_symplectic(&m).unwrap());
        let conj = m.matmul(&torus_element(&[-1, 2])).matmul(&symplectic_inverse(&m));
        assert_eq!(conj, torus_element(&[2, 1]));
    }

    #[test]
    fn ties_put_later_block_first() {
        // diag(t1^3, t1; t2^5, t2^3, t2): t2 outranks t1 on equal exponents.
        let w = weyl_sorter(&cochar(&[3, 1, 5, 3, 1]), TieBreak::LaterFirst);
        assert_eq!(w.perm, vec![3, 4, 1, 5, 2]);
        let w = weyl_sorter(&cochar(&[3, 1, 5, 3, 1]), TieBreak::EarlierFirst);
        assert_eq!(w.perm, vec![3, 1, 4, 2, 5]);
    }

    #[test]
    fn levi_block_is_symplectic() {
        let g = RationalMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(0), rat(3)]]);
        let e = levi_embed(&g, 3).unwrap();
        assert!(is_symplectic(&e).unwrap());
        assert_eq!(*e.get(5, 5), rat(1));
        assert!(levi_embed(&RationalMatrix::zeros(2, 2), 3).is_err());
    }

    #[test]
    fn conjugation_rejects_non_symplectic() {
        let x = RationalMatrix::zeros(4, 4);
        let g = RationalMatrix::identity(4).scale(&rat(2));
        assert_eq!(conjugate_nilpotent(&x, &g), Err(ExchangeError::NotSymplectic));
        assert_eq!(conjugate_nilpotent(&x, &RationalMatrix::identity(4)).unwrap(), x);
    }
}
