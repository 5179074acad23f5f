//! Row reduction, kernels and subspaces over an exact field.

use super::matrix::Matrix;
use crate::scalar::Field;

/// Reduced row echelon form together with the pivot columns.
pub fn rref<T: Field>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = T::one() / a.get(r, c).clone();
        for j in c..cols {
            let v = a.get(r, j).clone() * inv.clone();
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..cols {
                let rv = a.get(r, j).clone();
                if rv.is_zero() {
                    continue;
                }
                let v = a.get(i, j).clone() - f.clone() * rv;
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of `{v : m v = 0}`, one vector per free column.
pub fn kernel<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(row, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `m x = b` with free variables set to zero.
pub fn solve<T: Field>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(m.rows(), b.len());
    let cols = m.cols();
    let aug = Matrix::from_fn(m.rows(), cols + 1, |i, j| {
        if j < cols {
            m.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, cols).clone();
    }
    Some(x)
}

/// A subspace of `T^dim`, stored as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    dim_ambient: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Field> Subspace<T> {
    pub fn span(dim_ambient: usize, vectors: &[Vec<T>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(dim_ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec());
        assert_eq!(m.cols(), dim_ambient);
        let (r, pivots) = rref(&m);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { dim_ambient, basis }
    }

    pub fn zero(dim_ambient: usize) -> Self {
        Subspace {
            dim_ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(dim_ambient: usize) -> Self {
        let basis = (0..dim_ambient)
            .map(|i| {
                (0..dim_ambient)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Subspace { dim_ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn contains(&self, v: &[T]) -> bool {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Subspace::span(self.dim_ambient, &vs).dim() == self.dim()
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.dim_ambient, &vs)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(self.dim_ambient);
        }
        // Solve sum a_i u_i = sum b_j w_j; columns are the two bases.
        let (p, q) = (self.dim(), other.dim());
        let m = Matrix::from_fn(self.dim_ambient, p + q, |i, j| {
            if j < p {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - p][i].clone()
            }
        });
        let vecs: Vec<Vec<T>> = kernel(&m)
            .into_iter()
            .map(|k| {
                let mut v = vec![T::zero(); self.dim_ambient];
                for (a, u) in k.iter().take(p).zip(&self.basis) {
                    if a.is_zero() {
                        continue;
                    }
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi = vi.clone() + a.clone() * ui.clone();
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.dim_ambient, &vecs)
    }
}
