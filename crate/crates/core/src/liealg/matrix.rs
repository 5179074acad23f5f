//! Dense matrices over an exact ring.

use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::scalar::{format_rational, parse_rational, Field, Rational, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: T) {
        let k = i * self.cols + j;
        let cur = std::mem::replace(&mut self.data[k], T::zero());
        self.data[k] = cur + v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let c = self.cols;
        self.data.iter().enumerate().map(move |(k, v)| (k / c, k % c, v))
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.entries().filter(|(_, _, v)| !v.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Product skipping zero entries of the left factor, which dominate here.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_at(i, j, a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.matmul(rhs) - rhs.matmul(self)
    }

    /// `tr(self * rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> T {
        let mut acc = T::zero();
        for (i, k, a) in self.nonzero_entries() {
            let b = rhs.get(k, i);
            if !b.is_zero() {
                acc = acc + a.clone() * b.clone();
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.matmul(self);
        }
        out
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }

    /// Flattened entries, row-major.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

impl<T: Field> Matrix<T> {
    /// Inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            let p = a.get(col, col).clone();
            for j in 0..n {
                let v = a.get(col, j).clone() / p.clone();
                a.set(col, j, v);
                let w = inv.get(col, j).clone() / p.clone();
                inv.set(col, j, w);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let v = a.get(r, j).clone() - f.clone() * a.get(col, j).clone();
                    a.set(r, j, v);
                    let w = inv.get(r, j).clone() - f.clone() * inv.get(col, j).clone();
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }
}

impl<T> Matrix<T> {
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Ring> Add for Matrix<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Ring> Sub for Matrix<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Ring> Neg for Matrix<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.matmul(rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for Matrix<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixDoc {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(format_rational).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(d)?;
        if doc.entries.len() != doc.rows || doc.entries.iter().any(|r| r.len() != doc.cols) {
            return Err(de::Error::custom("matrix entries do not match declared shape"));
        }
        let mut data = Vec::with_capacity(doc.rows * doc.cols);
        for s in doc.entries.iter().flatten() {
            data.push(parse_rational(s).map_err(de::Error::custom)?);
        }
        Ok(Matrix {
            rows: doc.rows,
            cols: doc.cols,
            data,
        })
    }
}

/// The 2n×2n antidiagonal form: +1 above the anti-diagonal midpoint, −1 below.
pub fn symplectic_form<T: Ring>(two_n: usize) -> Matrix<T> {
    let n = two_n / 2;
    Matrix::from_fn(two_n, two_n, |i, j| {
        if i + j + 1 != two_n {
            T::zero()
        } else if i < n {
            T::one()
        } else {
            -T::one()
        }
    })
}
