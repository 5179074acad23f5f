//! Type C roots, their matrix root vectors in sp(2n), and a fixed basis of
//! sp(2n) with coordinates.
//!
//! Indices are 1-based in labels and 0-based in matrices. The mirror of
//! index `i` is `i' = 2n+1-i`.

use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::RationalMatrix;
use super::LieError;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLabel {
    /// `e_i - e_j`, `i != j`.
    EiMinusEj(usize, usize),
    /// `e_i + e_j`, `i < j`.
    EiPlusEj(usize, usize),
    /// `-(e_i + e_j)`, `i < j`.
    NegEiPlusEj(usize, usize),
    TwoEi(usize),
    NegTwoEi(usize),
}

use RootLabel::*;

impl RootLabel {
    /// Builds `e_i + e_j` or its negative with indices in canonical order.
    pub fn sum(i: usize, j: usize, negative: bool) -> Self {
        let (a, b) = (i.min(j), i.max(j));
        if negative {
            NegEiPlusEj(a, b)
        } else {
            EiPlusEj(a, b)
        }
    }

    pub fn check(&self, n: usize) -> Result<(), LieError> {
        let ok = |i: usize| (1..=n).contains(&i);
        let good = match *self {
            EiMinusEj(i, j) => ok(i) && ok(j) && i != j,
            EiPlusEj(i, j) | NegEiPlusEj(i, j) => ok(i) && ok(j) && i < j,
            TwoEi(i) | NegTwoEi(i) => ok(i),
        };
        if good {
            Ok(())
        } else {
            Err(LieError::BadIndices(format!("{self} for rank {n}")))
        }
    }

    pub fn negate(&self) -> Self {
        match *self {
            EiMinusEj(i, j) => EiMinusEj(j, i),
            EiPlusEj(i, j) => NegEiPlusEj(i, j),
            NegEiPlusEj(i, j) => EiPlusEj(i, j),
            TwoEi(i) => NegTwoEi(i),
            NegTwoEi(i) => TwoEi(i),
        }
    }

    /// Positive for the upper-triangular Borel of this realization.
    pub fn is_positive(&self) -> bool {
        match *self {
            EiMinusEj(i, j) => i < j,
            EiPlusEj(..) | TwoEi(_) => true,
            NegEiPlusEj(..) | NegTwoEi(_) => false,
        }
    }

    pub fn is_long(&self) -> bool {
        matches!(self, TwoEi(_) | NegTwoEi(_))
    }

    /// Coefficient vector in the `e_i` basis.
    pub fn to_vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match *self {
            EiMinusEj(i, j) => {
                v[i - 1] += 1;
                v[j - 1] -= 1;
            }
            EiPlusEj(i, j) => {
                v[i - 1] += 1;
                v[j - 1] += 1;
            }
            NegEiPlusEj(i, j) => {
                v[i - 1] -= 1;
                v[j - 1] -= 1;
            }
            TwoEi(i) => v[i - 1] = 2,
            NegTwoEi(i) => v[i - 1] = -2,
        }
        v
    }

    /// The root with this coefficient vector, if it is one.
    pub fn from_vector(v: &[i64]) -> Option<Self> {
        let nz: Vec<(usize, i64)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| (k + 1, *c))
            .collect();
        match nz.as_slice() {
            [(i, 2)] => Some(TwoEi(*i)),
            [(i, -2)] => Some(NegTwoEi(*i)),
            [(i, 1), (j, 1)] => Some(EiPlusEj(*i, *j)),
            [(i, -1), (j, -1)] => Some(NegEiPlusEj(*i, *j)),
            [(i, 1), (j, -1)] => Some(EiMinusEj(*i, *j)),
            [(i, -1), (j, 1)] => Some(EiMinusEj(*j, *i)),
            _ => None,
        }
    }

    /// Pairing with a cocharacter `d`.
    pub fn weight(&self, d: &[i64]) -> i64 {
        match *self {
            EiMinusEj(i, j) => d[i - 1] - d[j - 1],
            EiPlusEj(i, j) => d[i - 1] + d[j - 1],
            NegEiPlusEj(i, j) => -d[i - 1] - d[j - 1],
            TwoEi(i) => 2 * d[i - 1],
            NegTwoEi(i) => -2 * d[i - 1],
        }
    }

    /// Matrix entries (0-based) of the unit root vector with their signs.
    /// The first entry is the primary one, used as the coordinate.
    pub fn entries(&self, n: usize) -> Vec<(usize, usize, i64)> {
        let m = |i: usize| 2 * n - i; // 0-based index of i'
        match *self {
            EiMinusEj(i, j) => vec![(i - 1, j - 1, 1), (m(j), m(i), -1)],
            EiPlusEj(i, j) => vec![(i - 1, m(j), 1), (j - 1, m(i), 1)],
            NegEiPlusEj(i, j) => vec![(m(j), i - 1, 1), (m(i), j - 1, 1)],
            TwoEi(i) => vec![(i - 1, m(i), 1)],
            NegTwoEi(i) => vec![(m(i), i - 1, 1)],
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EiMinusEj(i, j) => write!(f, "e{i}-e{j}"),
            EiPlusEj(i, j) => write!(f, "e{i}+e{j}"),
            NegEiPlusEj(i, j) => write!(f, "-e{i}-e{j}"),
            TwoEi(i) => write!(f, "2e{i}"),
            NegTwoEi(i) => write!(f, "-2e{i}"),
        }
    }
}

impl FromStr for RootLabel {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        let bad = || LieError::BadRootLabel(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let idx = |x: &str| -> Result<usize, LieError> {
            let i: usize = x.strip_prefix('e').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if i == 0 {
                Err(bad())
            } else {
                Ok(i)
            }
        };
        if let Some(r) = t.strip_prefix("-2") {
            return Ok(NegTwoEi(idx(r)?));
        }
        if let Some(r) = t.strip_prefix('2') {
            return Ok(TwoEi(idx(r)?));
        }
        let (neg_first, body) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t.as_str()),
        };
        let k = body[1..].find(['+', '-']).ok_or_else(bad)? + 1;
        let (a, b) = (idx(&body[..k])?, idx(&body[k + 1..])?);
        let plus = &body[k..k + 1] == "+";
        if a == b {
            return Err(bad());
        }
        match (neg_first, plus) {
            (false, false) => Ok(EiMinusEj(a, b)),
            (false, true) => Ok(RootLabel::sum(a, b, false)),
            (true, false) => Ok(RootLabel::sum(a, b, true)),
            (true, true) => Ok(EiMinusEj(b, a)),
        }
    }
}

impl Serialize for RootLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All `2n²` roots of type C_n in a fixed order.
pub fn all_roots(n: usize) -> Vec<RootLabel> {
    let mut out = Vec::with_capacity(2 * n * n);
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push(EiMinusEj(i, j));
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(EiPlusEj(i, j));
            out.push(NegEiPlusEj(i, j));
        }
    }
    for i in 1..=n {
        out.push(TwoEi(i));
        out.push(NegTwoEi(i));
    }
    out
}

pub fn root_vector(alpha: &RootLabel, c: &Rational, n: usize) -> Result<RationalMatrix, LieError> {
    alpha.check(n)?;
    let mut m = RationalMatrix::zeros(2 * n, 2 * n);
    if c.is_zero() {
        return Ok(m);
    }
    for (r, col, s) in alpha.entries(n) {
        let v = if s > 0 { c.clone() } else { -c.clone() };
        m.set(r, col, v);
    }
    Ok(m)
}

/// Sparse matrix: 0-based `(row, col, value)` triples.
pub type Sparse = Vec<(usize, usize, Rational)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// `E_{i,i} - E_{i',i'}`.
    Cartan(usize),
    Root(RootLabel),
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Cartan(i) => write!(f, "h{i}"),
            BasisElement::Root(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for BasisElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BasisElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if let Some(i) = s.strip_prefix('h') {
            let i: usize = i.parse().map_err(serde::de::Error::custom)?;
            return Ok(BasisElement::Cartan(i));
        }
        s.parse().map(BasisElement::Root).map_err(serde::de::Error::custom)
    }
}

impl BasisElement {
    pub fn sparse(&self, n: usize) -> Sparse {
        match self {
            BasisElement::Cartan(i) => vec![
                (i - 1, i - 1, Rational::one()),
                (2 * n - i, 2 * n - i, -Rational::one()),
            ],
            BasisElement::Root(r) => r
                .entries(n)
                .into_iter()
                .map(|(a, b, s)| (a, b, Rational::from_integer(s.into())))
                .collect(),
        }
    }

    /// The entry whose value is this element's coordinate.
    pub fn primary(&self, n: usize) -> (usize, usize) {
        match self {
            BasisElement::Cartan(i) => (i - 1, i - 1),
            BasisElement::Root(r) => {
                let (a, b, _) = r.entries(n)[0];
                (a, b)
            }
        }
    }

    pub fn weight(&self, d: &[i64]) -> i64 {
        match self {
            BasisElement::Cartan(_) => 0,
            BasisElement::Root(r) => r.weight(d),
        }
    }
}

/// Cartan elements then all roots; `n(2n+1)` elements.
#[derive(Clone, Debug)]
pub struct SpBasis {
    pub n: usize,
    pub elements: Vec<BasisElement>,
}

impl SpBasis {
    pub fn new(n: usize) -> Self {
        let mut elements: Vec<BasisElement> = (1..=n).map(BasisElement::Cartan).collect();
        elements.extend(all_roots(n).into_iter().map(BasisElement::Root));
        SpBasis { n, elements }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Coordinates of `m`, assumed to lie in sp(2n).
    pub fn coordinates(&self, m: &RationalMatrix) -> Vec<Rational> {
        self.elements
            .iter()
            .map(|e| {
                let (a, b) = e.primary(self.n);
                m.get(a, b).clone()
            })
            .collect()
    }

    pub fn combine(&self, coords: &[Rational]) -> RationalMatrix {
        combine(self.n, &self.elements, coords)
    }
}

pub fn combine(n: usize, elements: &[BasisElement], coords: &[Rational]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(2 * n, 2 * n);
    for (e, c) in elements.iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        for (a, b, v) in e.sparse(n) {
            m.add_at(a, b, v * c);
        }
    }
    m
}

/// `[X, B]` for dense `X` and sparse `B`.
pub fn bracket_dense_sparse(x: &RationalMatrix, b: &Sparse) -> RationalMatrix {
    let dim = x.rows();
    let mut out = RationalMatrix::zeros(dim, dim);
    for (k, c, v) in b {
        for r in 0..dim {
            let xv = x.get(r, *k);
            if !xv.is_zero() {
                out.add_at(r, *c, xv * v);
            }
            let xv = x.get(*c, r);
            if !xv.is_zero() {
                out.add_at(*k, r, -(v * xv));
            }
        }
    }
    out
}

/// `tr(C B)` for sparse `B`.
pub fn trace_with_sparse(c: &RationalMatrix, b: &Sparse) -> Rational {
    b.iter()
        .fold(Rational::zero(), |acc, (k, col, v)| acc + c.get(*col, *k) * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::sp_membership;
    use crate::scalar::{half, rat};

    #[test]
    fn labels_round_trip() {
        for n in 1..=4 {
            for r in all_roots(n) {
                let s = r.to_string();
                assert_eq!(s.parse::<RootLabel>().unwrap(), r, "{s}");
                assert_eq!(RootLabel::from_vector(&r.to_vector(n)), Some(r));
                assert_eq!(r.negate().negate(), r);
            }
        }
        assert_eq!("e3+e1".parse::<RootLabel>().unwrap(), EiPlusEj(1, 3));
        assert_eq!("-e5-e2".parse::<RootLabel>().unwrap(), NegEiPlusEj(2, 5));
        assert!("e1-e1".parse::<RootLabel>().is_err());
        assert!("x1".parse::<RootLabel>().is_err());
    }

    #[test]
    fn root_vectors_lie_in_sp() {
        for n in 1..=4 {
            for r in all_roots(n) {
                let m = root_vector(&r, &rat(3), n).unwrap();
                assert!(sp_membership(&m).unwrap(), "{r}");
            }
        }
        assert_eq!(SpBasis::new(3).dim(), 21);
    }

    #[test]
    fn spec_examples() {
        let m = root_vector(&NegTwoEi(1), &rat(5), 1).unwrap();
        assert_eq!(m.to_rows(), vec![vec![rat(0), rat(0)], vec![rat(5), rat(0)]]);
        let m = root_vector(&EiMinusEj(2, 1), &half(), 3).unwrap();
        let nz: Vec<_> = m.nonzero_entries().map(|(a, b, v)| (a + 1, b + 1, v.clone())).collect();
        assert_eq!(nz, vec![(2, 1, half()), (6, 5, -half())]);
        assert!(root_vector(&TwoEi(1), &rat(0), 2).unwrap().is_zero());
        assert!(root_vector(&TwoEi(3), &rat(1), 2).is_err());
    }

    #[test]
    fn torus_scaling() {
        let n = 3;
        let d = [3i64, -1, 2];
        for r in all_roots(n) {
            let m = root_vector(&r, &rat(1), n).unwrap();
            for (a, b, _) in m.nonzero_entries() {
                let da = if a < n { d[a] } else { -d[2 * n - 1 - a] };
                let db = if b < n { d[b] } else { -d[2 * n - 1 - b] };
                assert_eq!(da - db, r.weight(&d));
            }
        }
    }

    #[test]
    fn coordinates_invert_combine() {
        let b = SpBasis::new(3);
        let coords: Vec<Rational> = (0..b.dim()).map(|k| rat(k as i64 - 7)).collect();
        let m = b.combine(&coords);
        assert!(sp_membership(&m).unwrap());
        assert_eq!(b.coordinates(&m), coords);
    }

    #[test]
    fn sparse_bracket_matches_dense() {
        let n = 2;
        let b = SpBasis::new(n);
        let x = b.combine(&(0..b.dim()).map(|k| rat((k * k) as i64 % 5 - 2)).collect::<Vec<_>>());
        for e in &b.elements {
            let s = e.sparse(n);
            let dense = combine(n, &[*e], &[rat(1)]);
            assert_eq!(bracket_dense_sparse(&x, &s), x.commutator(&dense));
            assert_eq!(trace_with_sparse(&x, &s), x.trace_product(&dense));
        }
    }
}
