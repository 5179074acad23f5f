//! Sparse multivariate polynomials over the rationals and unreduced rational
//! functions. Only as much algebra as the symbolic checks need.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use crate::scalar::{format_rational, rat, Rational};

/// Exponent vector with trailing zeros trimmed, so equal monomials compare equal.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(out)
}

fn mono_div(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.clone();
    for (i, e) in b.iter().enumerate() {
        out[i] = out[i].checked_sub(*e)?;
    }
    Some(trim(out))
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    /// The indeterminate with index `i`.
    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms
            .get(&trim(m.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.iter().enumerate() {
                for _ in 0..*e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        // Graded order: total degree first, then the map's lex order.
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let (lm, lc) = {
            let (m, c) = d.leading()?;
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = mono_div(&m, &lm)?;
            let qc = c / &lc;
            let mut t = Poly::zero();
            t.add_term(qm, qc);
            rem = rem - &t * d;
            quot = quot + t;
        }
        Some(quot)
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    let name = names.get(i).copied().unwrap_or("?");
                    if *e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format_rational(&abs)
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&coeff);
            } else {
                if !abs.is_one() {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..8).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(rat(c))
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Quotient of polynomials. Not reduced; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.tidy();
        r
    }

    pub fn var(i: usize) -> Self {
        Poly::var(i).into()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::constant(c).into()
    }

    /// The polynomial this equals, when the denominator divides out.
    pub fn as_poly(&self) -> Option<Poly> {
        self.num.exact_div(&self.den)
    }

    fn tidy(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if let Some(c) = self.den.as_constant() {
            self.num = self.num.scale(&(Rational::one() / c));
            self.den = Poly::one();
        } else if let Some(q) = self.num.exact_div(&self.den) {
            self.num = q;
            self.den = Poly::one();
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Poly::zero().into()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Poly::one().into()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(self.num + rhs.num, self.den);
        }
        let num = &self.num * &rhs.den + &rhs.num * &self.den;
        RatFunc::new(num, &self.den * &rhs.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn poly_ring_basics() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let s = x.clone() + y.clone();
        let sq = &s * &s;
        assert_eq!(sq.coeff(&[1, 1]), rat(2));
        assert_eq!(sq.coeff(&[2]), rat(1));
        assert!((s.clone() - s.clone()).is_zero());
        assert_eq!(sq.exact_div(&s), Some(s.clone()));
        assert_eq!(sq.exact_div(&x), None);
        assert_eq!(sq.eval(&[rat(1), rat(2)]), rat(9));
        assert_eq!((&x * &y).display_with(&["a", "b"]), "a*b");
        assert_eq!((-x).scale(&ratio(1, 2)).display_with(&["a"]), "-1/2*a");
    }

    #[test]
    fn ratfunc_cancels_and_compares() {
        let a = RatFunc::var(0);
        let b = RatFunc::var(1);
        let s = a.clone() + b.clone();
        let q = (s.clone() * a.clone()) / s.clone();
        assert_eq!(q.as_poly(), Some(Poly::var(0)));
        assert_eq!(q, a);
        let half = RatFunc::constant(ratio(1, 2));
        assert_eq!(half.clone() + half, RatFunc::one());
        let r = RatFunc::one() / s;
        assert_eq!(r.as_poly(), None);
        assert_eq!(r.eval(&[rat(1), rat(2)]), Some(ratio(1, 3)));
    }
}
