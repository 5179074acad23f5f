//! Quadruples `(C, ψ, X̃, Ỹ)` and the six conditions under which integration
//! over `C` may be traded for integration over `CX̃` or `CỸ`.

use std::collections::BTreeSet;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::fourier::{character_data, lagrangian_polarization, polarization_roots, CharacterFunctional};
use crate::liealg::linalg::rank;
use crate::liealg::{grade, BasisElement, Matrix, RationalMatrix, RootLabel, SpBasis};
use crate::partitions::{SquareClassAssignment, SymplecticPartition};
use crate::scalar::{format_rational, Rational};

use super::ExchangeError;

/// A unipotent subgroup generated by root subgroups. `roots` is the closure of
/// the generators under brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentGroupSpec {
    pub n: usize,
    pub generators: Vec<RootLabel>,
    pub roots: BTreeSet<RootLabel>,
}

fn root_sum(a: &RootLabel, b: &RootLabel, n: usize) -> Option<RootLabel> {
    let va = a.to_vector(n);
    let vb = b.to_vector(n);
    let s: Vec<i64> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
    RootLabel::from_vector(&s)
}

impl UnipotentGroupSpec {
    pub fn new(n: usize, generators: Vec<RootLabel>) -> Result<Self, ExchangeError> {
        for g in &generators {
            g.check(n)?;
        }
        let mut roots: BTreeSet<RootLabel> = generators.iter().copied().collect();
        loop {
            let mut new = Vec::new();
            for a in &roots {
                if roots.contains(&a.negate()) {
                    return Err(ExchangeError::NotNilpotent(*a));
                }
                for b in &roots {
                    if let Some(s) = root_sum(a, b, n) {
                        if !roots.contains(&s) {
                            new.push(s);
                        }
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            roots.extend(new);
        }
        // lower central series on the root set
        let mut layer = roots.clone();
        for _ in 0..=roots.len() {
            if layer.is_empty() {
                return Ok(UnipotentGroupSpec {
                    n,
                    generators,
                    roots,
                });
            }
            layer = roots
                .iter()
                .flat_map(|a| layer.iter().filter_map(move |b| root_sum(a, b, n)))
                .collect();
        }
        let witness = *layer.iter().next().expect("non-empty layer");
        Err(ExchangeError::NotNilpotent(witness))
    }

    pub fn trivial(n: usize) -> Self {
        UnipotentGroupSpec {
            n,
            generators: Vec::new(),
            roots: BTreeSet::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    pub fn contains(&self, r: &RootLabel) -> bool {
        self.roots.contains(r)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExchangeQuadruple {
    pub c: UnipotentGroupSpec,
    pub psi: CharacterFunctional,
    pub xt: UnipotentGroupSpec,
    pub yt: UnipotentGroupSpec,
}

impl ExchangeQuadruple {
    pub fn new(
        c: UnipotentGroupSpec,
        psi: CharacterFunctional,
        xt: UnipotentGroupSpec,
        yt: UnipotentGroupSpec,
    ) -> Result<Self, ExchangeError> {
        let n = psi.partition.n();
        for g in [&c, &xt, &yt] {
            if g.n != n {
                return Err(ExchangeError::RankMismatch { expected: n, found: g.n });
            }
        }
        Ok(ExchangeQuadruple { c, psi, xt, yt })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub left: Option<RootLabel>,
    pub right: Option<RootLabel>,
    /// The offending element or value.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: u8,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrupleReport {
    /// `ψ` vanishes on `[C, C]`.
    pub psi_is_character: bool,
    pub conditions: Vec<ConditionResult>,
    pub gram_rows: usize,
    pub gram_cols: usize,
    pub gram_rank: usize,
    pub all_pass: bool,
}

/// Bracket of two root vectors, written in the sp basis.
struct Brackets {
    n: usize,
    basis: SpBasis,
}

impl Brackets {
    fn new(n: usize) -> Self {
        Brackets {
            n,
            basis: SpBasis::new(n),
        }
    }

    fn vector(&self, r: &RootLabel) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(2 * self.n, 2 * self.n);
        for (a, b, s) in r.entries(self.n) {
            m.set(a, b, Rational::from_integer(s.into()));
        }
        m
    }

    fn bracket(&self, a: &RootLabel, b: &RootLabel) -> RationalMatrix {
        self.vector(a).commutator(&self.vector(b))
    }

    /// Basis elements with non-zero coordinate.
    fn support(&self, m: &RationalMatrix) -> Vec<BasisElement> {
        self.basis
            .coordinates(m)
            .iter()
            .zip(&self.basis.elements)
            .filter(|(c, _)| !c.is_zero())
            .map(|(_, e)| *e)
            .collect()
    }

    /// The part of `[a, b]` that lies outside the span of `set`.
    fn escapes(&self, a: &RootLabel, b: &RootLabel, set: &BTreeSet<RootLabel>) -> Vec<BasisElement> {
        self.support(&self.bracket(a, b))
            .into_iter()
            .filter(|e| !matches!(e, BasisElement::Root(r) if set.contains(r)))
            .collect()
    }
}

fn show(v: &[BasisElement]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn closure_check(
    br: &Brackets,
    lefts: &BTreeSet<RootLabel>,
    rights: &BTreeSet<RootLabel>,
    target: &BTreeSet<RootLabel>,
    out: &mut Vec<Witness>,
) {
    for a in lefts {
        for b in rights {
            let esc = br.escapes(a, b, target);
            if !esc.is_empty() {
                out.push(Witness {
                    left: Some(*a),
                    right: Some(*b),
                    detail: show(&esc),
                });
            }
        }
    }
}

fn result(condition: u8, witnesses: Vec<Witness>) -> ConditionResult {
    ConditionResult {
        condition,
        holds: witnesses.is_empty(),
        witnesses,
    }
}

pub fn validate_quadruple(q: &ExchangeQuadruple) -> Result<QuadrupleReport, ExchangeError> {
    let n = q.psi.partition.n();
    for g in [&q.c, &q.xt, &q.yt] {
        if g.n != n {
            return Err(ExchangeError::RankMismatch { expected: n, found: g.n });
        }
    }
    let br = Brackets::new(n);
    let ell = |m: &RationalMatrix| q.psi.x.trace_product(m);
    let c = &q.c.roots;
    let x = &q.xt.roots;
    let y = &q.yt.roots;
    let xc: BTreeSet<RootLabel> = x.intersection(c).copied().collect();
    let yc: BTreeSet<RootLabel> = y.intersection(c).copied().collect();

    let mut psi_is_character = true;
    for a in c {
        for b in c {
            if a < b && !ell(&br.bracket(a, b)).is_zero() {
                psi_is_character = false;
            }
        }
    }

    let mut w1 = Vec::new();
    closure_check(&br, x, c, c, &mut w1);
    closure_check(&br, y, c, c, &mut w1);

    let mut w2 = Vec::new();
    closure_check(&br, x, &xc, &xc, &mut w2);
    closure_check(&br, y, &yc, &yc, &mut w2);
    closure_check(&br, x, x, &xc, &mut w2);
    closure_check(&br, y, y, &yc, &mut w2);

    let mut w3 = Vec::new();
    for g in [x, y] {
        for a in g {
            for b in c {
                let v = ell(&br.bracket(a, b));
                if !v.is_zero() {
                    w3.push(Witness {
                        left: Some(*a),
                        right: Some(*b),
                        detail: format_rational(&v),
                    });
                }
            }
        }
    }

    let mut w4 = Vec::new();
    for r in xc.iter().chain(&yc) {
        let v = ell(&br.vector(r));
        if !v.is_zero() {
            w4.push(Witness {
                left: Some(*r),
                right: None,
                detail: format_rational(&v),
            });
        }
    }

    let mut w5 = Vec::new();
    closure_check(&br, x, y, c, &mut w5);

    let xs: Vec<RootLabel> = x.difference(c).copied().collect();
    let ys: Vec<RootLabel> = y.difference(c).copied().collect();
    let gram = Matrix::from_fn(xs.len(), ys.len(), |i, j| ell(&br.bracket(&xs[i], &ys[j])));
    let gram_rank = rank(&gram);
    let mut w6 = Vec::new();
    if xs.len() != ys.len() || gram_rank != xs.len() {
        w6.push(Witness {
            left: None,
            right: None,
            detail: format!("gram {}x{} of rank {}", xs.len(), ys.len(), gram_rank),
        });
    }

    let conditions = vec![
        result(1, w1),
        result(2, w2),
        result(3, w3),
        result(4, w4),
        result(5, w5),
        result(6, w6),
    ];
    let all_pass = psi_is_character && conditions.iter().all(|c| c.holds);
    Ok(QuadrupleReport {
        psi_is_character,
        conditions,
        gram_rows: xs.len(),
        gram_cols: ys.len(),
        gram_rank,
        all_pass,
    })
}

/// Which root lists supply `X̃` and `Ỹ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Halves {
    Lagrangian,
    Literal,
}

/// `(V_{p,2}, ψ_{p,a}, X, Y)`.
pub fn heisenberg_quadruple(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
    halves: Halves,
) -> Result<ExchangeQuadruple, ExchangeError> {
    let n = p.n();
    let psi = character_data(p, a)?;
    let v2: Vec<RootLabel> = grade(p)
        .at_least(2)
        .into_iter()
        .filter_map(|e| match e {
            BasisElement::Root(r) => Some(r),
            BasisElement::Cartan(_) => None,
        })
        .collect();
    let pol = match halves {
        Halves::Lagrangian => lagrangian_polarization(p),
        Halves::Literal => polarization_roots(p),
    };
    ExchangeQuadruple::new(
        UnipotentGroupSpec::new(n, v2)?,
        psi,
        UnipotentGroupSpec::new(n, pol.x_roots)?,
        UnipotentGroupSpec::new(n, pol.y_roots)?,
    )
}

pub fn certify_corollary24(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<bool, ExchangeError> {
    let q = heisenberg_quadruple(p, a, Halves::Lagrangian)?;
    Ok(validate_quadruple(&q)?.all_pass)
}

#[derive(Serialize, Deserialize)]
struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    roots: Vec<RootLabel>,
}

#[derive(Serialize, Deserialize)]
struct PsiDoc {
    partition: SymplecticPartition,
    square_classes: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[allow(non_snake_case)]
struct QuadrupleDoc {
    C: GroupDoc,
    psi: PsiDoc,
    Xt: GroupDoc,
    Yt: GroupDoc,
}

impl Serialize for ExchangeQuadruple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let g = |u: &UnipotentGroupSpec| GroupDoc {
            rank: None,
            roots: u.generators.clone(),
        };
        QuadrupleDoc {
            C: g(&self.c),
            psi: PsiDoc {
                partition: self.psi.partition.clone(),
                square_classes: self.psi.classes.values(),
            },
            Xt: g(&self.xt),
            Yt: g(&self.yt),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExchangeQuadruple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = QuadrupleDoc::deserialize(d)?;
        let a = SquareClassAssignment::for_partition(&doc.psi.partition, &doc.psi.square_classes)
            .map_err(D::Error::custom)?;
        let psi = character_data(&doc.psi.partition, &a).map_err(D::Error::custom)?;
        let n = psi.partition.n();
        let g = |gd: GroupDoc| UnipotentGroupSpec::new(gd.rank.unwrap_or(n), gd.roots);
        let c = g(doc.C).map_err(D::Error::custom)?;
        let xt = g(doc.Xt).map_err(D::Error::custom)?;
        let yt = g(doc.Yt).map_err(D::Error::custom)?;
        ExchangeQuadruple::new(c, psi, xt, yt).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[u32]) -> SymplecticPartition {
        SymplecticPartition::new(parts.to_vec()).unwrap()
    }

    fn root(s: &str) -> RootLabel {
        s.parse().unwrap()
    }

    #[test]
    fn closure_and_nilpotency() {
        let g = UnipotentGroupSpec::new(3, vec![root("e1-e2"), root("e2-e3")]).unwrap();
        assert!(g.contains(&root("e1-e3")));
        assert_eq!(g.dim(), 3);
        assert!(UnipotentGroupSpec::new(2, vec![root("e1-e2"), root("e2-e1")]).is_err());
    }

    #[test]
    fn small_quadruples() {
        let p = sp(&[4, 1, 1]);
        let a = SquareClassAssignment::ones(&p);
        let q = heisenberg_quadruple(&p, &a, Halves::Literal).unwrap();
        let r = validate_quadruple(&q).unwrap();
        assert!(r.all_pass, "{r:?}");

        let mut triv = q.clone();
        triv.xt = UnipotentGroupSpec::trivial(3);
        triv.yt = UnipotentGroupSpec::trivial(3);
        assert!(validate_quadruple(&triv).unwrap().all_pass);

        let mut bad = q.clone();
        bad.yt = UnipotentGroupSpec::new(3, vec![root("e1-e2")]).unwrap();
        let r = validate_quadruple(&bad).unwrap();
        assert!(!r.conditions[5].holds);
        assert!(!r.conditions[5].witnesses.is_empty());

        let p = sp(&[2, 2]);
        assert!(certify_corollary24(&p, &SquareClassAssignment::ones(&p)).unwrap());
    }

    #[test]
    fn literal_halves_of_433() {
        let p = sp(&[4, 3, 3]);
        let a = SquareClassAssignment::ones(&p);
        assert!(certify_corollary24(&p, &a).unwrap());
        let q = heisenberg_quadruple(&p, &a, Halves::Literal).unwrap();
        let r = validate_quadruple(&q).unwrap();
        assert!(!r.all_pass);
        assert!(q.xt.contains(&root("e3-e4")));
        assert!(r.conditions[3]
            .witnesses
            .iter()
            .any(|w| w.left == Some(root("e3-e4"))));
    }

    #[test]
    fn rank_mismatch() {
        let p = sp(&[4, 1, 1]);
        let psi = character_data(&p, &SquareClassAssignment::ones(&p)).unwrap();
        let t = UnipotentGroupSpec::trivial(2);
        assert!(matches!(
            ExchangeQuadruple::new(t.clone(), psi, t.clone(), t),
            Err(ExchangeError::RankMismatch { .. })
        ));
    }
}
