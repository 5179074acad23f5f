//! The alternating form on `g_1`, its radical against `(X)^♯`, and the
//! explicit pairing values along the polarization.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::liealg::linalg::{rank, Subspace};
use crate::liealg::roots::{bracket_dense_sparse, trace_with_sparse};
use crate::liealg::{
    annihilator_sharp, build_nilpotent, grade, recipe_roots, BasisElement, Matrix,
    RationalMatrix, RootLabel, SpBasis,
};
use crate::partitions::{enumerate_symplectic, SquareClassAssignment, SymplecticPartition};
use crate::poly::Poly;
use crate::scalar::{half, rat, Rational};

use super::polarization::{lagrangian_polarization, polarization_roots, MatchedPair, PairCase};
use super::FourierError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergReport {
    pub dim_g1: usize,
    pub rank: usize,
    pub nondegenerate: bool,
    pub sharp_intersection_dim: usize,
    /// Roots spanning `g_1`, in Gram order.
    pub basis: Vec<RootLabel>,
    pub gram: RationalMatrix,
    /// The form vanishes on the x-half and on the y-half of the literal lists.
    pub x_isotropic: bool,
    pub y_isotropic: bool,
    /// Both halves of [`lagrangian_polarization`] are isotropic.
    pub lagrangian_isotropic: bool,
    /// Pairs of x-roots of the literal lists on which the form is non-zero.
    pub x_witnesses: Vec<(RootLabel, RootLabel)>,
}

fn g1_basis(p: &SymplecticPartition) -> Vec<RootLabel> {
    grade(p)
        .levels
        .get(&1)
        .map(|v| {
            v.iter()
                .filter_map(|e| match e {
                    BasisElement::Root(r) => Some(*r),
                    BasisElement::Cartan(_) => None,
                })
                .collect()
        })
        .unwrap_or_default()
}

/// `tr(X[Z, Z'])` on root vectors.
fn form_on(x: &RationalMatrix, n: usize, a: &[RootLabel], b: &[RootLabel]) -> RationalMatrix {
    let bs: Vec<_> = b.iter().map(|r| BasisElement::Root(*r).sparse(n)).collect();
    let brackets: Vec<RationalMatrix> = a
        .iter()
        .map(|r| bracket_dense_sparse(x, &BasisElement::Root(*r).sparse(n)))
        .collect();
    Matrix::from_fn(a.len(), b.len(), |k, l| trace_with_sparse(&brackets[k], &bs[l]))
}

pub fn heisenberg_form(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<HeisenbergReport, FourierError> {
    a.check(p)?;
    let n = p.n();
    let x = build_nilpotent(p, a)?;
    let basis = g1_basis(p);
    let gram = form_on(&x, n, &basis, &basis);
    let r = rank(&gram);

    let sp_basis = SpBasis::new(n);
    let sharp: Vec<Vec<Rational>> = annihilator_sharp(&x)?
        .iter()
        .map(|m| sp_basis.coordinates(m))
        .collect();
    let sharp = Subspace::span(sp_basis.dim(), &sharp);
    let g1: Vec<Vec<Rational>> = basis
        .iter()
        .map(|root| {
            let pos = sp_basis
                .elements
                .iter()
                .position(|e| *e == BasisElement::Root(*root))
                .expect("root is a basis element");
            let mut v = vec![Rational::zero(); sp_basis.dim()];
            v[pos] = Rational::one();
            v
        })
        .collect();
    let g1 = Subspace::span(sp_basis.dim(), &g1);
    let sharp_intersection_dim = g1.intersect(&sharp).dim();

    let pol = polarization_roots(p);
    let x_isotropic = form_on(&x, n, &pol.x_roots, &pol.x_roots).is_zero();
    let y_isotropic = form_on(&x, n, &pol.y_roots, &pol.y_roots).is_zero();
    let xx = form_on(&x, n, &pol.x_roots, &pol.x_roots);
    let mut x_witnesses = Vec::new();
    for k in 0..pol.x_roots.len() {
        for l in k + 1..pol.x_roots.len() {
            if !xx.get(k, l).is_zero() {
                x_witnesses.push((pol.x_roots[k], pol.x_roots[l]));
            }
        }
    }
    let lag = lagrangian_polarization(p);
    let lagrangian_isotropic = form_on(&x, n, &lag.x_roots, &lag.x_roots).is_zero()
        && form_on(&x, n, &lag.y_roots, &lag.y_roots).is_zero();

    Ok(HeisenbergReport {
        dim_g1: basis.len(),
        rank: r,
        nondegenerate: r == basis.len(),
        sharp_intersection_dim,
        basis,
        gram,
        x_isotropic,
        y_isotropic,
        lagrangian_isotropic,
        x_witnesses,
    })
}

/// Scaling of the one-parameter root subgroups used along the polarization:
/// `e_i+e_j` by 1/2 and `-(e_i+e_j)` by 2, other roots unscaled. With plain
/// unit root vectors the long-root pairing picks up an extra factor 2.
pub fn polarization_scale(r: &RootLabel) -> Rational {
    match r {
        RootLabel::EiPlusEj(..) => half(),
        RootLabel::NegEiPlusEj(..) => rat(2),
        _ => Rational::one(),
    }
}

fn poly_root_vector(r: &RootLabel, scale: Poly, n: usize) -> Matrix<Poly> {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for (a, b, s) in r.entries(n) {
        m.set(a, b, scale.scale(&rat(s)));
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingCheck {
    pub x_root: RootLabel,
    pub y_root: RootLabel,
    pub case: PairCase,
    pub long: bool,
    /// `tr(X[log X_x(x), log Y_y(y)])`, or the reversed bracket for the long pair.
    pub value: String,
    pub expected: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    pub checks: Vec<PairingCheck>,
    pub all_hold: bool,
}

/// Variable indices: 0 is x, 1 is y, 2+i is the class of block i.
const VAR_NAMES: [&str; 2] = ["x", "y"];

fn var_names(blocks: usize) -> Vec<String> {
    let mut names: Vec<String> = VAR_NAMES.iter().map(|s| s.to_string()).collect();
    names.extend((0..blocks).map(|i| format!("a{}", i + 1)));
    names
}

fn pairing_with(
    p: &SymplecticPartition,
    classes: &[Option<Poly>],
) -> Result<PairingReport, FourierError> {
    let n = p.n();
    let mut x_pa: Matrix<Poly> = Matrix::zeros(2 * n, 2 * n);
    let ones = SquareClassAssignment::ones(p);
    // Recipe roots with unit classes, then substitute the class polynomial
    // on the long roots.
    for (root, c) in recipe_roots(p, &ones)? {
        let coeff = match root {
            RootLabel::NegTwoEi(i) => {
                let bi = p
                    .blocks()
                    .blocks
                    .iter()
                    .position(|b| b.is_even() && b.last() == i)
                    .expect("long recipe root closes an even block");
                classes[bi].clone().ok_or(FourierError::MissingSquareClass(bi))?
            }
            _ => Poly::constant(c),
        };
        for (a, b, s) in root.entries(n) {
            x_pa.add_at(a, b, coeff.scale(&rat(s)));
        }
    }
    let xv = Poly::var(0);
    let yv = Poly::var(1);
    let names = var_names(p.blocks().blocks.len());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut checks = Vec::new();
    for MatchedPair {
        block_i,
        x_root,
        y_root,
        case,
        long,
        ..
    } in polarization_roots(p).pairs
    {
        let lx = poly_root_vector(&x_root, xv.scale(&polarization_scale(&x_root)), n);
        let ly = poly_root_vector(&y_root, yv.scale(&polarization_scale(&y_root)), n);
        let br = if long { ly.commutator(&lx) } else { lx.commutator(&ly) };
        let value = x_pa.trace_product(&br);
        let xy = &xv * &yv;
        let expected = if long {
            let ai = classes[block_i]
                .clone()
                .ok_or(FourierError::MissingSquareClass(block_i))?;
            -(&ai * &xy)
        } else {
            -xy
        };
        checks.push(PairingCheck {
            x_root,
            y_root,
            case,
            long,
            holds: value == expected,
            value: value.display_with(&refs),
            expected: expected.display_with(&refs),
        });
    }
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(PairingReport { checks, all_hold })
}

/// Pairing values with the given numeric square classes.
pub fn pairing_identities(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<PairingReport, FourierError> {
    a.check(p)?;
    let classes: Vec<Option<Poly>> = (0..p.blocks().blocks.len())
        .map(|i| a.get(i).map(|v| Poly::constant(rat(v))))
        .collect();
    pairing_with(p, &classes)
}

/// Pairing values with every square class `a_i` an indeterminate.
pub fn pairing_identities_symbolic(p: &SymplecticPartition) -> Result<PairingReport, FourierError> {
    let classes: Vec<Option<Poly>> = p
        .blocks()
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| b.is_even().then(|| Poly::var(2 + i)))
        .collect();
    pairing_with(p, &classes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondegeneracyInstance {
    pub partition: SymplecticPartition,
    pub square_classes: Vec<i64>,
    pub dim_g1: usize,
    pub rank: usize,
    pub sharp_intersection_dim: usize,
    pub pairings_hold: bool,
    pub lagrangian_isotropic: bool,
    /// Isotropy of the literal x-half, reported but not part of `pass`.
    pub literal_x_isotropic: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondegeneracySummary {
    pub two_n_max: u32,
    pub partitions_checked: usize,
    pub runs: usize,
    pub instances: Vec<NondegeneracyInstance>,
    pub counterexamples: Vec<NondegeneracyInstance>,
    pub all_pass: bool,
}

/// Non-trivial classes cycled over the even blocks.
pub const NONTRIVIAL_SAMPLE: [i64; 4] = [-1, 2, -3, 5];

pub fn nontrivial_sample(p: &SymplecticPartition) -> SquareClassAssignment {
    let v: Vec<i64> = (0..p.even_count())
        .map(|k| NONTRIVIAL_SAMPLE[k % NONTRIVIAL_SAMPLE.len()])
        .collect();
    SquareClassAssignment::for_partition(p, &v).expect("sample classes are squarefree")
}

pub fn nondegeneracy_instance(
    p: &SymplecticPartition,
    a: &SquareClassAssignment,
) -> Result<NondegeneracyInstance, FourierError> {
    let h = heisenberg_form(p, a)?;
    let pairings_hold = pairing_identities(p, a)?.all_hold;
    let pass = h.nondegenerate
        && h.sharp_intersection_dim == 0
        && h.lagrangian_isotropic
        && pairings_hold;
    Ok(NondegeneracyInstance {
        partition: p.clone(),
        square_classes: a.values(),
        dim_g1: h.dim_g1,
        rank: h.rank,
        sharp_intersection_dim: h.sharp_intersection_dim,
        pairings_hold,
        lagrangian_isotropic: h.lagrangian_isotropic,
        literal_x_isotropic: h.x_isotropic,
        pass,
    })
}

/// Every partition of every even total up to `two_n_max`, with trivial
/// classes and one non-trivial sample.
pub fn verify_lemma21(two_n_max: u32) -> Result<NondegeneracySummary, FourierError> {
    let mut instances = Vec::new();
    let mut partitions_checked = 0;
    for two_n in (2..=two_n_max).step_by(2) {
        for p in enumerate_symplectic(two_n)? {
            partitions_checked += 1;
            instances.push(nondegeneracy_instance(&p, &SquareClassAssignment::ones(&p))?);
            if p.even_count() > 0 {
                instances.push(nondegeneracy_instance(&p, &nontrivial_sample(&p))?);
            }
        }
    }
    let counterexamples: Vec<_> = instances.iter().filter(|i| !i.pass).cloned().collect();
    Ok(NondegeneracySummary {
        two_n_max,
        partitions_checked,
        runs: instances.len(),
        all_pass: counterexamples.is_empty(),
        instances,
        counterexamples,
    })
}
