use std::collections::BTreeSet;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sympcalc::fourier::*;
use sympcalc::liealg::linalg::rank;
use sympcalc::liealg::*;
use sympcalc::partitions::*;
use sympcalc::scalar::{rat, Rational};

fn sp(parts: &[u32]) -> SymplecticPartition {
    SymplecticPartition::new(parts.to_vec()).unwrap()
}

fn g1_roots(p: &SymplecticPartition) -> Vec<RootLabel> {
    grade(p)
        .levels
        .get(&1)
        .into_iter()
        .flatten()
        .filter_map(|e| match e {
            BasisElement::Root(r) => Some(*r),
            BasisElement::Cartan(_) => None,
        })
        .collect()
}

/// `tr(X [e_a, e_b])` computed on dense root vectors.
fn omega(x: &RationalMatrix, n: usize, a: &RootLabel, ca: &Rational, b: &RootLabel, cb: &Rational) -> Rational {
    let ea = root_vector(a, ca, n).unwrap();
    let eb = root_vector(b, cb, n).unwrap();
    x.matmul(&ea.commutator(&eb)).trace()
}

fn isotropic_by_hand(x: &RationalMatrix, n: usize, half: &[RootLabel]) -> Vec<(RootLabel, RootLabel)> {
    let one = rat(1);
    let mut bad = Vec::new();
    for (k, a) in half.iter().enumerate() {
        for b in &half[k + 1..] {
            if !omega(x, n, a, &one, b, &one).is_zero() {
                bad.push((*a, *b));
            }
        }
    }
    bad
}

fn partitions_up_to(two_n_max: u32) -> Vec<SymplecticPartition> {
    (2..=two_n_max)
        .step_by(2)
        .flat_map(|t| enumerate_symplectic(t).unwrap())
        .collect()
}

#[test]
fn entry_form_matches_trace_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for p in partitions_up_to(10) {
        let n = p.n();
        let g = grade(&p);
        let v2 = g.at_least(2);
        if v2.is_empty() {
            continue;
        }
        for a in [SquareClassAssignment::ones(&p), nontrivial_sample(&p)] {
            let psi = character_data(&p, &a).unwrap();
            for _ in 0..50 {
                let coords: Vec<Rational> = v2
                    .iter()
                    .map(|_| Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into()))
                    .collect();
                let z = roots::combine(n, &v2, &coords);
                let v = exp_nilpotent(&z).unwrap();
                // tr(X log v) with log v = z
                let want = psi.x.matmul(&z).trace();
                assert_eq!(psi.evaluate(&v), want, "{p}");
                assert_eq!(psi.trace_value(&v).unwrap(), want, "{p}");
            }
        }
    }
}

#[test]
fn worked_characters() {
    let p = sp(&[4, 1, 1]);
    assert_eq!(build_cocharacter(&p).exponents, vec![3, 1, 0]);
    let a = SquareClassAssignment::for_partition(&p, &[7]).unwrap();
    let psi = character_data(&p, &a).unwrap();
    let got: Vec<(usize, usize, Rational)> =
        psi.terms.iter().map(|t| (t.row, t.col, t.coeff.clone())).collect();
    assert_eq!(got, vec![(1, 2, rat(1)), (2, 5, rat(7))]);

    let p = sp(&[4, 3, 3]);
    assert_eq!(build_cocharacter(&p).exponents, vec![3, 1, 2, 0, -2]);
    let a = SquareClassAssignment::for_partition(&p, &[-3]).unwrap();
    let psi = character_data(&p, &a).unwrap();
    let got: Vec<(usize, usize, Rational)> =
        psi.terms.iter().map(|t| (t.row, t.col, t.coeff.clone())).collect();
    assert_eq!(
        got,
        vec![(1, 2, rat(1)), (2, 9, rat(-3)), (3, 4, rat(1)), (4, 5, rat(1))]
    );
}

#[test]
fn polarization_covers_g1() {
    for p in partitions_up_to(12) {
        let g1: BTreeSet<RootLabel> = g1_roots(&p).into_iter().collect();
        for pol in [polarization_roots(&p), lagrangian_polarization(&p)] {
            let xs: BTreeSet<RootLabel> = pol.x_roots.iter().copied().collect();
            let ys: BTreeSet<RootLabel> = pol.y_roots.iter().copied().collect();
            assert_eq!(xs.len(), pol.x_roots.len(), "{p}");
            assert_eq!(ys.len(), pol.y_roots.len(), "{p}");
            assert_eq!(xs.len(), ys.len(), "{p}");
            assert!(xs.is_disjoint(&ys), "{p}");
            let all: BTreeSet<RootLabel> = xs.union(&ys).copied().collect();
            assert_eq!(all, g1, "{p}");
        }
    }
}

#[test]
fn polarization_isotropy() {
    let mut literal_failures = Vec::new();
    for p in partitions_up_to(12) {
        let n = p.n();
        let x = build_nilpotent(&p, &SquareClassAssignment::ones(&p)).unwrap();
        let lag = lagrangian_polarization(&p);
        assert!(isotropic_by_hand(&x, n, &lag.x_roots).is_empty(), "{p}");
        assert!(isotropic_by_hand(&x, n, &lag.y_roots).is_empty(), "{p}");
        let lit = polarization_roots(&p);
        assert!(isotropic_by_hand(&x, n, &lit.y_roots).is_empty(), "{p}");
        let bad = isotropic_by_hand(&x, n, &lit.x_roots);
        let h = heisenberg_form(&p, &SquareClassAssignment::ones(&p)).unwrap();
        assert_eq!(h.x_isotropic, bad.is_empty(), "{p}");
        assert_eq!(h.x_witnesses, bad, "{p}");
        if !bad.is_empty() {
            literal_failures.push(p.parts().to_vec());
        }
    }
    assert_eq!(
        literal_failures,
        vec![vec![4, 3, 3], vec![6, 3, 3], vec![4, 3, 3, 2], vec![4, 3, 3, 1, 1]]
    );
}

#[test]
fn nondegenerate_over_sample_classes() {
    let mut runs = 0;
    for p in partitions_up_to(12) {
        let n = p.n();
        let g1 = g1_roots(&p);
        for c in [1, -1, 2] {
            let a = SquareClassAssignment::constant(&p, c).unwrap();
            let inst = nondegeneracy_instance(&p, &a).unwrap();
            assert!(inst.pass, "{p} a={c}: {inst:?}");
            assert_eq!(inst.sharp_intersection_dim, 0);
            // Gram matrix rebuilt from dense brackets
            let x = build_nilpotent(&p, &a).unwrap();
            let one = rat(1);
            let gram = Matrix::from_fn(g1.len(), g1.len(), |k, l| omega(&x, n, &g1[k], &one, &g1[l], &one));
            assert_eq!(rank(&gram), g1.len(), "{p} a={c}");
            runs += 1;
        }
    }
    assert!(runs > 0);
}

#[test]
fn pairing_identities_numerically() {
    let (xv, yv) = (rat(3), rat(-5));
    for p in partitions_up_to(12) {
        let n = p.n();
        let blocks = p.blocks().blocks;
        for a in [SquareClassAssignment::ones(&p), nontrivial_sample(&p)] {
            let x = build_nilpotent(&p, &a).unwrap();
            for m in polarization_roots(&p).pairs {
                let cx = &xv * polarization_scale(&m.x_root);
                let cy = &yv * polarization_scale(&m.y_root);
                let got = if m.long {
                    omega(&x, n, &m.y_root, &cy, &m.x_root, &cx)
                } else {
                    omega(&x, n, &m.x_root, &cx, &m.y_root, &cy)
                };
                let xy = &xv * &yv;
                let want = if m.long {
                    assert!(blocks[m.block_i].is_even());
                    -(rat(a.get(m.block_i).unwrap()) * xy)
                } else {
                    -xy
                };
                assert_eq!(got, want, "{p} {:?}", m);
            }
        }
    }
}

#[test]
fn pairing_identities_symbolically() {
    for p in partitions_up_to(12) {
        let r = pairing_identities_symbolic(&p).unwrap();
        assert!(r.all_hold, "{p}");
        for c in &r.checks {
            if c.long {
                assert!(c.expected.contains('a'), "{p}: {}", c.expected);
            } else {
                assert_eq!(c.expected, c.value);
            }
        }
    }
}

#[test]
fn sweep_summary() {
    let s = verify_lemma21(8).unwrap();
    assert!(s.all_pass);
    assert!(s.counterexamples.is_empty());
    assert_eq!(s.partitions_checked, partitions_up_to(8).len());
}

#[test]
fn character_json_round_trip() {
    for p in partitions_up_to(8) {
        let psi = character_data(&p, &nontrivial_sample(&p)).unwrap();
        let s = serde_json::to_string(&psi).unwrap();
        let back: CharacterFunctional = serde_json::from_str(&s).unwrap();
        assert_eq!(back, psi);
    }
}
