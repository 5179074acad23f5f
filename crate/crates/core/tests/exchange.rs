use std::collections::BTreeSet;

use num::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sympcalc::exchange::*;
use sympcalc::fourier::{character_data, nontrivial_sample};
use sympcalc::liealg::*;
use sympcalc::partitions::*;
use sympcalc::scalar::{rat, Rational};

fn sp(parts: &[u32]) -> SymplecticPartition {
    SymplecticPartition::new(parts.to_vec()).unwrap()
}

fn partitions_up_to(two_n_max: u32) -> Vec<SymplecticPartition> {
    (2..=two_n_max)
        .step_by(2)
        .flat_map(|t| enumerate_symplectic(t).unwrap())
        .collect()
}

/// Root-sum closure computed from root vectors: `α + β` is added whenever the
/// dense bracket of the two root vectors is non-zero.
fn closure_by_brackets(n: usize, gens: &[RootLabel]) -> BTreeSet<RootLabel> {
    let one = rat(1);
    let mut set: BTreeSet<RootLabel> = gens.iter().copied().collect();
    loop {
        let mut grew = false;
        let cur: Vec<RootLabel> = set.iter().copied().collect();
        for a in &cur {
            for b in &cur {
                let br = root_vector(a, &one, n).unwrap().commutator(&root_vector(b, &one, n).unwrap());
                if br.is_zero() {
                    continue;
                }
                let va = a.to_vector(n);
                let vb = b.to_vector(n);
                let s: Vec<i64> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
                let r = RootLabel::from_vector(&s).expect("non-zero bracket of root vectors is a root vector");
                grew |= set.insert(r);
            }
        }
        if !grew {
            return set;
        }
    }
}

#[test]
fn groups_are_bracket_closed() {
    for p in partitions_up_to(10) {
        let q = heisenberg_quadruple(&p, &SquareClassAssignment::ones(&p), Halves::Lagrangian).unwrap();
        for g in [&q.c, &q.xt, &q.yt] {
            assert_eq!(closure_by_brackets(g.n, &g.generators), g.roots, "{p}");
        }
    }
}

#[test]
fn certification_up_to_ten() {
    for p in partitions_up_to(10) {
        for a in [SquareClassAssignment::ones(&p), nontrivial_sample(&p)] {
            let q = heisenberg_quadruple(&p, &a, Halves::Lagrangian).unwrap();
            let r = validate_quadruple(&q).unwrap();
            assert!(r.all_pass, "{p} {:?}: {r:?}", a.values());
            assert!(certify_corollary24(&p, &a).unwrap());

            // condition 6 rebuilt from dense matrices
            let n = p.n();
            let one = rat(1);
            let xs: Vec<RootLabel> = q.xt.roots.difference(&q.c.roots).copied().collect();
            let ys: Vec<RootLabel> = q.yt.roots.difference(&q.c.roots).copied().collect();
            assert_eq!(xs.len(), ys.len(), "{p}");
            let gram = Matrix::from_fn(xs.len(), ys.len(), |i, j| {
                let b = root_vector(&xs[i], &one, n)
                    .unwrap()
                    .commutator(&root_vector(&ys[j], &one, n).unwrap());
                q.psi.x.matmul(&b).trace()
            });
            assert_eq!(linalg::rank(&gram), xs.len(), "{p}");
            // ψ vanishes on X̃ ∩ C and Ỹ ∩ C
            for r in q.xt.roots.iter().chain(&q.yt.roots).filter(|r| q.c.contains(r)) {
                let v = q.psi.x.matmul(&root_vector(r, &one, n).unwrap()).trace();
                assert!(v.is_zero(), "{p} {r}");
            }
        }
    }
}

#[test]
fn literal_halves_fail_only_condition_four() {
    let mut failing = Vec::new();
    for p in partitions_up_to(12) {
        let q = heisenberg_quadruple(&p, &SquareClassAssignment::ones(&p), Halves::Literal).unwrap();
        let r = validate_quadruple(&q).unwrap();
        if r.all_pass {
            continue;
        }
        failing.push(p.parts().to_vec());
        for c in &r.conditions {
            assert_eq!(c.holds, c.condition != 4, "{p}: {c:?}");
        }
        // each witness is a root of V_{p,2} where ψ is non-zero
        for w in &r.conditions[3].witnesses {
            let root = w.left.unwrap();
            assert!(q.c.contains(&root) && q.xt.contains(&root));
            let v = q.psi.x.matmul(&root_vector(&root, &rat(1), p.n()).unwrap()).trace();
            assert!(!v.is_zero());
        }
    }
    assert_eq!(
        failing,
        vec![vec![4, 3, 3], vec![6, 3, 3], vec![4, 3, 3, 2], vec![4, 3, 3, 1, 1]]
    );
    let q = heisenberg_quadruple(&sp(&[4, 3, 3]), &SquareClassAssignment::ones(&sp(&[4, 3, 3])), Halves::Literal)
        .unwrap();
    let r = validate_quadruple(&q).unwrap();
    assert_eq!(r.conditions[3].witnesses[0].left, Some(RootLabel::EiMinusEj(3, 4)));
}

#[test]
fn quadruple_json_round_trip() {
    for p in partitions_up_to(8) {
        let q = heisenberg_quadruple(&p, &nontrivial_sample(&p), Halves::Lagrangian).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        let back: ExchangeQuadruple = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }
}

#[test]
fn levi_conjugation_patterns_symbolic() {
    for (k, n) in [(1, 3), (1, 4), (1, 5), (2, 5), (2, 6), (3, 7)] {
        let e = epsilon_check(k, n).unwrap();
        assert!(e.holds, "{e:?}");
        assert_eq!(e.terms, e.expected);
        let b = epsilon_bar_check(k, n).unwrap();
        assert!(b.holds, "{b:?}");
        assert_eq!(b.terms.len(), 1);
        assert_eq!((b.terms[0].q_row, b.terms[0].q_col), (2 * k, 1));
    }
    assert!(matches!(epsilon_check(0, 3), Err(ExchangeError::BadLeviBlock(..))));
    assert!(matches!(epsilon_bar_check(2, 4), Err(ExchangeError::BadLeviBlock(..))));
}

/// The same conjugation carried out numerically for sample values of α, β.
fn numeric_epsilon(k: usize, n: usize, al: &Rational, be: &Rational, block: [[Rational; 2]; 2]) -> Vec<((usize, usize), Rational)> {
    let m = 2 * k + 1;
    let mut g = RationalMatrix::identity(m);
    for b in 0..k {
        for i in 0..2 {
            for j in 0..2 {
                g.set(1 + 2 * b + i, 1 + 2 * b + j, block[i][j].clone());
            }
        }
    }
    let eps = levi_embed(&g, n).unwrap();
    // q₂(r, j) is the entry Z[r-1][2n-2k-2+j]; its coefficient sits at M[col][row].
    let col = |j: usize| 2 * n - 2 * k - 2 + j;
    let mut f = RationalMatrix::zeros(2 * n, 2 * n);
    f.set(col(2), 2 * k - 1, be.clone());
    f.set(col(1), 2 * k, al.clone());
    let moved = eps.matmul(&f).matmul(&symplectic_inverse(&eps));
    fold_entries(&moved)
        .into_iter()
        .filter(|((r, c), _)| *r < m && *c >= col(1))
        .map(|((r, c), v)| ((r + 1, c - col(1) + 1), v))
        .collect()
}

#[test]
fn levi_conjugation_patterns_numeric() {
    for (k, n) in [(1, 3), (1, 4), (2, 5), (2, 6)] {
        for (a, b) in [(1, 2), (3, -1), (-5, 7), (2, 2)] {
            let (al, be) = (rat(a), rat(b));
            let s = &al + &be;
            let block = [
                [&be / &s, &al / &s],
                [-(rat(1) / &s), rat(1) / &s],
            ];
            let got = numeric_epsilon(k, n, &al, &be, block);
            assert_eq!(
                got,
                vec![((2 * k, 2), s.clone()), ((2 * k + 1, 1), &al * &be * &s)],
                "k={k} n={n} α={a} β={b}"
            );

            let h = rat(1) / rat(2);
            let bar = [[h.clone(), -h.clone()], [h.clone(), h.clone()]];
            let got = numeric_epsilon(k, n, &al, &(-&al), bar);
            assert_eq!(got, vec![((2 * k, 1), rat(-4) * &al)], "k={k} n={n} α={a}");
        }
    }
}

fn random_unipotent(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let mut z = RationalMatrix::zeros(2 * n, 2 * n);
    for r in all_roots(n).into_iter().filter(RootLabel::is_positive) {
        if rng.gen_bool(0.4) {
            z = z + root_vector(&r, &rat(rng.gen_range(-2..=2)), n).unwrap();
        }
    }
    exp_nilpotent(&z).unwrap()
}

#[test]
fn conjugation_transports_the_character() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let samples: Vec<SymplecticPartition> = partitions_up_to(8).into_iter().filter(|p| p.n() >= 2).collect();
    for t in 0..20 {
        let p = &samples[rng.gen_range(0..samples.len())];
        let n = p.n();
        let psi = character_data(p, &nontrivial_sample(p)).unwrap();
        let g = random_unipotent(&mut rng, n);
        let gx = conjugate_nilpotent(&psi.x, &g).unwrap();
        assert!(sp_membership(&gx).unwrap(), "trial {t}");
        assert!(gx.is_nilpotent(), "trial {t}");
        let ginv = symplectic_inverse(&g);
        for _ in 0..5 {
            let v = random_unipotent(&mut rng, n);
            // tr(gXg⁻¹ log v) = tr(X log(g⁻¹ v g))
            let lhs = gx.matmul(&log_unipotent(&v).unwrap()).trace();
            let rhs = psi.x.matmul(&log_unipotent(&ginv.matmul(&v).matmul(&g)).unwrap()).trace();
            assert_eq!(lhs, rhs, "trial {t}");
        }
    }
}

fn cochar() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 1..=7)
}

proptest! {
    #[test]
    fn sorter_properties(d in cochar(), earlier in any::<bool>()) {
        let tie = if earlier { TieBreak::EarlierFirst } else { TieBreak::LaterFirst };
        let w = weyl_sorter(&Cocharacter { exponents: d.clone() }, tie);
        let sorted = w.apply(&d);
        prop_assert!(sorted.iter().all(|&v| v >= 0));
        prop_assert!(sorted.windows(2).all(|p| p[0] >= p[1]));
        let mut abs: Vec<i64> = d.iter().map(|v| v.abs()).collect();
        abs.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(&sorted, &abs);

        let m: RationalMatrix = w.to_matrix();
        prop_assert!(is_symplectic(&m).unwrap());
        let conj = m.matmul(&torus_element(&d)).matmul(&symplectic_inverse(&m));
        prop_assert_eq!(conj, torus_element(&sorted));

        // sorting again changes nothing
        let again = weyl_sorter(&Cocharacter { exponents: sorted.clone() }, TieBreak::EarlierFirst);
        prop_assert!(again.is_identity());
        prop_assert_eq!(weyl_sorter(&Cocharacter { exponents: sorted.clone() }, tie).apply(&sorted), sorted);
    }

    #[test]
    fn levi_embedding_is_symplectic(entries in prop::collection::vec(-4i64..=4, 9), n in 3usize..=5) {
        let g = RationalMatrix::from_fn(3, 3, |i, j| rat(entries[3 * i + j]));
        match levi_embed(&g, n) {
            Ok(e) => {
                prop_assert!(is_symplectic(&e).unwrap());
                prop_assert_eq!(e.matmul(&symplectic_inverse(&e)), RationalMatrix::identity(2 * n));
            }
            Err(err) => prop_assert_eq!(err, ExchangeError::Singular),
        }
    }
}
