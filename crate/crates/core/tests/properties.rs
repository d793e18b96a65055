use koszulkit_core::dg_koszul::{
    functor_a, random_module_s, random_module_t, round_trip_ab, round_trip_ba, RandomModuleParams,
};
use koszulkit_core::graded_algebra::{linear_quiver, Analysis, Arrow, Quiver};
use koszulkit_core::{
    AffineWeyl, Field, Matrix, PrimeField, RootSystem, Subspace, TruncatedHeckeSpace, Weight,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f7() -> PrimeField {
    PrimeField::new(7).unwrap()
}

fn matrix(rows: usize, cols: usize, data: &[u64]) -> Matrix<PrimeField> {
    let f = f7();
    Matrix::from_data(&f, rows, cols, data.iter().map(|x| x % 7).collect())
}

const TYPES: [&str; 5] = ["A1", "A2", "B2", "G2", "A3"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(data in proptest::collection::vec(0u64..7, 20)) {
        let m = matrix(4, 5, &data);
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.dim(), 5);
        for v in ker.basis_vectors() {
            prop_assert!(m.apply(&v).iter().all(|x| *x == 0));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn subspace_dimension_formula(a in proptest::collection::vec(0u64..7, 12), b in proptest::collection::vec(0u64..7, 12)) {
        let f = f7();
        let rows = |d: &[u64]| -> Vec<Vec<u64>> { d.chunks(4).map(|c| c.to_vec()).collect() };
        let u = Subspace::from_vectors(&f, 4, &rows(&a));
        let w = Subspace::from_vectors(&f, 4, &rows(&b));
        let s = u.sum(&w).unwrap();
        let i = u.intersection(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u).unwrap());
        prop_assert!(u.contains_subspace(&i).unwrap());
    }

    #[test]
    fn weyl_words(t in 0usize..5, word in proptest::collection::vec(0usize..3, 0..12)) {
        let rs = RootSystem::build(TYPES[t]).unwrap();
        let word: Vec<usize> = word.into_iter().map(|i| i % rs.rank()).collect();
        let w = rs.from_word(&word);
        prop_assert!(w.length() <= word.len());
        prop_assert_eq!(w.length() % 2, word.len() % 2);
        prop_assert_eq!(rs.inversion_count(&w), w.length());
        let winv = rs.inverse(&w);
        prop_assert!(rs.multiply(&w, &winv).is_identity());
        prop_assert_eq!(winv.length(), w.length());
        // w₀ is the unique longest element
        let w0 = rs.w0();
        prop_assert_eq!(rs.multiply(w0, &w).length(), w0.length() - w.length());
    }

    #[test]
    fn affine_length_laws(
        t in 0usize..4,
        wa in proptest::collection::vec(0usize..3, 0..6),
        wb in proptest::collection::vec(0usize..3, 0..6),
        xa in proptest::collection::vec(-3i64..4, 2),
        xb in proptest::collection::vec(-3i64..4, 2),
    ) {
        let rs = RootSystem::build(TYPES[t]).unwrap();
        let n = rs.rank();
        let g = AffineWeyl::new(rs.clone());
        let mk = |w: &[usize], x: &[i64]| {
            let w: Vec<usize> = w.iter().map(|i| i % n).collect();
            let x: Vec<i64> = (0..n).map(|k| x.get(k).copied().unwrap_or(0)).collect();
            g.element(rs.from_word(&w), Weight(x))
        };
        let a = mk(&wa, &xa);
        let b = mk(&wb, &xb);
        let ab = g.multiply(&a, &b).unwrap();
        prop_assert!(g.length(&ab) <= g.length(&a) + g.length(&b));
        prop_assert_eq!(g.length(&g.inverse(&a).unwrap()), g.length(&a));
        // the dot action is an action
        let h = rs.coxeter_number();
        let p = h + 1;
        let lam = Weight(vec![1; n]);
        let lhs = g.dot_action(&ab, &lam, p).unwrap();
        let rhs = g.dot_action(&a, &g.dot_action(&b, &lam, p).unwrap(), p).unwrap();
        prop_assert_eq!(lhs, rhs);
        // reduced decompositions recompose and have the right length
        let (omega, word) = g.reduced_decomposition(&a).unwrap();
        prop_assert_eq!(word.len(), g.length(&a));
        prop_assert_eq!(g.compose(&omega, &word).unwrap(), a);
    }

    #[test]
    fn canonical_lift_length(
        t in 0usize..3,
        w in proptest::collection::vec(0usize..3, 0..5),
        x in proptest::collection::vec(-2i64..3, 2),
    ) {
        let rs = RootSystem::build(TYPES[t]).unwrap();
        let n = rs.rank();
        let g = AffineWeyl::new(rs.clone());
        let w: Vec<usize> = w.iter().map(|i| i % n).collect();
        let x: Vec<i64> = (0..n).map(|k| x.get(k).copied().unwrap_or(0)).collect();
        let e = g.element(rs.from_word(&w), Weight(x));
        let lift = koszulkit_core::canonical_lift(&g, &e).unwrap();
        let (omega, word) = g.reduced_decomposition(&e).unwrap();
        let omega_lift = koszulkit_core::canonical_lift(&g, &omega).unwrap();
        // one letter per affine simple reflection on top of the length-zero part
        prop_assert!(lift.len() >= word.len());
        prop_assert_eq!(lift.len() - omega_lift.len() >= word.len(), true);
    }

    #[test]
    fn dg_round_trips(seed in 0u64..1000, dim_v in 1usize..4) {
        let f = f7();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = RandomModuleParams { dim_v, max_dim: 8 };
        let t = random_module_t(&f, p, &mut rng);
        prop_assert!(t.validate().is_valid());
        let (h, hab) = round_trip_ab(&t);
        prop_assert_eq!(h, hab);
        let s = random_module_s(&f, p, &mut rng);
        prop_assert!(s.validate().is_valid());
        let (h, hba) = round_trip_ba(&s);
        prop_assert_eq!(h, hba);
    }

    #[test]
    fn functor_a_commutes_with_shift(seed in 0u64..1000, a in -2i64..3, b in -2i64..3) {
        let f = f7();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_module_s(&f, RandomModuleParams { dim_v: 2, max_dim: 6 }, &mut rng);
        let lhs = functor_a(&s.shift(a, b)).cohomology();
        let rhs: std::collections::BTreeMap<_, _> = functor_a(&s)
            .cohomology()
            .into_iter()
            .map(|((i, j), d)| ((i - a, j + b), d))
            .collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_quiver_algebras(n in 2usize..5, len in 0usize..4) {
        let f = f7();
        let len = if len == 1 { 0 } else { len };
        let a = linear_quiver(&f, n, len).unwrap();
        prop_assert!(a.validate().is_valid());
        let an = Analysis::new(&a).unwrap();
        prop_assert_eq!(an.num_simples(), n);
        let rad = a.graded_radical();
        prop_assert_eq!(rad.clone(), a.radical_ungraded());
        // rad is nilpotent: rad^(n) = 0 for a linear quiver with n vertices
        let mut power = rad.clone();
        for _ in 1..n {
            let mut vs = Vec::new();
            for x in rad.basis_vectors() {
                for y in power.basis_vectors() {
                    vs.push(a.mul(&x, &y));
                }
            }
            power = Subspace::from_vectors(&f, a.dim(), &vs);
        }
        prop_assert_eq!(power.dim(), 0);
        let vanishing = an.ext_vanishing_check(4).unwrap();
        let koszul = an.is_koszul(4).unwrap().is_koszul();
        prop_assert_eq!(vanishing, koszul);
        // quadratic monomial relations are Koszul; a longer one that actually bites is not
        prop_assert_eq!(koszul, len <= 2 || len >= n);
    }
}

#[test]
fn hecke_relations_hold_on_small_boxes() {
    for t in ["A1", "A2"] {
        let space = TruncatedHeckeSpace::build(RootSystem::build(t).unwrap(), 3).unwrap();
        for r in space.verify_relations() {
            assert_eq!(r.failures, 0, "{t}: {}", r.relation);
            assert!(
                r.instances_checked > 0 || r.relation.contains("braid"),
                "{t}: {}",
                r.relation
            );
        }
    }
}

#[test]
fn quiver_with_commutativity_relation() {
    // a square 0 → 1 → 3, 0 → 2 → 3 with the two paths equal: Koszul
    let f = f7();
    let arrows = vec![
        Arrow {
            src: 0,
            dst: 1,
            degree: 1,
            name: "a".into(),
        },
        Arrow {
            src: 1,
            dst: 3,
            degree: 1,
            name: "b".into(),
        },
        Arrow {
            src: 0,
            dst: 2,
            degree: 1,
            name: "c".into(),
        },
        Arrow {
            src: 2,
            dst: 3,
            degree: 1,
            name: "d".into(),
        },
    ];
    let q = Quiver::<PrimeField> {
        vertices: 4,
        arrows,
        relations: vec![vec![(f.one(), vec![0, 1]), (f.neg(&f.one()), vec![2, 3])]],
    };
    let a = q.compile(&f).unwrap();
    assert_eq!(a.dim(), 4 + 4 + 1);
    let an = Analysis::new(&a).unwrap();
    assert!(an.is_koszul(4).unwrap().is_koszul());
    assert!(an.ext_vanishing_check(4).unwrap());
}
