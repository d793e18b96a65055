use koszulkit::format::{emit_json, parse_json, AlgebraJson, DgAlgebra, DgModuleJson};
use koszulkit_core::dg_koszul::{
    random_module_s, random_module_t, DgModuleS, DgModuleT, RandomModuleParams,
};
use koszulkit_core::graded_algebra::{linear_quiver, matrix_algebra};
use koszulkit_core::{PrimeField, Rationals};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dg_files_round_trip(seed in any::<u64>(), dim_v in 1usize..4, p in prop::sample::select(vec![2u64, 3, 5, 101])) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = RandomModuleParams { dim_v, max_dim: 8 };
        let s = random_module_s(&f, params, &mut rng);
        let text = emit_json(&DgModuleJson::from_module(&s, DgAlgebra::S));
        let parsed: DgModuleJson = parse_json(&text).unwrap();
        let back: DgModuleS<PrimeField> = parsed.to_module(&f).unwrap();
        prop_assert_eq!(back.degrees(), s.degrees());
        prop_assert_eq!(back.differential(), s.differential());
        prop_assert_eq!(back.actions(), s.actions());
        prop_assert_eq!(emit_json(&parsed), text);

        let t = random_module_t(&f, params, &mut rng);
        let text = emit_json(&DgModuleJson::from_module(&t, DgAlgebra::T));
        let back: DgModuleT<PrimeField> = parse_json::<DgModuleJson>(&text).unwrap().to_module(&f).unwrap();
        prop_assert_eq!(back.cohomology(), t.cohomology());
        prop_assert_eq!(emit_json(&DgModuleJson::from_module(&back, DgAlgebra::T)), text);
    }

    #[test]
    fn algebra_files_round_trip(n in 1usize..5, len in 0usize..4) {
        let q = Rationals;
        let a = linear_quiver(&q, n, if len == 1 { 0 } else { len }).unwrap();
        let text = emit_json(&AlgebraJson::from_algebra(&a));
        let b = parse_json::<AlgebraJson>(&text).unwrap().to_algebra(&q).unwrap();
        prop_assert_eq!(b.graded_dims(), a.graded_dims());
        prop_assert_eq!(emit_json(&AlgebraJson::from_algebra(&b)), text);
    }
}

#[test]
fn rational_coefficients_survive() {
    let q = Rationals;
    let a = matrix_algebra(&q, 2).unwrap();
    let mut j = AlgebraJson::from_algebra(&a);
    // rescale the unit's coefficients through a fraction and back
    for t in j.unit.as_mut().unwrap() {
        t.1 = "2/2".into();
    }
    let b = j.to_algebra(&q).unwrap();
    assert_eq!(AlgebraJson::from_algebra(&b), AlgebraJson::from_algebra(&a));
}
