use kronheart::homalg::{ext_class_space, hom_basis, hom_dim};
use kronheart::json::{module_from_json, module_to_json};
use kronheart::kronrep::{euler_form, module_from_descriptors, random_descriptors};
use kronheart::torsion::{is_torsion, is_torsionfree};
use kronheart::{decompose, torsion_radical, FieldSpec, TorsionPairSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        Just(FieldSpec::PrimeField(2)),
        Just(FieldSpec::PrimeField(3)),
        Just(FieldSpec::PrimeField(5)),
    ]
}

fn pair() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["cogenQ1", "cogenP1", "cogenQ:2", "cogenP:3", "trivial", "CU:{t}", "CU:co{t}", "CU:all", "CU:empty"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decomposition_survives_random_base_change(f in field(), seed in any::<u64>(), size in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds = random_descriptors(f, size, &mut rng).unwrap();
        let m = module_from_descriptors(f, &ds).unwrap().random_conjugate(&mut rng);
        let d = decompose(&m).unwrap();
        prop_assert!(d.verify(&m));
        prop_assert_eq!(d.summands, ds);
    }

    #[test]
    fn hom_minus_ext_is_the_euler_form(f in field(), seed in any::<u64>(), a in 0usize..5, b in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = module_from_descriptors(f, &random_descriptors(f, a, &mut rng).unwrap()).unwrap();
        let n = module_from_descriptors(f, &random_descriptors(f, b, &mut rng).unwrap()).unwrap();
        let lhs = hom_dim(&m, &n).unwrap() as i64 - ext_class_space(&m, &n).unwrap().dim() as i64;
        prop_assert_eq!(lhs, euler_form(m.dim(), n.dim()));
        for h in hom_basis(&m, &n).unwrap().basis {
            prop_assert!(h.is_morphism(&m, &n));
        }
    }

    #[test]
    fn radical_sequence_is_short_exact(f in field(), p in pair(), seed in any::<u64>(), size in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = TorsionPairSpec::parse(f, p).unwrap();
        let m = module_from_descriptors(f, &random_descriptors(f, size, &mut rng).unwrap())
            .unwrap()
            .random_conjugate(&mut rng);
        let r = torsion_radical(&m, &p).unwrap();
        let inc = r.inclusion();
        prop_assert!(inc.is_morphism(&r.sub_module, &m) && inc.is_injective());
        prop_assert!(r.projection.is_morphism(&m, &r.quotient) && r.projection.is_surjective());
        prop_assert!(r.projection.compose(&inc).is_zero());
        prop_assert_eq!(r.sub_module.total_dim() + r.quotient.total_dim(), m.total_dim());
        prop_assert!(is_torsion(&r.sub_module, &p).unwrap());
        prop_assert!(is_torsionfree(&r.quotient, &p).unwrap());
    }

    #[test]
    fn module_json_round_trips(f in field(), seed in any::<u64>(), size in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = module_from_descriptors(f, &random_descriptors(f, size, &mut rng).unwrap())
            .unwrap()
            .random_conjugate(&mut rng);
        let back = module_from_json(&module_to_json(&m)).unwrap();
        prop_assert!(back == m);
    }
}
