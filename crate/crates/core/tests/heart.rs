mod common;

use std::time::Instant;

use common::{pure_morphisms, POINT_SETS};
use kronheart::heart::{is_epi, is_mono, module_level_mono_epi};
use kronheart::{FieldSpec, TorsionPairSpec};

const F2: FieldSpec = FieldSpec::PrimeField(2);

#[test]
fn cone_verdicts_match_module_criteria() {
    let t = Instant::now();
    let mut n = 0;
    for spec in POINT_SETS {
        let pair = TorsionPairSpec::parse(F2, spec).unwrap();
        for c in pure_morphisms(F2, &pair, 5) {
            let expect = module_level_mono_epi(&c.map, &c.source, &c.target, c.shifted, &pair).unwrap();
            let got = (is_mono(&c.morphism).unwrap(), is_epi(&c.morphism).unwrap());
            assert_eq!(got, expect, "{spec} shifted={} {:?}", c.shifted, c.map);
            n += 1;
        }
    }
    eprintln!("{n} morphisms in {:?}", t.elapsed());
}

mod random {
    use kronheart::heart::{
        canonical_sequence, cokernel, from_module, from_shifted_module, hom_space, is_epi, is_mono, kernel,
        HeartMorphism, HeartObject,
    };
    use kronheart::kronrep::{module_from_descriptors, random_scalar};
    use kronheart::tfat::canonical_sums;
    use kronheart::torsion::{is_torsion, is_torsionfree};
    use kronheart::{FieldSpec, KronModule, TorsionPairSpec};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const F2: FieldSpec = FieldSpec::PrimeField(2);

    fn random_object(pair: &TorsionPairSpec, budget: usize, rng: &mut ChaCha8Rng) -> HeartObject {
        let mods: Vec<KronModule> = std::iter::once(KronModule::zero(F2))
            .chain(canonical_sums(F2, budget).unwrap().iter().map(|c| module_from_descriptors(F2, c).unwrap()))
            .collect();
        let free: Vec<&KronModule> = mods.iter().filter(|m| is_torsionfree(m, pair).unwrap()).collect();
        let tors: Vec<&KronModule> = mods.iter().filter(|m| is_torsion(m, pair).unwrap()).collect();
        loop {
            let f = free.choose(rng).unwrap();
            let t = tors.choose(rng).unwrap();
            if f.total_dim() + t.total_dim() <= budget {
                let a = from_shifted_module(f, pair).unwrap();
                return a.direct_sum(&from_module(t, pair).unwrap()).unwrap();
            }
        }
    }

    fn random_morphism(x: &HeartObject, y: &HeartObject, rng: &mut ChaCha8Rng) -> HeartMorphism {
        let mut f = HeartMorphism::zero(x, y);
        for g in hom_space(x, y).unwrap() {
            f = f.add(&g.scale(&random_scalar(F2, rng)));
        }
        f
    }

    fn sub(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        (a.0 - b.0, a.1 - b.1)
    }

    #[test]
    fn kernel_image_cokernel_sequences_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in ["CU:empty", "CU:{t}", "CU:co{t}", "CU:all", "cogenQ1", "cogenP1"] {
            let pair = TorsionPairSpec::parse(F2, spec).unwrap();
            for _ in 0..12 {
                let x = random_object(&pair, 6, &mut rng);
                let y = random_object(&pair, 6, &mut rng);
                let f = random_morphism(&x, &y, &mut rng);
                let (k, inc) = kernel(&f).unwrap();
                let (c, proj) = cokernel(&f).unwrap();
                assert!(f.compose(&inc).unwrap().is_null_homotopic().unwrap());
                assert!(proj.compose(&f).unwrap().is_null_homotopic().unwrap());
                assert!(is_mono(&inc).unwrap(), "{spec}");
                assert!(is_epi(&proj).unwrap(), "{spec}");
                // image as cokernel of the kernel and as kernel of the cokernel
                let (im1, _) = cokernel(&inc).unwrap();
                let (im2, _) = kernel(&proj).unwrap();
                assert_eq!(im1.class().unwrap(), im2.class().unwrap(), "{spec}");
                assert_eq!(sub(x.class().unwrap(), k.class().unwrap()), im1.class().unwrap());
                assert_eq!(sub(y.class().unwrap(), c.class().unwrap()), im2.class().unwrap());
                assert_eq!(
                    (im1.cohomology_dims().unwrap()),
                    (im2.cohomology_dims().unwrap()),
                    "{spec}"
                );
            }
        }
    }

    #[test]
    fn null_homotopies_do_not_change_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let pair = TorsionPairSpec::parse(F2, "CU:{t}").unwrap();
        for _ in 0..10 {
            let x = random_object(&pair, 5, &mut rng);
            let y = random_object(&pair, 5, &mut rng);
            let basis = hom_space(&x, &y).unwrap();
            // a null-homotopic map: the chain map h∘d + d∘h for a random h
            let c = x.complex();
            let d = y.complex();
            let hom = |a: &KronModule, b: &KronModule| {
                kronheart::homalg::hom_basis(a, b).unwrap()
            };
            let mut maps = Vec::new();
            let hs: Vec<_> = (-2..=0)
                .map(|n| {
                    let hb = hom(&c.term(n), &d.term(n - 1));
                    let coeffs: Vec<_> = (0..hb.dim()).map(|_| random_scalar(F2, &mut rng)).collect();
                    hb.combine(&coeffs)
                })
                .collect();
            for n in -2..=0 {
                let i = (n + 2) as usize;
                let mut g = d.diff(n - 1).compose(&hs[i]);
                if n < 0 {
                    g = g.add(&hs[i + 1].compose(&c.diff(n)));
                }
                maps.push(g);
            }
            let null = HeartMorphism::new(x.clone(), y.clone(), maps).unwrap();
            assert!(null.is_null_homotopic().unwrap());
            for b in &basis {
                assert!(b.add(&null).equivalent(b).unwrap());
                assert!(!b.add(&null).is_null_homotopic().unwrap());
            }
        }
    }

    #[test]
    fn every_object_is_an_extension_of_its_cohomologies() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for spec in ["CU:empty", "CU:{t,inf}", "CU:all", "cogenQ1"] {
            let pair = TorsionPairSpec::parse(F2, spec).unwrap();
            for _ in 0..8 {
                let x = random_object(&pair, 6, &mut rng);
                let (s, p) = canonical_sequence(&x).unwrap();
                assert!(is_mono(&s).unwrap());
                assert!(is_epi(&p).unwrap());
                assert!(p.compose(&s).unwrap().is_null_homotopic().unwrap());
                let (k, _) = kernel(&p).unwrap();
                assert_eq!(k.cohomology_dims().unwrap(), s.source.cohomology_dims().unwrap());
                let (c, _) = cokernel(&s).unwrap();
                assert_eq!(c.cohomology_dims().unwrap(), p.target.cohomology_dims().unwrap());
            }
        }
    }
}

#[test]
fn hom_space_examples() {
    use kronheart::heart::{from_module, from_shifted_module, hom_space, HeartMorphism};
    use kronheart::kronrep::{make_indecomposable, ClosedPoint};
    use kronheart::torsion::SubsetSpec;
    use kronheart::IndecompDescriptor;
    let x = ClosedPoint::rational(F2, 1);
    let pair = TorsionPairSpec::CU(SubsetSpec::finite([x.clone()]));
    let s = make_indecomposable(&IndecompDescriptor::Regular(x, 1), F2).unwrap();
    let obj = from_module(&s, &pair).unwrap();
    let basis = hom_space(&obj, &obj).unwrap();
    assert_eq!(basis.len(), 1);
    assert!(basis[0].equivalent(&HeartMorphism::identity(&obj)).unwrap());
    let p1 = make_indecomposable(&IndecompDescriptor::Preproj(1), F2).unwrap();
    let q1 = make_indecomposable(&IndecompDescriptor::Preinj(1), F2).unwrap();
    let a = from_shifted_module(&p1, &pair).unwrap();
    let b = from_module(&q1, &pair).unwrap();
    assert_eq!(hom_space(&a, &b).unwrap().len(), 0);
    // the other direction carries Ext¹(Q1, P1), which has dimension 2
    assert_eq!(hom_space(&b, &a).unwrap().len(), 2);
}
