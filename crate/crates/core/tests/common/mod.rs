#![allow(dead_code)]

use kronheart::heart::{module_morphism, shifted_morphism, HeartMorphism};
use kronheart::homalg::hom_basis;
use kronheart::kronrep::module_from_descriptors;
use kronheart::tfat::canonical_sums;
use kronheart::torsion::{is_torsion, is_torsionfree};
use kronheart::{FieldSpec, KronModule, ModuleMap, Scalar, TorsionPairSpec};

/// Every element of `Hom(m, n)` over a prime field.
pub fn all_maps(m: &KronModule, n: &KronModule) -> Vec<ModuleMap> {
    let field = m.field();
    let elems = field.elements().unwrap();
    let hb = hom_basis(m, n).unwrap();
    let q = elems.len();
    let count = q.pow(hb.dim() as u32);
    (0..count)
        .map(|mut idx| {
            let coeffs: Vec<Scalar> = (0..hb.dim())
                .map(|_| {
                    let c = elems[idx % q].clone();
                    idx /= q;
                    c
                })
                .collect();
            hb.combine(&coeffs)
        })
        .collect()
}

pub struct Case {
    pub source: KronModule,
    pub target: KronModule,
    pub map: ModuleMap,
    pub shifted: bool,
    pub morphism: HeartMorphism,
}

/// Module maps between canonical modules in the torsion class (or, shifted,
/// the torsionfree class) with total dimension of source plus target at most
/// `max_total`, lifted to the heart.
pub fn pure_morphisms(field: FieldSpec, pair: &TorsionPairSpec, max_total: usize) -> Vec<Case> {
    let mut modules = vec![KronModule::zero(field)];
    for c in canonical_sums(field, max_total).unwrap() {
        modules.push(module_from_descriptors(field, &c).unwrap());
    }
    let mut out = Vec::new();
    for shifted in [false, true] {
        let keep: Vec<&KronModule> = modules
            .iter()
            .filter(|m| if shifted { is_torsionfree(m, pair).unwrap() } else { is_torsion(m, pair).unwrap() })
            .collect();
        for m in &keep {
            for n in &keep {
                if m.total_dim() + n.total_dim() > max_total {
                    continue;
                }
                for h in all_maps(m, n) {
                    let morphism = if shifted {
                        shifted_morphism(&h, m, n, pair).unwrap()
                    } else {
                        module_morphism(&h, m, n, pair).unwrap()
                    };
                    out.push(Case { source: (*m).clone(), target: (*n).clone(), map: h, shifted, morphism });
                }
            }
        }
    }
    out
}

pub const POINT_SETS: [&str; 5] = ["CU:empty", "CU:{t}", "CU:{t,inf}", "CU:co{t}", "CU:all"];
