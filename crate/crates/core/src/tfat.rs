//! Bounded deciders for torsionfree modules that are almost torsion and
//! torsion modules that are almost torsionfree.

use std::fmt;

use crate::error::{KronError, Result};
use crate::exactlin::FieldSpec;
use crate::homalg::{ext_class_space, hom_dim};
use crate::kronrep::{
    enumerate_submodules, indecomposables_up_to, make_indecomposable, module_from_descriptors, quotient,
    IndecompDescriptor, KronModule, ModuleMap,
};
use crate::pencil::decompose;
use crate::torsion::{classify_indec, is_torsion, is_torsionfree, Class, TorsionPairSpec};

const SUBMODULE_LIMIT: usize = 1 << 16;
const EXT_LIMIT: usize = 1 << 14;
/// Largest total dimension of a module plus the bound on the other end term.
pub const WORKSPACE: usize = 8;

/// Why a module fails one of the predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    ZeroModule,
    /// The module is not in the required class.
    WrongClass { expected: Class },
    /// A proper quotient (by the nonzero submodule `sub`) outside the torsion class.
    Quotient { sub: KronModule, quotient: KronModule },
    /// A proper submodule outside the torsionfree class.
    Submodule { sub: KronModule },
    /// `0 → sub → middle → quot → 0` violating the extension condition.
    Extension { sub: KronModule, middle: KronModule, quot: KronModule, inclusion: ModuleMap, projection: ModuleMap },
}

fn names(m: &KronModule) -> String {
    match decompose(m) {
        Ok(d) if d.summands.is_empty() => "0".to_string(),
        Ok(d) => d.summands.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("+"),
        Err(e) => format!("<{e}>"),
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ZeroModule => f.write_str("zero module"),
            Witness::WrongClass { expected } => write!(f, "module is not {expected:?}"),
            Witness::Quotient { sub, quotient } => write!(f, "quotient {} by {}", names(quotient), names(sub)),
            Witness::Submodule { sub } => write!(f, "submodule {}", names(sub)),
            Witness::Extension { sub, middle, quot, .. } => {
                write!(f, "0 -> {} -> {} -> {} -> 0", names(sub), names(middle), names(quot))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False(Box<Witness>),
    Inconclusive,
}

impl Verdict {
    pub fn is_true(&self) -> bool {
        matches!(self, Verdict::True)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::False(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False(_) => "false",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

fn fail(w: Witness) -> Verdict {
    Verdict::False(Box::new(w))
}

fn check_inputs(m: &KronModule, p: &TorsionPairSpec, bound: usize) -> Result<()> {
    let field = m.field();
    if !field.is_finite() {
        return Err(KronError::FieldNotFinite);
    }
    p.check_field(field)?;
    if m.total_dim() + bound > WORKSPACE {
        return Err(KronError::TooLarge(format!(
            "module dimension {} plus bound {bound} exceeds {WORKSPACE}",
            m.total_dim()
        )));
    }
    Ok(())
}

/// Canonical direct sums of indecomposables of total dimension `1..=bound`,
/// each as a nondecreasing list of descriptors, smallest total first.
pub fn canonical_sums(field: FieldSpec, bound: usize) -> Result<Vec<Vec<IndecompDescriptor>>> {
    let indecs = indecomposables_up_to(field, bound)?;
    let mut out = Vec::new();
    fn grow(
        indecs: &[IndecompDescriptor],
        start: usize,
        room: usize,
        cur: &mut Vec<IndecompDescriptor>,
        out: &mut Vec<Vec<IndecompDescriptor>>,
    ) {
        for i in start..indecs.len() {
            let d = indecs[i].dim().total();
            if d <= room {
                cur.push(indecs[i].clone());
                out.push(cur.clone());
                grow(indecs, i, room - d, cur, out);
                cur.pop();
            }
        }
    }
    grow(&indecs, 0, bound, &mut Vec::new(), &mut out);
    out.sort_by_key(|c| c.iter().map(|d| d.dim().total()).sum::<usize>());
    Ok(out)
}

/// The module is torsionfree, its proper quotients are torsion, and every
/// extension `0 → y → B → C → 0` with `B` torsionfree has `C` torsionfree;
/// extensions are searched for `dim C ≤ bound`.
pub fn is_tf_almost_torsion(y: &KronModule, p: &TorsionPairSpec, bound: usize) -> Result<Verdict> {
    check_inputs(y, p, bound)?;
    if y.is_zero() {
        return Ok(fail(Witness::ZeroModule));
    }
    if !is_torsionfree(y, p)? {
        return Ok(fail(Witness::WrongClass { expected: Class::Torsionfree }));
    }
    for (u1, u2) in enumerate_submodules(y, SUBMODULE_LIMIT)? {
        if u1.cols() + u2.cols() == 0 {
            continue;
        }
        let q = quotient(y, (&u1, &u2))?.module;
        if !is_torsion(&q, p)? {
            return Ok(fail(Witness::Quotient { sub: y.restrict(&u1, &u2)?, quotient: q }));
        }
    }
    for c in canonical_sums(y.field(), bound)? {
        if c.iter().all(|d| classify_indec(d, p) == Class::Torsionfree) {
            continue;
        }
        let cm = module_from_descriptors(y.field(), &c)?;
        let space = ext_class_space(&cm, y)?;
        for class in space.all_classes(EXT_LIMIT)? {
            let e = space.middle_term(&class);
            if is_torsionfree(&e.middle, p)? {
                return Ok(fail(Witness::Extension {
                    sub: y.clone(),
                    middle: e.middle,
                    quot: cm,
                    inclusion: e.inclusion,
                    projection: e.projection,
                }));
            }
        }
    }
    Ok(if bound >= y.total_dim() { Verdict::True } else { Verdict::Inconclusive })
}

/// The dual predicate: the module is torsion, its proper submodules are
/// torsionfree, and every `0 → A → B → x → 0` with `B` torsion has `A`
/// torsion; extensions are searched for `dim A ≤ bound`.
pub fn is_t_almost_torsionfree(x: &KronModule, p: &TorsionPairSpec, bound: usize) -> Result<Verdict> {
    check_inputs(x, p, bound)?;
    if x.is_zero() {
        return Ok(fail(Witness::ZeroModule));
    }
    if !is_torsion(x, p)? {
        return Ok(fail(Witness::WrongClass { expected: Class::Torsion }));
    }
    let whole = x.total_dim();
    for (u1, u2) in enumerate_submodules(x, SUBMODULE_LIMIT)? {
        if u1.cols() + u2.cols() == whole {
            continue;
        }
        let s = x.restrict(&u1, &u2)?;
        if !is_torsionfree(&s, p)? {
            return Ok(fail(Witness::Submodule { sub: s }));
        }
    }
    for a in canonical_sums(x.field(), bound)? {
        if a.iter().all(|d| classify_indec(d, p) == Class::Torsion) {
            continue;
        }
        let am = module_from_descriptors(x.field(), &a)?;
        let space = ext_class_space(x, &am)?;
        for class in space.all_classes(EXT_LIMIT)? {
            let e = space.middle_term(&class);
            if is_torsion(&e.middle, p)? {
                return Ok(fail(Witness::Extension {
                    sub: am,
                    middle: e.middle,
                    quot: x.clone(),
                    inclusion: e.inclusion,
                    projection: e.projection,
                }));
            }
        }
    }
    Ok(if bound >= whole { Verdict::True } else { Verdict::Inconclusive })
}

/// Re-checks that a witness returned for `m` really violates the predicate
/// (`torsion_side` selects the torsion, almost torsionfree one).
pub fn witness_is_valid(m: &KronModule, p: &TorsionPairSpec, torsion_side: bool, w: &Witness) -> Result<bool> {
    Ok(match w {
        Witness::ZeroModule => m.is_zero(),
        Witness::WrongClass { .. } => {
            if torsion_side {
                !is_torsion(m, p)?
            } else {
                !is_torsionfree(m, p)?
            }
        }
        Witness::Quotient { sub, quotient } => {
            !torsion_side
                && !sub.is_zero()
                && sub.total_dim() + quotient.total_dim() == m.total_dim()
                && !is_torsion(quotient, p)?
                && hom_dim(m, quotient)? > 0
        }
        Witness::Submodule { sub } => {
            torsion_side && sub.total_dim() < m.total_dim() && !is_torsionfree(sub, p)? && {
                let (d1, d2) = (m.dim(), sub.dim());
                d2.d1 <= d1.d1 && d2.d2 <= d1.d2
            }
        }
        Witness::Extension { sub, middle, quot, inclusion, projection } => {
            let exact = inclusion.is_morphism(sub, middle)
                && projection.is_morphism(middle, quot)
                && inclusion.is_injective()
                && projection.is_surjective()
                && projection.compose(inclusion).is_zero()
                && sub.total_dim() + quot.total_dim() == middle.total_dim();
            exact
                && if torsion_side {
                    quot == m && is_torsion(middle, p)? && !is_torsion(sub, p)?
                } else {
                    sub == m && is_torsionfree(middle, p)? && !is_torsionfree(quot, p)?
                }
        }
    })
}

/// Canonical indecomposables of dimension at most `bound` passing each predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PassingSets {
    pub tf_almost_torsion: Vec<IndecompDescriptor>,
    pub t_almost_torsionfree: Vec<IndecompDescriptor>,
    /// Candidates where either predicate was inconclusive.
    pub inconclusive: Vec<IndecompDescriptor>,
}

pub fn passing_indecomposables(p: &TorsionPairSpec, bound: usize, field: FieldSpec) -> Result<PassingSets> {
    let mut out = PassingSets { tf_almost_torsion: vec![], t_almost_torsionfree: vec![], inconclusive: vec![] };
    for d in indecomposables_up_to(field, bound)? {
        let m = make_indecomposable(&d, field)?;
        let tf = is_tf_almost_torsion(&m, p, bound)?;
        let t = is_t_almost_torsionfree(&m, p, bound)?;
        if tf == Verdict::Inconclusive || t == Verdict::Inconclusive {
            out.inconclusive.push(d.clone());
        }
        if tf.is_true() {
            out.tf_almost_torsion.push(d.clone());
        }
        if t.is_true() {
            out.t_almost_torsionfree.push(d);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessViolation {
    pub left: IndecompDescriptor,
    pub right: IndecompDescriptor,
    pub hom_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    pub pair: TorsionPairSpec,
    pub bound: usize,
    pub passing: PassingSets,
    pub violations: Vec<UniquenessViolation>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Nonzero Hom between non-isomorphic members of a candidate list.
pub fn uniqueness_violations(field: FieldSpec, candidates: &[IndecompDescriptor]) -> Result<Vec<UniquenessViolation>> {
    let modules = candidates
        .iter()
        .map(|d| make_indecomposable(d, field))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (i, x) in modules.iter().enumerate() {
        for (j, y) in modules.iter().enumerate() {
            if candidates[i] == candidates[j] {
                continue;
            }
            let dim = hom_dim(x, y)?;
            if dim > 0 {
                out.push(UniquenessViolation { left: candidates[i].clone(), right: candidates[j].clone(), hom_dim: dim });
            }
        }
    }
    Ok(out)
}

/// Members of either passing set have no nonzero maps to non-isomorphic
/// members of the same set.
pub fn uniqueness_check(p: &TorsionPairSpec, bound: usize, field: FieldSpec) -> Result<UniquenessReport> {
    let passing = passing_indecomposables(p, bound, field)?;
    let mut violations = uniqueness_violations(field, &passing.tf_almost_torsion)?;
    violations.extend(uniqueness_violations(field, &passing.t_almost_torsionfree)?);
    Ok(UniquenessReport { pair: p.clone(), bound, passing, violations })
}
