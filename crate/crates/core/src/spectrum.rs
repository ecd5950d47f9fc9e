//! Simple objects, atom spectra and Gabriel dimension of the hearts, as
//! symbolic tables, plus bounded finite-level checks of monoformity, atom
//! equivalence and the Gabriel filtration of the module category.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{KronError, Result};
use crate::exactlin::{FieldSpec, Matrix, Scalar};
use crate::heart::projective_presentation;
use crate::homalg::{ext_class_space, hom_basis, ExtClass};
use crate::kronrep::{
    closed_points, enumerate_submodules, indecomposables_up_to, make_indecomposable, module_from_descriptors, quotient,
    ClosedPoint, IndecompDescriptor, KronModule, ModuleMap,
};
use crate::pencil::decompose;
use crate::torsion::{SubsetSpec, TorsionPairSpec};

/// A single closed point or the family of all points of a set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Locus {
    At(ClosedPoint),
    Family(SubsetSpec),
}

impl Locus {
    /// One locus per listed point of a finite set, one family for a cofinite set.
    pub fn expand(u: &SubsetSpec) -> Vec<Locus> {
        match u {
            SubsetSpec::Finite(s) => s.iter().cloned().map(Locus::At).collect(),
            SubsetSpec::Cofinite(_) => vec![Locus::Family(u.clone())],
        }
    }

    fn label(&self) -> String {
        match self {
            Locus::At(x) => x.to_string(),
            Locus::Family(_) => "x".to_string(),
        }
    }

    fn qualifier(&self) -> String {
        match self {
            Locus::At(_) => String::new(),
            Locus::Family(u) if u.is_all() => " for all x".to_string(),
            Locus::Family(SubsetSpec::Cofinite(s)) => {
                let list: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                format!(" for x ≠ {}", list.join(", "))
            }
            Locus::Family(SubsetSpec::Finite(s)) => {
                let list: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                format!(" for x ∈ {{{}}}", list.join(", "))
            }
        }
    }
}

/// A named object of a heart. Infinite-dimensional modules appear only as
/// names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SymbolicObject {
    /// The simple object of a heart equivalent to vector spaces.
    K,
    P(usize),
    Q(usize),
    S(Locus),
    SPrufer(Locus),
    SAdic(Locus),
    Generic,
    Shifted(Box<SymbolicObject>),
}

impl SymbolicObject {
    /// `self[1]`; shifting twice is not representable.
    pub fn shift(self) -> Self {
        assert!(!matches!(self, SymbolicObject::Shifted(_)), "objects shift at most once");
        SymbolicObject::Shifted(Box::new(self))
    }

    pub fn is_shifted(&self) -> bool {
        matches!(self, SymbolicObject::Shifted(_))
    }

    fn locus(&self) -> Option<&Locus> {
        match self {
            SymbolicObject::S(l) | SymbolicObject::SPrufer(l) | SymbolicObject::SAdic(l) => Some(l),
            SymbolicObject::Shifted(inner) => inner.locus(),
            _ => None,
        }
    }

    fn core(&self) -> String {
        match self {
            SymbolicObject::K => "k".into(),
            SymbolicObject::P(i) => format!("P{i}"),
            SymbolicObject::Q(i) => format!("Q{i}"),
            SymbolicObject::S(l) => format!("S[{}]", l.label()),
            SymbolicObject::SPrufer(l) => format!("S^inf[{}]", l.label()),
            SymbolicObject::SAdic(l) => format!("S^-inf[{}]", l.label()),
            SymbolicObject::Generic => "G".into(),
            SymbolicObject::Shifted(inner) => format!("{}[1]", inner.core()),
        }
    }
}

impl fmt::Display for SymbolicObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.locus().map(Locus::qualifier).unwrap_or_default();
        write!(f, "{}{}", self.core(), q)
    }
}

/// A minimal injective coresolution `0 → simple → envelope → cosyzygy → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coresolution {
    pub simple: SymbolicObject,
    pub envelope: SymbolicObject,
    pub cosyzygy: SymbolicObject,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub pair: TorsionPairSpec,
    pub simples: Vec<SymbolicObject>,
    pub coresolutions: Vec<Coresolution>,
    /// Atoms, each named by a monoform object representing it.
    pub atoms: Vec<SymbolicObject>,
    /// `(lesser, greater)` in the specialization order.
    pub order: Vec<(SymbolicObject, SymbolicObject)>,
    pub open_singletons: Vec<SymbolicObject>,
    pub gdim: usize,
    pub notes: Vec<String>,
}

fn s_at(l: Locus) -> SymbolicObject {
    SymbolicObject::S(l)
}

pub fn report(p: &TorsionPairSpec) -> SpectrumReport {
    use SymbolicObject as O;
    let finite_type = |simples: Vec<O>, note: &str| SpectrumReport {
        pair: p.clone(),
        simples: simples.clone(),
        coresolutions: vec![],
        atoms: simples.clone(),
        order: vec![],
        open_singletons: simples,
        gdim: 0,
        notes: vec![note.to_string()],
    };
    let u = match p {
        TorsionPairSpec::CogenQ1 => return finite_type(vec![O::K], "heart equivalent to k-mod"),
        TorsionPairSpec::CU(u) => u,
        _ => return finite_type(vec![O::P(1), O::Q(1)], "heart equivalent to Mod Λ"),
    };
    let inside = Locus::expand(u);
    let outside = Locus::expand(&u.complement());
    let generic = O::Generic.shift();
    let mut simples: Vec<O> = inside.iter().cloned().map(s_at).collect();
    let mut coresolutions: Vec<Coresolution> = inside
        .iter()
        .map(|l| Coresolution {
            simple: s_at(l.clone()),
            envelope: O::SAdic(l.clone()).shift(),
            cosyzygy: O::SAdic(l.clone()).shift(),
        })
        .collect();
    if u.is_all() {
        simples.push(generic.clone());
        let mut atoms = vec![generic.clone()];
        atoms.extend(inside.iter().cloned().map(s_at));
        return SpectrumReport {
            pair: p.clone(),
            simples,
            coresolutions,
            atoms: atoms.clone(),
            order: vec![],
            open_singletons: atoms,
            gdim: 0,
            notes: vec!["G[1] is simple injective".into(), "the topology on the atom spectrum is discrete".into()],
        };
    }
    simples.extend(outside.iter().map(|l| s_at(l.clone()).shift()));
    coresolutions.extend(outside.iter().map(|l| Coresolution {
        simple: s_at(l.clone()).shift(),
        envelope: O::SPrufer(l.clone()).shift(),
        cosyzygy: O::SPrufer(l.clone()).shift(),
    }));
    let mut atoms = vec![generic.clone()];
    atoms.extend(simples.iter().cloned());
    let order = outside.iter().map(|l| (generic.clone(), s_at(l.clone()).shift())).collect();
    SpectrumReport {
        pair: p.clone(),
        open_singletons: simples.clone(),
        simples,
        coresolutions,
        atoms,
        order,
        gdim: 1,
        notes: vec![
            "atoms correspond bijectively to indecomposable injectives".into(),
            "no relation between atom(G[1]) and atom(S[x]) for x in U".into(),
        ],
    }
}

/// The finite-dimensional simples of a report with total dimension at most
/// `bound`, as `(module, shifted)`, families expanded over the points of `field`.
pub fn finite_simples(r: &SpectrumReport, field: FieldSpec, bound: usize) -> Result<Vec<(IndecompDescriptor, bool)>> {
    let points = closed_points(field, bound / 2)?;
    let mut out = Vec::new();
    for s in &r.simples {
        let (inner, shifted) = match s {
            SymbolicObject::Shifted(i) => (i.as_ref(), true),
            other => (other, false),
        };
        let SymbolicObject::S(locus) = inner else { continue };
        let members: Vec<ClosedPoint> = match locus {
            Locus::At(x) => vec![x.clone()],
            Locus::Family(u) => points.iter().filter(|x| u.contains(x)).cloned().collect(),
        };
        for x in members {
            let d = IndecompDescriptor::Regular(x, 1);
            if d.dim().total() <= bound {
                out.push((d, shifted));
            }
        }
    }
    out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    Ok(out)
}

const HOM_ENUM_LIMIT: usize = 1 << 16;
pub const MONOFORM_LIMIT: usize = 6;

/// An injective module map `x → m`, searched over every element of `Hom(x, m)`.
pub fn injective_map(x: &KronModule, m: &KronModule) -> Result<Option<ModuleMap>> {
    let elems = m.field().elements().ok_or(KronError::FieldNotFinite)?;
    if x.total_dim() > m.total_dim() || x.dim().d1 > m.dim().d1 || x.dim().d2 > m.dim().d2 {
        return Ok(None);
    }
    let hb = hom_basis(x, m)?;
    let q = elems.len();
    let count = q.checked_pow(hb.dim() as u32).filter(|&c| c <= HOM_ENUM_LIMIT).ok_or(KronError::Overflow(HOM_ENUM_LIMIT))?;
    for idx in 0..count {
        let mut r = idx;
        let coeffs: Vec<Scalar> = (0..hb.dim())
            .map(|_| {
                let c = elems[r % q].clone();
                r /= q;
                c
            })
            .collect();
        let f = hb.combine(&coeffs);
        if f.is_injective() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoformVerdict {
    True,
    /// A nonzero submodule `sub` such that `common` embeds into both the
    /// module and the quotient by `sub`.
    False { sub: KronModule, basis: (Matrix, Matrix), common: IndecompDescriptor },
    Inconclusive,
    /// Monoform objects are nonzero.
    Zero,
}

fn check_finite_small(m: &KronModule) -> Result<()> {
    if !m.field().is_finite() {
        return Err(KronError::FieldNotFinite);
    }
    if m.total_dim() > MONOFORM_LIMIT {
        return Err(KronError::TooLarge(format!("total dimension {} exceeds {MONOFORM_LIMIT}", m.total_dim())));
    }
    Ok(())
}

/// Whether no nonzero submodule `H` of `m` leaves a nonzero module embedding
/// into both `m` and `m/H`; common subobjects are searched among
/// indecomposables of dimension at most `bound`.
pub fn is_monoform(m: &KronModule, bound: usize) -> Result<MonoformVerdict> {
    check_finite_small(m)?;
    let field = m.field();
    if m.is_zero() {
        return Ok(MonoformVerdict::Zero);
    }
    let mut into_m = Vec::new();
    for d in indecomposables_up_to(field, bound.min(m.total_dim()))? {
        let x = make_indecomposable(&d, field)?;
        if injective_map(&x, m)?.is_some() {
            into_m.push((d, x));
        }
    }
    for (u1, u2) in enumerate_submodules(m, HOM_ENUM_LIMIT)? {
        if u1.cols() + u2.cols() == 0 {
            continue;
        }
        let q = quotient(m, (&u1, &u2))?.module;
        for (d, x) in &into_m {
            if injective_map(x, &q)?.is_some() {
                let sub = m.restrict(&u1, &u2)?;
                return Ok(MonoformVerdict::False { sub, basis: (u1, u2), common: d.clone() });
            }
        }
    }
    // common subobjects of m and a proper quotient have dimension < dim m
    Ok(if bound + 1 >= m.total_dim() { MonoformVerdict::True } else { MonoformVerdict::Inconclusive })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomVerdict {
    /// An indecomposable embedding into both modules.
    True(IndecompDescriptor),
    False,
    Inconclusive,
}

/// Searches for a common nonzero submodule. Any common submodule contains a
/// common indecomposable one, so indecomposables of dimension at most
/// `bound` are tried.
pub fn atom_equivalent(m: &KronModule, n: &KronModule, bound: usize) -> Result<AtomVerdict> {
    check_finite_small(m)?;
    check_finite_small(n)?;
    if m.field() != n.field() {
        return Err(KronError::FieldMismatch);
    }
    let field = m.field();
    let reach = m.total_dim().min(n.total_dim());
    for d in indecomposables_up_to(field, bound.min(reach))? {
        let x = make_indecomposable(&d, field)?;
        if injective_map(&x, m)?.is_some() && injective_map(&x, n)?.is_some() {
            return Ok(AtomVerdict::True(d));
        }
    }
    Ok(if bound >= reach { AtomVerdict::False } else { AtomVerdict::Inconclusive })
}

/// Isomorphism class of a module: its sorted summand list.
pub type Iso = Vec<IndecompDescriptor>;

fn iso(m: &KronModule) -> Result<Iso> {
    Ok(decompose(m)?.summands)
}

fn iso_str(i: &Iso) -> String {
    if i.is_empty() {
        return "0".into();
    }
    i.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("+")
}

/// How a module entered a closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureStep {
    Seed(Iso),
    Extension { sub: Iso, middle: Iso, quot: Iso },
    Submodule { of: Iso, sub: Iso },
}

impl fmt::Display for ClosureStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureStep::Seed(x) => write!(f, "seed {}", iso_str(x)),
            ClosureStep::Extension { sub, middle, quot } => {
                write!(f, "0 -> {} -> {} -> {} -> 0", iso_str(sub), iso_str(middle), iso_str(quot))
            }
            ClosureStep::Submodule { of, sub } => write!(f, "{} <= {}", iso_str(sub), iso_str(of)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub members: BTreeSet<Iso>,
    /// Whether every extension class and submodule was examined (finite fields).
    pub exhaustive: bool,
    reasons: BTreeMap<Iso, ClosureStep>,
}

impl Closure {
    pub fn contains(&self, m: &Iso) -> bool {
        self.members.contains(m)
    }

    /// The steps deriving `target` from the seeds, in dependency order.
    pub fn derivation(&self, target: &Iso) -> Vec<ClosureStep> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        self.derive_into(target, &mut seen, &mut out);
        out
    }

    fn derive_into(&self, target: &Iso, seen: &mut BTreeSet<Iso>, out: &mut Vec<ClosureStep>) {
        if !seen.insert(target.clone()) {
            return;
        }
        let Some(step) = self.reasons.get(target) else { return };
        match step {
            ClosureStep::Seed(_) => {}
            ClosureStep::Extension { sub, quot, .. } => {
                self.derive_into(sub, seen, out);
                self.derive_into(quot, seen, out);
            }
            ClosureStep::Submodule { of, .. } => self.derive_into(of, seen, out),
        }
        out.push(step.clone());
    }
}

/// Extension classes tried between two modules: all of them over a finite
/// field, otherwise zero, each basis class and their sum.
fn extension_classes(t: &KronModule, c: &KronModule) -> Result<(Vec<ExtClass>, crate::homalg::ExtSpace)> {
    let space = ext_class_space(t, c)?;
    let classes = if t.field().is_finite() {
        space.all_classes(1 << 12)?
    } else {
        let field = t.field();
        let mut v = vec![space.combine(&vec![field.zero(); space.dim()])];
        for i in 0..space.dim() {
            let mut e = vec![field.zero(); space.dim()];
            e[i] = field.one();
            v.push(space.combine(&e));
        }
        if space.dim() > 1 {
            v.push(space.combine(&vec![field.one(); space.dim()]));
        }
        v
    };
    Ok((classes, space))
}

/// Closure of `seeds` under extensions and submodules among modules of
/// total dimension at most `max_dim`, stopping early once `target` is reached.
pub fn closure(field: FieldSpec, seeds: &[Iso], max_dim: usize, target: Option<&Iso>) -> Result<Closure> {
    let mut cl = Closure { members: BTreeSet::new(), exhaustive: field.is_finite(), reasons: BTreeMap::new() };
    let mut queue: VecDeque<Iso> = VecDeque::new();
    let mut modules: BTreeMap<Iso, KronModule> = BTreeMap::new();
    let add = |i: Iso, step: ClosureStep, cl: &mut Closure, queue: &mut VecDeque<Iso>| {
        if cl.members.insert(i.clone()) {
            cl.reasons.insert(i.clone(), step);
            queue.push_back(i);
        }
    };
    for s in seeds {
        add(s.clone(), ClosureStep::Seed(s.clone()), &mut cl, &mut queue);
    }
    while let Some(next) = queue.pop_front() {
        if target.is_some_and(|t| cl.contains(t)) {
            return Ok(cl);
        }
        let m = module_from_descriptors(field, &next)?;
        modules.insert(next.clone(), m.clone());
        if field.is_finite() {
            for (u1, u2) in enumerate_submodules(&m, HOM_ENUM_LIMIT)? {
                let sub = iso(&m.restrict(&u1, &u2)?)?;
                add(sub.clone(), ClosureStep::Submodule { of: next.clone(), sub }, &mut cl, &mut queue);
            }
        }
        let known: Vec<(Iso, KronModule)> = modules.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for (other, om) in known {
            if om.total_dim() + m.total_dim() > max_dim {
                continue;
            }
            for (sub, subm, quot, quotm) in [(&next, &m, &other, &om), (&other, &om, &next, &m)] {
                let (classes, space) = extension_classes(quotm, subm)?;
                for class in classes {
                    let middle = iso(&space.middle_term(&class).middle)?;
                    let step = ClosureStep::Extension { sub: sub.clone(), middle: middle.clone(), quot: quot.clone() };
                    add(middle, step, &mut cl, &mut queue);
                }
            }
        }
    }
    Ok(cl)
}

/// The projective cover sequence `0 → R → P → Q₁ → 0`, checked exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSequence {
    pub relations: Iso,
    pub generators: Iso,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabrielReport {
    pub field: FieldSpec,
    pub cover: CoverSequence,
    /// Whether `P₁ ⊕ P₂` lies in the closure of the simples.
    pub regular_module_reached: bool,
    pub trace: Vec<ClosureStep>,
    /// Whether the closure of `Q₁` alone reaches `P₁` (it must not).
    pub control_reaches_p1: bool,
    pub control_exhaustive: bool,
    pub max_dim: usize,
}

impl GabrielReport {
    pub fn passed(&self) -> bool {
        self.cover.exact
            && self.cover.relations == [IndecompDescriptor::Preproj(1), IndecompDescriptor::Preproj(1)]
            && self.cover.generators == [IndecompDescriptor::Preproj(2)]
            && self.regular_module_reached
            && !self.control_reaches_p1
    }
}

pub const GABRIEL_MAX_DIM: usize = 5;

/// Checks that the module category has Gabriel dimension 0 at finite level:
/// the cover sequence of `Q₁` and a derivation of `P₁ ⊕ P₂` from the simples.
pub fn gabriel_filtration_check(field: FieldSpec) -> Result<GabrielReport> {
    use IndecompDescriptor::{Preinj, Preproj};
    let q1 = make_indecomposable(&Preinj(1), field)?;
    let pres = projective_presentation(&q1)?;
    let exact = pres.inclusion.is_injective()
        && pres.cover.is_surjective()
        && pres.cover.compose(&pres.inclusion).is_zero()
        && pres.relations.total_dim() + q1.total_dim() == pres.generators.total_dim();
    let cover = CoverSequence { relations: iso(&pres.relations)?, generators: iso(&pres.generators)?, exact };
    let mut trace = vec![ClosureStep::Extension {
        sub: cover.relations.clone(),
        middle: cover.generators.clone(),
        quot: vec![Preinj(1)],
    }];
    let lambda = vec![Preproj(1), Preproj(2)];
    let cl = closure(field, &[vec![Preproj(1)], vec![Preinj(1)]], GABRIEL_MAX_DIM, Some(&lambda))?;
    let reached = cl.contains(&lambda);
    trace.extend(cl.derivation(&lambda));
    let control = closure(field, &[vec![Preinj(1)]], GABRIEL_MAX_DIM, Some(&vec![Preproj(1)]))?;
    Ok(GabrielReport {
        field,
        cover,
        regular_module_reached: reached,
        trace,
        control_reaches_p1: control.contains(&vec![Preproj(1)]),
        control_exhaustive: control.exhaustive,
        max_dim: GABRIEL_MAX_DIM,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::descriptors_from_strs;

    const F2: FieldSpec = FieldSpec::PrimeField(2);

    fn pair(s: &str) -> TorsionPairSpec {
        TorsionPairSpec::parse(F2, s).unwrap()
    }

    fn module(names: &[&str]) -> KronModule {
        module_from_descriptors(F2, &descriptors_from_strs(F2, names).unwrap()).unwrap()
    }

    fn strings(v: &[SymbolicObject]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn finite_type_reports() {
        let r = report(&TorsionPairSpec::CogenQ1);
        assert_eq!(strings(&r.atoms), ["k"]);
        assert_eq!(r.gdim, 0);
        let r = report(&TorsionPairSpec::CogenP1);
        assert_eq!(strings(&r.atoms), ["P1", "Q1"]);
        assert_eq!(r.gdim, 0);
    }

    #[test]
    fn cofinite_report_tokens() {
        let r = report(&pair("CU:co{t}"));
        assert_eq!(strings(&r.simples), ["S[x] for x ≠ t", "S[t][1]"]);
        assert_eq!(r.gdim, 1);
        assert_eq!(strings(&r.atoms), ["G[1]", "S[x] for x ≠ t", "S[t][1]"]);
        assert_eq!(r.order.len(), 1);
        assert_eq!(r.order[0].0.to_string(), "G[1]");
        assert_eq!(r.order[0].1.to_string(), "S[t][1]");
        assert_eq!(r.coresolutions[1].envelope.to_string(), "S^inf[t][1]");
        assert!(!r.open_singletons.contains(&SymbolicObject::Generic.shift()));
    }

    #[test]
    fn all_points_report() {
        let r = report(&pair("CU:all"));
        assert_eq!(r.gdim, 0);
        assert!(r.order.is_empty());
        assert_eq!(strings(&r.simples), ["S[x] for all x", "G[1]"]);
        assert_eq!(r.open_singletons, r.atoms);
    }

    #[test]
    fn finite_simples_expand_families() {
        let r = report(&pair("CU:{t}"));
        let s = finite_simples(&r, F2, 4).unwrap();
        // S[t] plus shifted simples at t-1, inf and the degree-two point
        assert_eq!(s.iter().filter(|x| !x.1).count(), 1);
        assert_eq!(s.iter().filter(|x| x.1).count(), 3);
    }

    #[test]
    fn monoform_examples() {
        assert_eq!(is_monoform(&module(&["P1"]), 4).unwrap(), MonoformVerdict::True);
        assert_eq!(is_monoform(&module(&["Q1"]), 4).unwrap(), MonoformVerdict::True);
        assert_eq!(is_monoform(&module(&["R[t,1]"]), 4).unwrap(), MonoformVerdict::True);
        let v = is_monoform(&module(&["R[t,1]", "R[t,1]"]), 4).unwrap();
        assert!(matches!(v, MonoformVerdict::False { .. }), "{v:?}");
    }

    #[test]
    fn atom_equivalence() {
        let (p1, q1) = (module(&["P1"]), module(&["Q1"]));
        assert_eq!(atom_equivalent(&p1, &p1, 4).unwrap(), AtomVerdict::True(IndecompDescriptor::Preproj(1)));
        assert_eq!(atom_equivalent(&p1, &q1, 4).unwrap(), AtomVerdict::False);
        // P1 sits inside every regular simple
        let v = atom_equivalent(&module(&["R[t,1]"]), &module(&["R[inf,1]"]), 4).unwrap();
        assert_eq!(v, AtomVerdict::True(IndecompDescriptor::Preproj(1)));
    }

    #[test]
    fn gabriel_check_over_f2() {
        let r = gabriel_filtration_check(F2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.control_exhaustive);
        let q = gabriel_filtration_check(FieldSpec::Rationals).unwrap();
        assert!(q.passed(), "{q:?}");
        assert_eq!(r.trace[0].to_string(), "0 -> P1+P1 -> P2 -> Q1 -> 0");
    }
}
