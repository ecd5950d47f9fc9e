//! Finite-dimensional shadows of the cosilting torsion pairs of the Kronecker
//! algebra, membership, and torsion radicals.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{KronError, Result};
use crate::exactlin::{FieldSpec, Matrix};
use crate::homalg::hom_dim;
use crate::kronrep::{
    enumerate_submodules, indecomposables_up_to, make_indecomposable, quotient, ClosedPoint, IndecompDescriptor,
    KronModule, ModuleMap,
};
use crate::pencil::decompose;

/// Which side of a torsion pair an indecomposable falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Torsion,
    Torsionfree,
    Neither,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Torsion => "torsion",
            Class::Torsionfree => "torsionfree",
            Class::Neither => "neither",
        })
    }
}

/// A set of closed points given by a finite list or by its finite complement.
/// `all` is `Cofinite(∅)` and `empty` is `Finite(∅)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubsetSpec {
    Finite(BTreeSet<ClosedPoint>),
    Cofinite(BTreeSet<ClosedPoint>),
}

impl SubsetSpec {
    pub fn all() -> Self {
        SubsetSpec::Cofinite(BTreeSet::new())
    }

    pub fn empty() -> Self {
        SubsetSpec::Finite(BTreeSet::new())
    }

    pub fn finite(points: impl IntoIterator<Item = ClosedPoint>) -> Self {
        SubsetSpec::Finite(points.into_iter().collect())
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = ClosedPoint>) -> Self {
        SubsetSpec::Cofinite(excluded.into_iter().collect())
    }

    pub fn contains(&self, x: &ClosedPoint) -> bool {
        match self {
            SubsetSpec::Finite(s) => s.contains(x),
            SubsetSpec::Cofinite(s) => !s.contains(x),
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, SubsetSpec::Cofinite(s) if s.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SubsetSpec::Finite(s) if s.is_empty())
    }

    pub fn complement(&self) -> Self {
        match self {
            SubsetSpec::Finite(s) => SubsetSpec::Cofinite(s.clone()),
            SubsetSpec::Cofinite(s) => SubsetSpec::Finite(s.clone()),
        }
    }

    /// The listed points (members for a finite set, exclusions for a cofinite one).
    pub fn points(&self) -> &BTreeSet<ClosedPoint> {
        match self {
            SubsetSpec::Finite(s) | SubsetSpec::Cofinite(s) => s,
        }
    }

    /// Parses `all`, `empty`, `{p,q,…}` or `co{p,q,…}`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "all" => return Ok(Self::all()),
            "empty" => return Ok(Self::empty()),
            _ => {}
        }
        let (co, body) = match s.strip_prefix("co") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let inner = body
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| KronError::Parse(format!("bad point set '{s}'")))?;
        let points = inner
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| ClosedPoint::parse(field, p))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(if co { SubsetSpec::Cofinite(points) } else { SubsetSpec::Finite(points) })
    }
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_all() {
            return f.write_str("all");
        }
        if self.is_empty() {
            return f.write_str("empty");
        }
        let list: Vec<String> = self.points().iter().map(|x| x.to_string()).collect();
        match self {
            SubsetSpec::Finite(_) => write!(f, "{{{}}}", list.join(",")),
            SubsetSpec::Cofinite(_) => write!(f, "co{{{}}}", list.join(",")),
        }
    }
}

/// A torsion pair of finite type, described by its restriction to
/// finite-dimensional modules. `CogenQi(1)` is the trivial pair in which every
/// module is torsionfree; `CogenPi(i)` is cogenerated by `P_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TorsionPairSpec {
    CogenQ1,
    CogenP1,
    CogenQi(usize),
    CogenPi(usize),
    CU(SubsetSpec),
}

impl TorsionPairSpec {
    pub fn trivial() -> Self {
        TorsionPairSpec::CogenQi(1)
    }

    /// Parses `cogenQ1`, `cogenP1`, `cogenQ:i`, `cogenP:i` (i ≥ 2), `trivial`
    /// and `CU:<set>`. Points are read over `field`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        let index = |rest: &str| -> Result<usize> {
            let i: usize = rest.parse().map_err(|_| KronError::Parse(format!("bad index in '{s}'")))?;
            if i < 2 {
                return Err(KronError::Parse(format!("index in '{s}' must be at least 2")));
            }
            Ok(i)
        };
        match s {
            "cogenQ1" => Ok(TorsionPairSpec::CogenQ1),
            "cogenP1" => Ok(TorsionPairSpec::CogenP1),
            "trivial" => Ok(Self::trivial()),
            _ => {
                if let Some(rest) = s.strip_prefix("cogenQ:") {
                    Ok(TorsionPairSpec::CogenQi(index(rest)?))
                } else if let Some(rest) = s.strip_prefix("cogenP:") {
                    Ok(TorsionPairSpec::CogenPi(index(rest)?))
                } else if let Some(rest) = s.strip_prefix("CU:") {
                    Ok(TorsionPairSpec::CU(SubsetSpec::parse(field, rest)?))
                } else {
                    Err(KronError::Parse(format!("unknown torsion pair '{s}'")))
                }
            }
        }
    }

    pub fn subset(&self) -> Option<&SubsetSpec> {
        match self {
            TorsionPairSpec::CU(u) => Some(u),
            _ => None,
        }
    }

    /// Every point named in the pair must live over `field`.
    pub fn check_field(&self, field: FieldSpec) -> Result<()> {
        if let TorsionPairSpec::CU(u) = self {
            for x in u.points() {
                if let ClosedPoint::Finite(p) = x {
                    if p.field() != field {
                        return Err(KronError::FieldMismatch);
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for TorsionPairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionPairSpec::CogenQ1 => f.write_str("cogenQ1"),
            TorsionPairSpec::CogenP1 => f.write_str("cogenP1"),
            TorsionPairSpec::CogenQi(1) => f.write_str("trivial"),
            TorsionPairSpec::CogenQi(i) => write!(f, "cogenQ:{i}"),
            TorsionPairSpec::CogenPi(i) => write!(f, "cogenP:{i}"),
            TorsionPairSpec::CU(u) => write!(f, "CU:{u}"),
        }
    }
}

pub fn classify_indec(d: &IndecompDescriptor, p: &TorsionPairSpec) -> Class {
    use IndecompDescriptor::*;
    match (p, d) {
        (TorsionPairSpec::CogenQ1, Preproj(1)) => Class::Torsion,
        (TorsionPairSpec::CogenQ1, Preinj(1)) => Class::Torsionfree,
        (TorsionPairSpec::CogenQ1, _) => Class::Neither,
        (TorsionPairSpec::CogenP1, Preproj(1)) => Class::Torsionfree,
        (TorsionPairSpec::CogenP1, _) => Class::Torsion,
        (TorsionPairSpec::CogenQi(i), Preinj(j)) if j < i => Class::Torsion,
        (TorsionPairSpec::CogenQi(_), _) => Class::Torsionfree,
        (TorsionPairSpec::CogenPi(i), Preproj(j)) if j <= i => Class::Torsionfree,
        (TorsionPairSpec::CogenPi(_), _) => Class::Torsion,
        (TorsionPairSpec::CU(_), Preinj(_)) => Class::Torsion,
        (TorsionPairSpec::CU(_), Preproj(_)) => Class::Torsionfree,
        (TorsionPairSpec::CU(u), Regular(x, _)) => {
            if u.contains(x) {
                Class::Torsion
            } else {
                Class::Torsionfree
            }
        }
    }
}

/// The canonical sequence `0 → t(m) → m → m/t(m) → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    /// Column bases of `t(m)` at the source and sink.
    pub sub: (Matrix, Matrix),
    pub sub_module: KronModule,
    pub quotient: KronModule,
    pub projection: ModuleMap,
}

impl Radical {
    pub fn inclusion(&self) -> ModuleMap {
        ModuleMap::new(self.sub.0.clone(), self.sub.1.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.sub.0.cols() == 0 && self.sub.1.cols() == 0
    }
}

fn radical_from_sub(m: &KronModule, u1: Matrix, u2: Matrix) -> Result<Radical> {
    let sub_module = m.restrict(&u1, &u2)?;
    let q = quotient(m, (&u1, &u2))?;
    Ok(Radical { sub: (u1, u2), sub_module, quotient: q.module, projection: q.projection })
}

/// Column bases, in the coordinates of `m`, of the summands of `m` that
/// `keep` selects.
pub(crate) fn summand_span(m: &KronModule, keep: impl Fn(&IndecompDescriptor) -> bool) -> Result<(Matrix, Matrix)> {
    let field = m.field();
    let dec = decompose(m)?;
    let inv = |s: &Matrix| s.inverse().ok_or_else(|| KronError::Invariant("base change is singular".into()));
    let (t1, t2) = (inv(&dec.s1)?, inv(&dec.s2)?);
    let (mut c1, mut c2) = (Vec::new(), Vec::new());
    let (mut o1, mut o2) = (0, 0);
    for d in &dec.summands {
        let dv = d.dim();
        if keep(d) {
            c1.extend(o1..o1 + dv.d1);
            c2.extend(o2..o2 + dv.d2);
        }
        o1 += dv.d1;
        o2 += dv.d2;
    }
    let (d1, d2) = (m.dim().d1, m.dim().d2);
    let u1 = if c1.is_empty() { Matrix::zeros(field, d1, 0) } else { t1.select_columns(&c1) };
    let u2 = if c2.is_empty() { Matrix::zeros(field, d2, 0) } else { t2.select_columns(&c2) };
    Ok((u1, u2))
}

/// The torsion submodule of `m` with its quotient. For `CogenQ1` this is
/// `(0, M₂)`, the trace of `P₁`; for every other pair it is the sum of the
/// torsion summands of a decomposition.
pub fn torsion_radical(m: &KronModule, p: &TorsionPairSpec) -> Result<Radical> {
    p.check_field(m.field())?;
    let field = m.field();
    let d = m.dim();
    let (u1, u2) = match p {
        TorsionPairSpec::CogenQ1 => (Matrix::zeros(field, d.d1, 0), Matrix::identity(field, d.d2)),
        _ => summand_span(m, |x| classify_indec(x, p) == Class::Torsion)?,
    };
    radical_from_sub(m, u1, u2)
}

pub fn is_torsion(m: &KronModule, p: &TorsionPairSpec) -> Result<bool> {
    let r = torsion_radical(m, p)?;
    Ok(r.quotient.is_zero())
}

pub fn is_torsionfree(m: &KronModule, p: &TorsionPairSpec) -> Result<bool> {
    Ok(torsion_radical(m, p)?.is_zero())
}

/// The class table used by the shadow check. The corrupted variant swaps
/// torsion and torsionfree and serves as a negative control.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowRegistry {
    pub pair: TorsionPairSpec,
    pub corrupted: bool,
}

impl ShadowRegistry {
    pub fn new(pair: TorsionPairSpec) -> Self {
        ShadowRegistry { pair, corrupted: false }
    }

    pub fn corrupted(pair: TorsionPairSpec) -> Self {
        ShadowRegistry { pair, corrupted: true }
    }

    pub fn classify(&self, d: &IndecompDescriptor) -> Class {
        match (classify_indec(d, &self.pair), self.corrupted) {
            (Class::Torsion, true) => Class::Torsionfree,
            (Class::Torsionfree, true) => Class::Torsion,
            (c, _) => c,
        }
    }

    /// Whether every summand of `m` has class `c`.
    pub fn contains(&self, m: &KronModule, c: Class) -> Result<bool> {
        Ok(decompose(m)?.summands.iter().all(|d| self.classify(d) == c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShadowCounterexample {
    /// A nonzero map from a torsion to a torsionfree indecomposable.
    Hom { torsion: IndecompDescriptor, torsionfree: IndecompDescriptor, dim: usize },
    /// A torsion indecomposable with a quotient outside the torsion class.
    Quotient { module: IndecompDescriptor, quotient: Vec<IndecompDescriptor> },
    /// A torsionfree indecomposable with a submodule outside the torsionfree class.
    Submodule { module: IndecompDescriptor, submodule: Vec<IndecompDescriptor> },
}

impl fmt::Display for ShadowCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[IndecompDescriptor]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("+");
        match self {
            ShadowCounterexample::Hom { torsion, torsionfree, dim } => {
                write!(f, "dim Hom({torsion}, {torsionfree}) = {dim}")
            }
            ShadowCounterexample::Quotient { module, quotient } => {
                write!(f, "{module} has the quotient {} outside the torsion class", list(quotient))
            }
            ShadowCounterexample::Submodule { module, submodule } => {
                write!(f, "{module} has the submodule {} outside the torsionfree class", list(submodule))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowReport {
    pub pair: TorsionPairSpec,
    pub field: FieldSpec,
    pub bound: usize,
    pub corpus: usize,
    pub hom_pairs: usize,
    pub quotients: usize,
    pub submodules: usize,
    pub counterexample: Option<ShadowCounterexample>,
}

impl ShadowReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

const SUBMODULE_LIMIT: usize = 100_000;

/// Checks on all indecomposables of total dimension at most `bound` that
/// torsion maps to torsionfree only by zero, that quotients of torsion
/// modules are torsion and that submodules of torsionfree modules are
/// torsionfree.
pub fn finite_type_shadow_check(p: &TorsionPairSpec, bound: usize, field: FieldSpec) -> Result<ShadowReport> {
    check_registry(&ShadowRegistry::new(p.clone()), bound, field)
}

pub fn check_registry(reg: &ShadowRegistry, bound: usize, field: FieldSpec) -> Result<ShadowReport> {
    if !field.is_finite() {
        return Err(KronError::FieldNotFinite);
    }
    if bound > 8 {
        return Err(KronError::TooLarge(format!("bound {bound} exceeds 8")));
    }
    reg.pair.check_field(field)?;
    let corpus = indecomposables_up_to(field, bound)?;
    let mut report = ShadowReport {
        pair: reg.pair.clone(),
        field,
        bound,
        corpus: corpus.len(),
        hom_pairs: 0,
        quotients: 0,
        submodules: 0,
        counterexample: None,
    };
    let modules = corpus
        .iter()
        .map(|d| make_indecomposable(d, field))
        .collect::<Result<Vec<_>>>()?;
    let of = |c: Class| -> Vec<usize> { (0..corpus.len()).filter(|&i| reg.classify(&corpus[i]) == c).collect() };
    let (tors, free) = (of(Class::Torsion), of(Class::Torsionfree));
    for &i in &tors {
        for &j in &free {
            report.hom_pairs += 1;
            let dim = hom_dim(&modules[i], &modules[j])?;
            if dim > 0 {
                report.counterexample = Some(ShadowCounterexample::Hom {
                    torsion: corpus[i].clone(),
                    torsionfree: corpus[j].clone(),
                    dim,
                });
                return Ok(report);
            }
        }
    }
    for &i in &tors {
        for (u1, u2) in enumerate_submodules(&modules[i], SUBMODULE_LIMIT)? {
            report.quotients += 1;
            let q = quotient(&modules[i], (&u1, &u2))?.module;
            if !reg.contains(&q, Class::Torsion)? {
                report.counterexample = Some(ShadowCounterexample::Quotient {
                    module: corpus[i].clone(),
                    quotient: decompose(&q)?.summands,
                });
                return Ok(report);
            }
        }
    }
    for &j in &free {
        for (u1, u2) in enumerate_submodules(&modules[j], SUBMODULE_LIMIT)? {
            report.submodules += 1;
            let s = modules[j].restrict(&u1, &u2)?;
            if !reg.contains(&s, Class::Torsionfree)? {
                report.counterexample = Some(ShadowCounterexample::Submodule {
                    module: corpus[j].clone(),
                    submodule: decompose(&s)?.summands,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::trace_submodule;
    use crate::kronrep::module_from_descriptors;
    use crate::pencil::descriptors_from_strs;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::PrimeField(2);

    fn pair(f: FieldSpec, s: &str) -> TorsionPairSpec {
        TorsionPairSpec::parse(f, s).unwrap()
    }

    fn module(f: FieldSpec, names: &[&str]) -> KronModule {
        module_from_descriptors(f, &descriptors_from_strs(f, names).unwrap()).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["cogenQ1", "cogenP1", "cogenQ:3", "cogenP:2", "trivial", "CU:{t,inf}", "CU:co{t}", "CU:all", "CU:empty"] {
            assert_eq!(pair(F2, s).to_string(), s);
        }
        assert_eq!(pair(F2, "CU:{}"), pair(F2, "CU:empty"));
        assert_eq!(pair(F2, "CU:co{}"), pair(F2, "CU:all"));
        assert!(TorsionPairSpec::parse(F2, "cogenQ:1").is_err());
        assert!(TorsionPairSpec::parse(F2, "CU:{t^2}").is_err());
        assert!(TorsionPairSpec::parse(F2, "cogen").is_err());
    }

    #[test]
    fn classification_examples() {
        use IndecompDescriptor::*;
        assert_eq!(classify_indec(&Preinj(1), &TorsionPairSpec::CogenQi(3)), Class::Torsion);
        assert_eq!(classify_indec(&Preinj(3), &TorsionPairSpec::CogenQi(3)), Class::Torsionfree);
        assert_eq!(classify_indec(&Preproj(1), &TorsionPairSpec::CogenP1), Class::Torsionfree);
        let r = IndecompDescriptor::parse(Q, "R[t,2]").unwrap();
        assert_eq!(classify_indec(&r, &pair(Q, "CU:empty")), Class::Torsionfree);
        assert_eq!(classify_indec(&r, &pair(Q, "CU:{t}")), Class::Torsion);
        assert_eq!(classify_indec(&r, &TorsionPairSpec::CogenQ1), Class::Neither);
        assert_eq!(classify_indec(&Preproj(5), &TorsionPairSpec::trivial()), Class::Torsionfree);
    }

    #[test]
    fn radical_of_p2_under_cogen_q1() {
        let p2 = module(Q, &["P2"]);
        let r = torsion_radical(&p2, &TorsionPairSpec::CogenQ1).unwrap();
        assert_eq!(decompose(&r.sub_module).unwrap().summands, descriptors_from_strs(Q, &["P1", "P1"]).unwrap());
        assert_eq!(decompose(&r.quotient).unwrap().summands, descriptors_from_strs(Q, &["Q1"]).unwrap());
        let (t1, t2) = trace_submodule(&[module(Q, &["P1"])], &p2).unwrap();
        assert_eq!((t1.cols(), t2.cols()), (r.sub.0.cols(), r.sub.1.cols()));
        assert!(r.sub.1.spans(&t2) && t2.spans(&r.sub.1));
    }

    #[test]
    fn radical_examples() {
        let p1 = module(Q, &["P1"]);
        let r = torsion_radical(&p1, &TorsionPairSpec::CogenP1).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.quotient, p1);
        let m = module(F2, &["R[t,1]", "Q1"]);
        assert!(is_torsion(&m, &pair(F2, "CU:{t}")).unwrap());
        assert!(is_torsionfree(&module(Q, &["P3"]), &pair(Q, "CU:all")).unwrap());
        assert!(is_torsion(&module(Q, &["Q7"]), &pair(Q, "CU:empty")).unwrap());
        let zero = KronModule::zero(Q);
        assert!(is_torsion(&zero, &TorsionPairSpec::CogenQ1).unwrap());
        assert!(is_torsionfree(&zero, &TorsionPairSpec::CogenQ1).unwrap());
    }

    #[test]
    fn field_mismatch_is_reported() {
        let p = pair(F2, "CU:{t}");
        assert_eq!(torsion_radical(&module(Q, &["P1"]), &p), Err(KronError::FieldMismatch));
    }

    #[test]
    fn shadow_checks() {
        assert!(finite_type_shadow_check(&TorsionPairSpec::CogenQ1, 4, F2).unwrap().passed());
        assert!(finite_type_shadow_check(&pair(F2, "CU:{t}"), 4, F2).unwrap().passed());
        let bad = check_registry(&ShadowRegistry::corrupted(pair(F2, "CU:{t}")), 4, F2).unwrap();
        assert!(matches!(bad.counterexample, Some(ShadowCounterexample::Hom { .. })));
        assert_eq!(finite_type_shadow_check(&TorsionPairSpec::CogenQ1, 4, Q), Err(KronError::FieldNotFinite));
    }
}
