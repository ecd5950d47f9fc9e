//! Kronecker modules: two parallel linear maps `a, b: V1 → V2`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{KronError, Result};
use crate::exactlin::{all_subspaces, monic_irreducibles, FieldSpec, Matrix, Polynomial, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector {
    pub d1: usize,
    pub d2: usize,
}

impl DimVector {
    pub fn new(d1: usize, d2: usize) -> Self {
        DimVector { d1, d2 }
    }

    pub fn total(&self) -> usize {
        self.d1 + self.d2
    }

    pub fn defect(&self) -> i64 {
        defect(*self)
    }
}

impl std::ops::Add for DimVector {
    type Output = DimVector;

    fn add(self, o: DimVector) -> DimVector {
        DimVector::new(self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// `<d, e> = d1·e1 + d2·e2 − 2·d1·e2`.
pub fn euler_form(d: DimVector, e: DimVector) -> i64 {
    (d.d1 * e.d1 + d.d2 * e.d2) as i64 - 2 * (d.d1 * e.d2) as i64
}

pub fn defect(d: DimVector) -> i64 {
    d.d1 as i64 - d.d2 as i64
}

/// A finite-dimensional representation: `a` and `b` are `d2 × d1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KronModule {
    field: FieldSpec,
    a: Matrix,
    b: Matrix,
}

impl KronModule {
    pub fn new(field: FieldSpec, a: Matrix, b: Matrix) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(KronError::DimensionMismatch(format!(
                "arrow matrices have shapes {:?} and {:?}",
                a.shape(),
                b.shape()
            )));
        }
        if a.field() != field || b.field() != field {
            return Err(KronError::FieldMismatch);
        }
        Ok(KronModule { field, a, b })
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::zero_maps(field, DimVector::default())
    }

    /// Both arrows zero on the given spaces.
    pub fn zero_maps(field: FieldSpec, dim: DimVector) -> Self {
        let z = Matrix::zeros(field, dim.d2, dim.d1);
        KronModule { field, a: z.clone(), b: z }
    }

    pub fn from_i64(field: FieldSpec, d1: usize, d2: usize, a: &[&[i64]], b: &[&[i64]]) -> Self {
        let build = |rows: &[&[i64]]| {
            if rows.is_empty() {
                Matrix::zeros(field, d2, d1)
            } else {
                Matrix::from_i64(field, rows)
            }
        };
        Self::new(field, build(a), build(b)).expect("well-shaped literal")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn dim(&self) -> DimVector {
        DimVector::new(self.a.cols(), self.a.rows())
    }

    pub fn total_dim(&self) -> usize {
        self.dim().total()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The module with arrows `s2·a·s1⁻¹`, `s2·b·s1⁻¹`.
    pub fn conjugate(&self, s1: &Matrix, s2: &Matrix) -> Result<Self> {
        let s1inv = s1
            .inverse()
            .ok_or_else(|| KronError::DimensionMismatch("base change at the source is singular".into()))?;
        if s2.rank() != s2.rows() || !s2.is_square() || s2.rows() != self.dim().d2 {
            return Err(KronError::DimensionMismatch("base change at the sink is singular".into()));
        }
        Ok(KronModule {
            field: self.field,
            a: s2.mul(&self.a).mul(&s1inv),
            b: s2.mul(&self.b).mul(&s1inv),
        })
    }

    /// Transposed pencil `(aᵀ, bᵀ)`: the vector-space dual with vertices swapped.
    pub fn transpose(&self) -> Self {
        KronModule { field: self.field, a: self.a.transpose(), b: self.b.transpose() }
    }

    pub fn random_conjugate<R: Rng>(&self, rng: &mut R) -> Self {
        let d = self.dim();
        let s1 = random_invertible(self.field, d.d1, rng);
        let s2 = random_invertible(self.field, d.d2, rng);
        self.conjugate(&s1, &s2).expect("random base change is invertible")
    }

    /// Whether `(u1, u2)` (column bases) is a subrepresentation.
    pub fn is_submodule(&self, u1: &Matrix, u2: &Matrix) -> bool {
        let d = self.dim();
        u1.rows() == d.d1
            && u2.rows() == d.d2
            && u1.rank() == u1.cols()
            && u2.rank() == u2.cols()
            && u2.spans(&self.a.mul(u1))
            && u2.spans(&self.b.mul(u1))
    }

    /// The subrepresentation on `(u1, u2)` in the given bases.
    pub fn restrict(&self, u1: &Matrix, u2: &Matrix) -> Result<Self> {
        if !self.is_submodule(u1, u2) {
            return Err(KronError::NotASubmodule);
        }
        let a = u2.solve(&self.a.mul(u1))?.ok_or(KronError::NotASubmodule)?;
        let b = u2.solve(&self.b.mul(u1))?.ok_or(KronError::NotASubmodule)?;
        Self::new(self.field, a, b)
    }
}

impl fmt::Debug for KronModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KronModule<{}>{} a={:?} b={:?}", self.field, self.dim(), self.a, self.b)
    }
}

/// A random invertible matrix. Over the rationals it is a permuted product of
/// unit lower and upper triangular integer matrices, so it has an integer
/// inverse and conjugates stay free of large denominators.
pub fn random_invertible<R: Rng>(field: FieldSpec, n: usize, rng: &mut R) -> Matrix {
    if field == FieldSpec::Rationals {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let lower = Matrix::from_fn(field, n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => field.one(),
            std::cmp::Ordering::Greater => field.from_i64(rng.gen_range(-2..=2)),
            std::cmp::Ordering::Less => field.zero(),
        });
        let upper = Matrix::from_fn(field, n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => field.one(),
            std::cmp::Ordering::Less => field.from_i64(rng.gen_range(-2..=2)),
            std::cmp::Ordering::Greater => field.zero(),
        });
        return lower.mul(&upper).select_rows(&perm);
    }
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| random_scalar(field, rng));
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_scalar<R: Rng>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field {
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        FieldSpec::PrimeField(p) => Scalar::Mod(rng.gen_range(0..p)),
    }
}

/// A morphism `(f1, f2)` with `f2·a = a'·f1` and `f2·b = b'·f1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    pub f1: Matrix,
    pub f2: Matrix,
}

impl ModuleMap {
    pub fn new(f1: Matrix, f2: Matrix) -> Self {
        ModuleMap { f1, f2 }
    }

    pub fn zero(src: &KronModule, tgt: &KronModule) -> Self {
        let (s, t) = (src.dim(), tgt.dim());
        ModuleMap {
            f1: Matrix::zeros(src.field(), t.d1, s.d1),
            f2: Matrix::zeros(src.field(), t.d2, s.d2),
        }
    }

    pub fn identity(m: &KronModule) -> Self {
        let d = m.dim();
        ModuleMap { f1: Matrix::identity(m.field(), d.d1), f2: Matrix::identity(m.field(), d.d2) }
    }

    pub fn is_morphism(&self, src: &KronModule, tgt: &KronModule) -> bool {
        let (s, t) = (src.dim(), tgt.dim());
        self.f1.shape() == (t.d1, s.d1)
            && self.f2.shape() == (t.d2, s.d2)
            && self.f2.mul(src.a()) == tgt.a().mul(&self.f1)
            && self.f2.mul(src.b()) == tgt.b().mul(&self.f1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { f1: self.f1.mul(&other.f1), f2: self.f2.mul(&other.f2) }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap { f1: self.f1.add(&other.f1), f2: self.f2.add(&other.f2) }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        ModuleMap { f1: self.f1.scale(s), f2: self.f2.scale(s) }
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.f1.rank() == self.f1.cols() && self.f2.rank() == self.f2.cols()
    }

    pub fn is_surjective(&self) -> bool {
        self.f1.rank() == self.f1.rows() && self.f2.rank() == self.f2.rows()
    }

    /// Kernel as a subrepresentation of the source.
    pub fn kernel(&self) -> (Matrix, Matrix) {
        (self.f1.kernel_basis(), self.f2.kernel_basis())
    }

    /// Image as a subrepresentation of the target.
    pub fn image(&self) -> (Matrix, Matrix) {
        (self.f1.column_echelon(), self.f2.column_echelon())
    }
}

/// A closed point of the projective line: a monic irreducible polynomial or infinity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedPoint {
    Finite(Polynomial),
    Infinity,
}

impl ClosedPoint {
    /// The degree-one point `t − λ`.
    pub fn rational(field: FieldSpec, lambda: i64) -> Self {
        ClosedPoint::Finite(Polynomial::linear(field, &field.from_i64(lambda)))
    }

    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Finite(p) => p.deg(),
            ClosedPoint::Infinity => 1,
        }
    }

    pub fn validate(&self, field: FieldSpec) -> Result<()> {
        match self {
            ClosedPoint::Infinity => Ok(()),
            ClosedPoint::Finite(p) => {
                if p.field() != field {
                    Err(KronError::InvalidPoint(format!("{p} is not over {field}")))
                } else if !p.is_monic() || !crate::exactlin::is_irreducible(p) {
                    Err(KronError::InvalidPoint(format!("{p} is not monic irreducible")))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Parses `inf` or a polynomial in `t`; the result is validated.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        let pt = if s == "inf" || s == "∞" {
            ClosedPoint::Infinity
        } else {
            ClosedPoint::Finite(Polynomial::parse(field, s)?)
        };
        pt.validate(field)?;
        Ok(pt)
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Finite(p) => write!(f, "{p}"),
            ClosedPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Closed points of degree at most `max_degree` over a prime field, sorted (infinity last).
pub fn closed_points(field: FieldSpec, max_degree: usize) -> Result<Vec<ClosedPoint>> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        out.extend(monic_irreducibles(field, d)?.into_iter().map(ClosedPoint::Finite));
    }
    if max_degree >= 1 {
        out.push(ClosedPoint::Infinity);
    }
    Ok(out)
}

/// Isomorphism class of an indecomposable. The derived order is
/// preprojectives, then regulars (by point, then length), then preinjectives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndecompDescriptor {
    Preproj(usize),
    Regular(ClosedPoint, usize),
    Preinj(usize),
}

impl IndecompDescriptor {
    pub fn dim(&self) -> DimVector {
        match self {
            IndecompDescriptor::Preproj(i) => DimVector::new(i - 1, *i),
            IndecompDescriptor::Preinj(i) => DimVector::new(*i, i - 1),
            IndecompDescriptor::Regular(x, n) => DimVector::new(n * x.degree(), n * x.degree()),
        }
    }

    pub fn point(&self) -> Option<&ClosedPoint> {
        match self {
            IndecompDescriptor::Regular(x, _) => Some(x),
            _ => None,
        }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self, IndecompDescriptor::Regular(..))
    }

    /// Parses `P3`, `Q1`, `R[inf,2]`, `R[t^2+t+1,1]`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || KronError::Parse(format!("invalid descriptor {s:?}"));
        let index = |rest: &str| -> Result<usize> {
            let i: usize = rest.parse().map_err(|_| bad())?;
            if i == 0 {
                Err(bad())
            } else {
                Ok(i)
            }
        };
        if let Some(rest) = s.strip_prefix('P') {
            return Ok(IndecompDescriptor::Preproj(index(rest)?));
        }
        if let Some(rest) = s.strip_prefix('Q') {
            return Ok(IndecompDescriptor::Preinj(index(rest)?));
        }
        let inner = s
            .strip_prefix("R[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (pt, len) = inner.rsplit_once(',').ok_or_else(bad)?;
        Ok(IndecompDescriptor::Regular(ClosedPoint::parse(field, pt)?, index(len.trim())?))
    }
}

impl fmt::Display for IndecompDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndecompDescriptor::Preproj(i) => write!(f, "P{i}"),
            IndecompDescriptor::Preinj(i) => write!(f, "Q{i}"),
            IndecompDescriptor::Regular(x, n) => write!(f, "R[{x},{n}]"),
        }
    }
}

impl fmt::Debug for IndecompDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The canonical representative of an indecomposable.
pub fn make_indecomposable(d: &IndecompDescriptor, field: FieldSpec) -> Result<KronModule> {
    match d {
        IndecompDescriptor::Preproj(0) | IndecompDescriptor::Preinj(0) | IndecompDescriptor::Regular(_, 0) => {
            Err(KronError::Parse(format!("index must be positive in {d}")))
        }
        IndecompDescriptor::Preproj(i) => {
            let (n, m) = (i - 1, *i);
            let a = Matrix::from_fn(field, m, n, |r, c| if r == c { field.one() } else { field.zero() });
            let b = Matrix::from_fn(field, m, n, |r, c| if r == c + 1 { field.one() } else { field.zero() });
            KronModule::new(field, a, b)
        }
        IndecompDescriptor::Preinj(i) => {
            let (n, m) = (*i, i - 1);
            let a = Matrix::from_fn(field, m, n, |r, c| if r == c { field.one() } else { field.zero() });
            let b = Matrix::from_fn(field, m, n, |r, c| if c == r + 1 { field.one() } else { field.zero() });
            KronModule::new(field, a, b)
        }
        IndecompDescriptor::Regular(x, n) => {
            x.validate(field)?;
            match x {
                ClosedPoint::Infinity => {
                    let b = Matrix::from_fn(field, *n, *n, |r, c| if c == r + 1 { field.one() } else { field.zero() });
                    KronModule::new(field, Matrix::identity(field, *n), b)
                }
                ClosedPoint::Finite(p) => {
                    let a = jordan_companion(p, *n);
                    let b = Matrix::identity(field, a.rows());
                    KronModule::new(field, a, b)
                }
            }
        }
    }
}

/// Block upper-triangular matrix with `n` companion blocks of `p` on the
/// diagonal, coupled by a single one in the top-right corner of each
/// superdiagonal block. Its minimal polynomial is `p^n`.
pub fn jordan_companion(p: &Polynomial, n: usize) -> Matrix {
    let field = p.field();
    let d = p.deg();
    let c = p.companion();
    let mut m = Matrix::zeros(field, n * d, n * d);
    for k in 0..n {
        m.set_block(k * d, k * d, &c);
        if k + 1 < n {
            m.set(k * d, (k + 1) * d + d - 1, field.one());
        }
    }
    m
}

pub fn direct_sum(field: FieldSpec, ms: &[KronModule]) -> Result<KronModule> {
    if ms.iter().any(|m| m.field() != field) {
        return Err(KronError::FieldMismatch);
    }
    let a: Vec<&Matrix> = ms.iter().map(|m| m.a()).collect();
    let b: Vec<&Matrix> = ms.iter().map(|m| m.b()).collect();
    KronModule::new(field, Matrix::block_diag(field, &a), Matrix::block_diag(field, &b))
}

/// Direct sum of canonical indecomposables, in the given order.
pub fn module_from_descriptors(field: FieldSpec, ds: &[IndecompDescriptor]) -> Result<KronModule> {
    let parts = ds.iter().map(|d| make_indecomposable(d, field)).collect::<Result<Vec<_>>>()?;
    direct_sum(field, &parts)
}

/// All indecomposables of total dimension at most `bound` over a prime field, sorted.
pub fn indecomposables_up_to(field: FieldSpec, bound: usize) -> Result<Vec<IndecompDescriptor>> {
    let mut out = Vec::new();
    let mut i = 1;
    while 2 * i - 1 <= bound {
        out.push(IndecompDescriptor::Preproj(i));
        out.push(IndecompDescriptor::Preinj(i));
        i += 1;
    }
    for x in closed_points(field, bound / 2)? {
        let mut n = 1;
        while 2 * n * x.degree() <= bound {
            out.push(IndecompDescriptor::Regular(x.clone(), n));
            n += 1;
        }
    }
    out.sort();
    Ok(out)
}

/// A random multiset of indecomposables with total dimension at most
/// `max_total`, sorted. Regular summands use points of degree at most 2; over
/// the rationals these come from a fixed small pool so points repeat.
pub fn random_descriptors<R: Rng>(field: FieldSpec, max_total: usize, rng: &mut R) -> Result<Vec<IndecompDescriptor>> {
    let points = match field {
        FieldSpec::Rationals => ["t", "t-1", "t+1", "t-2", "t^2+1", "t^2-2", "t^2+t+1", "inf"]
            .iter()
            .map(|s| ClosedPoint::parse(field, s))
            .collect::<Result<Vec<_>>>()?,
        FieldSpec::PrimeField(_) => closed_points(field, 2)?,
    };
    let target = rng.gen_range(0..=max_total);
    let mut used = 0;
    let mut out = Vec::new();
    let mut attempts = 0;
    while used < target && attempts < 64 {
        attempts += 1;
        let room = target - used;
        let d = match rng.gen_range(0..3) {
            0 => IndecompDescriptor::Preproj(rng.gen_range(1..=room.div_ceil(2).max(1))),
            1 => IndecompDescriptor::Preinj(rng.gen_range(1..=room.div_ceil(2).max(1))),
            _ => {
                let x = points.choose(rng).expect("nonempty point pool").clone();
                let n = rng.gen_range(1..=(room / (2 * x.degree())).max(1));
                IndecompDescriptor::Regular(x, n)
            }
        };
        if d.dim().total() <= room {
            used += d.dim().total();
            out.push(d);
        }
    }
    out.sort();
    Ok(out)
}

/// Every subrepresentation of `m` as a pair of column bases, sink subspace first.
pub fn enumerate_submodules(m: &KronModule, max_count: usize) -> Result<Vec<(Matrix, Matrix)>> {
    let field = m.field();
    if !field.is_finite() {
        return Err(KronError::FieldNotFinite);
    }
    let d = m.dim();
    if d.total() > 8 {
        return Err(KronError::TooLarge(format!("total dimension {} exceeds 8", d.total())));
    }
    let mut out = Vec::new();
    for u2 in all_subspaces(field, d.d2, max_count)? {
        // largest compatible source subspace: a·v, b·v ∈ u2
        let w = m.a().preimage(&u2).intersect(&m.b().preimage(&u2));
        for c in all_subspaces(field, w.cols(), max_count)? {
            out.push((w.mul(&c).column_echelon(), u2.clone()));
            if out.len() > max_count {
                return Err(KronError::Overflow(max_count));
            }
        }
    }
    Ok(out)
}

/// A quotient module with its projection maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub module: KronModule,
    pub projection: ModuleMap,
    /// A linear (not necessarily module) section of the projection, as
    /// matrices at the source and sink.
    pub section: (Matrix, Matrix),
}

pub fn quotient(m: &KronModule, sub: (&Matrix, &Matrix)) -> Result<Quotient> {
    let (u1, u2) = sub;
    if !m.is_submodule(u1, u2) {
        return Err(KronError::NotASubmodule);
    }
    let field = m.field();
    let (c1, p1) = complement_projection(u1);
    let (c2, p2) = complement_projection(u2);
    let module = KronModule::new(field, p2.mul(m.a()).mul(&c1), p2.mul(m.b()).mul(&c1))?;
    Ok(Quotient { module, projection: ModuleMap::new(p1, p2), section: (c1, c2) })
}

/// Complement basis `c` of span(u) and the projection `p` killing `u` with `p·c = I`.
fn complement_projection(u: &Matrix) -> (Matrix, Matrix) {
    let field = u.field();
    let n = u.rows();
    let c = u.complement_basis();
    let full = Matrix::hstack(field, n, &[u, &c]);
    let inv = full.inverse().expect("subspace plus complement is a basis");
    let p = inv.block(u.cols(), 0, c.cols(), n);
    (c, p)
}
