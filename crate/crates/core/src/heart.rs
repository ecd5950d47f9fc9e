//! Objects of the tilted heart as complexes of projective modules in degrees
//! −2, −1, 0, morphisms as chain maps up to homotopy, and kernels and
//! cokernels read off the mapping cone.

use crate::error::{KronError, Result};
use crate::exactlin::{FieldSpec, Matrix, Scalar};
use crate::homalg::{hom_basis, HomBasis};
use crate::kronrep::{direct_sum, make_indecomposable, quotient, DimVector, IndecompDescriptor, KronModule, ModuleMap};
use crate::torsion::{is_torsion, is_torsionfree, torsion_radical, TorsionPairSpec};

fn invariant(msg: &str) -> KronError {
    KronError::Invariant(msg.to_string())
}

fn vectorize(f: &ModuleMap) -> Vec<Scalar> {
    let mut v = f.f1.vectorize();
    v.extend(f.f2.vectorize());
    v
}

fn columns_matrix(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_fn(field, rows, cols.len(), |r, c| cols[c][r].clone())
}

fn solve_columns(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    u.solve(v)?.ok_or_else(|| invariant("vectors outside the expected span"))
}

/// `[[tl, tr], [bl, br]]` as a module map between direct sums.
fn block_map(field: FieldSpec, tl: &ModuleMap, tr: &ModuleMap, bl: &ModuleMap, br: &ModuleMap) -> ModuleMap {
    let blocks = |x: &Matrix, y: &Matrix, z: &Matrix, w: &Matrix| {
        let top = Matrix::hstack(field, x.rows(), &[x, y]);
        let bottom = Matrix::hstack(field, z.rows(), &[z, w]);
        Matrix::vstack(field, top.cols(), &[&top, &bottom])
    };
    ModuleMap::new(blocks(&tl.f1, &tr.f1, &bl.f1, &br.f1), blocks(&tl.f2, &tr.f2, &bl.f2, &br.f2))
}

fn sum_map(field: FieldSpec, f: &ModuleMap, g: &ModuleMap) -> ModuleMap {
    ModuleMap::new(Matrix::block_diag(field, &[&f.f1, &g.f1]), Matrix::block_diag(field, &[&f.f2, &g.f2]))
}

/// Inclusion of the first (`second = false`) or second summand of `x ⊕ y`.
fn injection(field: FieldSpec, x: &KronModule, y: &KronModule, second: bool) -> ModuleMap {
    let (dx, dy) = (x.dim(), y.dim());
    let part = |nx: usize, ny: usize| {
        let id = Matrix::identity(field, if second { ny } else { nx });
        let z = Matrix::zeros(field, if second { nx } else { ny }, id.cols());
        if second {
            Matrix::vstack(field, ny, &[&z, &id])
        } else {
            Matrix::vstack(field, nx, &[&id, &z])
        }
    };
    ModuleMap::new(part(dx.d1, dy.d1), part(dx.d2, dy.d2))
}

fn projection(field: FieldSpec, x: &KronModule, y: &KronModule, second: bool) -> ModuleMap {
    let i = injection(field, x, y, second);
    ModuleMap::new(i.f1.transpose(), i.f2.transpose())
}

/// A submodule given by column bases, as a module map into the ambient module.
fn inclusion_of(u: &(Matrix, Matrix)) -> ModuleMap {
    ModuleMap::new(u.0.clone(), u.1.clone())
}

/// A bounded cochain complex of modules. `diffs[i]` maps `terms[i]` to
/// `terms[i + 1]`, and `terms[0]` sits in degree `lowest`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    field: FieldSpec,
    lowest: i32,
    terms: Vec<KronModule>,
    diffs: Vec<ModuleMap>,
}

/// `H^n` of a complex together with the data tying it to the chain level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub module: KronModule,
    /// Column bases of the cycles inside the term.
    pub cycles: (Matrix, Matrix),
    /// Boundaries in cycle coordinates.
    pub boundaries: (Matrix, Matrix),
    /// Cycle coordinates to cohomology.
    pub projection: ModuleMap,
    /// A linear section of `projection`.
    pub section: (Matrix, Matrix),
}

impl Cohomology {
    /// Classes of cycles given as columns in term coordinates.
    pub fn classes(&self, v1: &Matrix, v2: &Matrix) -> Result<ModuleMap> {
        let c1 = solve_columns(&self.cycles.0, v1)?;
        let c2 = solve_columns(&self.cycles.1, v2)?;
        Ok(ModuleMap::new(self.projection.f1.mul(&c1), self.projection.f2.mul(&c2)))
    }

    /// Representative cycles, in term coordinates, of the basis of the cohomology.
    pub fn representatives(&self) -> (Matrix, Matrix) {
        (self.cycles.0.mul(&self.section.0), self.cycles.1.mul(&self.section.1))
    }
}

impl Complex {
    pub fn new(field: FieldSpec, lowest: i32, terms: Vec<KronModule>, diffs: Vec<ModuleMap>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(KronError::DimensionMismatch("a complex needs one differential between consecutive terms".into()));
        }
        if terms.iter().any(|t| t.field() != field) {
            return Err(KronError::FieldMismatch);
        }
        for (i, d) in diffs.iter().enumerate() {
            if !d.is_morphism(&terms[i], &terms[i + 1]) {
                return Err(KronError::DimensionMismatch(format!("differential {i} is not a module map")));
            }
            if i > 0 && !d.compose(&diffs[i - 1]).is_zero() {
                return Err(KronError::Invariant("differentials do not compose to zero".into()));
            }
        }
        Ok(Complex { field, lowest, terms, diffs })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn lowest(&self) -> i32 {
        self.lowest
    }

    pub fn highest(&self) -> i32 {
        self.lowest + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lowest..=self.highest()
    }

    /// The term in degree `n`; zero outside the stored range.
    pub fn term(&self, n: i32) -> KronModule {
        if self.degrees().contains(&n) {
            self.terms[(n - self.lowest) as usize].clone()
        } else {
            KronModule::zero(self.field)
        }
    }

    /// The differential out of degree `n`.
    pub fn diff(&self, n: i32) -> ModuleMap {
        if n >= self.lowest && n < self.highest() {
            self.diffs[(n - self.lowest) as usize].clone()
        } else {
            ModuleMap::zero(&self.term(n), &self.term(n + 1))
        }
    }

    /// `X[k]`: the term in degree `n` is `X^{n+k}`, the differential is `(−1)^k d`.
    pub fn shift(&self, k: i32) -> Complex {
        let sign = if k.rem_euclid(2) == 0 { self.field.one() } else { self.field.from_i64(-1) };
        Complex {
            field: self.field,
            lowest: self.lowest - k,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// The same complex stored over the degree range `lo..=hi` (which must
    /// cover every nonzero term).
    fn pad(&self, lo: i32, hi: i32) -> Result<Complex> {
        if (self.degrees()).any(|n| !(lo..=hi).contains(&n) && self.term(n).total_dim() > 0) {
            return Err(invariant("padding would drop a nonzero term"));
        }
        let terms = (lo..=hi).map(|n| self.term(n)).collect();
        let diffs = (lo..hi).map(|n| self.diff(n)).collect();
        Complex::new(self.field, lo, terms, diffs)
    }

    pub fn cohomology(&self, n: i32) -> Result<Cohomology> {
        let term = self.term(n);
        let cycles = self.diff(n).kernel();
        let z = term.restrict(&cycles.0, &cycles.1)?;
        let (i1, i2) = self.diff(n - 1).image();
        let boundaries = (solve_columns(&cycles.0, &i1)?, solve_columns(&cycles.1, &i2)?);
        let q = quotient(&z, (&boundaries.0, &boundaries.1))?;
        Ok(Cohomology { module: q.module, cycles, boundaries, projection: q.projection, section: q.section })
    }

    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        let lo = self.lowest.min(other.lowest);
        let hi = self.highest().max(other.highest());
        let terms = (lo..=hi)
            .map(|n| direct_sum(self.field, &[self.term(n), other.term(n)]))
            .collect::<Result<Vec<_>>>()?;
        let diffs = (lo..hi).map(|n| sum_map(self.field, &self.diff(n), &other.diff(n))).collect();
        Complex::new(self.field, lo, terms, diffs)
    }
}

/// The map induced on `H^n` by a degree-`n` component of a chain map.
pub fn induced_map(hx: &Cohomology, hy: &Cohomology, g: &ModuleMap) -> Result<ModuleMap> {
    let (r1, r2) = hx.representatives();
    hy.classes(&g.f1.mul(&r1), &g.f2.mul(&r2))
}

/// Chain maps `x → y` as coefficient vectors over per-degree Hom bases, with
/// the null-homotopic ones singled out.
struct ChainSpace {
    x: Complex,
    y: Complex,
    bases: Vec<HomBasis>,
    offsets: Vec<usize>,
    /// Columns: coefficient vectors of chain maps.
    cycles: Matrix,
    /// Columns: coefficient vectors of null-homotopic chain maps.
    boundaries: Matrix,
}

impl ChainSpace {
    fn new(x: &Complex, y: &Complex) -> Result<Self> {
        let field = x.field();
        let degrees: Vec<i32> = x.degrees().collect();
        let bases = degrees
            .iter()
            .map(|&n| hom_basis(&x.term(n), &y.term(n)))
            .collect::<Result<Vec<_>>>()?;
        let mut offsets = vec![0];
        for b in &bases {
            offsets.push(offsets.last().unwrap() + b.dim());
        }
        let total = *offsets.last().unwrap();
        let slot = |n: i32| (n - x.lowest()) as usize;
        // d_y ∘ g^n − g^{n+1} ∘ d_x as maps x^n → y^{n+1}
        let mut eq_cols: Vec<Vec<Scalar>> = vec![Vec::new(); total];
        let mut rows = 0;
        for &n in &degrees {
            let (src, tgt) = (x.term(n), y.term(n + 1));
            let zero = vectorize(&ModuleMap::zero(&src, &tgt));
            for c in eq_cols.iter_mut() {
                c.extend(zero.iter().cloned());
            }
            let base = rows;
            rows += zero.len();
            let mut put = |col: usize, v: Vec<Scalar>| {
                for (k, s) in v.into_iter().enumerate() {
                    eq_cols[col][base + k] = field.add(&eq_cols[col][base + k], &s);
                }
            };
            for (k, b) in bases[slot(n)].basis.iter().enumerate() {
                put(offsets[slot(n)] + k, vectorize(&y.diff(n).compose(b)));
            }
            if n < x.highest() {
                let dx = x.diff(n);
                for (k, b) in bases[slot(n + 1)].basis.iter().enumerate() {
                    put(offsets[slot(n + 1)] + k, vectorize(&b.compose(&dx).scale(&field.from_i64(-1))));
                }
            }
        }
        let cycles = columns_matrix(field, rows, &eq_cols).kernel_basis();
        let mut space = ChainSpace {
            x: x.clone(),
            y: y.clone(),
            bases,
            offsets,
            cycles,
            boundaries: Matrix::zeros(field, total, 0),
        };
        // null-homotopic maps d_y h^n + h^{n+1} d_x from h^n: x^n → y^{n−1}
        let mut bcols = Vec::new();
        for &n in &degrees {
            for h in hom_basis(&x.term(n), &y.term(n - 1))?.basis {
                let mut maps: Vec<ModuleMap> = degrees.iter().map(|&m| ModuleMap::zero(&x.term(m), &y.term(m))).collect();
                maps[slot(n)] = maps[slot(n)].add(&y.diff(n - 1).compose(&h));
                if n > x.lowest() {
                    maps[slot(n - 1)] = maps[slot(n - 1)].add(&h.compose(&x.diff(n - 1)));
                }
                bcols.push(space.coordinates(&maps)?);
            }
        }
        space.boundaries = columns_matrix(field, total, &bcols);
        Ok(space)
    }

    fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn coordinates(&self, maps: &[ModuleMap]) -> Result<Vec<Scalar>> {
        let field = self.x.field();
        let mut out = Vec::with_capacity(self.dim());
        for (b, g) in self.bases.iter().zip(maps) {
            let cols: Vec<Vec<Scalar>> = b.basis.iter().map(vectorize).collect();
            let v = vectorize(g);
            let m = columns_matrix(field, v.len(), &cols);
            let c = solve_columns(&m, &Matrix::column_vector(field, v))?;
            out.extend(c.vectorize());
        }
        Ok(out)
    }

    fn maps(&self, coeffs: &[Scalar]) -> Vec<ModuleMap> {
        self.bases
            .iter()
            .enumerate()
            .map(|(i, b)| b.combine(&coeffs[self.offsets[i]..self.offsets[i + 1]]))
            .collect()
    }

    fn is_boundary(&self, coeffs: &[Scalar]) -> bool {
        let v = Matrix::column_vector(self.x.field(), coeffs.to_vec());
        self.boundaries.rank() == Matrix::hstack(self.x.field(), self.dim(), &[&self.boundaries, &v]).rank()
    }

    /// Chain maps whose classes form a basis modulo homotopy.
    fn homology_basis(&self) -> Vec<Vec<Scalar>> {
        let field = self.x.field();
        let mut span = self.boundaries.clone();
        let mut rank = span.rank();
        let mut out = Vec::new();
        for j in 0..self.cycles.cols() {
            let c = self.cycles.column(j);
            let next = Matrix::hstack(field, self.dim(), &[&span, &c]);
            let r = next.rank();
            if r > rank {
                out.push(c.vectorize());
                span = next;
                rank = r;
            }
        }
        out
    }

    /// A chain map with prescribed induced maps on the given cohomology degrees.
    fn realize(&self, prescribed: &[(i32, ModuleMap)]) -> Result<Option<Vec<ModuleMap>>> {
        let field = self.x.field();
        let mut hs = Vec::new();
        for (n, _) in prescribed {
            hs.push((self.x.cohomology(*n)?, self.y.cohomology(*n)?));
        }
        let slot = |n: i32| (n - self.x.lowest()) as usize;
        let mut cols = Vec::new();
        for j in 0..self.cycles.cols() {
            let maps = self.maps(&self.cycles.column(j).vectorize());
            let mut v = Vec::new();
            for ((n, _), (hx, hy)) in prescribed.iter().zip(&hs) {
                let g = if self.x.degrees().contains(n) {
                    maps[slot(*n)].clone()
                } else {
                    ModuleMap::zero(&self.x.term(*n), &self.y.term(*n))
                };
                v.extend(vectorize(&induced_map(hx, hy, &g)?));
            }
            cols.push(v);
        }
        let rhs: Vec<Scalar> = prescribed.iter().flat_map(|(_, g)| vectorize(g)).collect();
        let sys = columns_matrix(field, rhs.len(), &cols);
        let Some(c) = sys.solve(&Matrix::column_vector(field, rhs))? else {
            return Ok(None);
        };
        let coeffs = self.cycles.mul(&c).vectorize();
        Ok(Some(self.maps(&coeffs)))
    }
}

/// A minimal projective presentation `0 → R → P → m → 0` with `P` a sum of
/// copies of `P₂` (one per source basis vector) and `P₁` (one per sink
/// generator outside the images of the arrows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub relations: KronModule,
    pub generators: KronModule,
    pub inclusion: ModuleMap,
    pub cover: ModuleMap,
}

pub fn projective_presentation(m: &KronModule) -> Result<Presentation> {
    let field = m.field();
    let d = m.dim();
    let mut arrow_cols = Vec::new();
    for i in 0..d.d1 {
        arrow_cols.push(m.a().column(i));
        arrow_cols.push(m.b().column(i));
    }
    let refs: Vec<&Matrix> = arrow_cols.iter().collect();
    let images = Matrix::hstack(field, d.d2, &refs);
    let extra = images.complement_basis();
    let p2 = make_indecomposable(&IndecompDescriptor::Preproj(2), field)?;
    let p1 = make_indecomposable(&IndecompDescriptor::Preproj(1), field)?;
    let mut parts = vec![p2; d.d1];
    parts.extend(std::iter::repeat_n(p1, extra.cols()));
    let generators = direct_sum(field, &parts)?;
    let cover = ModuleMap::new(Matrix::identity(field, d.d1), Matrix::hstack(field, d.d2, &[&images, &extra]));
    if !cover.is_morphism(&generators, m) {
        return Err(invariant("projective cover is not a module map"));
    }
    let k = cover.kernel();
    let relations = generators.restrict(&k.0, &k.1)?;
    Ok(Presentation { relations, generators, inclusion: inclusion_of(&k), cover })
}

impl Presentation {
    /// A linear right inverse of the cover, as matrices.
    fn cover_section(&self) -> Result<(Matrix, Matrix)> {
        let field = self.cover.f1.field();
        let s1 = solve_columns(&self.cover.f1, &Matrix::identity(field, self.cover.f1.rows()))?;
        let s2 = solve_columns(&self.cover.f2, &Matrix::identity(field, self.cover.f2.rows()))?;
        Ok((s1, s2))
    }
}

/// An object of the heart of a torsion pair: a complex of projectives in
/// degrees −2, −1, 0 with `H⁻² = 0`, `H⁻¹` torsionfree and `H⁰` torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeartObject {
    pair: TorsionPairSpec,
    complex: Complex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeartCohomology {
    pub hminus: Cohomology,
    pub hzero: Cohomology,
}

impl HeartObject {
    /// Wraps a complex, checking the degree range, projectivity of the terms
    /// and the cohomology classes.
    pub fn new(pair: TorsionPairSpec, complex: Complex) -> Result<Self> {
        let complex = complex.pad(-2, 0)?;
        for t in &complex.terms {
            let p = projective_presentation(t)?;
            if p.relations.total_dim() > 0 {
                return Err(KronError::Invariant("heart complex has a non-projective term".into()));
            }
        }
        let x = HeartObject { pair, complex };
        if x.complex.cohomology(-2)?.module.total_dim() > 0 {
            return Err(KronError::Invariant("heart complex has cohomology in degree −2".into()));
        }
        let h = x.cohomology()?;
        if !is_torsionfree(&h.hminus.module, &x.pair)? {
            return Err(KronError::NotTorsionfree(x.pair.to_string()));
        }
        if !is_torsion(&h.hzero.module, &x.pair)? {
            return Err(KronError::NotTorsion(x.pair.to_string()));
        }
        Ok(x)
    }

    pub fn zero(pair: TorsionPairSpec, field: FieldSpec) -> Self {
        let z = KronModule::zero(field);
        let zm = ModuleMap::zero(&z, &z);
        let complex = Complex { field, lowest: -2, terms: vec![z.clone(), z.clone(), z], diffs: vec![zm.clone(), zm] };
        HeartObject { pair, complex }
    }

    pub fn pair(&self) -> &TorsionPairSpec {
        &self.pair
    }

    pub fn field(&self) -> FieldSpec {
        self.complex.field()
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn term(&self, n: i32) -> KronModule {
        self.complex.term(n)
    }

    pub fn cohomology(&self) -> Result<HeartCohomology> {
        Ok(HeartCohomology { hminus: self.complex.cohomology(-1)?, hzero: self.complex.cohomology(0)? })
    }

    /// Dimension vectors of `(H⁻¹, H⁰)`.
    pub fn cohomology_dims(&self) -> Result<(DimVector, DimVector)> {
        let h = self.cohomology()?;
        Ok((h.hminus.module.dim(), h.hzero.module.dim()))
    }

    pub fn is_zero(&self) -> Result<bool> {
        let (a, b) = self.cohomology_dims()?;
        Ok(a.total() == 0 && b.total() == 0)
    }

    /// The class `[H⁰] − [H⁻¹]` in the Grothendieck group, additive on short
    /// exact sequences of the heart.
    pub fn class(&self) -> Result<(i64, i64)> {
        let (m, z) = self.cohomology_dims()?;
        Ok((z.d1 as i64 - m.d1 as i64, z.d2 as i64 - m.d2 as i64))
    }

    pub fn direct_sum(&self, other: &HeartObject) -> Result<HeartObject> {
        if self.pair != other.pair {
            return Err(KronError::PairMismatch);
        }
        let complex = self.complex.direct_sum(&other.complex)?.pad(-2, 0)?;
        Ok(HeartObject { pair: self.pair.clone(), complex })
    }
}

/// `m` in degree 0, resolved by its minimal projective presentation.
pub fn from_module(m: &KronModule, p: &TorsionPairSpec) -> Result<HeartObject> {
    if !is_torsion(m, p)? {
        return Err(KronError::NotTorsion(p.to_string()));
    }
    Ok(HeartObject { pair: p.clone(), complex: presentation_complex(m, 0)? })
}

/// `m[1]`: the presentation of `m` placed in degrees −2, −1.
pub fn from_shifted_module(m: &KronModule, p: &TorsionPairSpec) -> Result<HeartObject> {
    if !is_torsionfree(m, p)? {
        return Err(KronError::NotTorsionfree(p.to_string()));
    }
    Ok(HeartObject { pair: p.clone(), complex: presentation_complex(m, -1)? })
}

/// The presentation of `m` with the generators in degree `top`.
fn presentation_complex(m: &KronModule, top: i32) -> Result<Complex> {
    let pres = projective_presentation(m)?;
    Complex::new(m.field(), top - 1, vec![pres.relations, pres.generators], vec![pres.inclusion])?.pad(-2, 0)
}

/// Isomorphism `m → H^{top}` of the presentation complex of `m`, read through
/// the inclusion of that complex as the summand `which` of a sum.
fn presentation_iso(m: &KronModule, h: &Cohomology, embed: &ModuleMap) -> Result<ModuleMap> {
    let pres = projective_presentation(m)?;
    let (s1, s2) = pres.cover_section()?;
    h.classes(&embed.f1.mul(&s1), &embed.f2.mul(&s2))
}

/// A chain map between heart objects, compared up to homotopy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeartMorphism {
    pub source: HeartObject,
    pub target: HeartObject,
    /// Components in degrees −2, −1, 0.
    pub maps: Vec<ModuleMap>,
}

impl HeartMorphism {
    pub fn new(source: HeartObject, target: HeartObject, maps: Vec<ModuleMap>) -> Result<Self> {
        if source.pair != target.pair {
            return Err(KronError::PairMismatch);
        }
        let f = HeartMorphism { source, target, maps };
        if !f.is_chain_map() {
            return Err(KronError::Invariant("components do not form a chain map".into()));
        }
        Ok(f)
    }

    pub fn is_chain_map(&self) -> bool {
        let (x, y) = (&self.source.complex, &self.target.complex);
        self.maps.len() == 3
            && (-2..=0).all(|n| self.maps[(n + 2) as usize].is_morphism(&x.term(n), &y.term(n)))
            && (-2..0).all(|n| {
                let i = (n + 2) as usize;
                y.diff(n).compose(&self.maps[i]) == self.maps[i + 1].compose(&x.diff(n))
            })
    }

    pub fn identity(x: &HeartObject) -> Self {
        let maps = (-2..=0).map(|n| ModuleMap::identity(&x.term(n))).collect();
        HeartMorphism { source: x.clone(), target: x.clone(), maps }
    }

    pub fn zero(x: &HeartObject, y: &HeartObject) -> Self {
        let maps = (-2..=0).map(|n| ModuleMap::zero(&x.term(n), &y.term(n))).collect();
        HeartMorphism { source: x.clone(), target: y.clone(), maps }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HeartMorphism) -> Result<HeartMorphism> {
        if other.target != self.source {
            return Err(KronError::DimensionMismatch("morphisms are not composable".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| f.compose(g)).collect();
        Ok(HeartMorphism { source: other.source.clone(), target: self.target.clone(), maps })
    }

    pub fn add(&self, other: &HeartMorphism) -> HeartMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| f.add(g)).collect();
        HeartMorphism { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn scale(&self, s: &Scalar) -> HeartMorphism {
        let maps = self.maps.iter().map(|f| f.scale(s)).collect();
        HeartMorphism { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn is_null_homotopic(&self) -> Result<bool> {
        let space = ChainSpace::new(&self.source.complex, &self.target.complex)?;
        Ok(space.is_boundary(&space.coordinates(&self.maps)?))
    }

    /// Equality in the heart.
    pub fn equivalent(&self, other: &HeartMorphism) -> Result<bool> {
        self.add(&other.scale(&self.source.field().from_i64(-1))).is_null_homotopic()
    }

    /// The induced maps on `H⁻¹` and `H⁰`.
    pub fn on_cohomology(&self) -> Result<(ModuleMap, ModuleMap)> {
        let (hx, hy) = (self.source.cohomology()?, self.target.cohomology()?);
        Ok((induced_map(&hx.hminus, &hy.hminus, &self.maps[1])?, induced_map(&hx.hzero, &hy.hzero, &self.maps[2])?))
    }
}

/// A basis of `Hom(x, y)` in the heart: chain maps modulo null-homotopies.
pub fn hom_space(x: &HeartObject, y: &HeartObject) -> Result<Vec<HeartMorphism>> {
    if x.pair != y.pair {
        return Err(KronError::PairMismatch);
    }
    if x.field() != y.field() {
        return Err(KronError::FieldMismatch);
    }
    let space = ChainSpace::new(&x.complex, &y.complex)?;
    Ok(space
        .homology_basis()
        .into_iter()
        .map(|c| HeartMorphism { source: x.clone(), target: y.clone(), maps: space.maps(&c) })
        .collect())
}

/// Lifts `h: m → n` to the presentations of `m` and `n`.
fn lift_to_presentations(h: &ModuleMap, pm: &Presentation, pn: &Presentation) -> Result<(ModuleMap, ModuleMap)> {
    let g0 = solve_in_hom(&pm.generators, &pn.generators, |g| pn.cover.compose(g), &h.compose(&pm.cover))?
        .ok_or_else(|| invariant("generators are not projective"))?;
    let g1 = solve_in_hom(&pm.relations, &pn.relations, |g| pn.inclusion.compose(g), &g0.compose(&pm.inclusion))?
        .ok_or_else(|| invariant("lift does not restrict to relations"))?;
    Ok((g1, g0))
}

/// A module map `g: src → tgt` with `apply(g) = rhs`, if one exists.
fn solve_in_hom(
    src: &KronModule,
    tgt: &KronModule,
    apply: impl Fn(&ModuleMap) -> ModuleMap,
    rhs: &ModuleMap,
) -> Result<Option<ModuleMap>> {
    let field = src.field();
    let hb = hom_basis(src, tgt)?;
    let v = vectorize(rhs);
    let cols: Vec<Vec<Scalar>> = hb.basis.iter().map(|g| vectorize(&apply(g))).collect();
    let sys = columns_matrix(field, v.len(), &cols);
    Ok(sys.solve(&Matrix::column_vector(field, v))?.map(|c| hb.combine(&c.vectorize())))
}

fn check_map(h: &ModuleMap, m: &KronModule, n: &KronModule) -> Result<()> {
    if h.is_morphism(m, n) {
        Ok(())
    } else {
        Err(KronError::DimensionMismatch("not a module map between the given modules".into()))
    }
}

/// `h: m → n` between torsion modules as a morphism of the heart.
pub fn module_morphism(h: &ModuleMap, m: &KronModule, n: &KronModule, p: &TorsionPairSpec) -> Result<HeartMorphism> {
    check_map(h, m, n)?;
    let (x, y) = (from_module(m, p)?, from_module(n, p)?);
    let (g1, g0) = lift_to_presentations(h, &projective_presentation(m)?, &projective_presentation(n)?)?;
    let z = ModuleMap::zero(&x.term(-2), &y.term(-2));
    HeartMorphism::new(x, y, vec![z, g1, g0])
}

/// `h[1]: m[1] → n[1]` between torsionfree modules as a morphism of the heart.
pub fn shifted_morphism(h: &ModuleMap, m: &KronModule, n: &KronModule, p: &TorsionPairSpec) -> Result<HeartMorphism> {
    check_map(h, m, n)?;
    let (x, y) = (from_shifted_module(m, p)?, from_shifted_module(n, p)?);
    let (g1, g0) = lift_to_presentations(h, &projective_presentation(m)?, &projective_presentation(n)?)?;
    // the shift negates differentials, not chain map components
    let z = ModuleMap::zero(&x.term(0), &y.term(0));
    HeartMorphism::new(x, y, vec![g1, g0, z])
}

/// The mapping cone: degree `n` holds `x^{n+1} ⊕ y^n` with differential
/// `(a, b) ↦ (−d a, f a + d b)`.
pub fn cone(f: &HeartMorphism) -> Result<Complex> {
    let (x, y) = (&f.source.complex, &f.target.complex);
    let field = x.field();
    let g = |n: i32| {
        if (-2..=0).contains(&n) {
            f.maps[(n + 2) as usize].clone()
        } else {
            ModuleMap::zero(&x.term(n), &y.term(n))
        }
    };
    let minus = field.from_i64(-1);
    let terms = (-3..=0)
        .map(|n| direct_sum(field, &[x.term(n + 1), y.term(n)]))
        .collect::<Result<Vec<_>>>()?;
    let diffs = (-3..0)
        .map(|n| {
            let zero = ModuleMap::zero(&y.term(n), &x.term(n + 2));
            block_map(field, &x.diff(n + 1).scale(&minus), &zero, &g(n + 1), &y.diff(n))
        })
        .collect();
    Complex::new(field, -3, terms, diffs)
}

/// The kernel in the heart with its inclusion. With `Z` the cone of `f`, the
/// kernel is the subcomplex of `Z` carrying `H⁻²(Z)` and the torsion part of
/// `H⁻¹(Z)`, shifted down by one and mapped to the source by projection.
pub fn kernel(f: &HeartMorphism) -> Result<(HeartObject, HeartMorphism)> {
    let field = f.source.field();
    let pair = f.source.pair.clone();
    let z = cone(f)?;
    let h = z.cohomology(-1)?;
    let rad = torsion_radical(&h.module, &pair)?;
    // preimage of the torsion part inside the cycles, in cycle coordinates
    let pre = |sec: &Matrix, t: &Matrix, b: &Matrix| Matrix::hstack(field, sec.rows(), &[&sec.mul(t), b]).column_echelon();
    let w1 = h.cycles.0.mul(&pre(&h.section.0, &rad.sub.0, &h.boundaries.0));
    let w2 = h.cycles.1.mul(&pre(&h.section.1, &rad.sub.1, &h.boundaries.1));
    let top = z.term(-1).restrict(&w1, &w2)?;
    let d = z.diff(-2);
    let d_top = ModuleMap::new(solve_columns(&w1, &d.f1)?, solve_columns(&w2, &d.f2)?);
    let minus = field.from_i64(-1);
    let sub = Complex::new(
        field,
        -2,
        vec![z.term(-3), z.term(-2), top],
        vec![z.diff(-3).scale(&minus), d_top.scale(&minus)],
    )?;
    let k = HeartObject { pair, complex: sub };
    let (x, y) = (&f.source.complex, &f.target.complex);
    let maps = vec![
        projection(field, &x.term(-2), &y.term(-3), false),
        projection(field, &x.term(-1), &y.term(-2), false),
        projection(field, &x.term(0), &y.term(-1), false).compose(&ModuleMap::new(w1, w2)),
    ];
    let inc = HeartMorphism::new(k.clone(), f.source.clone(), maps)?;
    Ok((k, inc))
}

/// The cokernel in the heart with its projection. The object has the
/// torsionfree quotient of `H⁻¹(Z)` in degree −1 and `H⁰(Z)` in degree 0;
/// the projection factors through `Z` by a chain map inducing the quotient
/// map and the identity on cohomology.
pub fn cokernel(f: &HeartMorphism) -> Result<(HeartObject, HeartMorphism)> {
    let field = f.source.field();
    let pair = f.source.pair.clone();
    let z = cone(f)?;
    let (hm, h0) = (z.cohomology(-1)?, z.cohomology(0)?);
    let rad = torsion_radical(&hm.module, &pair)?;
    let free = rad.quotient.clone();
    let tors = h0.module.clone();
    let (a, b) = (from_shifted_module(&free, &pair)?, from_module(&tors, &pair)?);
    let c = a.direct_sum(&b)?;
    let hc = c.cohomology()?;
    let theta_free = presentation_iso(&free, &hc.hminus, &injection(field, &a.term(-1), &b.term(-1), false))?;
    let theta_tors = presentation_iso(&tors, &hc.hzero, &injection(field, &a.term(0), &b.term(0), true))?;
    let want_minus = theta_free.compose(&rad.projection);
    let padded = c.complex.pad(-3, 0)?;
    let space = ChainSpace::new(&z, &padded)?;
    let phi = space
        .realize(&[(-1, want_minus), (0, theta_tors)])?
        .ok_or_else(|| invariant("no chain map realizes the cokernel projection"))?;
    let (x, y) = (&f.source.complex, &f.target.complex);
    // φ is indexed from degree −3; compose with y → Z, y ↦ (0, y)
    let maps = (-2..=0)
        .map(|n| phi[(n + 3) as usize].compose(&injection(field, &x.term(n + 1), &y.term(n), true)))
        .collect();
    let proj = HeartMorphism::new(f.target.clone(), c.clone(), maps)?;
    Ok((c, proj))
}

pub fn is_mono(f: &HeartMorphism) -> Result<bool> {
    kernel(f)?.0.is_zero()
}

pub fn is_epi(f: &HeartMorphism) -> Result<bool> {
    cokernel(f)?.0.is_zero()
}

/// Mono and epi verdicts for `h` (or `h[1]` when `shifted`) computed from
/// `Ker h` and `Coker h` in the module category: `h[1]` is mono iff `Ker h = 0`
/// and `Coker h` is torsionfree, and epi iff `Coker h` is torsion; `h` is mono
/// iff `Ker h` is torsionfree, and epi iff `Coker h = 0` and `Ker h` is torsion.
pub fn module_level_mono_epi(
    h: &ModuleMap,
    m: &KronModule,
    n: &KronModule,
    shifted: bool,
    p: &TorsionPairSpec,
) -> Result<(bool, bool)> {
    check_map(h, m, n)?;
    let k = h.kernel();
    let ker = m.restrict(&k.0, &k.1)?;
    let im = h.image();
    let coker = quotient(n, (&im.0, &im.1))?.module;
    if shifted {
        Ok((ker.is_zero() && is_torsionfree(&coker, p)?, is_torsion(&coker, p)?))
    } else {
        Ok((is_torsionfree(&ker, p)?, coker.is_zero() && is_torsion(&ker, p)?))
    }
}

/// The canonical sequence `0 → H⁻¹(x)[1] → x → H⁰(x) → 0` of the heart's
/// torsion pair, as the two witness morphisms.
pub fn canonical_sequence(x: &HeartObject) -> Result<(HeartMorphism, HeartMorphism)> {
    let field = x.field();
    let h = x.cohomology()?;
    let (fm, tm) = (h.hminus.module.clone(), h.hzero.module.clone());
    let (a, b) = (from_shifted_module(&fm, &x.pair)?, from_module(&tm, &x.pair)?);
    let ha = a.complex.cohomology(-1)?;
    let theta = presentation_iso(&fm, &ha, &ModuleMap::identity(&a.term(-1)))?;
    let inv = |g: &ModuleMap| -> Result<ModuleMap> {
        let i1 = g.f1.inverse().ok_or_else(|| invariant("cohomology identification is singular"))?;
        let i2 = g.f2.inverse().ok_or_else(|| invariant("cohomology identification is singular"))?;
        Ok(ModuleMap::new(i1, i2))
    };
    let s = ChainSpace::new(&a.complex, &x.complex)?
        .realize(&[(-1, inv(&theta)?)])?
        .ok_or_else(|| invariant("no chain map realizes H⁻¹"))?;
    let hb = b.complex.cohomology(0)?;
    let theta0 = presentation_iso(&tm, &hb, &ModuleMap::identity(&b.term(0)))?;
    let p = ChainSpace::new(&x.complex, &b.complex)?
        .realize(&[(0, theta0)])?
        .ok_or_else(|| invariant("no chain map realizes H⁰"))?;
    let _ = field;
    Ok((HeartMorphism::new(a, x.clone(), s)?, HeartMorphism::new(x.clone(), b, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{ext_dim, hom_dim};
    use crate::kronrep::{module_from_descriptors, ClosedPoint};
    use crate::pencil::{decompose, descriptors_from_strs};
    use crate::torsion::SubsetSpec;

    const F2: FieldSpec = FieldSpec::PrimeField(2);
    const Q: FieldSpec = FieldSpec::Rationals;

    fn module(f: FieldSpec, names: &[&str]) -> KronModule {
        module_from_descriptors(f, &descriptors_from_strs(f, names).unwrap()).unwrap()
    }

    fn summands(m: &KronModule) -> Vec<String> {
        decompose(m).unwrap().summands.iter().map(|d| d.to_string()).collect()
    }

    fn cu(f: FieldSpec, s: &str) -> TorsionPairSpec {
        TorsionPairSpec::parse(f, s).unwrap()
    }

    #[test]
    fn presentation_of_q1() {
        let q1 = module(Q, &["Q1"]);
        let p = projective_presentation(&q1).unwrap();
        assert_eq!(summands(&p.relations), ["P1", "P1"]);
        assert_eq!(summands(&p.generators), ["P2"]);
        let x = from_module(&q1, &cu(Q, "CU:empty")).unwrap();
        let h = x.cohomology().unwrap();
        assert!(h.hminus.module.is_zero());
        assert_eq!(summands(&h.hzero.module), ["Q1"]);
    }

    #[test]
    fn shifted_objects() {
        let empty = cu(F2, "CU:empty");
        let s = module(F2, &["R[t,1]"]);
        let x = from_shifted_module(&s, &empty).unwrap();
        let h = x.cohomology().unwrap();
        assert_eq!(summands(&h.hminus.module), ["R[t,1]"]);
        assert!(h.hzero.module.is_zero());
        let p3 = from_shifted_module(&module(F2, &["P3"]), &empty).unwrap();
        assert_eq!(summands(&p3.cohomology().unwrap().hminus.module), ["P3"]);
        assert_eq!(
            from_shifted_module(&module(F2, &["Q1"]), &empty),
            Err(KronError::NotTorsionfree("CU:empty".into()))
        );
        assert!(HeartObject::new(empty.clone(), x.complex.clone()).is_ok());
    }

    #[test]
    fn from_module_regular_simple() {
        let x = ClosedPoint::rational(F2, 0);
        let pair = TorsionPairSpec::CU(SubsetSpec::finite([x]));
        let s = module(F2, &["R[t,1]"]);
        let obj = from_module(&s, &pair).unwrap();
        assert_eq!(summands(&obj.term(-1)), ["P1"]);
        assert_eq!(summands(&obj.term(0)), ["P2"]);
        assert_eq!(summands(&obj.cohomology().unwrap().hzero.module), ["R[t,1]"]);
        assert!(from_module(&KronModule::zero(F2), &pair).unwrap().is_zero().unwrap());
    }

    #[test]
    fn hom_space_matches_split_formula() {
        for pair in ["CU:empty", "CU:{t}", "cogenQ1", "cogenP1"] {
            let p = cu(F2, pair);
            let mods: Vec<KronModule> = ["P1", "P2", "Q1", "Q2", "R[t,1]", "R[inf,1]", "R[t,2]"]
                .iter()
                .map(|n| module(F2, &[n]))
                .collect();
            let mut objs = Vec::new();
            for m in &mods {
                if let Ok(o) = from_module(m, &p) {
                    objs.push((o, KronModule::zero(F2), m.clone()));
                }
                if let Ok(o) = from_shifted_module(m, &p) {
                    objs.push((o, m.clone(), KronModule::zero(F2)));
                }
            }
            for (x, fx, tx) in &objs {
                for (y, fy, ty) in &objs {
                    let expect = hom_dim(fx, fy).unwrap() + hom_dim(tx, ty).unwrap() + ext_dim(tx, fy).unwrap();
                    assert_eq!(hom_space(x, y).unwrap().len(), expect, "{pair}");
                }
            }
        }
    }

    #[test]
    fn identity_is_not_null_homotopic() {
        let p = cu(F2, "CU:empty");
        let x = from_shifted_module(&module(F2, &["R[t,1]"]), &p).unwrap();
        let id = HeartMorphism::identity(&x);
        assert!(!id.is_null_homotopic().unwrap());
        assert!(id.is_chain_map());
        assert!(kernel(&id).unwrap().0.is_zero().unwrap());
        assert!(cokernel(&id).unwrap().0.is_zero().unwrap());
    }

    #[test]
    fn shifted_p1_into_p2() {
        let p = cu(F2, "CU:empty");
        let (p1, p2) = (module(F2, &["P1"]), module(F2, &["P2"]));
        let h = hom_basis(&p1, &p2).unwrap().basis[0].clone();
        let f = shifted_morphism(&h, &p1, &p2, &p).unwrap();
        let (k, _) = kernel(&f).unwrap();
        assert!(k.is_zero().unwrap());
        let (c, proj) = cokernel(&f).unwrap();
        let (cm, cz) = c.cohomology_dims().unwrap();
        assert_eq!((cm, cz), (DimVector::new(1, 1), DimVector::new(0, 0)));
        assert_eq!(summands(&c.cohomology().unwrap().hminus.module).len(), 1);
        assert!(proj.compose(&f).unwrap().is_null_homotopic().unwrap());
        assert_eq!(module_level_mono_epi(&h, &p1, &p2, true, &p).unwrap(), (true, false));
    }

    #[test]
    fn kernel_and_cokernel_witnesses() {
        let pair = cu(F2, "CU:{t}");
        let (s, q1) = (module(F2, &["R[t,1]"]), module(F2, &["Q1"]));
        let h = hom_basis(&s, &q1).unwrap().basis[0].clone();
        let f = module_morphism(&h, &s, &q1, &pair).unwrap();
        let (k, inc) = kernel(&f).unwrap();
        let (c, proj) = cokernel(&f).unwrap();
        assert!(f.compose(&inc).unwrap().is_null_homotopic().unwrap());
        assert!(proj.compose(&f).unwrap().is_null_homotopic().unwrap());
        // Ker h = P1 is torsionfree, so it reappears as H⁻¹ of the cokernel
        assert!(k.is_zero().unwrap());
        let (cm, cz) = c.cohomology_dims().unwrap();
        assert_eq!((cm, cz), (DimVector::new(0, 1), DimVector::new(0, 0)));
        assert_eq!(module_level_mono_epi(&h, &s, &q1, false, &pair).unwrap(), (true, false));
    }

    #[test]
    fn canonical_sequence_of_a_sum() {
        let pair = cu(F2, "CU:{t}");
        let x = from_shifted_module(&module(F2, &["R[inf,1]"]), &pair)
            .unwrap()
            .direct_sum(&from_module(&module(F2, &["R[t,1]", "Q1"]), &pair).unwrap())
            .unwrap();
        let (s, p) = canonical_sequence(&x).unwrap();
        assert!(is_mono(&s).unwrap());
        assert!(is_epi(&p).unwrap());
        assert!(p.compose(&s).unwrap().is_null_homotopic().unwrap());
        let (k, _) = kernel(&p).unwrap();
        assert_eq!(k.cohomology_dims().unwrap(), s.source.cohomology_dims().unwrap());
    }

    #[test]
    fn pair_mismatch() {
        let x = HeartObject::zero(cu(F2, "CU:empty"), F2);
        let y = HeartObject::zero(cu(F2, "CU:all"), F2);
        assert_eq!(hom_space(&x, &y), Err(KronError::PairMismatch));
    }
}
