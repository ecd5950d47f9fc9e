//! Hom spaces, Ext¹ with explicit extension classes, trace submodules, AR translate.

use crate::error::{KronError, Result};
use crate::exactlin::{FieldSpec, Matrix, Scalar};
use crate::kronrep::{euler_form, IndecompDescriptor, KronModule, ModuleMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasis {
    pub source: KronModule,
    pub target: KronModule,
    pub basis: Vec<ModuleMap>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `Σ c_i · basis_i`.
    pub fn combine(&self, coeffs: &[Scalar]) -> ModuleMap {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut acc = ModuleMap::zero(&self.source, &self.target);
        for (c, f) in coeffs.iter().zip(&self.basis) {
            acc = acc.add(&f.scale(c));
        }
        acc
    }
}

fn check_fields(m: &KronModule, n: &KronModule) -> Result<FieldSpec> {
    if m.field() != n.field() {
        return Err(KronError::FieldMismatch);
    }
    Ok(m.field())
}

/// Coefficient matrix of the intertwining system `f2·a = a'·f1`, `f2·b = b'·f1`
/// in the unknowns `(vec f1, vec f2)` (row-major).
fn hom_system(m: &KronModule, n: &KronModule) -> Matrix {
    let field = m.field();
    let (d, e) = (m.dim(), n.dim());
    let unknowns = e.d1 * d.d1 + e.d2 * d.d2;
    let eqs = 2 * e.d2 * d.d1;
    let mut sys = Matrix::zeros(field, eqs, unknowns);
    let f1 = |k: usize, c: usize| k * d.d1 + c;
    let f2 = |r: usize, k: usize| e.d1 * d.d1 + r * d.d2 + k;
    for (block, (x, y)) in [(m.a(), n.a()), (m.b(), n.b())].into_iter().enumerate() {
        for r in 0..e.d2 {
            for c in 0..d.d1 {
                let row = block * e.d2 * d.d1 + r * d.d1 + c;
                for k in 0..d.d2 {
                    let v = &x[(k, c)];
                    if !field.is_zero(v) {
                        sys.set(row, f2(r, k), v.clone());
                    }
                }
                for k in 0..e.d1 {
                    let v = &y[(r, k)];
                    if !field.is_zero(v) {
                        sys.set(row, f1(k, c), field.neg(v));
                    }
                }
            }
        }
    }
    sys
}

/// Echelon-normalized basis of `Hom(m, n)`.
pub fn hom_basis(m: &KronModule, n: &KronModule) -> Result<HomBasis> {
    let field = check_fields(m, n)?;
    let (d, e) = (m.dim(), n.dim());
    let kernel = hom_system(m, n).kernel_basis();
    let split = e.d1 * d.d1;
    let basis = (0..kernel.cols())
        .map(|j| {
            let v = kernel.column(j).vectorize();
            ModuleMap::new(
                Matrix::from_vector(field, e.d1, d.d1, &v[..split]),
                Matrix::from_vector(field, e.d2, d.d2, &v[split..]),
            )
        })
        .collect();
    Ok(HomBasis { source: m.clone(), target: n.clone(), basis })
}

/// `dim Hom(m, n)` by a single rank computation.
pub fn hom_dim(m: &KronModule, n: &KronModule) -> Result<usize> {
    check_fields(m, n)?;
    let sys = hom_system(m, n);
    Ok(sys.cols() - sys.rank())
}

/// `dim Ext¹(m, n) = dim Hom(m, n) − <dim m, dim n>`.
pub fn ext_dim(m: &KronModule, n: &KronModule) -> Result<usize> {
    let h = hom_dim(m, n)? as i64;
    let e = h - euler_form(m.dim(), n.dim());
    usize::try_from(e).map_err(|_| KronError::Invariant(format!("negative Ext dimension {e}")))
}

/// A cocycle `(e_a, e_b)`, both `d2(C) × d1(T)`, in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtClass {
    pub e_a: Matrix,
    pub e_b: Matrix,
}

impl ExtClass {
    pub fn is_zero(&self) -> bool {
        self.e_a.is_zero() && self.e_b.is_zero()
    }
}

/// The extension module of a cocycle together with `C ↪ B ↠ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub middle: KronModule,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

/// `Ext¹(T, C)` as cocycles modulo coboundaries.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub source: KronModule,
    pub target: KronModule,
    pub basis: Vec<ExtClass>,
    /// Reduced row echelon basis of the coboundary image, with pivot columns.
    coboundaries: Matrix,
    pivots: Vec<usize>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn shape(&self) -> (usize, usize) {
        (self.target.dim().d2, self.source.dim().d1)
    }

    fn flatten(&self, e_a: &Matrix, e_b: &Matrix) -> Vec<Scalar> {
        let mut v = e_a.vectorize();
        v.extend(e_b.vectorize());
        v
    }

    fn unflatten(&self, v: &[Scalar]) -> ExtClass {
        let field = self.source.field();
        let (r, c) = self.shape();
        ExtClass {
            e_a: Matrix::from_vector(field, r, c, &v[..r * c]),
            e_b: Matrix::from_vector(field, r, c, &v[r * c..]),
        }
    }

    /// Canonical representative of the class of an arbitrary cocycle.
    pub fn canonical(&self, e_a: &Matrix, e_b: &Matrix) -> ExtClass {
        let field = self.source.field();
        let mut v = self.flatten(e_a, e_b);
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (j, x) in v.iter_mut().enumerate() {
                let r = &self.coboundaries[(i, j)];
                if !field.is_zero(r) {
                    *x = field.sub(x, &field.mul(&c, r));
                }
            }
        }
        self.unflatten(&v)
    }

    /// Coordinates of a class in `basis`.
    pub fn coordinates(&self, class: &ExtClass) -> Vec<Scalar> {
        let canon = self.canonical(&class.e_a, &class.e_b);
        let v = self.flatten(&canon.e_a, &canon.e_b);
        self.free_coords().into_iter().map(|j| v[j].clone()).collect()
    }

    fn free_coords(&self) -> Vec<usize> {
        let (r, c) = self.shape();
        (0..2 * r * c).filter(|j| !self.pivots.contains(j)).collect()
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> ExtClass {
        let field = self.source.field();
        let (r, c) = self.shape();
        let mut v = vec![field.zero(); 2 * r * c];
        for (x, j) in coeffs.iter().zip(self.free_coords()) {
            v[j] = x.clone();
        }
        self.unflatten(&v)
    }

    /// Every class, over a prime field, in odometer order starting from zero.
    pub fn all_classes(&self, limit: usize) -> Result<Vec<ExtClass>> {
        let elems = self.source.field().elements().ok_or(KronError::FieldNotFinite)?;
        let q = elems.len();
        let count = q.checked_pow(self.dim() as u32).filter(|&n| n <= limit);
        let count = count.ok_or(KronError::Overflow(limit))?;
        let mut out = Vec::with_capacity(count);
        for idx in 0..count {
            let mut r = idx;
            let coeffs: Vec<Scalar> = (0..self.dim())
                .map(|_| {
                    let c = elems[r % q].clone();
                    r /= q;
                    c
                })
                .collect();
            out.push(self.combine(&coeffs));
        }
        Ok(out)
    }

    /// `B = [[a_C, e_a], [0, a_T]]`, `[[b_C, e_b], [0, b_T]]` with the canonical maps.
    pub fn middle_term(&self, class: &ExtClass) -> Extension {
        middle_term(&self.source, &self.target, class)
    }
}

/// Extension module of a cocycle of `Ext¹(t, c)`.
pub fn middle_term(t: &KronModule, c: &KronModule, class: &ExtClass) -> Extension {
    let field = t.field();
    let (dt, dc) = (t.dim(), c.dim());
    let n1 = dc.d1 + dt.d1;
    let n2 = dc.d2 + dt.d2;
    let assemble = |xc: &Matrix, e: &Matrix, xt: &Matrix| {
        let mut m = Matrix::zeros(field, n2, n1);
        m.set_block(0, 0, xc);
        m.set_block(0, dc.d1, e);
        m.set_block(dc.d2, dc.d1, xt);
        m
    };
    let middle = KronModule::new(
        field,
        assemble(c.a(), &class.e_a, t.a()),
        assemble(c.b(), &class.e_b, t.b()),
    )
    .expect("block shapes agree");
    let inc = |n: usize, k: usize| Matrix::from_fn(field, n, k, |r, s| if r == s { field.one() } else { field.zero() });
    let proj = |k: usize, n: usize, off: usize| {
        Matrix::from_fn(field, k, n, |r, s| if s == r + off { field.one() } else { field.zero() })
    };
    Extension {
        middle,
        inclusion: ModuleMap::new(inc(n1, dc.d1), inc(n2, dc.d2)),
        projection: ModuleMap::new(proj(dt.d1, n1, dc.d1), proj(dt.d2, n2, dc.d2)),
    }
}

/// `Ext¹(t, c)` presented as the cokernel of the coboundary map
/// `(f1, f2) ↦ (a_c·f1 − f2·a_t, b_c·f1 − f2·b_t)`.
pub fn ext_class_space(t: &KronModule, c: &KronModule) -> Result<ExtSpace> {
    let field = check_fields(t, c)?;
    let (dt, dc) = (t.dim(), c.dim());
    let (r, k) = (dc.d2, dt.d1);
    let cocycle_len = 2 * r * k;
    // One row per domain unit vector: f1 entries (dc.d1 × dt.d1), then f2 entries (dc.d2 × dt.d2).
    let n_f1 = dc.d1 * dt.d1;
    let n_f2 = dc.d2 * dt.d2;
    let mut rows = Matrix::zeros(field, n_f1 + n_f2, cocycle_len);
    for p in 0..dc.d1 {
        for q in 0..dt.d1 {
            // f1 = E_{pq}: a_c·E_{pq} has column q equal to column p of a_c
            let row = p * dt.d1 + q;
            for (blk, x) in [c.a(), c.b()].into_iter().enumerate() {
                for i in 0..r {
                    let v = &x[(i, p)];
                    if !field.is_zero(v) {
                        rows.set(row, blk * r * k + i * k + q, v.clone());
                    }
                }
            }
        }
    }
    for p in 0..dc.d2 {
        for q in 0..dt.d2 {
            // f2 = E_{pq}: −E_{pq}·a_t has row p equal to −(row q of a_t)
            let row = n_f1 + p * dt.d2 + q;
            for (blk, x) in [t.a(), t.b()].into_iter().enumerate() {
                for j in 0..k {
                    let v = &x[(q, j)];
                    if !field.is_zero(v) {
                        rows.set(row, blk * r * k + p * k + j, field.neg(v));
                    }
                }
            }
        }
    }
    let (reduced, pivots) = rows.rref();
    let coboundaries = reduced.block(0, 0, pivots.len(), cocycle_len);
    let mut space = ExtSpace {
        source: t.clone(),
        target: c.clone(),
        basis: Vec::new(),
        coboundaries,
        pivots,
    };
    space.basis = space
        .free_coords()
        .into_iter()
        .map(|j| {
            let mut v = vec![field.zero(); cocycle_len];
            v[j] = field.one();
            space.unflatten(&v)
        })
        .collect();
    Ok(space)
}

/// Smallest subrepresentation of `m` containing the images of all maps from the generators.
pub fn trace_submodule(gens: &[KronModule], m: &KronModule) -> Result<(Matrix, Matrix)> {
    let field = m.field();
    let d = m.dim();
    let mut cols1 = Matrix::zeros(field, d.d1, 0);
    let mut cols2 = Matrix::zeros(field, d.d2, 0);
    for g in gens {
        for f in hom_basis(g, m)?.basis {
            cols1 = Matrix::hstack(field, d.d1, &[&cols1, &f.f1]);
            cols2 = Matrix::hstack(field, d.d2, &[&cols2, &f.f2]);
        }
    }
    Ok((cols1.column_echelon(), cols2.column_echelon()))
}

/// Auslander–Reiten translate on descriptors.
pub fn ar_translate(d: &IndecompDescriptor) -> Option<IndecompDescriptor> {
    match d {
        IndecompDescriptor::Preinj(i) => Some(IndecompDescriptor::Preinj(i + 2)),
        IndecompDescriptor::Preproj(i) if *i >= 3 => Some(IndecompDescriptor::Preproj(i - 2)),
        IndecompDescriptor::Preproj(_) => None,
        IndecompDescriptor::Regular(..) => Some(d.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronrep::{make_indecomposable, module_from_descriptors, DimVector};

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::PrimeField(2);

    fn ind(f: FieldSpec, s: &str) -> KronModule {
        make_indecomposable(&IndecompDescriptor::parse(f, s).unwrap(), f).unwrap()
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_basis(&ind(Q, "P1"), &ind(Q, "P2")).unwrap().dim(), 2);
        assert_eq!(hom_basis(&ind(Q, "Q2"), &ind(Q, "Q1")).unwrap().dim(), 2);
        assert!(hom_basis(&ind(Q, "P1"), &ind(Q, "Q1")).unwrap().is_empty());
        let hb = hom_basis(&ind(F2, "R[t^2+t+1,2]"), &ind(F2, "R[t^2+t+1,2]")).unwrap();
        assert_eq!(hb.dim(), 4);
        for f in &hb.basis {
            assert!(f.is_morphism(&hb.source, &hb.target));
        }
        assert_eq!(hom_basis(&ind(Q, "P1"), &ind(F2, "P1")), Err(KronError::FieldMismatch));
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext_dim(&ind(Q, "P1"), &ind(Q, "P1")).unwrap(), 0);
        assert_eq!(ext_dim(&ind(Q, "Q1"), &ind(Q, "P1")).unwrap(), 2);
        assert_eq!(ext_dim(&ind(F2, "R[t,1]"), &ind(F2, "R[t,1]")).unwrap(), 1);
        let sp = ext_class_space(&ind(F2, "P2"), &ind(F2, "R[t,3]")).unwrap();
        assert_eq!(sp.dim(), 0);
    }

    #[test]
    fn extensions_of_q1_by_p1_are_regular_simples() {
        let (q1, p1) = (ind(F2, "Q1"), ind(F2, "P1"));
        let sp = ext_class_space(&q1, &p1).unwrap();
        assert_eq!(sp.dim(), 2);
        for class in sp.all_classes(100).unwrap() {
            let ext = sp.middle_term(&class);
            assert_eq!(ext.middle.dim(), DimVector::new(1, 1));
            assert!(ext.inclusion.is_morphism(&p1, &ext.middle));
            assert!(ext.projection.is_morphism(&ext.middle, &q1));
            assert!(ext.projection.compose(&ext.inclusion).is_zero());
            let nonzero = !(ext.middle.a().is_zero() && ext.middle.b().is_zero());
            assert_eq!(nonzero, !class.is_zero());
        }
        let split = sp.middle_term(&sp.combine(&[F2.zero(), F2.zero()]));
        assert_eq!(split.middle, module_from_descriptors(F2, &[IndecompDescriptor::Preproj(1), IndecompDescriptor::Preinj(1)]).unwrap());
    }

    #[test]
    fn canonical_representatives_absorb_coboundaries() {
        let (t, c) = (ind(Q, "R[t-1,2]"), ind(Q, "R[t-1,1]"));
        let sp = ext_class_space(&t, &c).unwrap();
        assert_eq!(sp.dim(), ext_dim(&t, &c).unwrap());
        let f1 = Matrix::from_i64(Q, &[&[2, -1]]);
        let f2 = Matrix::from_i64(Q, &[&[1, 5]]);
        let cob_a = c.a().mul(&f1).sub(&f2.mul(t.a()));
        let cob_b = c.b().mul(&f1).sub(&f2.mul(t.b()));
        let base = &sp.basis[0];
        let moved = sp.canonical(&base.e_a.add(&cob_a), &base.e_b.add(&cob_b));
        assert_eq!(&moved, base);
        assert!(sp.canonical(&cob_a, &cob_b).is_zero());
    }

    #[test]
    fn traces() {
        let m = module_from_descriptors(Q, &[IndecompDescriptor::Preproj(2), IndecompDescriptor::Preinj(2)]).unwrap();
        let (u1, u2) = trace_submodule(&[ind(Q, "P1")], &m).unwrap();
        assert_eq!((u1.cols(), u2.cols()), (0, m.dim().d2));
        let (u1, u2) = trace_submodule(std::slice::from_ref(&m), &m).unwrap();
        assert_eq!((u1.cols(), u2.cols()), (m.dim().d1, m.dim().d2));
        let (u1, u2) = trace_submodule(&[ind(Q, "Q1")], &ind(Q, "P2")).unwrap();
        assert_eq!((u1.cols(), u2.cols()), (0, 0));
    }

    #[test]
    fn translate() {
        let f = F2;
        let r = IndecompDescriptor::parse(f, "R[t,3]").unwrap();
        assert_eq!(ar_translate(&r), Some(r));
        assert_eq!(ar_translate(&IndecompDescriptor::Preproj(1)), None);
        assert_eq!(ar_translate(&IndecompDescriptor::Preproj(2)), None);
        assert_eq!(ar_translate(&IndecompDescriptor::Preproj(5)), Some(IndecompDescriptor::Preproj(3)));
        assert_eq!(ar_translate(&IndecompDescriptor::Preinj(1)), Some(IndecompDescriptor::Preinj(3)));
        // AR formula: Ext¹(X, τX) ≅ D End(τX)
        let q1 = ind(Q, "Q1");
        let q3 = ind(Q, "Q3");
        assert_eq!(ext_dim(&q1, &q3).unwrap(), hom_dim(&q3, &q3).unwrap());
    }
}
