//! Kronecker canonical form: splitting a module into canonical indecomposables.
//!
//! Preinjective blocks are found as minimal-degree polynomial kernel vectors
//! of the pencil, preprojective blocks by the same search on the transposed
//! pencil, and the remaining square regular pencil is split into its finite
//! and infinite parts with Wong sequences and then into primary cyclic blocks.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{KronError, Result};
use crate::exactlin::{charpoly, factor, FieldSpec, Matrix, Polynomial, Scalar};
use crate::homalg::hom_basis;
use crate::kronrep::{jordan_companion, random_scalar, make_indecomposable, module_from_descriptors, ClosedPoint, IndecompDescriptor, KronModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<IndecompDescriptor>,
    pub s1: Matrix,
    pub s2: Matrix,
}

impl Decomposition {
    /// Checks that conjugating `m` by `(s1, s2)` gives exactly the block-diagonal canonical module.
    pub fn verify(&self, m: &KronModule) -> bool {
        let Ok(conj) = m.conjugate(&self.s1, &self.s2) else {
            return false;
        };
        match module_from_descriptors(m.field(), &self.summands) {
            Ok(canon) => canon == conj,
            Err(_) => false,
        }
    }
}

/// A located summand: `a·x = y·A`, `b·x = y·B` for the canonical `(A, B)` of `desc`.
struct Piece {
    desc: IndecompDescriptor,
    x: Matrix,
    y: Matrix,
}

fn invariant(msg: &str) -> KronError {
    KronError::Invariant(msg.to_string())
}

/// Block-Toeplitz matrix whose kernel is `Hom(Q_{k+1}, m)` written as
/// `(v_0, …, v_k)` with `a·v_0 = 0`, `b·v_j + a·v_{j+1} = 0`, `b·v_k = 0`.
fn toeplitz(m: &KronModule, k: usize) -> Matrix {
    let field = m.field();
    let d = m.dim();
    let mut t = Matrix::zeros(field, (k + 2) * d.d2, (k + 1) * d.d1);
    for j in 0..=k {
        t.set_block(j * d.d2, j * d.d1, m.a());
        t.set_block((j + 1) * d.d2, j * d.d1, m.b());
    }
    t
}

/// Splits off preinjective summands. Returns pieces in the coordinates of `m`
/// and bases of a complementary submodule.
fn extract_preinj(m: &KronModule) -> Result<(Vec<Piece>, Matrix, Matrix)> {
    let field = m.field();
    let d = m.dim();
    let mut cur = m.clone();
    let mut b1 = Matrix::identity(field, d.d1);
    let mut b2 = Matrix::identity(field, d.d2);
    let mut pieces = Vec::new();
    let mut remaining = preinj_total(m);
    let mut k = 0;
    while remaining != Some(0) {
        let c = cur.dim();
        let mut found = None;
        while k < c.d1 {
            let ker = toeplitz(&cur, k).kernel_basis();
            if ker.cols() > 0 {
                found = Some(ker.column(0));
                break;
            }
            k += 1;
        }
        let Some(v) = found else { break };
        let i = k + 1;
        let u = Matrix::from_fn(field, c.d1, i, |r, j| {
            let x = v[((k - j) * c.d1 + r, 0)].clone();
            if j % 2 == 0 {
                x
            } else {
                field.neg(&x)
            }
        });
        let w = cur.a().mul(&u).columns(0, k);
        if u.rank() != i || w.rank() != k {
            return Err(invariant("minimal kernel vector does not give an embedding"));
        }
        let q = make_indecomposable(&IndecompDescriptor::Preinj(i), field)?;
        // retraction r: cur → Q_i with r ∘ (u, w) = id
        let hb = hom_basis(&cur, &q)?;
        let mut sys = Matrix::zeros(field, i * i + k * k, hb.dim());
        for (l, r) in hb.basis.iter().enumerate() {
            let mut col = r.f1.mul(&u).vectorize();
            col.extend(r.f2.mul(&w).vectorize());
            for (row, x) in col.into_iter().enumerate() {
                sys.set(row, l, x);
            }
        }
        let mut rhs = Matrix::identity(field, i).vectorize();
        rhs.extend(Matrix::identity(field, k).vectorize());
        let coeffs = sys
            .solve(&Matrix::column_vector(field, rhs))?
            .ok_or_else(|| invariant("preinjective block is not split"))?;
        let r = hb.combine(&coeffs.vectorize());
        let (k1, k2) = (r.f1.kernel_basis(), r.f2.kernel_basis());
        pieces.push(Piece { desc: IndecompDescriptor::Preinj(i), x: b1.mul(&u), y: b2.mul(&w) });
        cur = cur.restrict(&k1, &k2)?;
        b1 = b1.mul(&k1);
        b2 = b2.mul(&k2);
        remaining = remaining.map(|n| n - 1);
    }
    Ok((pieces, b1, b2))
}

/// Splits off preprojective summands by transposing (the transpose of the
/// canonical `P_i` is the canonical `Q_i`).
fn extract_preproj(m: &KronModule) -> Result<(Vec<Piece>, Matrix, Matrix)> {
    let field = m.field();
    let (tp, r1, r2) = extract_preinj(&m.transpose())?;
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for p in &tp {
        s1.push(&p.x);
        s2.push(&p.y);
    }
    s1.push(&r1);
    s2.push(&r2);
    let d = m.dim();
    let big1 = Matrix::hstack(field, d.d2, &s1);
    let big2 = Matrix::hstack(field, d.d1, &s2);
    let xn = big2.inverse().ok_or_else(|| invariant("transposed split is not a basis"))?.transpose();
    let yn = big1.inverse().ok_or_else(|| invariant("transposed split is not a basis"))?.transpose();
    let mut pieces = Vec::new();
    let (mut c1, mut c2) = (0, 0);
    for p in &tp {
        let i = match p.desc {
            IndecompDescriptor::Preinj(i) => i,
            _ => unreachable!(),
        };
        pieces.push(Piece {
            desc: IndecompDescriptor::Preproj(i),
            x: xn.columns(c1, i - 1),
            y: yn.columns(c2, i),
        });
        c1 += i - 1;
        c2 += i;
    }
    Ok((pieces, xn.columns(c1, d.d1 - c1), yn.columns(c2, d.d2 - c2)))
}

/// Stable limit of `W ↦ f⁻¹(g·W)` from `start`.
fn wong_limit(f: &Matrix, g: &Matrix, start: Matrix) -> Matrix {
    let mut w = start;
    loop {
        let next = f.preimage(&g.mul(&w));
        if next.cols() == w.cols() {
            return next;
        }
        w = next;
    }
}

/// Cyclic decomposition of the `f`-primary part of `t`: each entry is `(n, p)`
/// with `t·p = p·jordan_companion(f, n)`.
fn primary_blocks(t: &Matrix, f: &Polynomial, mult: usize) -> Result<Vec<(usize, Matrix)>> {
    let field = t.field();
    let n = t.rows();
    let d = f.deg();
    let g = f.eval_matrix(t);
    let mut kernels = vec![Matrix::zeros(field, n, 0)];
    let mut gp = Matrix::identity(field, n);
    while kernels.last().map_or(0, |k| k.cols()) < d * mult {
        gp = gp.mul(&g);
        let k = gp.kernel_basis();
        if k.cols() == kernels.last().map_or(0, |k| k.cols()) {
            return Err(invariant("primary component smaller than the multiplicity"));
        }
        kernels.push(k);
    }
    let top = kernels.len() - 1;
    let krylov = |v: &Matrix, len: usize| {
        let mut cols = Vec::with_capacity(len);
        let mut cur = v.clone();
        for _ in 0..len {
            cols.push(cur.clone());
            cur = t.mul(&cur);
        }
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(field, n, &refs)
    };
    let mut chosen: Vec<(usize, Matrix)> = Vec::new();
    for j in (1..=top).rev() {
        let mut span = kernels[j - 1].clone();
        for (l, w) in &chosen {
            let shifted = g.pow(l - j).mul(w);
            span = Matrix::hstack(field, n, &[&span, &krylov(&shifted, j * d)]);
        }
        let mut rank = span.rank();
        let kj = &kernels[j];
        for c in 0..kj.cols() {
            if rank == kj.cols() {
                break;
            }
            let v = kj.column(c);
            let trial = Matrix::hstack(field, n, &[&span, &v]);
            if trial.rank() > rank {
                span = Matrix::hstack(field, n, &[&span, &krylov(&v, j * d)]);
                rank = span.rank();
                chosen.push((j, v));
            }
        }
    }
    let mut out = Vec::new();
    for (len, w) in chosen {
        let size = len * d;
        let jc = jordan_companion(f, len);
        let mut e = Matrix::zeros(field, size, 1);
        e.set((len - 1) * d, 0, field.one());
        let kw = krylov(&w, size);
        let ke = {
            let mut cols = Vec::with_capacity(size);
            let mut cur = e;
            for _ in 0..size {
                cols.push(cur.clone());
                cur = jc.mul(&cur);
            }
            let refs: Vec<&Matrix> = cols.iter().collect();
            Matrix::hstack(field, size, &refs)
        };
        let ke_inv = ke.inverse().ok_or_else(|| invariant("canonical block is not cyclic"))?;
        out.push((len, kw.mul(&ke_inv)));
    }
    Ok(out)
}

fn split_regular(m: &KronModule) -> Result<Vec<Piece>> {
    let field = m.field();
    let c = m.dim();
    if c.d1 != c.d2 {
        return Err(invariant("regular part is not square"));
    }
    let n = c.d1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let (a, b) = (m.a(), m.b());
    let xf = wong_limit(a, b, Matrix::identity(field, n));
    let xi = wong_limit(b, a, b.kernel_basis());
    if xf.cols() + xi.cols() != n {
        return Err(invariant("finite and infinite parts do not fill the regular part"));
    }
    let mut pieces = Vec::new();
    if xf.cols() > 0 {
        let yf = b.mul(&xf);
        let t = yf.solve(&a.mul(&xf))?.ok_or_else(|| invariant("finite part not invariant"))?;
        for (f, mult) in factor(&charpoly(&t))? {
            for (len, p) in primary_blocks(&t, &f, mult)? {
                pieces.push(Piece {
                    desc: IndecompDescriptor::Regular(ClosedPoint::Finite(f.clone()), len),
                    x: xf.mul(&p),
                    y: yf.mul(&p),
                });
            }
        }
    }
    if xi.cols() > 0 {
        let yi = a.mul(&xi);
        let nil = yi.solve(&b.mul(&xi))?.ok_or_else(|| invariant("infinite part not invariant"))?;
        let t = Polynomial::monomial(field, 1);
        for (len, p) in primary_blocks(&nil, &t, xi.cols())? {
            pieces.push(Piece {
                desc: IndecompDescriptor::Regular(ClosedPoint::Infinity, len),
                x: xi.mul(&p),
                y: yi.mul(&p),
            });
        }
    }
    Ok(pieces)
}

fn transport(pieces: Vec<Piece>, b1: &Matrix, b2: &Matrix) -> Vec<Piece> {
    pieces.into_iter().map(|p| Piece { desc: p.desc, x: b1.mul(&p.x), y: b2.mul(&p.y) }).collect()
}

/// Decomposes `m` into canonical indecomposables with explicit base change.
pub fn decompose(m: &KronModule) -> Result<Decomposition> {
    let field = m.field();
    let d = m.dim();
    let mut all = Vec::new();
    let (qs, k1, k2) = extract_preinj(m)?;
    all.extend(qs);
    let rest = m.restrict(&k1, &k2)?;
    let (ps, r1, r2) = extract_preproj(&rest)?;
    all.extend(transport(ps, &k1, &k2));
    let reg = rest.restrict(&r1, &r2)?;
    let (g1, g2) = (k1.mul(&r1), k2.mul(&r2));
    all.extend(transport(split_regular(&reg)?, &g1, &g2));
    all.sort_by(|p, q| p.desc.cmp(&q.desc));
    let xs: Vec<&Matrix> = all.iter().map(|p| &p.x).collect();
    let ys: Vec<&Matrix> = all.iter().map(|p| &p.y).collect();
    let s1 = Matrix::hstack(field, d.d1, &xs)
        .inverse()
        .ok_or_else(|| invariant("summand bases do not form a basis at the source"))?;
    let s2 = Matrix::hstack(field, d.d2, &ys)
        .inverse()
        .ok_or_else(|| invariant("summand bases do not form a basis at the sink"))?;
    Ok(Decomposition { summands: all.into_iter().map(|p| p.desc).collect(), s1, s2 })
}

/// Closed points carrying a regular summand.
pub fn regular_support(m: &KronModule) -> Result<BTreeSet<ClosedPoint>> {
    Ok(decompose(m)?
        .summands
        .into_iter()
        .filter_map(|d| match d {
            IndecompDescriptor::Regular(x, _) => Some(x),
            _ => None,
        })
        .collect())
}

/// Multiplicities of `Q_1, Q_2, …` from second differences of `dim Hom(Q_{k+1}, m)`.
fn preinj_counts(m: &KronModule) -> Vec<usize> {
    let d1 = m.dim().d1;
    let total = preinj_total(m);
    let mut h: Vec<i64> = Vec::new();
    let mut counts = Vec::new();
    for k in 0..d1 {
        if total == Some(counts.iter().sum()) {
            counts.resize(d1, 0);
            break;
        }
        let t = toeplitz(m, k);
        h.push((t.cols() - t.rank()) as i64);
        let at = |j: usize| if j <= k { h[k - j] } else { 0 };
        counts.push((at(0) - 2 * at(1) + at(2)) as usize);
    }
    counts
}

/// The number of preinjective summands, `d1` minus the rank of `a − λ·b` for
/// generic `λ`. The generic rank is attained at some of any `d1 + 1` distinct
/// values, so this needs a field with more than `d1` elements.
fn preinj_total(m: &KronModule) -> Option<usize> {
    let field = m.field();
    let d1 = m.dim().d1;
    if matches!(field, FieldSpec::PrimeField(p) if (p as usize) <= d1) {
        return None;
    }
    let rank = (0..=d1 as i64)
        .map(|l| m.a().sub(&m.b().scale(&field.from_i64(l))).rank())
        .max()
        .unwrap_or(0);
    Some(d1 - rank)
}

/// Product of the nonzero diagonal entries after unimodular diagonalization
/// of the polynomial matrix `a − t·b`.
fn pencil_determinant(m: &KronModule) -> Polynomial {
    let field = m.field();
    let d = m.dim();
    let (rows, cols) = (d.d2, d.d1);
    let mut p: Vec<Vec<Polynomial>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| Polynomial::new(field, vec![m.a()[(i, j)].clone(), field.neg(&m.b()[(i, j)])]))
                .collect()
        })
        .collect();
    let mut det = Polynomial::one(field);
    let mut r = 0;
    while r < rows.min(cols) {
        loop {
            let best = (r..rows)
                .flat_map(|i| (r..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !p[i][j].is_zero())
                .min_by_key(|&(i, j)| p[i][j].deg());
            let Some((bi, bj)) = best else {
                return det;
            };
            p.swap(r, bi);
            for row in p.iter_mut() {
                row.swap(r, bj);
            }
            let mut clean = true;
            for i in r + 1..rows {
                if p[i][r].is_zero() {
                    continue;
                }
                let (q, rem) = p[i][r].divrem(&p[r][r]);
                for j in r..cols {
                    let v = p[i][j].sub(&q.mul(&p[r][j]));
                    p[i][j] = v;
                }
                clean &= rem.is_zero();
            }
            for j in r + 1..cols {
                if p[r][j].is_zero() {
                    continue;
                }
                let (q, rem) = p[r][j].divrem(&p[r][r]);
                for i in r..rows {
                    let v = p[i][j].sub(&q.mul(&p[i][r]));
                    p[i][j] = v;
                }
                clean &= rem.is_zero();
            }
            if clean {
                break;
            }
        }
        det = det.mul(&p[r][r]);
        r += 1;
    }
    det
}

/// Over an infinite field: the finite part of the regular determinant as the
/// gcd of `det(U·(a − t·b)·V)` over random compressions to the generic rank,
/// each recovered by interpolation. Each compression is a multiple of the
/// regular determinant as a binary form, so the gcd is exact once its finite
/// degree plus its multiplicity at infinity comes down to `reg_dim`.
fn compressed_determinant(m: &KronModule, rank: usize, reg_dim: usize) -> Result<Polynomial> {
    let field = m.field();
    let d = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pts: Vec<Scalar> = (0..=rank as i64).map(|i| field.from_i64(i)).collect();
    let mut finite: Option<Polynomial> = None;
    let mut inf = usize::MAX;
    for _ in 0..64 {
        let u = Matrix::from_fn(field, rank, d.d2, |_, _| random_scalar(field, &mut rng));
        let v = Matrix::from_fn(field, d.d1, rank, |_, _| random_scalar(field, &mut rng));
        let c = u.mul(m.a()).mul(&v);
        let e = u.mul(m.b()).mul(&v);
        let vals = pts.iter().map(|x| c.sub(&e.scale(x)).det()).collect::<Result<Vec<_>>>()?;
        let g = interpolate(field, &pts, &vals);
        if g.is_zero() {
            continue;
        }
        inf = inf.min(rank - g.deg());
        let g = match finite.take() {
            None => g.monic(),
            Some(h) => h.gcd(&g),
        };
        let total = g.deg() + inf;
        if total == reg_dim {
            return Ok(g);
        }
        if total < reg_dim {
            return Err(invariant("compressed determinant below the regular dimension"));
        }
        finite = Some(g);
    }
    Err(invariant("no compression isolates the regular determinant"))
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(field: FieldSpec, xs: &[Scalar], ys: &[Scalar]) -> Polynomial {
    let mut out = Polynomial::zero(field);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if field.is_zero(yi) {
            continue;
        }
        let mut term = Polynomial::constant(field, yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let scale = field.inv(&field.sub(xi, xj));
                term = term.mul(&Polynomial::linear(field, xj).scale(&scale));
            }
        }
        out = out.add(&term);
    }
    out
}

/// `dim Hom(r, m)` for a canonical regular block `r` at `x`. One of the arrows
/// of `r` is the identity, which fixes `f2` in terms of `f1`; what remains is
/// the kernel of `f1 ↦ X·f1·A − Y·f1`.
fn tube_hom_dim(r: &KronModule, m: &KronModule, x: &ClosedPoint) -> usize {
    let field = m.field();
    let (x_m, y_m, a_r) = match x {
        ClosedPoint::Finite(_) => (m.b(), m.a(), r.a()),
        ClosedPoint::Infinity => (m.a(), m.b(), r.b()),
    };
    let (d1, d2, n) = (m.dim().d1, m.dim().d2, r.dim().d1);
    let mut sys = Matrix::zeros(field, d2 * n, d1 * n);
    for row in 0..d2 {
        for k in 0..d1 {
            let (xv, yv) = (&x_m[(row, k)], &y_m[(row, k)]);
            for c in 0..n {
                for l in 0..n {
                    let mut v = field.mul(xv, &a_r[(l, c)]);
                    if l == c {
                        v = field.sub(&v, yv);
                    }
                    if !field.is_zero(&v) {
                        sys.set(row * n + c, k * n + l, v);
                    }
                }
            }
        }
    }
    d1 * n - sys.rank()
}

/// Multiplicities of `R(x, 1), R(x, 2), …` from `dim Hom(R(x, j), m)`.
fn regular_counts(m: &KronModule, x: &ClosedPoint, total: usize, n_preinj: usize) -> Result<Vec<(usize, usize)>> {
    let field = m.field();
    let deg = x.degree();
    let mut at_least = Vec::new();
    let mut prev = 0usize;
    for j in 1..=total + 1 {
        let r = make_indecomposable(&IndecompDescriptor::Regular(x.clone(), j), field)?;
        let h = tube_hom_dim(&r, m, x);
        let step = h
            .checked_sub(prev)
            .filter(|s| s % deg == 0)
            .ok_or_else(|| invariant("irregular hom growth along a tube"))?;
        at_least.push((step / deg).checked_sub(n_preinj).ok_or_else(|| invariant("negative block count"))?);
        prev = h;
    }
    let mut out = Vec::new();
    for l in 0..total {
        let n = at_least[l] - at_least[l + 1];
        if n > 0 {
            out.push((l + 1, n));
        }
    }
    Ok(out)
}

/// The summand multiset of `m`, computed from ranks alone (no base change).
pub fn invariants_from_ranks(m: &KronModule) -> Result<Vec<IndecompDescriptor>> {
    let mut out = Vec::new();
    let q = preinj_counts(m);
    let p = preinj_counts(&m.transpose());
    let n_preinj: usize = q.iter().sum();
    let mut reg_dim = m.dim().d1 as i64;
    for (idx, &n) in q.iter().enumerate() {
        out.extend(std::iter::repeat_n(IndecompDescriptor::Preinj(idx + 1), n));
        reg_dim -= (n * (idx + 1)) as i64;
    }
    for (idx, &n) in p.iter().enumerate() {
        out.extend(std::iter::repeat_n(IndecompDescriptor::Preproj(idx + 1), n));
        reg_dim -= (n * idx) as i64;
    }
    let reg_dim = usize::try_from(reg_dim).map_err(|_| invariant("negative regular dimension"))?;
    if reg_dim > 0 {
        let det = match m.field() {
            FieldSpec::Rationals => compressed_determinant(m, m.dim().d1 - n_preinj, reg_dim)?,
            FieldSpec::PrimeField(_) => pencil_determinant(m),
        };
        let mut finite_deg = 0;
        if det.deg() > 0 {
            for (f, mult) in factor(&det)? {
                finite_deg += f.deg() * mult;
                let x = ClosedPoint::Finite(f);
                for (len, n) in regular_counts(m, &x, mult, n_preinj)? {
                    out.extend(std::iter::repeat_n(IndecompDescriptor::Regular(x.clone(), len), n));
                }
            }
        }
        let inf = reg_dim.checked_sub(finite_deg).ok_or_else(|| invariant("determinant degree too large"))?;
        if inf > 0 {
            for (len, n) in regular_counts(m, &ClosedPoint::Infinity, inf, n_preinj)? {
                out.extend(std::iter::repeat_n(IndecompDescriptor::Regular(ClosedPoint::Infinity, len), n));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Canonical decomposition over the given field for a list of descriptor strings.
pub fn descriptors_from_strs(field: FieldSpec, names: &[&str]) -> Result<Vec<IndecompDescriptor>> {
    names.iter().map(|s| IndecompDescriptor::parse(field, s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::hom_dim;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::PrimeField(2);

    fn check(field: FieldSpec, names: &[&str], seed: u64) {
        let mut ds = descriptors_from_strs(field, names).unwrap();
        let canon = module_from_descriptors(field, &ds).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = canon.random_conjugate(&mut rng);
        let dec = decompose(&m).unwrap();
        ds.sort();
        assert_eq!(dec.summands, ds, "decompose of {names:?}");
        assert!(dec.verify(&m), "base change of {names:?}");
        assert_eq!(invariants_from_ranks(&m).unwrap(), ds, "oracle of {names:?}");
    }

    #[test]
    fn tube_hom_dim_matches_hom_dim() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (field, names) in [
            (F2, vec!["R[t,2]", "P2", "Q3", "R[inf,1]"]),
            (Q, vec!["R[t^2+1,1]", "R[inf,2]", "P1", "Q2", "R[t-1,1]"]),
        ] {
            let ds = descriptors_from_strs(field, &names).unwrap();
            let m = module_from_descriptors(field, &ds).unwrap().random_conjugate(&mut rng);
            for desc in ["R[t,1]", "R[t,3]", "R[inf,1]", "R[inf,2]", "R[t^2+t+1,2]"] {
                let Ok(d) = IndecompDescriptor::parse(field, desc) else { continue };
                let r = make_indecomposable(&d, field).unwrap();
                let x = d.point().unwrap();
                assert_eq!(tube_hom_dim(&r, &m, x), hom_dim(&r, &m).unwrap(), "{desc} over {field}");
            }
        }
    }

    #[test]
    fn zero_module() {
        let dec = decompose(&KronModule::zero(Q)).unwrap();
        assert!(dec.summands.is_empty());
        assert_eq!(dec.s1.shape(), (0, 0));
        assert!(invariants_from_ranks(&KronModule::zero(Q)).unwrap().is_empty());
    }

    #[test]
    fn zero_pencil_of_size_one() {
        let m = KronModule::from_i64(Q, 1, 1, &[&[0]], &[&[0]]);
        let dec = decompose(&m).unwrap();
        assert_eq!(dec.summands, descriptors_from_strs(Q, &["P1", "Q1"]).unwrap());
        assert_eq!(invariants_from_ranks(&m).unwrap(), dec.summands);
    }

    #[test]
    fn canonical_and_conjugated_inputs() {
        check(Q, &["R[t-1,2]"], 1);
        check(Q, &["P2"], 2);
        check(F2, &["R[t+1,1]", "R[t,1]"], 3);
        check(F2, &["R[t^2+t+1,2]", "R[t^2+t+1,1]", "R[inf,2]", "P3", "Q2", "Q2"], 4);
        check(Q, &["R[t^2+1,1]", "R[t^2-2,1]", "R[t,2]", "R[t,1]", "R[inf,1]", "R[inf,3]"], 5);
        check(FieldSpec::PrimeField(5), &["P1", "P1", "P4", "Q1", "Q3", "R[t+2,3]", "R[t+2,1]"], 6);
        check(Q, &["P1", "Q1", "P2", "Q2"], 7);
    }

    #[test]
    fn supports() {
        let ds = descriptors_from_strs(F2, &["R[t,1]", "R[inf,3]"]).unwrap();
        let m = module_from_descriptors(F2, &ds).unwrap();
        let sup: Vec<ClosedPoint> = regular_support(&m).unwrap().into_iter().collect();
        assert_eq!(sup, vec![ClosedPoint::rational(F2, 0), ClosedPoint::Infinity]);
        let p5 = make_indecomposable(&IndecompDescriptor::Preproj(5), F2).unwrap();
        assert!(regular_support(&p5).unwrap().is_empty());
    }
}
