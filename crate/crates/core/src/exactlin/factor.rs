//! Factorization into monic irreducibles over `F_p` and `Q`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldSpec, Scalar};
use super::poly::{biguint_pow, Polynomial};
use crate::error::{KronError, Result};

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor(p: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    if p.is_zero() {
        return Err(KronError::ZeroPolynomial);
    }
    let f = p.monic();
    let mut out = Vec::new();
    match f.field() {
        FieldSpec::PrimeField(q) => {
            for (g, m) in squarefree_fp(&f, q) {
                for h in factor_squarefree_fp(&g, q) {
                    out.push((h, m));
                }
            }
        }
        FieldSpec::Rationals => {
            for (g, m) in squarefree_char0(&f) {
                for h in factor_squarefree_q(&g) {
                    out.push((h, m));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn is_irreducible(p: &Polynomial) -> bool {
    match factor(p) {
        Ok(fs) => p.deg() >= 1 && fs.len() == 1 && fs[0].1 == 1,
        Err(_) => false,
    }
}

/// All monic irreducible polynomials of the given degree over a prime field, in sorted order.
pub fn monic_irreducibles(field: FieldSpec, degree: usize) -> Result<Vec<Polynomial>> {
    let elems = field.elements().ok_or(KronError::FieldNotFinite)?;
    let q = elems.len();
    let total = q.checked_pow(degree as u32).filter(|&n| n <= 1 << 20);
    let total = total.ok_or_else(|| KronError::TooLarge(format!("{q}^{degree} polynomials")))?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut r = idx;
        for _ in 0..degree {
            coeffs.push(elems[r % q].clone());
            r /= q;
        }
        coeffs.push(field.one());
        let cand = Polynomial::new(field, coeffs);
        if is_irreducible(&cand) {
            out.push(cand);
        }
    }
    out.sort();
    Ok(out)
}

/// Squarefree decomposition over `F_q` (handles p-th powers).
fn squarefree_fp(f: &Polynomial, p: u32) -> Vec<(Polynomial, usize)> {
    let field = f.field();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let one = Polynomial::one(field);
    let mut c = f.gcd(&f.derivative());
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.deg() > 0 {
        // c is a p-th power; in F_p the p-th root acts on exponents only.
        let root = Polynomial::new(
            field,
            c.coeffs().iter().step_by(p as usize).cloned().collect(),
        );
        for (g, m) in squarefree_fp(&root.monic(), p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Yun's squarefree decomposition in characteristic zero.
fn squarefree_char0(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divrem(&a0).0;
    let mut c = df.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        if a.deg() > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

fn x_poly(field: FieldSpec) -> Polynomial {
    Polynomial::monomial(field, 1)
}

/// Distinct-degree then equal-degree factorization of a monic squarefree polynomial.
fn factor_squarefree_fp(f: &Polynomial, p: u32) -> Vec<Polynomial> {
    let field = f.field();
    let x = x_poly(field);
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut h = x.clone();
    let pbig = BigUint::from(p);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(&pbig, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            out.extend(equal_degree(&g, d, p));
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if rest.deg() > 0 {
        out.push(rest.monic());
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &Polynomial, d: usize, p: u32) -> Vec<Polynomial> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b72_6f6e ^ (n as u64) << 8 ^ d as u64);
    let exp = (biguint_pow(p as u64, d) - 1u32) >> 1;
    loop {
        let coeffs: Vec<Scalar> = (0..n).map(|_| Scalar::Mod(rng.gen_range(0..p))).collect();
        let a = Polynomial::new(field, coeffs);
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.rem(f);
            let mut cur = acc.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).rem(f);
                acc = acc.add(&cur);
            }
            acc
        } else {
            a.pow_mod(&exp, f).sub(&Polynomial::one(field))
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            let mut out = equal_degree(&g, d, p);
            out.extend(equal_degree(&f.divrem(&g).0, d, p));
            return out;
        }
    }
}

// ---- integer polynomial helpers (coefficients lowest first) ----

type IntPoly = Vec<BigInt>;

fn trim(mut v: IntPoly) -> IntPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn int_sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

/// Reduces into the symmetric range `(-m/2, m/2]`.
fn sym_mod(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn to_fp(a: &[BigInt], p: u32) -> Polynomial {
    let f = FieldSpec::PrimeField(p);
    Polynomial::new(f, a.iter().map(|c| f.from_bigint(c)).collect())
}

fn from_fp(a: &Polynomial) -> IntPoly {
    a.coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Mod(v) => BigInt::from(*v),
            Scalar::Rational(_) => unreachable!("prime-field polynomial expected"),
        })
        .collect()
}

fn to_q(a: &[BigInt]) -> Polynomial {
    Polynomial::new(
        FieldSpec::Rationals,
        a.iter().map(|c| Scalar::Rational(BigRational::from_integer(c.clone()))).collect(),
    )
}

/// Exact division over `Z[t]`; `None` if `b` does not divide `a` with integral quotient.
fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let (q, r) = to_q(a).divrem(&to_q(b));
    if !r.is_zero() {
        return None;
    }
    q.coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Rational(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        })
        .collect()
}

const SMALL_PRIMES: [u32; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Factors a monic squarefree rational polynomial into monic irreducibles.
fn factor_squarefree_q(f: &Polynomial) -> Vec<Polynomial> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Scale to a monic integer polynomial g(t) = D^n f(t/D).
    let mut den = BigInt::one();
    for c in f.coeffs() {
        if let Scalar::Rational(r) = c {
            den = den.lcm(r.denom());
        }
    }
    let g: IntPoly = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            Scalar::Rational(r) => (r * BigRational::from_integer(num_traits::pow(den.clone(), n - i)))
                .to_integer(),
            Scalar::Mod(_) => unreachable!("rational polynomial expected"),
        })
        .collect();
    factor_monic_int(&g)
        .into_iter()
        .map(|h| {
            // h(t) -> D^{-deg h} h(D t)
            let k = h.len() - 1;
            let coeffs = h
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let scale = num_traits::pow(den.clone(), k - i);
                    Scalar::Rational(BigRational::new(c.clone(), scale))
                })
                .collect();
            Polynomial::new(FieldSpec::Rationals, coeffs)
        })
        .collect()
}

/// Zassenhaus: factor mod a small prime, Hensel lift, recombine.
fn factor_monic_int(g: &[BigInt]) -> Vec<IntPoly> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.to_vec()];
    }
    let p = SMALL_PRIMES
        .iter()
        .copied()
        .find(|&p| {
            let gp = to_fp(g, p);
            gp.deg() == n && gp.gcd(&gp.derivative()).deg() == 0
        })
        .expect("a squarefree reduction exists among small primes at desk-scale degrees");
    let modular = factor_squarefree_fp(&to_fp(g, p).monic(), p);
    if modular.len() == 1 {
        return vec![g.to_vec()];
    }
    // Mignotte-style bound on coefficients of any monic factor.
    let norm: BigInt = g.iter().map(|c| c.abs()).sum();
    let bound = (norm << n) * 2u32 + 1u32;
    let pb = BigInt::from(p);
    let mut k = 1usize;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(g, &modular, p, k);

    let mut remaining: Vec<IntPoly> = lifted;
    let mut rest = g.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for subset in subsets(remaining.len(), size) {
            let mut cand = vec![BigInt::one()];
            for &i in &subset {
                cand = sym_mod(&int_mul(&cand, &remaining[i]), &modulus);
            }
            if let Some(q) = int_div_exact(&rest, &cand) {
                out.push(cand);
                rest = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Lifts `g ≡ ∏ u_i (mod p)` to a factorization modulo `p^k` by peeling one factor at a time.
fn hensel_lift_all(g: &[BigInt], factors: &[Polynomial], p: u32, k: usize) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut current = g.to_vec();
    for (idx, u) in factors.iter().enumerate() {
        if idx + 1 == factors.len() {
            out.push(current.clone());
            break;
        }
        let field = FieldSpec::PrimeField(p);
        let cof = factors[idx + 1..]
            .iter()
            .fold(Polynomial::one(field), |acc, v| acc.mul(v));
        let (lg, lh) = hensel_two(&current, u, &cof, p, k);
        out.push(lg);
        current = lh;
    }
    out
}

/// Linear Hensel lifting of `f ≡ G·H (mod p)`, all monic, to modulus `p^k`.
fn hensel_two(f: &[BigInt], g: &Polynomial, h: &Polynomial, p: u32, k: usize) -> (IntPoly, IntPoly) {
    let (one, s, t) = g.ext_gcd(h);
    debug_assert_eq!(one.deg(), 0);
    let pb = BigInt::from(p);
    let mut gi = from_fp(g);
    let mut hi = from_fp(h);
    let mut m = pb.clone();
    for _ in 1..k {
        let diff = int_sub(f, &int_mul(&gi, &hi));
        let e: IntPoly = diff.iter().map(|c| c / &m).collect();
        let e = to_fp(&e, p);
        let (q, dg) = t.mul(&e).divrem(g);
        let dh = s.mul(&e).add(&h.mul(&q));
        let next = &m * &pb;
        let dg_i: IntPoly = from_fp(&dg).into_iter().map(|c| c * &m).collect();
        let dh_i: IntPoly = from_fp(&dh).into_iter().map(|c| c * &m).collect();
        gi = sym_mod(&add_int(&gi, &dg_i), &next);
        hi = sym_mod(&add_int(&hi, &dh_i), &next);
        m = next;
    }
    (gi, hi)
}

fn add_int(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).collect())
}
