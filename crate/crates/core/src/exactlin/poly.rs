use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;
use crate::error::{KronError, Result};

/// Univariate polynomial in `t`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `t^k`.
    pub fn monomial(field: FieldSpec, k: usize) -> Self {
        let mut c = vec![field.zero(); k + 1];
        c[k] = field.one();
        Polynomial { field, coeffs: c }
    }

    /// `t - root`.
    pub fn linear(field: FieldSpec, root: &Scalar) -> Self {
        Self::new(field, vec![field.neg(root), field.one()])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0 (for size bookkeeping).
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading());
        self.scale(&inv)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|k| f.add(&self.coeff(k), &other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|k| f.sub(&self.coeff(k), &other.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(&d.leading());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = f.mul(&r[k], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = f.sub(&r[idx], &f.mul(&c, dc));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.leading());
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| f.mul(c, &f.from_i64(k as i64)))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let f = self.field;
        let n = m.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(f, n).scale(c));
        }
        acc
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal,
    /// negated coefficients in the last column.
    pub fn companion(&self) -> Matrix {
        assert!(self.is_monic(), "companion of a non-monic polynomial");
        let f = self.field;
        let d = self.deg();
        let mut c = Matrix::zeros(f, d, d);
        for i in 1..d {
            c.set(i, i - 1, f.one());
        }
        for i in 0..d {
            c.set(i, d - 1, f.neg(&self.coeffs[i]));
        }
        c
    }

    /// Parses `t^2+t+1`, `t-1/2`, `3*t^2 - t`, `inf` is not a polynomial.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let bad = || KronError::Parse(format!("invalid polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        let mut acc = Self::zero(field);
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = match term.find('t') {
                None => (field.parse_scalar(&term)?, 0usize),
                Some(pos) => {
                    let c = term[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { field.one() } else { field.parse_scalar(c)? };
                    let rest = &term[pos + 1..];
                    let k = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (c, k)
                }
            };
            let coef = if neg { field.neg(&coef) } else { coef };
            acc = acc.add(&Self::monomial(field, power).scale(&coef));
        }
        Ok(acc)
    }
}

impl Ord for Polynomial {
    /// Degree first, then coefficients lowest degree first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = self.field;
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if f.is_zero(c) {
                continue;
            }
            let (negative, mag) = match c {
                Scalar::Rational(r) if r.is_negative() => (true, Scalar::Rational(-r)),
                _ => (false, c.clone()),
            };
            if negative {
                write!(out, "-")?;
            } else if !first {
                write!(out, "+")?;
            }
            first = false;
            let unit = match &mag {
                Scalar::Rational(r) => r.is_one(),
                Scalar::Mod(v) => *v == 1,
            };
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(out, "{}", f.format(&mag))?;
            } else if unit {
                write!(out, "{mono}")?;
            } else {
                write!(out, "{}*{mono}", f.format(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial<{}>({self})", self.field)
    }
}

/// Characteristic polynomial `det(t·I − m)` via reduction to Hessenberg form.
pub fn charpoly(m: &Matrix) -> Polynomial {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let f = m.field();
    let n = m.rows();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| !f.is_zero(&h[(i, j)])) else {
            continue;
        };
        if i != j + 1 {
            for c in 0..n {
                let (x, y) = (h[(i, c)].clone(), h[(j + 1, c)].clone());
                h.set(i, c, y);
                h.set(j + 1, c, x);
            }
            for r in 0..n {
                let (x, y) = (h[(r, i)].clone(), h[(r, j + 1)].clone());
                h.set(r, i, y);
                h.set(r, j + 1, x);
            }
        }
        let pivot_inv = f.inv(&h[(j + 1, j)]);
        for k in j + 2..n {
            let u = f.mul(&h[(k, j)], &pivot_inv);
            if f.is_zero(&u) {
                continue;
            }
            for c in 0..n {
                let v = f.sub(&h[(k, c)], &f.mul(&u, &h[(j + 1, c)]));
                h.set(k, c, v);
            }
            for r in 0..n {
                let v = f.add(&h[(r, j + 1)], &f.mul(&u, &h[(r, k)]));
                h.set(r, j + 1, v);
            }
        }
    }
    let t = Polynomial::monomial(f, 1);
    let mut p = vec![Polynomial::one(f)];
    for k in 1..=n {
        let mut next = t.sub(&Polynomial::constant(f, h[(k - 1, k - 1)].clone())).mul(&p[k - 1]);
        let mut prod = f.one();
        for i in (1..k).rev() {
            prod = f.mul(&prod, &h[(i, i - 1)]);
            let c = f.mul(&h[(i - 1, k - 1)], &prod);
            next = next.sub(&p[i - 1].scale(&c));
        }
        p.push(next);
    }
    p.pop().expect("nonempty")
}

pub(crate) fn biguint_pow(base: u64, e: usize) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..e {
        acc *= base;
    }
    if acc.is_zero() {
        BigUint::one()
    } else {
        acc
    }
}
