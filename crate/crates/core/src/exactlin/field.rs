use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{KronError, Result};

/// The base field: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

/// An element of a [`FieldSpec`]. Prime-field elements are stored reduced in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Mod(u32),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds `F_p`, checking primality and the size limit.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(KronError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::PrimeField(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => {
                let r = v % BigInt::from(*p);
                let r = if r.is_negative() { r + BigInt::from(*p) } else { r };
                Scalar::Mod(u32::try_from(&r).expect("reduced residue fits"))
            }
        }
    }

    /// `num / den` in this field; `None` when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return None;
        }
        Some(self.div(&self.from_bigint(num), &d))
    }

    /// Whether `x` is a well-formed element of this field.
    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::PrimeField(p), Scalar::Mod(v)) => v < p,
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod(v) => *v == 1,
        }
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self, x, y) {
            (FieldSpec::Rationals, Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (FieldSpec::PrimeField(p), Scalar::Mod(a), Scalar::Mod(b)) => {
                Scalar::Mod(((*a as u64 + *b as u64) % *p as u64) as u32)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self, x, y) {
            (FieldSpec::Rationals, Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (FieldSpec::PrimeField(p), Scalar::Mod(a), Scalar::Mod(b)) => {
                Scalar::Mod(((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (self, x, y) {
            (FieldSpec::Rationals, Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (FieldSpec::PrimeField(p), Scalar::Mod(a), Scalar::Mod(b)) => {
                Scalar::Mod(((*a as u64 * *b as u64) % *p as u64) as u32)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, x: &Scalar) -> Scalar {
        match (self, x) {
            (FieldSpec::Rationals, Scalar::Rational(a)) => Scalar::Rational(-a),
            (FieldSpec::PrimeField(p), Scalar::Mod(a)) => Scalar::Mod(if *a == 0 { 0 } else { p - a }),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, x: &Scalar) -> Scalar {
        match (self, x) {
            (FieldSpec::Rationals, Scalar::Rational(a)) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rational(a.recip())
            }
            (FieldSpec::PrimeField(p), Scalar::Mod(a)) => {
                assert!(*a != 0, "inverse of zero");
                Scalar::Mod(pow_mod(*a as u64, *p as u64 - 2, *p as u64) as u32)
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.mul(x, &self.inv(y))
    }

    /// All elements of a prime field in increasing order; `None` over the rationals.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some((0..*p).map(Scalar::Mod).collect()),
        }
    }

    pub fn format(&self, x: &Scalar) -> String {
        match x {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v) => v.to_string(),
        }
    }

    /// Parses `"3"`, `"-1/2"` (rationals) or an integer that is reduced modulo `p`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || KronError::Parse(format!("invalid scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.from_ratio(&num, &den).ok_or_else(bad)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = KronError;

    /// Accepts `Q`, `F5`, `Fp:5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| KronError::Parse(format!("unknown field {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| KronError::Parse(format!("unknown field {s:?}")))?;
        FieldSpec::prime(p)
    }
}
