//! Coefficient fields: prime fields `Z/p` and the rationals.
//!
//! Elements are plain values; the field object carries whatever context is
//! needed (the modulus) so that zero and one can be produced on demand.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A coefficient field with runtime context.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Short human-readable name, e.g. `Z/2` or `Q`.
    fn name(&self) -> String;
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A residue modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeFieldElement {
    value: u64,
    modulus: u64,
}

impl PrimeFieldElement {
    /// Reduces `value` into `[0, modulus)`. The modulus must be prime.
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(Self::reduce(value as i128, modulus))
    }

    fn reduce(value: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        Self { value: value.rem_euclid(m) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self { value: 1 % self.modulus, modulus: self.modulus };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        Self::reduce(self.value as i128 + rhs.value as i128, self.modulus)
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        Self::reduce(self.value as i128 - rhs.value as i128, self.modulus)
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        Self::reduce(self.value as i128 * rhs.value as i128, self.modulus)
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self::reduce(-(self.value as i128), self.modulus)
    }
}

/// The field `Z/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    /// `Z/2`, the coefficient field of every Stiefel–Whitney computation.
    pub fn two() -> Self {
        Self { p: 2 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement::reduce(v as i128, self.p)
    }
}

impl Field for PrimeField {
    type Elem = PrimeFieldElement;

    fn zero(&self) -> Self::Elem {
        self.elem(0)
    }
    fn one(&self) -> Self::Elem {
        self.elem(1)
    }
    fn from_i64(&self, v: i64) -> Self::Elem {
        self.elem(v)
    }
    fn from_bigint(&self, v: &BigInt) -> Self::Elem {
        let r = v % BigInt::from(self.p);
        let r = if r.is_negative() { r + BigInt::from(self.p) } else { r };
        self.elem(i64::try_from(r).expect("residue fits in i64"))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        *a + *b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        *a - *b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        *a * *b
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        -*a
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.inverse()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.value == 0
    }
    fn name(&self) -> String {
        format!("Z/{}", self.p)
    }
}

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> Self::Elem {
        BigRational::zero()
    }
    fn one(&self) -> Self::Elem {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> Self::Elem {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> Self::Elem {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        -a
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}
