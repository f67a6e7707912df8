//! Coefficient fields.
//!
//! Every algorithm in the crate is generic over [`Field`]. Two fields are
//! provided: the rationals (exact, arbitrary precision) and prime fields
//! `Z/p` for word-sized primes.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of `num/den`; `None` when the denominator vanishes in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Sign used when printing; prime field elements are never negative.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// Runtime description of a coefficient field, as written in ideal files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

/// The field of rational numbers with arbitrary-precision coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
}

/// The prime field `Z/p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::InvalidArgument(format!(
                "characteristic {p} does not fit in 32 bits"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let d = self.reduce_big(den);
        if d == 0 {
            return None;
        }
        Some(self.mul(&self.reduce_big(num), &self.inv(&d)))
    }
    fn is_negative(&self, _a: &u64) -> bool {
        false
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u64, 2, 17, 32002] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 32002);
    }

    #[test]
    fn rejects_composite() {
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn ratio_with_vanishing_denominator() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)), None);
        assert_eq!(f.from_ratio(&BigInt::from(3), &BigInt::from(2)), Some(5));
        assert!(Rationals.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
    }
}
