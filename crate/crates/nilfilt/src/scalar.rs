//! Exact coefficient fields: arbitrary-precision rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rationals.
    Rationals,
    /// GF(p) for a prime p. All identities verified by this crate are stated
    /// over characteristic zero; prime fields are supported for
    /// experimentation only.
    Prime(u64),
}

impl Field {
    pub fn validate(&self) -> Result<()> {
        match self {
            Field::Rationals => Ok(()),
            Field::Prime(p) => {
                if *p < 2 || !is_prime(*p) {
                    return Err(Error::InvalidRing(format!("{p} is not prime")));
                }
                if *p >= 1 << 31 {
                    return Err(Error::InvalidRing(format!("prime modulus {p} too large")));
                }
                Ok(())
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod(n.rem_euclid(*p as i64) as u64),
        }
    }

    /// Builds n/d. Fails on d = 0 (or d not invertible mod p).
    pub fn ratio(&self, n: i64, d: i64) -> Result<Scalar> {
        if d == 0 {
            return Err(Error::InvalidRing("zero denominator".into()));
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(n),
                BigInt::from(d),
            ))),
            Field::Prime(_) => {
                let dn = self.from_i64(d);
                let inv = self.inv(&dn)?;
                Ok(self.mul(&self.from_i64(n), &inv))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            _ => unreachable!("scalar does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            _ => unreachable!("scalar does not belong to this field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => unreachable!("scalar does not belong to this field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::InvalidRing("division by zero".into()));
        }
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            (Field::Prime(p), Scalar::Mod(x)) => Ok(Scalar::Mod(pow_mod(*x, p - 2, *p))),
            _ => unreachable!("scalar does not belong to this field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// a^k with k >= 0.
    pub fn pow(&self, a: &Scalar, k: u32) -> Scalar {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn parse(&self, digits: &str) -> Result<Scalar> {
        let n: BigInt = digits.parse().map_err(|_| Error::Parse {
            offset: 0,
            message: format!("invalid integer `{digits}`"),
        })?;
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::from_integer(n))),
            Field::Prime(p) => {
                let p_big = BigInt::from(*p);
                let r = ((n % &p_big) + &p_big) % &p_big;
                let (_, digits) = r.to_u64_digits();
                Ok(Scalar::Mod(digits.first().copied().unwrap_or(0)))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field element. Rationals are kept reduced with a positive denominator
/// (num-rational maintains that normal form); prime-field elements are
/// residues in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_one(),
            Scalar::Mod(x) => *x == 1,
        }
    }

    /// True for rationals < 0. Prime-field residues carry no sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_negative(),
            Scalar::Mod(_) => false,
        }
    }

    /// Absolute value (identity on prime-field elements).
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rat(x) => Scalar::Rat(x.abs()),
            Scalar::Mod(x) => Scalar::Mod(*x),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => write!(f, "{x}"),
            Scalar::Mod(x) => write!(f, "{x}"),
        }
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

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}
