//! Exact scalar arithmetic over GF(p) and the rationals.
//!
//! All arithmetic is routed through a [`FieldSpec`] acting as the ring
//! object, in the style of computer-algebra libraries: scalars are plain
//! data, the field knows how to combine them. Prime moduli are capped at
//! 251 so residues always fit a machine word; rational arithmetic uses
//! arbitrary precision throughout.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible prime modulus.
pub const MAX_MODULUS: u64 = 251;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The coefficient field: GF(p) for a prime 2 <= p <= 251, or Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u16),
    Rationals,
}

/// A canonical field element: a residue in 0..p for GF(p), a reduced
/// fraction for Q. `BigRational` keeps itself reduced, so every value of
/// this type is canonical by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fp(u16),
    Rat(Box<BigRational>),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(FieldSpec::Prime(p as u16))
    }

    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// The modulus, if this is a prime field.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p as u64),
            FieldSpec::Rationals => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Fp(0),
            FieldSpec::Rationals => Scalar::Rat(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Fp(1),
            FieldSpec::Rationals => Scalar::Rat(Box::new(BigRational::one())),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let p = *p as i64;
                Scalar::Fp(v.rem_euclid(p) as u16)
            }
            FieldSpec::Rationals => Scalar::Rat(Box::new(BigRational::from_integer(v.into()))),
        }
    }

    /// Element from an index in 0..p (prime fields only); used by the
    /// lexicographic enumerators.
    pub fn element(&self, idx: u64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                debug_assert!(idx < *p as u64);
                Scalar::Fp(idx as u16)
            }
            FieldSpec::Rationals => panic!("element-by-index only exists over prime fields"),
        }
    }

    fn fp(&self) -> u32 {
        match self {
            FieldSpec::Prime(p) => *p as u32,
            FieldSpec::Rationals => panic!("expected a prime field scalar"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(_), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u32 + *y as u32) % self.fp()) as u16)
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => {
                Scalar::Rat(Box::new(x.as_ref() + y.as_ref()))
            }
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                if *x == 0 {
                    Scalar::Fp(0)
                } else {
                    Scalar::Fp(*p - *x)
                }
            }
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(Box::new(-x.as_ref())),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(_), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u32 * *y as u32) % self.fp()) as u16)
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => {
                Scalar::Rat(Box::new(x.as_ref() * y.as_ref()))
            }
            _ => panic!("scalar does not belong to this field"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                if *x == 0 {
                    return None;
                }
                // Fermat: x^(p-2) mod p
                let (p, mut base, mut e) = (*p as u64, *x as u64, *p as u64 - 2);
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Some(Scalar::Fp(acc as u16))
            }
            (FieldSpec::Rationals, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(Box::new(x.recip())))
                }
            }
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    /// Parse a scalar: an integer, or `num/den` over the rationals.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Prime(_) => {
                let v: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad GF(p) coefficient {s:?}")))?;
                Ok(self.from_i64(v))
            }
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
                let den: BigInt = den
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Rat(Box::new(BigRational::new(num, den))))
            }
        }
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 1,
            Scalar::Rat(x) => x.is_one(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldSpec::Prime(p) => ser.serialize_u64(*p as u64),
            FieldSpec::Rationals => ser.serialize_str("Q"),
        }
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(de)?;
        match &v {
            serde_json::Value::Number(n) => {
                let p = n
                    .as_u64()
                    .ok_or_else(|| D::Error::custom("field modulus must be a positive integer"))?;
                FieldSpec::prime(p).map_err(D::Error::custom)
            }
            serde_json::Value::String(s) if s == "Q" || s == "q" => Ok(FieldSpec::Rationals),
            serde_json::Value::String(s) => {
                let p: u64 = s
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad field descriptor {s:?}")))?;
                FieldSpec::prime(p).map_err(D::Error::custom)
            }
            _ => Err(D::Error::custom("field descriptor must be a prime or \"Q\"")),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// Parse a CLI-style field descriptor: a prime, or `Q`.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let p: u64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad field descriptor {s:?} (expected a prime or Q)")))?;
    FieldSpec::prime(p)
}
