//! Prime fields GF(p) for the small primes the exhaustive checks can afford.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_PRIME: u32 = 7;

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u8);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..p).any(|d| d * d <= p && p % d == 0) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::UnsupportedModulus(p));
        }
        Ok(Prime(p as u8))
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.0
    }

    #[inline]
    pub(crate) fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub(crate) fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    #[inline]
    pub(crate) fn neg(self, a: u8) -> u8 {
        (self.0 - a) % self.0
    }

    /// Multiplicative inverse via Fermat; `a` must be nonzero.
    pub(crate) fn inv(self, a: u8) -> Option<u8> {
        if a % self.0 == 0 {
            return None;
        }
        let mut acc = 1u8;
        for _ in 0..self.0 - 2 {
            acc = self.mul(acc, a);
        }
        Some(acc)
    }

    pub(crate) fn check_entry(self, v: u32) -> Result<u8> {
        if v < self.0 as u32 {
            Ok(v as u8)
        } else {
            Err(Error::EntryOutOfRange { value: v, modulus: self.0 })
        }
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0 as u32
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of GF(p) that remembers its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u8,
    modulus: Prime,
}

impl Scalar {
    pub fn new(value: u32, modulus: u32) -> Result<Self> {
        let modulus = Prime::new(modulus)?;
        Ok(Scalar { value: modulus.check_entry(value)?, modulus })
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    fn same_field(self, other: Scalar) -> Result<Prime> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), other.modulus.get()));
        }
        Ok(self.modulus)
    }

    pub fn add(self, other: Scalar) -> Result<Scalar> {
        let p = self.same_field(other)?;
        Ok(Scalar { value: p.add(self.value, other.value), modulus: p })
    }

    pub fn mul(self, other: Scalar) -> Result<Scalar> {
        let p = self.same_field(other)?;
        Ok(Scalar { value: p.mul(self.value, other.value), modulus: p })
    }

    pub fn neg(self) -> Scalar {
        Scalar { value: self.modulus.neg(self.value), modulus: self.modulus }
    }

    pub fn inv(self) -> Result<Scalar> {
        let value = self.modulus.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(Scalar { value, modulus: self.modulus })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_validated() {
        assert_eq!(Prime::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(11), Err(Error::UnsupportedModulus(11)));
        for p in [2, 3, 5, 7] {
            assert_eq!(Prime::new(p).unwrap().get() as u32, p);
        }
    }

    #[test]
    fn small_field_examples() {
        let two = Scalar::new(2, 3).unwrap();
        assert_eq!(two.inv().unwrap().value(), 2);
        let one = Scalar::new(1, 2).unwrap();
        assert_eq!(one.add(one).unwrap().value(), 0);
        // exhaustive search for 3x = 1 mod 5
        let oracle = (0..5u32).find(|x| 3 * x % 5 == 1).unwrap();
        assert_eq!(Scalar::new(3, 5).unwrap().inv().unwrap().value() as u32, oracle);
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Scalar::new(0, 7).unwrap().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_moduli_are_rejected() {
        let a = Scalar::new(1, 2).unwrap();
        let b = Scalar::new(1, 3).unwrap();
        assert_eq!(a.add(b), Err(Error::ModulusMismatch(2, 3)));
        assert_eq!(a.mul(b), Err(Error::ModulusMismatch(2, 3)));
    }

    #[test]
    fn entries_must_be_reduced() {
        assert!(matches!(Scalar::new(3, 3), Err(Error::EntryOutOfRange { .. })));
    }

    #[test]
    fn inverse_law_holds_everywhere() {
        for p in [2u32, 3, 5, 7] {
            for a in 1..p {
                let s = Scalar::new(a, p).unwrap();
                assert_eq!(s.mul(s.inv().unwrap()).unwrap().value(), 1);
                assert_eq!(s.add(s.neg()).unwrap().value(), 0);
            }
        }
    }
}
