//! The prime fields F_p for p in {2, 3, 5, 7}.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A supported prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Prime(u8);

impl Prime {
    pub const SUPPORTED: [u8; 4] = [2, 3, 5, 7];

    pub fn new(p: u8) -> Result<Self> {
        if Self::SUPPORTED.contains(&p) {
            Ok(Prime(p))
        } else {
            Err(Error::UnsupportedPrime(p as u64))
        }
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn as_u32(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    /// Multiplicative inverse of a nonzero residue.
    #[inline]
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0 && a < self.0);
        // a^(p-2); p is tiny
        let mut r = 1u8;
        for _ in 0..self.0 - 2 {
            r = self.mul(r, a);
        }
        r
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.0 as i64) as u8
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u8 {
        match self.0 {
            2 => 1,
            3 => 2,
            5 => 2,
            7 => 3,
            _ => unreachable!(),
        }
    }
}

impl TryFrom<u8> for Prime {
    type Error = Error;
    fn try_from(p: u8) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u8 {
    fn from(p: Prime) -> u8 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u8,
    p: Prime,
}

impl Fp {
    pub fn new(value: i64, p: Prime) -> Self {
        Fp { value: p.reduce(value), p }
    }

    pub fn zero(p: Prime) -> Self {
        Fp { value: 0, p }
    }

    pub fn one(p: Prime) -> Self {
        Fp { value: 1, p }
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| Fp { value: self.p.inv(self.value), p: self.p })
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: self.p.add(self.value, rhs.value), p: self.p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: self.p.sub(self.value, rhs.value), p: self.p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: self.p.mul(self.value, rhs.value), p: self.p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: self.p.neg(self.value), p: self.p }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsupported_moduli() {
        assert!(Prime::new(11).is_err());
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(1).is_err());
    }

    #[test]
    fn inverses_multiply_to_one() {
        for &p in &Prime::SUPPORTED {
            let q = Prime::new(p).unwrap();
            for a in 1..p {
                assert_eq!(q.mul(a, q.inv(a)), 1);
            }
        }
    }

    #[test]
    fn primitive_roots_generate() {
        for &p in &Prime::SUPPORTED {
            let q = Prime::new(p).unwrap();
            let g = q.primitive_root();
            let mut seen = std::collections::BTreeSet::new();
            let mut x = 1;
            for _ in 0..p - 1 {
                seen.insert(x);
                x = q.mul(x, g);
            }
            assert_eq!(seen.len(), (p - 1) as usize);
        }
    }

    #[test]
    fn scalar_arithmetic() {
        let p = Prime::new(5).unwrap();
        let a = Fp::new(3, p);
        let b = Fp::new(-1, p);
        assert_eq!(b.value(), 4);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 4);
        assert_eq!((a * b).value(), 2);
        assert_eq!((-a).value(), 2);
        assert_eq!(a.inv().unwrap().value(), 2);
        assert!(Fp::zero(p).inv().is_none());
    }
}
