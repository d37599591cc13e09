use crate::error::{Error, Result};

use super::field::{FiniteField, Field};
use super::numtheory::{is_prime, pow_mod_u64};

/// 𝔽_p for a prime p < 2³¹, elements stored as canonical residues in [0, p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Signed representative in (−p/2, p/2].
    pub fn symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
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
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod_u64(*a, (self.p - 2) as u128, self.p))
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn pow_u64(&self, a: &u64, exp: u64) -> u64 {
        pow_mod_u64(*a, exp as u128, self.p)
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> u128 {
        self.p as u128
    }
    fn element(&self, index: u128) -> u64 {
        (index % self.p as u128) as u64
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}
