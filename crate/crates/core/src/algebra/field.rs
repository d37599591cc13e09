use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

/// A field given as a context object; elements are plain values interpreted
/// through the context.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Zero for characteristic zero.
    fn characteristic(&self) -> u64;
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, exp: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        if exp.is_zero() {
            return acc;
        }
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, exp: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(exp))
    }

    /// Integer power with negative exponents allowed; `None` for 0^negative.
    fn pow_i64(&self, a: &Self::Elem, exp: i64) -> Option<Self::Elem> {
        if exp >= 0 {
            Some(self.pow_u64(a, exp as u64))
        } else {
            self.inv(a).map(|ai| self.pow_u64(&ai, exp.unsigned_abs()))
        }
    }
}

/// A finite field 𝔽_q.
pub trait FiniteField: Field {
    /// The number of elements q.
    fn order(&self) -> u128;

    /// The `index`-th element in a fixed enumeration of all q elements
    /// (index 0 is zero).
    fn element(&self, index: u128) -> Self::Elem;

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let q = self.order();
        self.element(rng.gen_range(0..q))
    }

    /// The unique p-th root (the Frobenius is bijective).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let q = self.order();
        let p = self.characteristic() as u128;
        self.pow(a, &BigUint::from(q / p))
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.element(i)))
    }
}
