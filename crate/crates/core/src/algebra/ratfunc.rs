use crate::error::{Error, Result};

use super::poly::{Poly, PolyRing};
use super::PolyAlgorithms;

/// A rational function num/den in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc<E> {
    num: Poly<E>,
    den: Poly<E>,
}

impl<E: Clone> RatFunc<E> {
    pub fn numerator(&self) -> &Poly<E> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<E> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Rational-function arithmetic over a field context.
#[derive(Clone, Copy, Debug)]
pub struct RatFuncField<'a, F: PolyAlgorithms> {
    pub field: &'a F,
}

impl<'a, F: PolyAlgorithms> RatFuncField<'a, F> {
    pub fn new(field: &'a F) -> Self {
        RatFuncField { field }
    }

    fn ring(&self) -> PolyRing<'a, F> {
        PolyRing::new(self.field)
    }

    pub fn new_fraction(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> Result<RatFunc<F::Elem>> {
        if den.is_zero() {
            return Err(Error::ZeroInput("denominator"));
        }
        let ring = self.ring();
        if num.is_zero() {
            return Ok(RatFunc { num, den: ring.one() });
        }
        let g = self.field.gcd_nonzero(&num, &den);
        let num = ring.div_exact(&num, &g).expect("gcd divides");
        let den = ring.div_exact(&den, &g).expect("gcd divides");
        let (lc, den) = ring.monic(&den);
        let lc_inv = self.field.inv(&lc).expect("nonzero");
        Ok(RatFunc { num: ring.scale(&lc_inv, &num), den })
    }

    pub fn from_poly(&self, p: Poly<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc { num: p, den: self.ring().one() }
    }

    pub fn constant(&self, c: F::Elem) -> RatFunc<F::Elem> {
        self.from_poly(self.ring().constant(c))
    }

    pub fn t(&self) -> RatFunc<F::Elem> {
        self.from_poly(self.ring().x())
    }

    pub fn add(&self, a: &RatFunc<F::Elem>, b: &RatFunc<F::Elem>) -> RatFunc<F::Elem> {
        let r = self.ring();
        let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
        self.new_fraction(num, r.mul(&a.den, &b.den)).expect("nonzero denominators")
    }

    pub fn neg(&self, a: &RatFunc<F::Elem>) -> RatFunc<F::Elem> {
        RatFunc { num: self.ring().neg(&a.num), den: a.den.clone() }
    }

    pub fn sub(&self, a: &RatFunc<F::Elem>, b: &RatFunc<F::Elem>) -> RatFunc<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RatFunc<F::Elem>, b: &RatFunc<F::Elem>) -> RatFunc<F::Elem> {
        let r = self.ring();
        self.new_fraction(r.mul(&a.num, &b.num), r.mul(&a.den, &b.den))
            .expect("nonzero denominators")
    }

    pub fn inv(&self, a: &RatFunc<F::Elem>) -> Result<RatFunc<F::Elem>> {
        self.new_fraction(a.den.clone(), a.num.clone())
    }

    pub fn div(&self, a: &RatFunc<F::Elem>, b: &RatFunc<F::Elem>) -> Result<RatFunc<F::Elem>> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &RatFunc<F::Elem>, e: i64) -> Result<RatFunc<F::Elem>> {
        let r = self.ring();
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: r.pow(&base.num, k), den: r.pow(&base.den, k) })
    }
}
