//! Cyclotomic polynomials and the cyclotomic number fields ℚ(ζ_M).

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::field::Field;
use super::numtheory::{divisors, euler_phi, gcd_u64};
use super::poly::{Poly, PolyRing};
use super::rational::Rationals;

/// Φ_M over ℚ, by exact division of x^M − 1 by Φ_d for the proper divisors d.
pub fn cyclotomic_poly(m: u64) -> Result<Poly<BigRational>> {
    if m == 0 {
        return Err(Error::InvalidParameter("cyclotomic index must be positive".into()));
    }
    let q = Rationals;
    let ring = PolyRing::new(&q);
    let mut num = ring.monomial(BigRational::one(), m as usize);
    num = ring.sub(&num, &ring.one());
    for d in divisors(m) {
        if d < m {
            let phi_d = cyclotomic_poly(d)?;
            num = ring.div_exact(&num, &phi_d).expect("Φ_d divides x^M − 1");
        }
    }
    Ok(num)
}

/// ℚ(ζ_M) = ℚ[y]/(Φ_M). Elements are coefficient vectors of length φ(M).
#[derive(Clone, Debug)]
pub struct CyclotomicRationals {
    order: u64,
    degree: usize,
    modulus: Arc<Poly<BigRational>>,
    /// ζ^k reduced, for 0 ≤ k < M.
    powers: Arc<Vec<Vec<BigRational>>>,
}

impl PartialEq for CyclotomicRationals {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl CyclotomicRationals {
    pub fn new(m: u64) -> Result<Self> {
        let modulus = cyclotomic_poly(m)?;
        let degree = euler_phi(m) as usize;
        debug_assert_eq!(modulus.deg(), degree);
        let q = Rationals;
        let ring = PolyRing::new(&q);
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = ring.one();
        for _ in 0..m {
            let mut v = ring.rem(&cur, &modulus).expect("nonzero modulus").into_coeffs();
            v.resize(degree, BigRational::zero());
            powers.push(v);
            cur = ring.mul(&cur, &ring.x());
        }
        Ok(CyclotomicRationals {
            order: m,
            degree,
            modulus: Arc::new(modulus),
            powers: Arc::new(powers),
        })
    }

    /// The M of ℚ(ζ_M).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &Poly<BigRational> {
        &self.modulus
    }

    pub fn embed(&self, a: &BigRational) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.degree];
        v[0] = a.clone();
        v
    }

    /// ζ_M^k.
    pub fn zeta_pow(&self, k: i64) -> Vec<BigRational> {
        self.powers[k.rem_euclid(self.order as i64) as usize].clone()
    }

    pub fn from_poly(&self, f: &Poly<BigRational>) -> Vec<BigRational> {
        let q = Rationals;
        let ring = PolyRing::new(&q);
        let mut v = ring.rem(f, &self.modulus).expect("nonzero modulus").into_coeffs();
        v.resize(self.degree, BigRational::zero());
        v
    }

    pub fn to_poly(&self, a: &[BigRational]) -> Poly<BigRational> {
        PolyRing::new(&Rationals).from_coeffs(a.to_vec())
    }

    pub fn as_rational(&self, a: &[BigRational]) -> Option<BigRational> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }

    /// The automorphism ζ ↦ ζ^e, for e coprime to M.
    pub fn conjugate(&self, a: &[BigRational], e: u64) -> Vec<BigRational> {
        debug_assert_eq!(gcd_u64(e % self.order.max(1), self.order), 1);
        let mut out = vec![BigRational::zero(); self.degree];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &self.powers[((i as u64 * e) % self.order) as usize];
            for (o, z) in out.iter_mut().zip(img) {
                if !z.is_zero() {
                    *o += c * z;
                }
            }
        }
        out
    }

    /// Exponents e in [1, M] coprime to M, indexing the Galois group.
    pub fn galois_exponents(&self) -> Vec<u64> {
        (1..=self.order).filter(|&e| gcd_u64(e, self.order) == 1).collect()
    }

    /// Field norm to ℚ, as the product of all conjugates.
    pub fn norm(&self, a: &[BigRational]) -> BigRational {
        let prod = self
            .galois_exponents()
            .into_iter()
            .fold(self.one(), |acc, e| self.mul(&acc, &self.conjugate(a, e)));
        self.as_rational(&prod).expect("norm is rational")
    }
}

impl Field for CyclotomicRationals {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.degree]
    }
    fn one(&self) -> Vec<BigRational> {
        self.embed(&BigRational::one())
    }
    fn is_zero(&self, a: &Vec<BigRational>) -> bool {
        a.iter().all(Zero::is_zero)
    }
    fn add(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn sub(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    fn neg(&self, a: &Vec<BigRational>) -> Vec<BigRational> {
        a.iter().map(|x| -x).collect()
    }
    fn mul(&self, a: &Vec<BigRational>, b: &Vec<BigRational>) -> Vec<BigRational> {
        let n = self.degree;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigRational> = prod.drain(..n).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = &self.powers[(k + n) % self.order as usize];
            for (o, z) in out.iter_mut().zip(img) {
                if !z.is_zero() {
                    *o += &c * z;
                }
            }
        }
        out
    }
    fn inv(&self, a: &Vec<BigRational>) -> Option<Vec<BigRational>> {
        if self.is_zero(a) {
            return None;
        }
        let q = Rationals;
        let ring = PolyRing::new(&q);
        let (g, s, _) = ring.ext_gcd(&self.to_poly(a), &self.modulus);
        debug_assert!(ring.is_one(&g));
        Some(self.from_poly(&s))
    }
    fn from_i64(&self, v: i64) -> Vec<BigRational> {
        self.embed(&Rationals.from_i64(v))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format_elem(&self, a: &Vec<BigRational>) -> String {
        match self.as_rational(a) {
            Some(c) => c.to_string(),
            None => PolyRing::new(&Rationals).format(&self.to_poly(a), "zeta"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn small_cyclotomics() {
        let ring = PolyRing::new(&Rationals);
        assert_eq!(cyclotomic_poly(1).unwrap(), ring.from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4).unwrap(), ring.from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(12).unwrap(), ring.from_i64s(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn product_over_divisors_is_x_m_minus_one() {
        let ring = PolyRing::new(&Rationals);
        for m in 1..=60u64 {
            let prod = divisors(m)
                .into_iter()
                .fold(ring.one(), |acc, d| ring.mul(&acc, &cyclotomic_poly(d).unwrap()));
            let target = ring.sub(&ring.monomial(int(1), m as usize), &ring.one());
            assert_eq!(prod, target, "M = {m}");
        }
    }

    #[test]
    fn zeta_has_order_m() {
        for m in [1u64, 2, 3, 4, 5, 8, 9, 12] {
            let k = CyclotomicRationals::new(m).unwrap();
            let z = k.zeta_pow(1);
            for e in 1..m {
                assert_ne!(k.pow_u64(&z, e), k.one(), "M={m} e={e}");
            }
            assert_eq!(k.pow_u64(&z, m), k.one());
        }
    }

    #[test]
    fn sqrt2_in_q_zeta8() {
        let k = CyclotomicRationals::new(8).unwrap();
        let s = k.add(&k.zeta_pow(1), &k.zeta_pow(-1));
        assert_eq!(k.mul(&s, &s), k.from_i64(2));
    }

    #[test]
    fn inverse_and_norm() {
        let k = CyclotomicRationals::new(12).unwrap();
        let a = k.add(&k.zeta_pow(1), &k.from_i64(2));
        let ai = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &ai), k.one());
        // N(1 + i) = 2 in Q(i)
        let qi = CyclotomicRationals::new(4).unwrap();
        assert_eq!(qi.norm(&qi.add(&qi.one(), &qi.zeta_pow(1))), int(2));
    }
}
